#include "matsym/error.hpp"

namespace matsym {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::OutOfRangeIndex: return "OutOfRangeIndex";
        case ErrorCode::EmptyDomain: return "EmptyDomain";
        case ErrorCode::MalformedPartition: return "MalformedPartition";
        case ErrorCode::MalformedTerm: return "MalformedTerm";
        case ErrorCode::BlockViolation: return "BlockViolation";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NoSymmetry: return "NoSymmetry";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::GroupTooLarge: return "GroupTooLarge";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::BadModelFile: return "BadModelFile";
        case ErrorCode::UnknownScheme: return "UnknownScheme";
    }
    return "Unknown";
}

GroupTooLarge::GroupTooLarge(std::string order, std::uint64_t guard)
    : Error(ErrorCode::GroupTooLarge,
            "symmetry group order " + order + " exceeds lex-leader guard " + std::to_string(guard)),
      order_(std::move(order)),
      guard_(guard) {}

BudgetExceeded::BudgetExceeded(std::string budget, std::string required, std::uint64_t limit)
    : Error(ErrorCode::BudgetExceeded,
            budget + " budget exceeded: need " + required + ", limit " + std::to_string(limit)),
      budget_(std::move(budget)),
      required_(std::move(required)),
      limit_(limit) {}

}  // namespace matsym
