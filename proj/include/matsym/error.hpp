#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace matsym {

enum class ErrorCode {
    OutOfRangeIndex,
    EmptyDomain,
    MalformedPartition,
    MalformedTerm,
    BlockViolation,
    LengthMismatch,
    NoSymmetry,
    NotApplicable,
    GroupTooLarge,
    BudgetExceeded,
    InvalidParams,
    BadModelFile,
    UnknownScheme,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Thrown when the lex-leader generator would need more group elements than its guard.
class GroupTooLarge : public Error {
public:
    GroupTooLarge(std::string order, std::uint64_t guard);

    const std::string& order() const noexcept { return order_; }
    std::uint64_t guard() const noexcept { return guard_; }

private:
    std::string order_;
    std::uint64_t guard_;
};

// Thrown by the oracle when an enumeration would exceed one of its budgets.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::string budget, std::string required, std::uint64_t limit);

    const std::string& budget() const noexcept { return budget_; }
    const std::string& required() const noexcept { return required_; }
    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::string budget_;
    std::string required_;
    std::uint64_t limit_;
};

}  // namespace matsym
