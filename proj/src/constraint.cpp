#include "matsym/constraint.hpp"

#include <algorithm>
#include <string>

#include "matsym/error.hpp"
#include "matsym/ordering.hpp"

namespace matsym {

Domain::Domain(std::initializer_list<int> values) : Domain(std::vector<int>(values)) {}

Domain::Domain(std::vector<int> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

Domain Domain::range(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return Domain(std::move(v));
}

bool Domain::contains(int value) const {
    return std::binary_search(values_.begin(), values_.end(), value);
}

std::string_view to_string(TermKind kind) {
    switch (kind) {
        case TermKind::LexLe: return "lex_le";
        case TermKind::LexLt: return "lex_lt";
        case TermKind::LinearEq: return "linear_eq";
        case TermKind::LinearLe: return "linear_le";
        case TermKind::ScalarProductEq: return "scalar_product_eq";
        case TermKind::MultisetLe: return "multiset_le";
        case TermKind::AllPermLe: return "allperm_le";
    }
    return "?";
}

namespace {

ConstraintTerm make_pair_term(TermKind kind, std::vector<int> x, std::vector<int> y) {
    ConstraintTerm t;
    t.kind = kind;
    t.x = std::move(x);
    t.y = std::move(y);
    t.validate();
    return t;
}

ConstraintTerm make_linear(TermKind kind, std::vector<int> vars, std::vector<int> coeffs, int rhs) {
    ConstraintTerm t;
    t.kind = kind;
    t.x = std::move(vars);
    t.coeffs = std::move(coeffs);
    t.rhs = rhs;
    t.validate();
    return t;
}

}  // namespace

ConstraintTerm ConstraintTerm::lex_le(std::vector<int> x, std::vector<int> y) {
    return make_pair_term(TermKind::LexLe, std::move(x), std::move(y));
}

ConstraintTerm ConstraintTerm::lex_lt(std::vector<int> x, std::vector<int> y) {
    return make_pair_term(TermKind::LexLt, std::move(x), std::move(y));
}

ConstraintTerm ConstraintTerm::linear_eq(std::vector<int> vars, std::vector<int> coeffs, int rhs) {
    return make_linear(TermKind::LinearEq, std::move(vars), std::move(coeffs), rhs);
}

ConstraintTerm ConstraintTerm::linear_le(std::vector<int> vars, std::vector<int> coeffs, int rhs) {
    return make_linear(TermKind::LinearLe, std::move(vars), std::move(coeffs), rhs);
}

ConstraintTerm ConstraintTerm::scalar_product_eq(std::vector<int> x, std::vector<int> y, int rhs) {
    auto t = make_pair_term(TermKind::ScalarProductEq, std::move(x), std::move(y));
    t.rhs = rhs;
    return t;
}

ConstraintTerm ConstraintTerm::multiset_le(std::vector<int> x, std::vector<int> y) {
    return make_pair_term(TermKind::MultisetLe, std::move(x), std::move(y));
}

ConstraintTerm ConstraintTerm::allperm_le(std::vector<int> x, std::vector<int> y) {
    return make_pair_term(TermKind::AllPermLe, std::move(x), std::move(y));
}

void ConstraintTerm::validate() const {
    auto negative = [](const std::vector<int>& v) {
        return std::any_of(v.begin(), v.end(), [](int i) { return i < 0; });
    };
    if (negative(x) || negative(y)) {
        throw Error(ErrorCode::OutOfRangeIndex, std::string(to_string(kind)) + ": negative variable index");
    }
    if (is_linear()) {
        if (coeffs.size() != x.size()) {
            throw Error(ErrorCode::LengthMismatch,
                        std::string(to_string(kind)) + ": " + std::to_string(coeffs.size()) +
                            " coefficients for " + std::to_string(x.size()) + " variables");
        }
        if (!y.empty()) {
            throw Error(ErrorCode::MalformedTerm, "linear term must not carry a second sequence");
        }
        return;
    }
    if (x.size() != y.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    std::string(to_string(kind)) + ": operand lengths " + std::to_string(x.size()) +
                        " and " + std::to_string(y.size()));
    }
    if (!coeffs.empty()) {
        throw Error(ErrorCode::MalformedTerm, std::string(to_string(kind)) + " takes no coefficients");
    }
}

int ConstraintTerm::max_variable() const {
    int m = -1;
    for (int v : x) m = std::max(m, v);
    for (int v : y) m = std::max(m, v);
    return m;
}

namespace {

std::vector<int> gather(const std::vector<int>& vars, std::span<const int> assignment) {
    std::vector<int> out;
    out.reserve(vars.size());
    for (int v : vars) out.push_back(assignment[static_cast<std::size_t>(v)]);
    return out;
}

}  // namespace

bool holds(const ConstraintTerm& term, std::span<const int> assignment) {
    switch (term.kind) {
        case TermKind::LexLe:
            return lex_compare(gather(term.x, assignment), gather(term.y, assignment)) != Ordering::Gt;
        case TermKind::LexLt:
            return lex_compare(gather(term.x, assignment), gather(term.y, assignment)) == Ordering::Lt;
        case TermKind::MultisetLe:
            return multiset_compare(gather(term.x, assignment), gather(term.y, assignment)) !=
                   Ordering::Gt;
        case TermKind::AllPermLe:
            return lex_le_all_permutations(gather(term.x, assignment), gather(term.y, assignment));
        case TermKind::LinearEq:
        case TermKind::LinearLe: {
            long long sum = 0;
            for (std::size_t i = 0; i < term.x.size(); ++i) {
                sum += static_cast<long long>(term.coeffs[i]) *
                       assignment[static_cast<std::size_t>(term.x[i])];
            }
            return term.kind == TermKind::LinearEq ? sum == term.rhs : sum <= term.rhs;
        }
        case TermKind::ScalarProductEq: {
            long long sum = 0;
            for (std::size_t i = 0; i < term.x.size(); ++i) {
                sum += static_cast<long long>(assignment[static_cast<std::size_t>(term.x[i])]) *
                       assignment[static_cast<std::size_t>(term.y[i])];
            }
            return sum == term.rhs;
        }
    }
    return false;
}

bool holds(const ConstraintSet& set, std::span<const int> assignment) {
    return std::all_of(set.terms.begin(), set.terms.end(),
                       [&](const ConstraintTerm& t) { return holds(t, assignment); });
}

void ConstraintSet::append(const ConstraintSet& other, int cell_count) {
    const int shift = static_cast<int>(aux.size());
    for (ConstraintTerm t : other.terms) {
        if (shift != 0) {
            for (int& v : t.x) if (v >= cell_count) v += shift;
            for (int& v : t.y) if (v >= cell_count) v += shift;
        }
        terms.push_back(std::move(t));
    }
    aux.insert(aux.end(), other.aux.begin(), other.aux.end());
}

}  // namespace matsym
