#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "matsym/domain.hpp"

namespace matsym {

enum class TermKind {
    LexLe,
    LexLt,
    LinearEq,
    LinearLe,
    ScalarProductEq,
    MultisetLe,
    // x <=lex every permutation of y, decided as x <=lex sortAscending(y).
    AllPermLe,
};

std::string_view to_string(TermKind kind);

/// One constraint over variable indices. Cell variables are numbered row-major;
/// indices at or above the model's cell count refer to auxiliary variables of the
/// owning ConstraintSet.
///
/// Linear terms keep their variables in `x` and read sum(coeffs[i] * x[i]) {=,<=} rhs.
/// ScalarProductEq reads sum(x[i] * y[i]) == rhs.
struct ConstraintTerm {
    TermKind kind = TermKind::LexLe;
    std::vector<int> x;
    std::vector<int> y;
    std::vector<int> coeffs;
    int rhs = 0;

    static ConstraintTerm lex_le(std::vector<int> x, std::vector<int> y);
    static ConstraintTerm lex_lt(std::vector<int> x, std::vector<int> y);
    static ConstraintTerm linear_eq(std::vector<int> vars, std::vector<int> coeffs, int rhs);
    static ConstraintTerm linear_le(std::vector<int> vars, std::vector<int> coeffs, int rhs);
    static ConstraintTerm scalar_product_eq(std::vector<int> x, std::vector<int> y, int rhs);
    static ConstraintTerm multiset_le(std::vector<int> x, std::vector<int> y);
    static ConstraintTerm allperm_le(std::vector<int> x, std::vector<int> y);

    bool is_linear() const noexcept {
        return kind == TermKind::LinearEq || kind == TermKind::LinearLe;
    }

    // Throws LengthMismatch / MalformedTerm.
    void validate() const;

    // Largest variable index referenced, or -1 for an empty term.
    int max_variable() const;

    bool operator==(const ConstraintTerm&) const = default;
};

/// Evaluates a term on a complete assignment indexed by variable number.
bool holds(const ConstraintTerm& term, std::span<const int> assignment);

struct ConstraintSet {
    std::vector<ConstraintTerm> terms;
    // Domains of auxiliary variables; aux variable k has index cellCount + k.
    std::vector<Domain> aux;

    std::size_t size() const noexcept { return terms.size(); }
    bool empty() const noexcept { return terms.empty(); }
    void add(ConstraintTerm term) { terms.push_back(std::move(term)); }

    // Appends `other`, renumbering its auxiliary variables after ours.
    void append(const ConstraintSet& other, int cell_count);

    bool operator==(const ConstraintSet&) const = default;
};

/// True when every term holds. Auxiliary variables, if any, must be present in `assignment`.
bool holds(const ConstraintSet& set, std::span<const int> assignment);

}  // namespace matsym
