#pragma once

#include <functional>
#include <span>

#include "matsym/constraint.hpp"
#include "matsym/model.hpp"

namespace matsym::solver {

/// Linear decomposition of x <=lex y (or <lex) with 0/1 chain variables
/// b[1..n-1], b[i] = 1 iff x[1..i] and y[1..i] are tied (b[0] is the constant 1):
///
///   b[i] = 1            => x[i] == y[i]
///   b[i] <= b[i-1]
///   b[i-1] = 1, b[i] = 0 => x[i] <  y[i]
///   b[n-1] = 1          => x[n] <= y[n]   (x[n] < y[n] when strict)
///
/// Implications are written as big-M LinearLe terms with M taken from the operand
/// domains. Every satisfying (x, y) has exactly one chain extension, so solution
/// counts are preserved. Chain variables are appended to `out.aux`; the auxiliary
/// variable k of `out` has index cell_count + k.
void decompose_lex_into(ConstraintSet& out, std::span<const int> x, std::span<const int> y, bool strict,
                        const std::function<const Domain&(int)>& domain_of, int cell_count);

ConstraintSet decompose_lex_le(const MatrixModel& model, std::span<const int> x, std::span<const int> y);
ConstraintSet decompose_lex_lt(const MatrixModel& model, std::span<const int> x, std::span<const int> y);

// Replaces every LexLe/LexLt term of `set` by its decomposition; other terms are kept.
ConstraintSet decompose_lex_terms(const MatrixModel& model, const ConstraintSet& set);

}  // namespace matsym::solver
