#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "matsym/model.hpp"

namespace matsym {

enum class FlattenOrder { RowWise, ColWise, Snake };

std::string_view to_string(FlattenOrder order);

/// A total order on cell indices.
struct Flattening {
    FlattenOrder order = FlattenOrder::RowWise;
    std::vector<int> index_sequence;
};

// RowWise is storage order. ColWise varies the first coordinate fastest. Snake is
// RowWise with the last coordinate reversed on every odd "row" (all coordinates but
// the last, taken row-major).
Flattening flatten(std::span<const int> dims, FlattenOrder order);
Flattening flatten(const MatrixModel& model, FlattenOrder order);

/// Cell mapping of a group element: result[i] is the cell whose value lands at
/// cell i, so (sigma M)[i] = M[result[i]]. Requires one permutation per dimension.
std::vector<int> permutation_source_cells(std::span<const int> dims, const std::vector<Permutation>& perms);

/// Rearranges an n-dimensional assignment: result[i0,...,ik] = a[p0[i0],...,pk[ik]].
/// Throws LengthMismatch on shape errors and BlockViolation when a permutation is
/// invalid or leaves its block in `symmetry`.
Assignment apply_permutation(std::span<const int> assignment, std::span<const int> dims,
                             const SymmetrySpec& symmetry, const std::vector<Permutation>& perms);

// Two-dimensional convenience over a model's shape and symmetry.
Assignment apply_permutation(std::span<const int> assignment, const MatrixModel& model,
                             const Permutation& row_perm, const Permutation& col_perm);

}  // namespace matsym
