#include "matsym/flatten.hpp"

#include <numeric>

#include "matsym/error.hpp"

namespace matsym {

std::string_view to_string(FlattenOrder order) {
    switch (order) {
        case FlattenOrder::RowWise: return "rowwise";
        case FlattenOrder::ColWise: return "colwise";
        case FlattenOrder::Snake: return "snake";
    }
    return "?";
}

Flattening flatten(std::span<const int> dims, FlattenOrder order) {
    const int n = cell_count_of(dims);
    Flattening f{order, {}};
    f.index_sequence.reserve(static_cast<std::size_t>(n));
    switch (order) {
        case FlattenOrder::RowWise:
            f.index_sequence.resize(static_cast<std::size_t>(n));
            std::iota(f.index_sequence.begin(), f.index_sequence.end(), 0);
            break;
        case FlattenOrder::ColWise: {
            const auto strides = strides_of(dims);
            std::vector<int> coord(dims.size(), 0);
            for (int k = 0; k < n; ++k) {
                int idx = 0;
                for (std::size_t d = 0; d < dims.size(); ++d) idx += coord[d] * strides[d];
                f.index_sequence.push_back(idx);
                for (std::size_t d = 0; d < dims.size(); ++d) {
                    if (++coord[d] < dims[d]) break;
                    coord[d] = 0;
                }
            }
            break;
        }
        case FlattenOrder::Snake: {
            const int width = dims.back();
            const int lines = n / width;
            for (int line = 0; line < lines; ++line) {
                for (int k = 0; k < width; ++k) {
                    const int col = (line % 2 == 0) ? k : width - 1 - k;
                    f.index_sequence.push_back(line * width + col);
                }
            }
            break;
        }
    }
    return f;
}

Flattening flatten(const MatrixModel& model, FlattenOrder order) { return flatten(model.dims(), order); }

std::vector<int> permutation_source_cells(std::span<const int> dims, const std::vector<Permutation>& perms) {
    if (perms.size() != dims.size()) {
        throw Error(ErrorCode::LengthMismatch, "need one permutation per dimension");
    }
    const int n = cell_count_of(dims);
    const auto strides = strides_of(dims);
    std::vector<int> out(static_cast<std::size_t>(n));
    std::vector<int> coord(dims.size(), 0);
    for (int i = 0; i < n; ++i) {
        int src = 0;
        for (std::size_t d = 0; d < dims.size(); ++d) src += perms[d][static_cast<std::size_t>(coord[d])] * strides[d];
        out[static_cast<std::size_t>(i)] = src;
        for (std::size_t d = dims.size(); d-- > 0;) {
            if (++coord[d] < dims[d]) break;
            coord[d] = 0;
        }
    }
    return out;
}

Assignment apply_permutation(std::span<const int> assignment, std::span<const int> dims,
                             const SymmetrySpec& symmetry, const std::vector<Permutation>& perms) {
    if (assignment.size() != static_cast<std::size_t>(cell_count_of(dims))) {
        throw Error(ErrorCode::LengthMismatch, "assignment size does not match dimensions");
    }
    if (perms.size() != dims.size()) {
        throw Error(ErrorCode::LengthMismatch, "need one permutation per dimension");
    }
    for (std::size_t d = 0; d < dims.size(); ++d) {
        if (perms[d].size() != static_cast<std::size_t>(dims[d])) {
            throw Error(ErrorCode::LengthMismatch, "permutation length differs from dimension " + std::to_string(d));
        }
        if (!symmetry.respects(d, perms[d])) {
            throw Error(ErrorCode::BlockViolation,
                        "permutation of dimension " + std::to_string(d) + " moves an index across blocks");
        }
    }
    const auto src = permutation_source_cells(dims, perms);
    Assignment out(assignment.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = assignment[static_cast<std::size_t>(src[i])];
    return out;
}

Assignment apply_permutation(std::span<const int> assignment, const MatrixModel& model,
                             const Permutation& row_perm, const Permutation& col_perm) {
    if (model.rank() != 2) throw Error(ErrorCode::NotApplicable, "row/column permutation needs a 2-D model");
    return apply_permutation(assignment, model.dims(), model.symmetry(), {row_perm, col_perm});
}

}  // namespace matsym
