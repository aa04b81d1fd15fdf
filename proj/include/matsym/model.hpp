#pragma once

#include <span>
#include <string>
#include <vector>

#include "matsym/constraint.hpp"
#include "matsym/domain.hpp"
#include "matsym/symmetry.hpp"

namespace matsym {

// Complete assignment of a model's cells, row-major.
using Assignment = std::vector<int>;

/// Grid of finite-domain integer variables with problem constraints and a
/// symmetry specification. Immutable once built.
class MatrixModel {
public:
    // Throws OutOfRangeIndex, EmptyDomain, MalformedPartition, LengthMismatch.
    static MatrixModel build(std::string name, std::vector<int> dims, std::vector<Domain> cell_domains,
                             ConstraintSet constraints, SymmetrySpec symmetry);
    static MatrixModel build(std::string name, std::vector<int> dims, const Domain& domain,
                             ConstraintSet constraints, SymmetrySpec symmetry);

    const std::string& name() const noexcept { return name_; }
    const std::vector<int>& dims() const noexcept { return dims_; }
    std::size_t rank() const noexcept { return dims_.size(); }
    int rows() const { return dims_.at(0); }
    int cols() const { return dims_.at(1); }
    int cell_count() const noexcept { return cell_count_; }

    const std::vector<Domain>& domains() const noexcept { return domains_; }
    const Domain& domain(int cell) const { return domains_.at(static_cast<std::size_t>(cell)); }
    bool has_uniform_domain() const;

    const ConstraintSet& constraints() const noexcept { return constraints_; }
    const SymmetrySpec& symmetry() const noexcept { return symmetry_; }

    // Row-major index of a coordinate tuple; throws OutOfRangeIndex.
    int cell(std::span<const int> coords) const;
    int cell(int row, int col) const;
    std::vector<int> coords(int cell) const;

    // Same variables and constraints, different symmetry (validated).
    MatrixModel with_symmetry(SymmetrySpec symmetry) const;

private:
    MatrixModel() = default;

    std::string name_;
    std::vector<int> dims_;
    int cell_count_ = 0;
    std::vector<Domain> domains_;
    ConstraintSet constraints_;
    SymmetrySpec symmetry_;
};

// Row-major strides for `dims`.
std::vector<int> strides_of(std::span<const int> dims);
int cell_count_of(std::span<const int> dims);

}  // namespace matsym
