#include "matsym/model.hpp"

#include <algorithm>

#include "matsym/error.hpp"

namespace matsym {

std::vector<int> strides_of(std::span<const int> dims) {
    std::vector<int> strides(dims.size(), 1);
    for (std::size_t d = dims.size(); d-- > 1;) strides[d - 1] = strides[d] * dims[d];
    return strides;
}

int cell_count_of(std::span<const int> dims) {
    int n = 1;
    for (int e : dims) n *= e;
    return n;
}

MatrixModel MatrixModel::build(std::string name, std::vector<int> dims, std::vector<Domain> cell_domains,
                               ConstraintSet constraints, SymmetrySpec symmetry) {
    if (dims.empty()) throw Error(ErrorCode::OutOfRangeIndex, "model needs at least one dimension");
    for (int e : dims) {
        if (e < 1) throw Error(ErrorCode::OutOfRangeIndex, "dimension extent " + std::to_string(e) + " < 1");
    }
    const int cells = cell_count_of(dims);
    if (cell_domains.size() != static_cast<std::size_t>(cells)) {
        throw Error(ErrorCode::LengthMismatch, std::to_string(cell_domains.size()) + " domains for " +
                                                   std::to_string(cells) + " cells");
    }
    for (std::size_t i = 0; i < cell_domains.size(); ++i) {
        if (cell_domains[i].empty()) {
            throw Error(ErrorCode::EmptyDomain, "cell " + std::to_string(i) + " has an empty domain");
        }
    }
    if (!constraints.aux.empty()) {
        throw Error(ErrorCode::MalformedTerm, "problem constraints cannot introduce auxiliary variables");
    }
    for (const auto& term : constraints.terms) {
        term.validate();
        if (term.max_variable() >= cells) {
            throw Error(ErrorCode::OutOfRangeIndex, std::string(to_string(term.kind)) + " references variable " +
                                                        std::to_string(term.max_variable()) + " of " +
                                                        std::to_string(cells));
        }
    }
    symmetry.validate(dims);

    MatrixModel m;
    m.name_ = std::move(name);
    m.dims_ = std::move(dims);
    m.cell_count_ = cells;
    m.domains_ = std::move(cell_domains);
    m.constraints_ = std::move(constraints);
    m.symmetry_ = std::move(symmetry);
    return m;
}

MatrixModel MatrixModel::build(std::string name, std::vector<int> dims, const Domain& domain,
                               ConstraintSet constraints, SymmetrySpec symmetry) {
    if (domain.empty()) throw Error(ErrorCode::EmptyDomain, "model domain is empty");
    const int cells = cell_count_of(dims);
    std::vector<Domain> domains(static_cast<std::size_t>(std::max(cells, 0)), domain);
    return build(std::move(name), std::move(dims), std::move(domains), std::move(constraints),
                 std::move(symmetry));
}

bool MatrixModel::has_uniform_domain() const {
    return std::all_of(domains_.begin(), domains_.end(), [&](const Domain& d) { return d == domains_.front(); });
}

int MatrixModel::cell(std::span<const int> coords) const {
    if (coords.size() != dims_.size()) {
        throw Error(ErrorCode::OutOfRangeIndex, "coordinate rank " + std::to_string(coords.size()) +
                                                    " != model rank " + std::to_string(dims_.size()));
    }
    int index = 0;
    for (std::size_t d = 0; d < dims_.size(); ++d) {
        if (coords[d] < 0 || coords[d] >= dims_[d]) {
            throw Error(ErrorCode::OutOfRangeIndex, "coordinate " + std::to_string(coords[d]) +
                                                        " outside dimension " + std::to_string(d) +
                                                        " of extent " + std::to_string(dims_[d]));
        }
        index = index * dims_[d] + coords[d];
    }
    return index;
}

int MatrixModel::cell(int row, int col) const {
    const int c[2] = {row, col};
    return cell(c);
}

std::vector<int> MatrixModel::coords(int cell) const {
    std::vector<int> out(dims_.size());
    for (std::size_t d = dims_.size(); d-- > 0;) {
        out[d] = cell % dims_[d];
        cell /= dims_[d];
    }
    return out;
}

MatrixModel MatrixModel::with_symmetry(SymmetrySpec symmetry) const {
    symmetry.validate(dims_);
    MatrixModel m = *this;
    m.symmetry_ = std::move(symmetry);
    return m;
}

}  // namespace matsym
