#include "matsym/problems.hpp"

#include <algorithm>
#include <random>

#include "matsym/error.hpp"
#include "matsym/symbreak.hpp"

namespace matsym::problems {

namespace {

ConstraintTerm sum_term(std::vector<int> cells, int sign, int rhs, bool equality) {
    std::vector<int> coeffs(cells.size(), sign);
    return equality ? ConstraintTerm::linear_eq(std::move(cells), std::move(coeffs), rhs)
                    : ConstraintTerm::linear_le(std::move(cells), std::move(coeffs), rhs);
}

}  // namespace

MatrixModel build_bibd(const BibdParams& p) {
    if (p.v < 1 || p.b < 1 || p.r < 1 || p.k < 1 || p.lambda < 1) {
        throw Error(ErrorCode::InvalidParams, "BIBD parameters must be positive");
    }
    if (p.v * p.r != p.b * p.k) {
        throw Error(ErrorCode::InvalidParams, "BIBD needs v*r == b*k (" + std::to_string(p.v * p.r) +
                                                  " != " + std::to_string(p.b * p.k) + ")");
    }
    if (p.lambda * (p.v - 1) != p.r * (p.k - 1)) {
        throw Error(ErrorCode::InvalidParams, "BIBD needs lambda*(v-1) == r*(k-1) (" +
                                                  std::to_string(p.lambda * (p.v - 1)) + " != " +
                                                  std::to_string(p.r * (p.k - 1)) + ")");
    }
    std::vector<int> dims{p.v, p.b};
    auto cell = [&](int i, int j) { return i * p.b + j; };
    ConstraintSet cons;
    for (int i = 0; i < p.v; ++i) {
        std::vector<int> row;
        for (int j = 0; j < p.b; ++j) row.push_back(cell(i, j));
        cons.add(sum_term(row, 1, p.r, true));
    }
    for (int j = 0; j < p.b; ++j) {
        std::vector<int> col;
        for (int i = 0; i < p.v; ++i) col.push_back(cell(i, j));
        cons.add(sum_term(col, 1, p.k, true));
    }
    for (int i = 0; i < p.v; ++i) {
        for (int i2 = i + 1; i2 < p.v; ++i2) {
            std::vector<int> a, b;
            for (int j = 0; j < p.b; ++j) {
                a.push_back(cell(i, j));
                b.push_back(cell(i2, j));
            }
            cons.add(ConstraintTerm::scalar_product_eq(a, b, p.lambda));
        }
    }
    const std::string name = "bibd-" + std::to_string(p.v) + "-" + std::to_string(p.b) + "-" + std::to_string(p.r) +
                             "-" + std::to_string(p.k) + "-" + std::to_string(p.lambda);
    return MatrixModel::build(name, dims, Domain{0, 1}, std::move(cons), SymmetrySpec::full(dims));
}

RackInstance build_rack(const RackParams& p) {
    if (p.rack_models.empty()) throw Error(ErrorCode::InvalidParams, "rack problem needs at least one rack model");
    if (p.card_types.empty()) throw Error(ErrorCode::InvalidParams, "rack problem needs at least one card type");
    for (const auto& m : p.rack_models) {
        if (m.capacity < 0 || m.power < 0 || m.count < 0) {
            throw Error(ErrorCode::InvalidParams, "rack model quantities must be nonnegative");
        }
    }
    for (const auto& c : p.card_types) {
        if (c.power < 0 || c.quantity < 0) throw Error(ErrorCode::InvalidParams, "card quantities must be nonnegative");
    }

    std::vector<int> model_of_row;
    std::vector<SymmetrySpec::Block> row_blocks;
    for (std::size_t m = 0; m < p.rack_models.size(); ++m) {
        SymmetrySpec::Block block;
        for (int k = 0; k < p.rack_models[m].count; ++k) {
            block.push_back(static_cast<int>(model_of_row.size()));
            model_of_row.push_back(static_cast<int>(m));
        }
        if (!block.empty()) row_blocks.push_back(block);
    }
    const int racks = static_cast<int>(model_of_row.size());
    if (racks == 0) throw Error(ErrorCode::InvalidParams, "rack problem needs at least one rack");
    const int types = static_cast<int>(p.card_types.size());

    std::vector<SymmetrySpec::Block> col_blocks;
    std::vector<int> col_block_of(static_cast<std::size_t>(types), -1);
    for (int j = 0; j < types; ++j) {
        for (int j2 = 0; j2 < j; ++j2) {
            if (p.card_types[static_cast<std::size_t>(j2)].power == p.card_types[static_cast<std::size_t>(j)].power &&
                p.card_types[static_cast<std::size_t>(j2)].quantity == p.card_types[static_cast<std::size_t>(j)].quantity) {
                col_block_of[static_cast<std::size_t>(j)] = col_block_of[static_cast<std::size_t>(j2)];
                break;
            }
        }
        if (col_block_of[static_cast<std::size_t>(j)] < 0) {
            col_block_of[static_cast<std::size_t>(j)] = static_cast<int>(col_blocks.size());
            col_blocks.emplace_back();
        }
        col_blocks[static_cast<std::size_t>(col_block_of[static_cast<std::size_t>(j)])].push_back(j);
    }

    std::vector<int> dims{racks, types};
    std::vector<Domain> domains;
    for (int i = 0; i < racks; ++i) {
        const auto& rack = p.rack_models[static_cast<std::size_t>(model_of_row[static_cast<std::size_t>(i)])];
        for (int j = 0; j < types; ++j) {
            const int hi = std::min(rack.capacity, p.card_types[static_cast<std::size_t>(j)].quantity);
            domains.push_back(Domain::range(0, hi));
        }
    }

    ConstraintSet cons;
    for (int i = 0; i < racks; ++i) {
        const auto& rack = p.rack_models[static_cast<std::size_t>(model_of_row[static_cast<std::size_t>(i)])];
        std::vector<int> row;
        std::vector<int> power;
        for (int j = 0; j < types; ++j) {
            row.push_back(i * types + j);
            power.push_back(p.card_types[static_cast<std::size_t>(j)].power);
        }
        cons.add(ConstraintTerm::linear_le(row, std::vector<int>(row.size(), 1), rack.capacity));
        cons.add(ConstraintTerm::linear_le(row, power, rack.power));
    }
    for (int j = 0; j < types; ++j) {
        std::vector<int> col;
        for (int i = 0; i < racks; ++i) col.push_back(i * types + j);
        cons.add(sum_term(col, 1, p.card_types[static_cast<std::size_t>(j)].quantity, true));
    }

    return RackInstance{MatrixModel::build("rack-" + std::to_string(racks) + "x" + std::to_string(types), dims,
                                           std::move(domains), std::move(cons), SymmetrySpec({row_blocks, col_blocks})),
                        std::move(model_of_row)};
}

MatrixModel random_model(std::vector<int> dims, int domain_size, double density, std::uint64_t seed) {
    if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1) {
        throw Error(ErrorCode::InvalidParams, "random models are two-dimensional with positive extents");
    }
    if (domain_size < 1) throw Error(ErrorCode::InvalidParams, "domain size must be positive");
    if (!(density >= 0.0 && density <= 1.0)) throw Error(ErrorCode::InvalidParams, "density must lie in [0, 1]");

    // raw engine output only
    std::mt19937_64 gen(seed);
    auto draw = [&](int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); };
    auto include = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53 < density; };

    const int rows = dims[0];
    const int cols = dims[1];
    const int top = domain_size - 1;
    const MatrixModel shape = MatrixModel::build("shape", dims, Domain::range(0, top), {}, SymmetrySpec::full(dims));
    std::vector<std::vector<int>> row_sets, col_sets;
    for (int r = 0; r < rows; ++r) row_sets.push_back(symbreak::row_cells(shape, r));
    for (int c = 0; c < cols; ++c) col_sets.push_back(symbreak::col_cells(shape, c));
    std::vector<int> every(static_cast<std::size_t>(rows * cols));
    for (int i = 0; i < rows * cols; ++i) every[static_cast<std::size_t>(i)] = i;

    ConstraintSet cons;
    auto add_all = [&](const std::vector<std::vector<int>>& sets, int sign, int rhs, bool equality) {
        for (const auto& s : sets) cons.add(sum_term(s, sign, sign * rhs, equality));
    };
    // lower <= upper
    auto bounds = [&](const std::vector<std::vector<int>>& sets, int length) {
        const bool upper_on = include();
        const bool lower_on = include();
        int a = draw(length * top + 1);
        int b = draw(length * top + 1);
        if (a < b) std::swap(a, b);
        if (upper_on) add_all(sets, 1, a, false);
        if (lower_on) add_all(sets, -1, b, false);
    };
    bounds(row_sets, cols);
    bounds(col_sets, rows);
    bounds({every}, rows * cols);
    {
        const bool row_on = include();
        const int row_target = draw(cols * top + 1);
        bool col_on = include();
        int col_target = draw(rows * top + 1);
        if (row_on) add_all(row_sets, 1, row_target, true);
        if (col_on && row_on) {
            // both totals count every cell once
            if ((rows * row_target) % cols != 0) col_on = false;
            col_target = rows * row_target / cols;
        }
        if (col_on) add_all(col_sets, 1, col_target, true);
    }
    {
        const bool on = include();
        const int lambda = draw(cols + 1);
        if (on && domain_size == 2) {
            for (int r = 0; r < rows; ++r) {
                for (int r2 = r + 1; r2 < rows; ++r2) {
                    cons.add(ConstraintTerm::scalar_product_eq(row_sets[static_cast<std::size_t>(r)],
                                                               row_sets[static_cast<std::size_t>(r2)], lambda));
                }
            }
        }
    }
    return MatrixModel::build("random-" + std::to_string(seed), std::move(dims), Domain::range(0, top),
                              std::move(cons), shape.symmetry());
}

}  // namespace matsym::problems
