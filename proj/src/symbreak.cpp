#include "matsym/symbreak.hpp"

#include <array>

#include "matsym/error.hpp"

namespace matsym::symbreak {

namespace {

constexpr std::array all_tags = {
    SchemeTag::DoubleLex,    SchemeTag::SliceLexND,   SchemeTag::LexLeaderFull,     SchemeTag::AllPerm,
    SchemeTag::SnakeLex,     SchemeTag::MultisetRows, SchemeTag::FirstPositionRows, SchemeTag::RowSumRows,
};

void require_2d(const MatrixModel& model, std::string_view scheme) {
    if (model.rank() != 2) {
        throw Error(ErrorCode::NotApplicable, std::string(scheme) + " needs a 2-D model");
    }
}

void require_symmetry(const MatrixModel& model, std::string_view scheme) {
    if (!model.symmetry().has_symmetry()) {
        throw Error(ErrorCode::NoSymmetry, std::string(scheme) + ": every symmetry block is a singleton");
    }
}

void require_row_symmetry(const MatrixModel& model, std::string_view scheme) {
    require_2d(model, scheme);
    if (!model.symmetry().dimension_has_symmetry(0)) {
        throw Error(ErrorCode::NoSymmetry, std::string(scheme) + ": no interchangeable rows");
    }
}

ConstraintTerm ordering_term(std::vector<int> x, std::vector<int> y, bool strict) {
    return strict ? ConstraintTerm::lex_lt(std::move(x), std::move(y))
                  : ConstraintTerm::lex_le(std::move(x), std::move(y));
}

// Calls f(a, b) for each adjacent pair inside each block of a dimension's partition.
template <typename F>
void for_adjacent_pairs(const SymmetrySpec::Partition& partition, F&& f) {
    for (const auto& block : partition) {
        for (std::size_t k = 0; k + 1 < block.size(); ++k) f(block[k], block[k + 1]);
    }
}

// x <=lex image of x under a cell mapping, with positions that compare a variable
// to itself removed (they always tie).
void add_image_constraint(ConstraintSet& out, const std::vector<int>& sequence, const std::vector<int>& source) {
    std::vector<int> x, y;
    for (int cell : sequence) {
        const int img = source[static_cast<std::size_t>(cell)];
        if (img == cell) continue;
        x.push_back(cell);
        y.push_back(img);
    }
    if (!x.empty()) out.add(ConstraintTerm::lex_le(std::move(x), std::move(y)));
}

Permutation transposition(int extent, int a, int b) {
    Permutation p(static_cast<std::size_t>(extent));
    for (int i = 0; i < extent; ++i) p[static_cast<std::size_t>(i)] = i;
    std::swap(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)]);
    return p;
}

Permutation identity(int extent) { return transposition(extent, 0, 0); }

}  // namespace

std::string_view scheme_name(SchemeTag tag) {
    switch (tag) {
        case SchemeTag::DoubleLex: return "doublelex";
        case SchemeTag::SliceLexND: return "slicelex";
        case SchemeTag::LexLeaderFull: return "lexleader";
        case SchemeTag::AllPerm: return "allperm";
        case SchemeTag::SnakeLex: return "snakelex";
        case SchemeTag::MultisetRows: return "multiset-rows";
        case SchemeTag::FirstPositionRows: return "first-pos";
        case SchemeTag::RowSumRows: return "row-sum";
    }
    return "?";
}

std::string to_string(const SchemeId& id) {
    std::string s(scheme_name(id.tag));
    if (id.strict) s += ":lt";
    if (id.tag == SchemeTag::LexLeaderFull && id.flattening != FlattenOrder::RowWise) {
        s += ":";
        s += to_string(id.flattening);
    }
    return s;
}

std::string to_string(const Scheme& scheme) {
    if (scheme.parts.empty()) return "none";
    std::string s;
    for (const auto& p : scheme.parts) {
        if (!s.empty()) s += '+';
        s += to_string(p);
    }
    return s;
}

SchemeId parse_scheme_id(std::string_view text) {
    auto colon = text.find(':');
    const auto head = text.substr(0, colon);
    SchemeId id;
    bool found = false;
    for (SchemeTag tag : all_tags) {
        if (scheme_name(tag) == head) {
            id.tag = tag;
            found = true;
        }
    }
    if (!found) throw Error(ErrorCode::UnknownScheme, "unknown scheme '" + std::string(head) + "'");
    while (colon != std::string_view::npos) {
        const auto next = text.find(':', colon + 1);
        const auto opt = text.substr(colon + 1, next == std::string_view::npos ? next : next - colon - 1);
        if (opt == "lt") {
            id.strict = true;
        } else if (opt == "le") {
            id.strict = false;
        } else if (id.tag == SchemeTag::LexLeaderFull && opt == "rowwise") {
            id.flattening = FlattenOrder::RowWise;
        } else if (id.tag == SchemeTag::LexLeaderFull && opt == "colwise") {
            id.flattening = FlattenOrder::ColWise;
        } else if (id.tag == SchemeTag::LexLeaderFull && opt == "snake") {
            id.flattening = FlattenOrder::Snake;
        } else {
            throw Error(ErrorCode::UnknownScheme,
                        "unknown option '" + std::string(opt) + "' for scheme " + std::string(head));
        }
        colon = next;
    }
    return id;
}

Scheme parse_scheme(std::string_view text) {
    Scheme scheme;
    if (text == "none") return scheme;
    if (text.empty()) throw Error(ErrorCode::UnknownScheme, "empty scheme name");
    std::size_t start = 0;
    while (true) {
        const auto plus = text.find('+', start);
        scheme.parts.push_back(parse_scheme_id(text.substr(start, plus == std::string_view::npos ? plus : plus - start)));
        if (plus == std::string_view::npos) break;
        start = plus + 1;
    }
    return scheme;
}

std::vector<Scheme> parse_scheme_list(std::string_view text) {
    std::vector<Scheme> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_scheme(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<int> row_cells(const MatrixModel& model, int row) {
    std::vector<int> out;
    for (int c = 0; c < model.cols(); ++c) out.push_back(model.cell(row, c));
    return out;
}

std::vector<int> col_cells(const MatrixModel& model, int col) {
    std::vector<int> out;
    for (int r = 0; r < model.rows(); ++r) out.push_back(model.cell(r, col));
    return out;
}

std::vector<int> slice_cells(const MatrixModel& model, std::size_t dim, int index) {
    std::vector<int> out;
    for (int cell = 0; cell < model.cell_count(); ++cell) {
        if (model.coords(cell)[dim] == index) out.push_back(cell);
    }
    return out;
}

ConstraintSet gen_double_lex(const MatrixModel& model, bool strict) {
    require_2d(model, "doublelex");
    require_symmetry(model, "doublelex");
    ConstraintSet out;
    for_adjacent_pairs(model.symmetry().partition(0),
                       [&](int a, int b) { out.add(ordering_term(row_cells(model, a), row_cells(model, b), strict)); });
    for_adjacent_pairs(model.symmetry().partition(1),
                       [&](int a, int b) { out.add(ordering_term(col_cells(model, a), col_cells(model, b), strict)); });
    return out;
}

ConstraintSet gen_slice_lex(const MatrixModel& model, bool strict) {
    if (model.rank() < 2) throw Error(ErrorCode::NotApplicable, "slicelex needs at least 2 dimensions");
    require_symmetry(model, "slicelex");
    ConstraintSet out;
    for (std::size_t d = 0; d < model.rank(); ++d) {
        for_adjacent_pairs(model.symmetry().partition(d), [&](int a, int b) {
            out.add(ordering_term(slice_cells(model, d, a), slice_cells(model, d, b), strict));
        });
    }
    return out;
}

ConstraintSet gen_lex_leader(const MatrixModel& model, FlattenOrder flattening, std::uint64_t guard) {
    if (model.rank() < 2) throw Error(ErrorCode::NotApplicable, "lexleader needs at least 2 dimensions");
    const auto order = model.symmetry().group_order();
    if (order > guard) throw GroupTooLarge(matsym::to_string(order), guard);
    const auto sequence = flatten(model, flattening).index_sequence;
    ConstraintSet out;
    bool first = true;
    for_each_group_element(model.symmetry(), model.dims(), [&](const std::vector<Permutation>& element) {
        if (first) {  // identity
            first = false;
            return true;
        }
        add_image_constraint(out, sequence, permutation_source_cells(model.dims(), element));
        return true;
    });
    return out;
}

ConstraintSet gen_all_perm(const MatrixModel& model) {
    require_row_symmetry(model, "allperm");
    const auto& sym = model.symmetry();
    const auto& first_block = sym.partition(0)[static_cast<std::size_t>(sym.block_of(0, 0))];
    if (first_block.size() < 2) {
        throw Error(ErrorCode::NoSymmetry, "allperm: the first row has no interchangeable partner");
    }
    if (sym.partition(1).size() != 1) {
        throw Error(ErrorCode::NotApplicable, "allperm needs every column interchangeable");
    }
    ConstraintSet out;
    const auto first = row_cells(model, 0);
    for (int other : first_block) {
        if (other != 0) out.add(ConstraintTerm::allperm_le(first, row_cells(model, other)));
    }
    return out;
}

ConstraintSet gen_snake_lex(const MatrixModel& model) {
    require_2d(model, "snakelex");
    require_symmetry(model, "snakelex");
    const auto sequence = flatten(model, FlattenOrder::Snake).index_sequence;
    ConstraintSet out;
    const int rows = model.rows();
    const int cols = model.cols();
    for_adjacent_pairs(model.symmetry().partition(0), [&](int a, int b) {
        add_image_constraint(out, sequence,
                             permutation_source_cells(model.dims(), {transposition(rows, a, b), identity(cols)}));
    });
    for_adjacent_pairs(model.symmetry().partition(1), [&](int a, int b) {
        add_image_constraint(out, sequence,
                             permutation_source_cells(model.dims(), {identity(rows), transposition(cols, a, b)}));
    });
    return out;
}

ConstraintSet gen_multiset_rows(const MatrixModel& model) {
    require_row_symmetry(model, "multiset-rows");
    ConstraintSet out;
    for_adjacent_pairs(model.symmetry().partition(0), [&](int a, int b) {
        out.add(ConstraintTerm::multiset_le(row_cells(model, a), row_cells(model, b)));
    });
    return out;
}

ConstraintSet gen_first_position_rows(const MatrixModel& model, bool strict) {
    require_row_symmetry(model, "first-pos");
    ConstraintSet out;
    for_adjacent_pairs(model.symmetry().partition(0), [&](int a, int b) {
        out.add(ConstraintTerm::linear_le({model.cell(a, 0), model.cell(b, 0)}, {1, -1}, strict ? -1 : 0));
    });
    return out;
}

ConstraintSet gen_row_sum_rows(const MatrixModel& model, bool strict) {
    require_row_symmetry(model, "row-sum");
    ConstraintSet out;
    for_adjacent_pairs(model.symmetry().partition(0), [&](int a, int b) {
        auto vars = row_cells(model, a);
        const auto other = row_cells(model, b);
        vars.insert(vars.end(), other.begin(), other.end());
        std::vector<int> coeffs(static_cast<std::size_t>(model.cols()), 1);
        coeffs.resize(vars.size(), -1);
        out.add(ConstraintTerm::linear_le(std::move(vars), std::move(coeffs), strict ? -1 : 0));
    });
    return out;
}

ConstraintSet generate(const MatrixModel& model, const SchemeId& id) {
    auto no_strict = [&] {
        if (id.strict) {
            throw Error(ErrorCode::NotApplicable, std::string(scheme_name(id.tag)) + " has no strict variant");
        }
    };
    switch (id.tag) {
        case SchemeTag::DoubleLex: return gen_double_lex(model, id.strict);
        case SchemeTag::SliceLexND: return gen_slice_lex(model, id.strict);
        case SchemeTag::LexLeaderFull: no_strict(); return gen_lex_leader(model, id.flattening, id.guard);
        case SchemeTag::AllPerm: no_strict(); return gen_all_perm(model);
        case SchemeTag::SnakeLex: no_strict(); return gen_snake_lex(model);
        case SchemeTag::MultisetRows: no_strict(); return gen_multiset_rows(model);
        case SchemeTag::FirstPositionRows: return gen_first_position_rows(model, id.strict);
        case SchemeTag::RowSumRows: return gen_row_sum_rows(model, id.strict);
    }
    throw Error(ErrorCode::UnknownScheme, "unhandled scheme");
}

ConstraintSet generate(const MatrixModel& model, const Scheme& scheme) {
    ConstraintSet out;
    for (const auto& part : scheme.parts) out.append(generate(model, part), model.cell_count());
    return out;
}

}  // namespace matsym::symbreak
