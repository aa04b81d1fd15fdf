#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "matsym/constraint.hpp"
#include "matsym/flatten.hpp"
#include "matsym/model.hpp"

namespace matsym::symbreak {

enum class SchemeTag {
    DoubleLex,
    SliceLexND,
    LexLeaderFull,
    AllPerm,
    SnakeLex,
    MultisetRows,
    FirstPositionRows,
    RowSumRows,
};

inline constexpr std::uint64_t default_lexleader_guard = 10'000;

struct SchemeId {
    SchemeTag tag = SchemeTag::DoubleLex;
    bool strict = false;
    FlattenOrder flattening = FlattenOrder::RowWise;  // LexLeaderFull only
    std::uint64_t guard = default_lexleader_guard;    // LexLeaderFull only

    bool operator==(const SchemeId&) const = default;
};

// A composition of schemes; empty means "none".
struct Scheme {
    std::vector<SchemeId> parts;

    bool operator==(const Scheme&) const = default;
};

std::string_view scheme_name(SchemeTag tag);
std::string to_string(const SchemeId& id);
std::string to_string(const Scheme& scheme);

// Parses "doublelex", "lexleader:snake", "doublelex:lt", "doublelex+allperm", "none".
// Throws UnknownScheme.
SchemeId parse_scheme_id(std::string_view text);
Scheme parse_scheme(std::string_view text);
// Comma-separated list of schemes.
std::vector<Scheme> parse_scheme_list(std::string_view text);

// Row r of a 2-D model as cell indices, and column c likewise.
std::vector<int> row_cells(const MatrixModel& model, int row);
std::vector<int> col_cells(const MatrixModel& model, int col);

// Slice of dimension `dim` at `index`, flattened row-wise over the remaining dimensions.
std::vector<int> slice_cells(const MatrixModel& model, std::size_t dim, int index);

ConstraintSet gen_double_lex(const MatrixModel& model, bool strict = false);
ConstraintSet gen_slice_lex(const MatrixModel& model, bool strict = false);
ConstraintSet gen_lex_leader(const MatrixModel& model, FlattenOrder flattening = FlattenOrder::RowWise,
                             std::uint64_t guard = default_lexleader_guard);
ConstraintSet gen_all_perm(const MatrixModel& model);
ConstraintSet gen_snake_lex(const MatrixModel& model);
ConstraintSet gen_multiset_rows(const MatrixModel& model);
ConstraintSet gen_first_position_rows(const MatrixModel& model, bool strict = false);
ConstraintSet gen_row_sum_rows(const MatrixModel& model, bool strict = false);

// Throws NoSymmetry, NotApplicable, GroupTooLarge.
ConstraintSet generate(const MatrixModel& model, const SchemeId& id);
ConstraintSet generate(const MatrixModel& model, const Scheme& scheme);

}  // namespace matsym::symbreak
