#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>

#include "matsym/constraint.hpp"
#include "matsym/model.hpp"

namespace matsym::solver {

enum class VarOrder { RowWise, ColWise, Snake, SmallestDomainFirst };
enum class ValOrder { Ascending, Descending };
enum class SearchMode { FirstSolution, EnumerateAll, CountOnly };

std::string_view to_string(VarOrder order);
std::string_view to_string(ValOrder order);
std::string_view to_string(SearchMode mode);

struct SearchConfig {
    VarOrder var_order = VarOrder::RowWise;
    ValOrder val_order = ValOrder::Ascending;
    SearchMode mode = SearchMode::EnumerateAll;
    std::optional<std::uint64_t> node_limit;
    std::optional<double> time_limit;  // seconds

    // Throws InvalidParams when a set limit is not strictly positive.
    void validate() const;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t failures = 0;
    std::uint64_t propagations = 0;
    std::uint64_t solutions = 0;
    double elapsed = 0.0;  // seconds
};

enum class SolveStatus { Complete, LimitExceeded };

struct SolveResult {
    SearchStats stats;
    SolveStatus status = SolveStatus::Complete;
};

// Receives each solution projected onto the model's cells, row-major.
using SolutionSink = std::function<void(std::span<const int>)>;

/// Depth-first search with propagation to fixpoint at every node. Branches over
/// cells in `var_order`, then over any auxiliary variables; each branch assigns one
/// value (d-way). Node count includes the root. Deterministic for a given config.
SolveResult solve(const MatrixModel& model, const ConstraintSet& extra, const SearchConfig& config,
                  const SolutionSink& on_solution = {});

// All solutions as row-major assignments, in search order.
std::vector<Assignment> all_solutions(const MatrixModel& model, const ConstraintSet& extra = {},
                                      SearchConfig config = {});

}  // namespace matsym::solver
