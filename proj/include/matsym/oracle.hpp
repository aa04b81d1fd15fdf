#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "matsym/constraint.hpp"
#include "matsym/model.hpp"
#include "matsym/symbreak.hpp"

namespace matsym::oracle {

struct Budgets {
    std::uint64_t enumeration = 10'000'000;  // assignments visited
    std::uint64_t group = 1'000'000;          // group elements per canonical form

    // Defaults, overridden by MATSYM_ENUM_BUDGET / MATSYM_GROUP_BUDGET when set.
    static Budgets from_env();
};

// Every kernel has a serial reference and an OpenMP version with identical output.
enum class Execution { Serial, Parallel };

// Assignments satisfying the model's own constraints, in row-major lexicographic order.
// Throws BudgetExceeded.
std::vector<Assignment> enumerate_solutions(const MatrixModel& model, const Budgets& budgets = {},
                                            Execution exec = Execution::Parallel);

// Every assignment of the cells, problem constraints ignored.
std::vector<Assignment> enumerate_full_assignments(const MatrixModel& model, const Budgets& budgets = {},
                                                   Execution exec = Execution::Parallel);

/// Computes RowWise lex-minimal orbit representatives. Two-dimensional models sweep
/// the column group and sort rows inside each row block; higher ranks enumerate the
/// whole group. Throws BudgetExceeded when the swept group is larger than allowed.
class Canonicalizer {
public:
    Canonicalizer(const MatrixModel& model, const Budgets& budgets = {});

    Assignment canonical(std::span<const int> assignment) const;
    std::vector<Assignment> canonical_all(const std::vector<Assignment>& assignments,
                                          Execution exec = Execution::Parallel) const;

    // A group element g (one permutation per dimension) with g(a) == b, if any.
    std::optional<std::vector<Permutation>> find_mapping(std::span<const int> a, std::span<const int> b) const;

    std::size_t swept_elements() const noexcept { return sources_.size(); }

private:
    void sort_row_blocks(std::vector<int>& m) const;

    std::vector<int> dims_;
    SymmetrySpec symmetry_;
    bool column_sweep_;
    std::vector<std::vector<Permutation>> elements_;
    std::vector<std::vector<int>> sources_;  // cell maps of elements_
};

struct OrbitPartition {
    // Orbits ordered by canonical member; members sorted lexicographically.
    std::vector<std::vector<Assignment>> orbits;
    std::vector<Assignment> canonical;
};

OrbitPartition partition_into_orbits(const std::vector<Assignment>& solutions, const MatrixModel& model,
                                     const Budgets& budgets = {}, Execution exec = Execution::Parallel);

/// Solutions of a model with their orbit structure, reusable across schemes.
struct GroundTruth {
    std::vector<Assignment> solutions;  // row-major lexicographic order
    std::vector<int> orbit_of;          // index into partition.orbits
    OrbitPartition partition;
};

GroundTruth compute_ground_truth(const MatrixModel& model, const Budgets& budgets = {},
                                 Execution exec = Execution::Parallel);

struct SchemeReport {
    std::string scheme;
    std::uint64_t total_solutions = 0;
    std::uint64_t orbit_count = 0;
    std::uint64_t survivor_count = 0;
    std::uint64_t orbits_with_zero_survivors = 0;
    std::uint64_t orbits_with_multiple_survivors = 0;
    // Survivors equal to their orbit's RowWise lex-min member.
    std::uint64_t canonical_survivors = 0;
    std::vector<std::pair<Assignment, Assignment>> witness_pairs;

    bool sound() const noexcept { return orbits_with_zero_survivors == 0; }
    bool complete() const noexcept { return sound() && survivor_count == orbit_count; }
};

inline constexpr std::size_t default_witness_pairs = 3;

SchemeReport check_scheme(const GroundTruth& truth, const ConstraintSet& breaking, std::string label,
                          std::size_t max_witnesses = default_witness_pairs);

// Generates the scheme's constraints and checks them against fresh ground truth.
SchemeReport check_soundness(const MatrixModel& model, const symbreak::Scheme& scheme, const Budgets& budgets = {});

nlohmann::json to_json(const SchemeReport& report, const MatrixModel& model);

struct EntailmentResult {
    bool holds = true;
    std::uint64_t antecedent_models = 0;  // full assignments satisfying the antecedent
    std::vector<Assignment> counterexamples;
};

// Over every full assignment: antecedent => consequent.
EntailmentResult check_entailment(const MatrixModel& model, const ConstraintSet& antecedent,
                                  const ConstraintSet& consequent, const Budgets& budgets = {},
                                  std::size_t max_counterexamples = 5);
EntailmentResult check_entailment(const MatrixModel& model, const symbreak::Scheme& antecedent,
                                  const symbreak::Scheme& consequent, const Budgets& budgets = {},
                                  std::size_t max_counterexamples = 5);

struct Witness {
    std::vector<int> dims;
    Assignment first;
    Assignment second;
    std::vector<Permutation> mapping;  // mapping(first) == second
};

struct SweepResult {
    std::optional<Witness> witness;
    std::vector<std::vector<int>> checked;                            // instances examined
    std::vector<std::pair<std::vector<int>, std::string>> skipped;  // dims and reason
};

/// Unconstrained fully symmetric 2-D models over `domain`, in order of cell count then
/// (rows, cols); returns the first where `scheme` leaves two orbit-equivalent survivors.
SweepResult find_smallest_incompleteness_witness(const symbreak::Scheme& scheme, int max_cells,
                                                 const Domain& domain, const Budgets& budgets = {});

nlohmann::json to_json(const SweepResult& sweep);

// Unconstrained r x c model over `domain` with full row and column symmetry.
MatrixModel unconstrained_grid(int rows, int cols, const Domain& domain);

}  // namespace matsym::oracle
