#include "matsym/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include <omp.h>

#include "matsym/error.hpp"
#include "matsym/flatten.hpp"

namespace matsym::oracle {

namespace {

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return fallback;
    char* end = nullptr;
    const auto v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0) {
        throw Error(ErrorCode::InvalidParams, std::string(name) + " must be a positive integer");
    }
    return v;
}

BigInt assignment_space(const MatrixModel& model) {
    BigInt total = 1;
    for (const auto& d : model.domains()) total *= d.size();
    return total;
}

// Visits assignments with index in [begin, end) of the mixed-radix space (last cell
// fastest), so the visiting order is row-major lexicographic.
template <typename Visit>
void scan_range(const MatrixModel& model, std::uint64_t begin, std::uint64_t end, Visit&& visit) {
    if (begin >= end) return;
    const auto n = static_cast<std::size_t>(model.cell_count());
    std::vector<std::size_t> digit(n);
    std::uint64_t rest = begin;
    for (std::size_t i = n; i-- > 0;) {
        const auto radix = model.domain(static_cast<int>(i)).size();
        digit[i] = static_cast<std::size_t>(rest % radix);
        rest /= radix;
    }
    Assignment a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = model.domain(static_cast<int>(i)).values()[digit[i]];
    for (std::uint64_t k = begin; k < end; ++k) {
        visit(a);
        for (std::size_t i = n; i-- > 0;) {
            const auto& vals = model.domain(static_cast<int>(i)).values();
            if (++digit[i] < vals.size()) {
                a[i] = vals[digit[i]];
                break;
            }
            digit[i] = 0;
            a[i] = vals[0];
        }
    }
}

template <typename Keep>
std::vector<Assignment> scan(const MatrixModel& model, const Budgets& budgets, Execution exec, Keep&& keep) {
    const BigInt space = assignment_space(model);
    if (space > budgets.enumeration) {
        throw BudgetExceeded("enumeration", to_string(space), budgets.enumeration);
    }
    const auto total = space.convert_to<std::uint64_t>();
    std::vector<Assignment> out;
    if (exec == Execution::Serial) {
        scan_range(model, 0, total, [&](const Assignment& a) {
            if (keep(a)) out.push_back(a);
        });
        return out;
    }
    const int threads = omp_get_max_threads();
    std::vector<std::vector<Assignment>> parts(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
    {
        const auto t = static_cast<std::uint64_t>(omp_get_thread_num());
        const auto nt = static_cast<std::uint64_t>(omp_get_num_threads());
        const std::uint64_t lo = total * t / nt;
        const std::uint64_t hi = total * (t + 1) / nt;
        auto& mine = parts[static_cast<std::size_t>(t)];
        scan_range(model, lo, hi, [&](const Assignment& a) {
            if (keep(a)) mine.push_back(a);
        });
    }
    for (auto& p : parts) {
        out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    }
    return out;
}

// flags[i] = pred(items[i]).
template <typename Pred>
std::vector<char> evaluate_all(const std::vector<Assignment>& items, Execution exec, Pred&& pred) {
    std::vector<char> flags(items.size(), 0);
    const auto n = static_cast<std::int64_t>(items.size());
    if (exec == Execution::Serial) {
        for (std::int64_t i = 0; i < n; ++i) flags[static_cast<std::size_t>(i)] = pred(items[static_cast<std::size_t>(i)]);
    } else {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) flags[static_cast<std::size_t>(i)] = pred(items[static_cast<std::size_t>(i)]);
    }
    return flags;
}

nlohmann::json grid_json(const Assignment& a) { return nlohmann::json(a); }

}  // namespace

Budgets Budgets::from_env() {
    Budgets b;
    b.enumeration = env_or("MATSYM_ENUM_BUDGET", b.enumeration);
    b.group = env_or("MATSYM_GROUP_BUDGET", b.group);
    return b;
}

std::vector<Assignment> enumerate_solutions(const MatrixModel& model, const Budgets& budgets, Execution exec) {
    const auto& cons = model.constraints();
    return scan(model, budgets, exec, [&](const Assignment& a) { return holds(cons, a); });
}

std::vector<Assignment> enumerate_full_assignments(const MatrixModel& model, const Budgets& budgets, Execution exec) {
    return scan(model, budgets, exec, [](const Assignment&) { return true; });
}

Canonicalizer::Canonicalizer(const MatrixModel& model, const Budgets& budgets)
    : dims_(model.dims()), symmetry_(model.symmetry()), column_sweep_(model.rank() == 2) {
    const auto& sym = model.symmetry();
    const BigInt swept = column_sweep_ ? sym.dimension_order(1) : sym.group_order();
    if (swept > budgets.group) throw BudgetExceeded("group", to_string(swept), budgets.group);
    if (column_sweep_) {
        Permutation rows(static_cast<std::size_t>(model.rows()));
        for (int r = 0; r < model.rows(); ++r) rows[static_cast<std::size_t>(r)] = r;
        for_each_dimension_permutation(sym.partition(1), model.cols(), [&](const Permutation& cols) {
            elements_.push_back({rows, cols});
            return true;
        });
    } else {
        for_each_group_element(sym, model.dims(), [&](const std::vector<Permutation>& g) {
            elements_.push_back(g);
            return true;
        });
    }
    sources_.reserve(elements_.size());
    for (const auto& g : elements_) sources_.push_back(permutation_source_cells(model.dims(), g));
}

void Canonicalizer::sort_row_blocks(std::vector<int>& m) const {
    const int cols = dims_[1];
    std::vector<std::vector<int>> rows;
    for (const auto& block : symmetry_.partition(0)) {
        if (block.size() < 2) continue;
        rows.clear();
        for (int r : block) {
            const auto* start = m.data() + static_cast<std::ptrdiff_t>(r) * cols;
            rows.emplace_back(start, start + cols);
        }
        std::sort(rows.begin(), rows.end());
        for (std::size_t k = 0; k < block.size(); ++k) {
            std::copy(rows[k].begin(), rows[k].end(), m.begin() + static_cast<std::ptrdiff_t>(block[k]) * cols);
        }
    }
}

Assignment Canonicalizer::canonical(std::span<const int> assignment) const {
    if (assignment.size() != static_cast<std::size_t>(cell_count_of(dims_))) {
        throw Error(ErrorCode::LengthMismatch, "assignment size does not match model");
    }
    Assignment best;
    Assignment image(assignment.size());
    for (const auto& src : sources_) {
        for (std::size_t i = 0; i < image.size(); ++i) image[i] = assignment[static_cast<std::size_t>(src[i])];
        if (column_sweep_) sort_row_blocks(image);
        if (best.empty() || image < best) best = image;
    }
    return best;
}

std::vector<Assignment> Canonicalizer::canonical_all(const std::vector<Assignment>& assignments, Execution exec) const {
    std::vector<Assignment> out(assignments.size());
    const auto n = static_cast<std::int64_t>(assignments.size());
    if (exec == Execution::Serial) {
        for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = canonical(assignments[static_cast<std::size_t>(i)]);
    } else {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = canonical(assignments[static_cast<std::size_t>(i)]);
    }
    return out;
}

std::optional<std::vector<Permutation>> Canonicalizer::find_mapping(std::span<const int> a, std::span<const int> b) const {
    const std::size_t n = static_cast<std::size_t>(cell_count_of(dims_));
    if (a.size() != n || b.size() != n) throw Error(ErrorCode::LengthMismatch, "assignment size does not match model");
    Assignment image(n);
    for (std::size_t e = 0; e < sources_.size(); ++e) {
        const auto& src = sources_[e];
        for (std::size_t i = 0; i < n; ++i) image[i] = a[static_cast<std::size_t>(src[i])];
        if (!column_sweep_) {
            if (std::equal(image.begin(), image.end(), b.begin())) return elements_[e];
            continue;
        }
        // Match rows of the column-permuted image to rows of b inside each row block.
        const int cols = dims_[1];
        auto row = [&](std::span<const int> m, int r) { return m.subspan(static_cast<std::size_t>(r) * cols, cols); };
        Permutation rows(static_cast<std::size_t>(dims_[0]));
        bool ok = true;
        for (const auto& block : symmetry_.partition(0)) {
            std::vector<char> used(block.size(), 0);
            for (int target : block) {
                bool matched = false;
                for (std::size_t k = 0; k < block.size() && !matched; ++k) {
                    if (used[k]) continue;
                    auto src_row = row(image, block[k]);
                    auto dst_row = row(b, target);
                    if (std::equal(src_row.begin(), src_row.end(), dst_row.begin())) {
                        used[k] = 1;
                        rows[static_cast<std::size_t>(target)] = block[k];
                        matched = true;
                    }
                }
                if (!matched) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (ok) return std::vector<Permutation>{rows, elements_[e][1]};
    }
    return std::nullopt;
}

namespace {

OrbitPartition group_by_canonical(const std::vector<Assignment>& solutions, const std::vector<Assignment>& canon,
                                  std::vector<int>* orbit_of) {
    std::map<Assignment, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < solutions.size(); ++i) groups[canon[i]].push_back(i);
    OrbitPartition p;
    if (orbit_of) orbit_of->assign(solutions.size(), -1);
    for (auto& [key, members] : groups) {
        const int id = static_cast<int>(p.orbits.size());
        std::vector<Assignment> orbit;
        for (auto i : members) {
            orbit.push_back(solutions[i]);
            if (orbit_of) (*orbit_of)[i] = id;
        }
        std::sort(orbit.begin(), orbit.end());
        p.orbits.push_back(std::move(orbit));
        p.canonical.push_back(key);
    }
    return p;
}

}  // namespace

OrbitPartition partition_into_orbits(const std::vector<Assignment>& solutions, const MatrixModel& model,
                                     const Budgets& budgets, Execution exec) {
    const Canonicalizer canon(model, budgets);
    return group_by_canonical(solutions, canon.canonical_all(solutions, exec), nullptr);
}

GroundTruth compute_ground_truth(const MatrixModel& model, const Budgets& budgets, Execution exec) {
    const Canonicalizer canon(model, budgets);
    GroundTruth truth;
    truth.solutions = enumerate_solutions(model, budgets, exec);
    truth.partition = group_by_canonical(truth.solutions, canon.canonical_all(truth.solutions, exec), &truth.orbit_of);
    return truth;
}

SchemeReport check_scheme(const GroundTruth& truth, const ConstraintSet& breaking, std::string label,
                          std::size_t max_witnesses) {
    if (!breaking.aux.empty()) {
        throw Error(ErrorCode::NotApplicable, "the oracle evaluates constraint sets without auxiliary variables");
    }
    SchemeReport report;
    report.scheme = std::move(label);
    report.total_solutions = truth.solutions.size();
    report.orbit_count = truth.partition.orbits.size();

    const auto survive = evaluate_all(truth.solutions, Execution::Parallel,
                                      [&](const Assignment& a) { return holds(breaking, a); });
    std::vector<std::vector<std::size_t>> survivors(truth.partition.orbits.size());
    for (std::size_t i = 0; i < truth.solutions.size(); ++i) {
        if (!survive[i]) continue;
        const auto orbit = static_cast<std::size_t>(truth.orbit_of[i]);
        survivors[orbit].push_back(i);
        ++report.survivor_count;
        if (truth.solutions[i] == truth.partition.canonical[orbit]) ++report.canonical_survivors;
    }
    for (const auto& s : survivors) {
        if (s.empty()) ++report.orbits_with_zero_survivors;
        if (s.size() > 1) {
            ++report.orbits_with_multiple_survivors;
            if (report.witness_pairs.size() < max_witnesses) {
                report.witness_pairs.emplace_back(truth.solutions[s[0]], truth.solutions[s[1]]);
            }
        }
    }
    return report;
}

SchemeReport check_soundness(const MatrixModel& model, const symbreak::Scheme& scheme, const Budgets& budgets) {
    const auto breaking = symbreak::generate(model, scheme);
    return check_scheme(compute_ground_truth(model, budgets), breaking, symbreak::to_string(scheme));
}

nlohmann::json to_json(const SchemeReport& r, const MatrixModel& model) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [a, b] : r.witness_pairs) pairs.push_back({grid_json(a), grid_json(b)});
    return {
        {"model", model.name()},
        {"dims", model.dims()},
        {"scheme", r.scheme},
        {"total_solutions", r.total_solutions},
        {"orbit_count", r.orbit_count},
        {"survivor_count", r.survivor_count},
        {"orbits_with_zero_survivors", r.orbits_with_zero_survivors},
        {"orbits_with_multiple_survivors", r.orbits_with_multiple_survivors},
        {"canonical_survivors", r.canonical_survivors},
        {"sound", r.sound()},
        {"complete", r.complete()},
        {"witness_pairs", pairs},
    };
}

EntailmentResult check_entailment(const MatrixModel& model, const ConstraintSet& antecedent,
                                  const ConstraintSet& consequent, const Budgets& budgets,
                                  std::size_t max_counterexamples) {
    const auto all = enumerate_full_assignments(model, budgets);
    const auto ante = evaluate_all(all, Execution::Parallel, [&](const Assignment& a) { return holds(antecedent, a); });
    const auto cons = evaluate_all(all, Execution::Parallel, [&](const Assignment& a) { return holds(consequent, a); });
    EntailmentResult result;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (!ante[i]) continue;
        ++result.antecedent_models;
        if (cons[i]) continue;
        result.holds = false;
        if (result.counterexamples.size() < max_counterexamples) result.counterexamples.push_back(all[i]);
    }
    return result;
}

EntailmentResult check_entailment(const MatrixModel& model, const symbreak::Scheme& antecedent,
                                  const symbreak::Scheme& consequent, const Budgets& budgets,
                                  std::size_t max_counterexamples) {
    return check_entailment(model, symbreak::generate(model, antecedent), symbreak::generate(model, consequent),
                            budgets, max_counterexamples);
}

MatrixModel unconstrained_grid(int rows, int cols, const Domain& domain) {
    std::vector<int> dims{rows, cols};
    return MatrixModel::build(std::to_string(rows) + "x" + std::to_string(cols), dims, domain, {},
                              SymmetrySpec::full(dims));
}

SweepResult find_smallest_incompleteness_witness(const symbreak::Scheme& scheme, int max_cells, const Domain& domain,
                                                 const Budgets& budgets) {
    SweepResult sweep;
    for (int cells = 1; cells <= max_cells; ++cells) {
        for (int rows = 1; rows <= cells; ++rows) {
            if (cells % rows != 0) continue;
            const int cols = cells / rows;
            std::vector<int> dims{rows, cols};
            const auto model = unconstrained_grid(rows, cols, domain);
            ConstraintSet breaking;
            try {
                breaking = symbreak::generate(model, scheme);
            } catch (const Error& e) {
                if (e.code() == ErrorCode::NoSymmetry || e.code() == ErrorCode::NotApplicable ||
                    e.code() == ErrorCode::GroupTooLarge) {
                    sweep.skipped.emplace_back(dims, std::string(to_string(e.code())));
                    continue;
                }
                throw;
            }
            sweep.checked.push_back(dims);
            const auto truth = compute_ground_truth(model, budgets);
            const auto report = check_scheme(truth, breaking, symbreak::to_string(scheme), 1);
            if (report.witness_pairs.empty()) continue;
            const auto& [first, second] = report.witness_pairs.front();
            const Canonicalizer canon(model, budgets);
            auto mapping = canon.find_mapping(first, second);
            if (!mapping) throw Error(ErrorCode::InvalidParams, "orbit members without a mapping");
            sweep.witness = Witness{dims, first, second, *mapping};
            return sweep;
        }
    }
    return sweep;
}

nlohmann::json to_json(const SweepResult& sweep) {
    nlohmann::json j;
    j["checked"] = sweep.checked;
    nlohmann::json skipped = nlohmann::json::array();
    for (const auto& [dims, why] : sweep.skipped) skipped.push_back({{"dims", dims}, {"reason", why}});
    j["skipped"] = skipped;
    if (!sweep.witness) {
        j["witness"] = nullptr;
        return j;
    }
    const auto& w = *sweep.witness;
    j["witness"] = {
        {"dims", w.dims},
        {"first", w.first},
        {"second", w.second},
        {"row_perm", w.mapping.at(0)},
        {"col_perm", w.mapping.at(1)},
    };
    return j;
}

}  // namespace matsym::oracle
