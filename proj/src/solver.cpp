#include "matsym/solver.hpp"

#include <chrono>
#include <deque>
#include <memory>

#include "matsym/error.hpp"
#include "matsym/flatten.hpp"
#include "matsym/propagators.hpp"

namespace matsym::solver {

std::string_view to_string(VarOrder order) {
    switch (order) {
        case VarOrder::RowWise: return "rowwise";
        case VarOrder::ColWise: return "colwise";
        case VarOrder::Snake: return "snake";
        case VarOrder::SmallestDomainFirst: return "smallest-domain";
    }
    return "?";
}

std::string_view to_string(ValOrder order) {
    return order == ValOrder::Ascending ? "ascending" : "descending";
}

std::string_view to_string(SearchMode mode) {
    switch (mode) {
        case SearchMode::FirstSolution: return "first";
        case SearchMode::EnumerateAll: return "all";
        case SearchMode::CountOnly: return "count";
    }
    return "?";
}

void SearchConfig::validate() const {
    if (node_limit && *node_limit == 0) throw Error(ErrorCode::InvalidParams, "node limit must be positive");
    if (time_limit && !(*time_limit > 0.0)) throw Error(ErrorCode::InvalidParams, "time limit must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

class Search {
public:
    Search(const MatrixModel& model, const ConstraintSet& extra, const SearchConfig& config, SolutionSink sink)
        : model_(model), config_(config), sink_(std::move(sink)) {
        const int cells = model.cell_count();
        for (const auto& d : model.domains()) store_.add_var(d);
        for (const auto& d : extra.aux) store_.add_var(d);
        const int declared = cells + static_cast<int>(extra.aux.size());
        for (const auto& term : model.constraints().terms) post(store_, term, props_);
        for (const auto& term : extra.terms) {
            term.validate();
            if (term.max_variable() >= declared) {
                throw Error(ErrorCode::OutOfRangeIndex,
                            "constraint references variable " + std::to_string(term.max_variable()) + " of " +
                                std::to_string(declared));
            }
            post(store_, term, props_);
        }

        watchers_.resize(store_.var_count());
        for (std::size_t p = 0; p < props_.size(); ++p) {
            for (int v : props_[p]->scope()) {
                auto& w = watchers_[static_cast<std::size_t>(v)];
                if (w.empty() || w.back() != static_cast<int>(p)) w.push_back(static_cast<int>(p));
            }
        }
        queued_.assign(props_.size(), 0);

        std::vector<int> cell_order;
        switch (config.var_order) {
            case VarOrder::ColWise: cell_order = flatten(model, FlattenOrder::ColWise).index_sequence; break;
            case VarOrder::Snake: cell_order = flatten(model, FlattenOrder::Snake).index_sequence; break;
            default: cell_order = flatten(model, FlattenOrder::RowWise).index_sequence; break;
        }
        order_ = cell_order;
        for (int v = cells; v < static_cast<int>(store_.var_count()); ++v) order_.push_back(v);
        solution_.resize(static_cast<std::size_t>(cells));
    }

    SolveResult run() {
        start_ = Clock::now();
        stats_.nodes = 1;
        for (std::size_t p = 0; p < props_.size(); ++p) enqueue(static_cast<int>(p));
        store_.take_modified();
        if (fixpoint()) {
            dfs();
        } else {
            ++stats_.failures;
        }
        stats_.elapsed = std::chrono::duration<double>(Clock::now() - start_).count();
        return {stats_, limit_hit_ ? SolveStatus::LimitExceeded : SolveStatus::Complete};
    }

private:
    void enqueue(int p) {
        if (queued_[static_cast<std::size_t>(p)]) return;
        queued_[static_cast<std::size_t>(p)] = 1;
        queue_.push_back(p);
    }

    void schedule_modified() {
        for (int v : store_.take_modified()) {
            for (int p : watchers_[static_cast<std::size_t>(v)]) enqueue(p);
        }
    }

    bool fixpoint() {
        while (!queue_.empty()) {
            const int p = queue_.front();
            queue_.pop_front();
            queued_[static_cast<std::size_t>(p)] = 0;
            ++stats_.propagations;
            if (!props_[static_cast<std::size_t>(p)]->propagate(store_)) {
                for (int q : queue_) queued_[static_cast<std::size_t>(q)] = 0;
                queue_.clear();
                store_.take_modified();
                return false;
            }
            schedule_modified();
        }
        return true;
    }

    int pick_variable() const {
        if (config_.var_order == VarOrder::SmallestDomainFirst) {
            int best = -1;
            for (int v = 0; v < model_.cell_count(); ++v) {
                if (!store_.is_fixed(v) && (best < 0 || store_.size(v) < store_.size(best))) best = v;
            }
            if (best >= 0) return best;
        }
        for (int v : order_) {
            if (!store_.is_fixed(v)) return v;
        }
        return -1;
    }

    bool out_of_budget() {
        if (config_.node_limit && stats_.nodes >= *config_.node_limit) return true;
        if (config_.time_limit && (stats_.nodes & 1023U) == 0) {
            const double spent = std::chrono::duration<double>(Clock::now() - start_).count();
            if (spent > *config_.time_limit) return true;
        }
        return false;
    }

    void dfs() {
        const int var = pick_variable();
        if (var < 0) {
            ++stats_.solutions;
            if (sink_) {
                for (int c = 0; c < model_.cell_count(); ++c) solution_[static_cast<std::size_t>(c)] = store_.value(c);
                sink_(solution_);
            }
            if (config_.mode == SearchMode::FirstSolution) stop_ = true;
            return;
        }
        auto values = store_.values(var);
        if (config_.val_order == ValOrder::Descending) std::reverse(values.begin(), values.end());
        for (int value : values) {
            if (out_of_budget()) {
                limit_hit_ = true;
                stop_ = true;
                return;
            }
            const auto mark = store_.mark();
            ++stats_.nodes;
            store_.fix(var, value);
            schedule_modified();
            if (fixpoint()) {
                dfs();
            } else {
                ++stats_.failures;
            }
            store_.undo(mark);
            if (stop_) return;
        }
    }

    const MatrixModel& model_;
    const SearchConfig& config_;
    SolutionSink sink_;
    Store store_;
    std::vector<std::unique_ptr<Propagator>> props_;
    std::vector<std::vector<int>> watchers_;
    std::deque<int> queue_;
    std::vector<char> queued_;
    std::vector<int> order_;
    std::vector<int> solution_;
    SearchStats stats_;
    Clock::time_point start_;
    bool stop_ = false;
    bool limit_hit_ = false;
};

}  // namespace

SolveResult solve(const MatrixModel& model, const ConstraintSet& extra, const SearchConfig& config,
                  const SolutionSink& on_solution) {
    config.validate();
    Search search(model, extra, config, config.mode == SearchMode::CountOnly ? SolutionSink{} : on_solution);
    return search.run();
}

std::vector<Assignment> all_solutions(const MatrixModel& model, const ConstraintSet& extra, SearchConfig config) {
    config.mode = SearchMode::EnumerateAll;
    std::vector<Assignment> out;
    solve(model, extra, config, [&](std::span<const int> s) { out.emplace_back(s.begin(), s.end()); });
    return out;
}

}  // namespace matsym::solver
