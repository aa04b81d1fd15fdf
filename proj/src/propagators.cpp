#include "matsym/propagators.hpp"

#include <algorithm>
#include <climits>
#include <functional>

#include "matsym/error.hpp"
#include "matsym/ordering.hpp"

namespace matsym::solver {

namespace {

bool intersects(const Store& s, int a, int b) {
    if (s.max(a) < s.min(b) || s.max(b) < s.min(a)) return false;
    const int small = s.size(a) <= s.size(b) ? a : b;
    const int other = small == a ? b : a;
    for (int v : s.values(small)) {
        if (s.contains(other, v)) return true;
    }
    return false;
}

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

int clamp_int(long long v) { return static_cast<int>(std::clamp<long long>(v, INT_MIN, INT_MAX)); }

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

Propagator::Propagator(std::vector<int> scope) : scope_(std::move(scope)) {}

LexPropagator::LexPropagator(Store& store, std::vector<int> x, std::vector<int> y, bool strict)
    : Propagator(concat(x, y)),
      x_(std::move(x)),
      y_(std::move(y)),
      strict_(strict),
      frontier_slot_(store.add_int(0)),
      suffix_ok_(x_.size() + 1, 0) {
    if (x_.size() != y_.size()) throw Error(ErrorCode::LengthMismatch, "lex operands differ in length");
}

bool LexPropagator::propagate(Store& s) {
    const std::size_t n = x_.size();
    auto frontier = static_cast<std::size_t>(s.get_int(frontier_slot_));
    while (frontier < n && s.is_fixed(x_[frontier]) && s.is_fixed(y_[frontier]) &&
           s.value(x_[frontier]) == s.value(y_[frontier])) {
        ++frontier;
    }
    s.set_int(frontier_slot_, static_cast<int>(frontier));
    if (frontier == n) return !strict_;

    // suffix_ok_[i]: positions i.. can still satisfy the constraint on their own.
    suffix_ok_[n] = !strict_;
    for (std::size_t i = n; i-- > frontier;) {
        suffix_ok_[i] = s.min(x_[i]) < s.max(y_[i]) || (suffix_ok_[i + 1] && intersects(s, x_[i], y_[i]));
    }
    if (!suffix_ok_[frontier]) return false;

    // Walk the forced-tie prefix; stop once a strict decision is possible, after
    // which every later value is supported.
    for (std::size_t i = frontier; i < n; ++i) {
        const int xv = x_[i];
        const int yv = y_[i];
        const int max_y = s.max(yv);
        const int min_x = s.min(xv);
        const bool tie_ok = suffix_ok_[i + 1];
        if (!s.remove_above(xv, tie_ok ? max_y : max_y - 1)) return false;
        if (!s.remove_below(yv, tie_ok ? min_x : min_x + 1)) return false;
        if (s.min(xv) < s.max(yv)) break;
    }
    return true;
}

AllPermPropagator::AllPermPropagator(std::vector<int> x, std::vector<int> y)
    : Propagator(concat(x, y)), x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size()) throw Error(ErrorCode::LengthMismatch, "allperm operands differ in length");
}

bool AllPermPropagator::propagate(Store& s) {
    const std::size_t n = x_.size();
    std::vector<int> min_x(n), max_y(n);
    for (std::size_t i = 0; i < n; ++i) {
        min_x[i] = s.min(x_[i]);
        max_y[i] = s.max(y_[i]);
    }
    if (!lex_le_all_permutations(min_x, max_y)) return false;

    std::vector<int> probe;
    for (std::size_t i = 0; i < n; ++i) {
        auto vals = s.values(x_[i]);
        for (auto it = vals.rbegin(); it != vals.rend() && *it != min_x[i]; ++it) {
            probe = min_x;
            probe[i] = *it;
            if (lex_le_all_permutations(probe, max_y)) break;
            if (!s.remove(x_[i], *it)) return false;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (int v : s.values(y_[j])) {
            if (v == max_y[j]) break;
            probe = max_y;
            probe[j] = v;
            if (lex_le_all_permutations(min_x, probe)) break;
            if (!s.remove(y_[j], v)) return false;
        }
    }
    return true;
}

LinearPropagator::LinearPropagator(std::vector<int> vars, std::vector<int> coeffs, int rhs, bool equality)
    : Propagator(vars), vars_(std::move(vars)), coeffs_(std::move(coeffs)), rhs_(rhs), equality_(equality) {}

bool LinearPropagator::propagate(Store& s) {
    const std::size_t n = vars_.size();
    bool changed = true;
    while (changed) {
        changed = false;
        long long min_sum = 0;
        long long max_sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const long long c = coeffs_[i];
            const long long lo = s.min(vars_[i]);
            const long long hi = s.max(vars_[i]);
            min_sum += c > 0 ? c * lo : c * hi;
            max_sum += c > 0 ? c * hi : c * lo;
        }
        if (min_sum > rhs_) return false;
        if (equality_ && max_sum < rhs_) return false;

        for (std::size_t i = 0; i < n; ++i) {
            const long long c = coeffs_[i];
            if (c == 0) continue;
            const int v = vars_[i];
            const long long lo = s.min(v);
            const long long hi = s.max(v);
            const int size_before = s.size(v);
            // c*v <= rhs - (rest at its minimum)
            const long long upper_room = rhs_ - (min_sum - (c > 0 ? c * lo : c * hi));
            bool ok = c > 0 ? s.remove_above(v, clamp_int(floor_div(upper_room, c)))
                            : s.remove_below(v, clamp_int(ceil_div(upper_room, c)));
            if (!ok) return false;
            if (equality_) {
                // c*v >= rhs - (rest at its maximum)
                const long long lower_room = rhs_ - (max_sum - (c > 0 ? c * hi : c * lo));
                ok = c > 0 ? s.remove_below(v, clamp_int(ceil_div(lower_room, c)))
                           : s.remove_above(v, clamp_int(floor_div(lower_room, c)));
                if (!ok) return false;
            }
            if (s.size(v) != size_before) changed = true;
        }
    }
    return true;
}

ScalarProductPropagator::ScalarProductPropagator(const Store& store, std::vector<int> x, std::vector<int> y, int rhs)
    : Propagator(concat(x, y)), x_(std::move(x)), y_(std::move(y)), rhs_(rhs) {
    if (x_.size() != y_.size()) throw Error(ErrorCode::LengthMismatch, "scalar product operands differ in length");
    for (int v : scope()) {
        if (store.min(v) < 0 || store.max(v) > 1) {
            throw Error(ErrorCode::NotApplicable, "scalar product propagation needs 0/1 domains");
        }
    }
}

bool ScalarProductPropagator::propagate(Store& s) {
    const std::size_t n = x_.size();
    int forced = 0;
    int possible = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (s.min(x_[i]) == 1 && s.min(y_[i]) == 1) ++forced;
        if (s.max(x_[i]) == 1 && s.max(y_[i]) == 1) ++possible;
    }
    if (forced > rhs_ || possible < rhs_) return false;
    if (forced == possible) return true;
    for (std::size_t i = 0; i < n; ++i) {
        const bool is_forced = s.min(x_[i]) == 1 && s.min(y_[i]) == 1;
        const bool is_possible = s.max(x_[i]) == 1 && s.max(y_[i]) == 1;
        if (!is_possible || is_forced) continue;
        if (forced == rhs_) {
            if (s.min(x_[i]) == 1 && !s.remove(y_[i], 1)) return false;
            if (s.min(y_[i]) == 1 && !s.remove(x_[i], 1)) return false;
        } else if (possible == rhs_) {
            if (!s.fix(x_[i], 1) || !s.fix(y_[i], 1)) return false;
        }
    }
    return true;
}

CountPropagator::CountPropagator(std::vector<int> vars, int value, int count)
    : Propagator(concat(vars, {count})), vars_(std::move(vars)), value_(value), count_(count) {}

bool CountPropagator::propagate(Store& s) {
    int fixed = 0;
    int possible = 0;
    for (int v : vars_) {
        if (!s.contains(v, value_)) continue;
        ++possible;
        if (s.is_fixed(v)) ++fixed;
    }
    if (!s.remove_below(count_, fixed) || !s.remove_above(count_, possible)) return false;
    if (s.max(count_) == fixed) {
        for (int v : vars_) {
            if (!s.is_fixed(v) && !s.remove(v, value_)) return false;
        }
    } else if (s.min(count_) == possible) {
        for (int v : vars_) {
            if (s.contains(v, value_) && !s.fix(v, value_)) return false;
        }
    }
    return true;
}

void post(Store& store, const ConstraintTerm& term, std::vector<std::unique_ptr<Propagator>>& out) {
    switch (term.kind) {
        case TermKind::LexLe:
        case TermKind::LexLt:
            out.push_back(std::make_unique<LexPropagator>(store, term.x, term.y, term.kind == TermKind::LexLt));
            return;
        case TermKind::AllPermLe:
            out.push_back(std::make_unique<AllPermPropagator>(term.x, term.y));
            return;
        case TermKind::LinearEq:
        case TermKind::LinearLe:
            out.push_back(std::make_unique<LinearPropagator>(term.x, term.coeffs, term.rhs,
                                                             term.kind == TermKind::LinearEq));
            return;
        case TermKind::ScalarProductEq:
            out.push_back(std::make_unique<ScalarProductPropagator>(store, term.x, term.y, term.rhs));
            return;
        case TermKind::MultisetLe: {
            std::vector<int> candidates;
            for (int v : concat(term.x, term.y)) {
                const auto vals = store.values(v);
                candidates.insert(candidates.end(), vals.begin(), vals.end());
            }
            std::sort(candidates.begin(), candidates.end(), std::greater<>());
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
            const int n = static_cast<int>(term.x.size());
            std::vector<int> count_x, count_y;
            for (int w : candidates) {
                const int cx = store.add_var(Domain::range(0, n));
                const int cy = store.add_var(Domain::range(0, n));
                out.push_back(std::make_unique<CountPropagator>(term.x, w, cx));
                out.push_back(std::make_unique<CountPropagator>(term.y, w, cy));
                count_x.push_back(cx);
                count_y.push_back(cy);
            }
            const std::vector<int> ones(candidates.size(), 1);
            out.push_back(std::make_unique<LinearPropagator>(count_x, ones, n, true));
            out.push_back(std::make_unique<LinearPropagator>(count_y, ones, n, true));
            out.push_back(std::make_unique<LexPropagator>(store, count_x, count_y, false));
            return;
        }
    }
}

namespace {

// Runs one propagator to its own fixpoint over a scratch store.
template <typename Make>
PruneResult run_standalone(const std::vector<Domain>& first, const std::vector<Domain>& second, Make make) {
    Store store;
    std::vector<int> a, b;
    for (const auto& d : first) a.push_back(store.add_var(d));
    for (const auto& d : second) b.push_back(store.add_var(d));
    auto prop = make(store, a, b);
    PruneResult result;
    store.take_modified();
    while (true) {
        if (!prop->propagate(store)) {
            result.consistent = false;
            return result;
        }
        if (store.take_modified().empty()) break;
    }
    for (int v : a) result.first.push_back(store.domain(v));
    for (int v : b) result.second.push_back(store.domain(v));
    return result;
}

}  // namespace

PruneResult propagate_lex(const std::vector<Domain>& x, const std::vector<Domain>& y, bool strict) {
    return run_standalone(x, y, [&](Store& s, const std::vector<int>& a, const std::vector<int>& b) {
        return std::make_unique<LexPropagator>(s, a, b, strict);
    });
}

PruneResult propagate_all_perm(const std::vector<Domain>& x, const std::vector<Domain>& y) {
    return run_standalone(x, y, [](Store&, const std::vector<int>& a, const std::vector<int>& b) {
        return std::make_unique<AllPermPropagator>(a, b);
    });
}

PruneResult propagate_linear(const ConstraintTerm& term, const std::vector<Domain>& domains) {
    if (!term.is_linear()) throw Error(ErrorCode::MalformedTerm, "propagate_linear needs a linear term");
    if (domains.size() != term.x.size()) throw Error(ErrorCode::LengthMismatch, "one domain per term variable");
    return run_standalone(domains, {}, [&](Store&, const std::vector<int>& a, const std::vector<int>&) {
        return std::make_unique<LinearPropagator>(a, term.coeffs, term.rhs, term.kind == TermKind::LinearEq);
    });
}

PruneResult propagate_scalar_product(const std::vector<Domain>& x, const std::vector<Domain>& y, int rhs) {
    return run_standalone(x, y, [&](Store& s, const std::vector<int>& a, const std::vector<int>& b) {
        return std::make_unique<ScalarProductPropagator>(s, a, b, rhs);
    });
}

}  // namespace matsym::solver
