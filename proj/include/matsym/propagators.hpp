#pragma once

#include <memory>
#include <vector>

#include "matsym/constraint.hpp"
#include "matsym/store.hpp"

namespace matsym::solver {

class Propagator {
public:
    virtual ~Propagator() = default;

    // Prunes the store; false means the constraint cannot be satisfied.
    virtual bool propagate(Store& store) = 0;

    const std::vector<int>& scope() const noexcept { return scope_; }

protected:
    explicit Propagator(std::vector<int> scope);

private:
    std::vector<int> scope_;
};

/// GAC for x <=lex y (or <lex). Keeps a trailed frontier: the first position whose
/// pair is not fixed to a common value. Positions before it are decided ties; the
/// frontier only moves forward while domains shrink.
class LexPropagator final : public Propagator {
public:
    LexPropagator(Store& store, std::vector<int> x, std::vector<int> y, bool strict);
    bool propagate(Store& store) override;

private:
    std::vector<int> x_, y_;
    bool strict_;
    int frontier_slot_;
    std::vector<char> suffix_ok_;
};

/// GAC for x <=lex sortAscending(y). Satisfaction is monotone (decreasing x or
/// increasing y keeps it), so a value is supported iff it works with every other x
/// at its minimum and every other y at its maximum.
class AllPermPropagator final : public Propagator {
public:
    AllPermPropagator(std::vector<int> x, std::vector<int> y);
    bool propagate(Store& store) override;

private:
    std::vector<int> x_, y_;
};

/// Bounds consistency for sum(c[i] * v[i]) <= rhs, or == rhs.
class LinearPropagator final : public Propagator {
public:
    LinearPropagator(std::vector<int> vars, std::vector<int> coeffs, int rhs, bool equality);
    bool propagate(Store& store) override;

private:
    std::vector<int> vars_;
    std::vector<int> coeffs_;
    long long rhs_;
    bool equality_;
};

// sum(x[i] * y[i]) == rhs over 0/1 variables.
class ScalarProductPropagator final : public Propagator {
public:
    ScalarProductPropagator(const Store& store, std::vector<int> x, std::vector<int> y, int rhs);
    bool propagate(Store& store) override;

private:
    std::vector<int> x_, y_;
    int rhs_;
};

// count == #{i : vars[i] == value}.
class CountPropagator final : public Propagator {
public:
    CountPropagator(std::vector<int> vars, int value, int count);
    bool propagate(Store& store) override;

private:
    std::vector<int> vars_;
    int value_;
    int count_;
};

/// Adds the propagators for one term to `out`. MultisetLe introduces occurrence-count
/// variables in `store` (one per candidate value, per side) ordered from the largest
/// value down, linked by CountPropagators, and compared with a LexPropagator.
void post(Store& store, const ConstraintTerm& term, std::vector<std::unique_ptr<Propagator>>& out);

// Standalone entry points over explicit domains, for tests and tools.
struct PruneResult {
    bool consistent = true;
    std::vector<Domain> first;
    std::vector<Domain> second;
};

PruneResult propagate_lex(const std::vector<Domain>& x, const std::vector<Domain>& y, bool strict);
PruneResult propagate_all_perm(const std::vector<Domain>& x, const std::vector<Domain>& y);
// Domains are given per term variable, in term order; result is in `first`.
PruneResult propagate_linear(const ConstraintTerm& term, const std::vector<Domain>& domains);
PruneResult propagate_scalar_product(const std::vector<Domain>& x, const std::vector<Domain>& y, int rhs);

}  // namespace matsym::solver
