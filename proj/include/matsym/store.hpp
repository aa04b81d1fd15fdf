#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "matsym/domain.hpp"

namespace matsym::solver {

/// Trailed finite-domain store. Each variable keeps its initial sorted value table
/// and a bitmask of surviving entries, so domains hold at most 64 values.
/// Mutators return false on a wipe-out.
class Store {
public:
    static constexpr std::size_t max_domain_size = 64;

    // Throws InvalidParams for empty or oversized domains.
    int add_var(const Domain& domain);

    std::size_t var_count() const noexcept { return vars_.size(); }

    int size(int v) const { return std::popcount(var(v).mask); }
    bool is_fixed(int v) const { return size(v) == 1; }
    int min(int v) const { return var(v).values[static_cast<std::size_t>(std::countr_zero(var(v).mask))]; }
    int max(int v) const { return var(v).values[63 - static_cast<std::size_t>(std::countl_zero(var(v).mask))]; }
    int value(int v) const { return min(v); }
    bool contains(int v, int value) const;
    std::vector<int> values(int v) const;
    Domain domain(int v) const { return Domain(values(v)); }

    bool remove(int v, int value);
    bool fix(int v, int value);
    // Keeps values <= bound / >= bound.
    bool remove_above(int v, int bound);
    bool remove_below(int v, int bound);

    // Trailed integers for propagator state.
    int add_int(int initial);
    int get_int(int slot) const { return ints_[static_cast<std::size_t>(slot)]; }
    void set_int(int slot, int value);

    struct Mark {
        std::size_t domains;
        std::size_t ints;
    };
    Mark mark() const noexcept { return {trail_.size(), int_trail_.size()}; }
    void undo(Mark m);

    // Variables changed since the last call; duplicates possible.
    std::vector<int> take_modified();

private:
    struct Var {
        std::vector<int> values;
        std::uint64_t mask = 0;
    };

    const Var& var(int v) const { return vars_[static_cast<std::size_t>(v)]; }
    int index_of(int v, int value) const;
    bool set_mask(int v, std::uint64_t mask);

    std::vector<Var> vars_;
    std::vector<std::pair<int, std::uint64_t>> trail_;
    std::vector<int> ints_;
    std::vector<std::pair<int, int>> int_trail_;
    std::vector<int> modified_;
};

}  // namespace matsym::solver
