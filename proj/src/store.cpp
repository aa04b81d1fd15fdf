#include "matsym/store.hpp"

#include <algorithm>
#include <string>

#include "matsym/error.hpp"

namespace matsym::solver {

int Store::add_var(const Domain& domain) {
    if (domain.empty()) throw Error(ErrorCode::EmptyDomain, "solver variable with empty domain");
    if (domain.size() > max_domain_size) {
        throw Error(ErrorCode::InvalidParams,
                    "domain of " + std::to_string(domain.size()) + " values exceeds solver limit of 64");
    }
    Var v;
    v.values = domain.values();
    v.mask = domain.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << domain.size()) - 1);
    vars_.push_back(std::move(v));
    return static_cast<int>(vars_.size() - 1);
}

int Store::index_of(int v, int value) const {
    const auto& vals = var(v).values;
    auto it = std::lower_bound(vals.begin(), vals.end(), value);
    if (it == vals.end() || *it != value) return -1;
    return static_cast<int>(it - vals.begin());
}

bool Store::contains(int v, int value) const {
    const int i = index_of(v, value);
    return i >= 0 && (var(v).mask >> i & 1U);
}

std::vector<int> Store::values(int v) const {
    std::vector<int> out;
    const auto& x = var(v);
    for (std::uint64_t m = x.mask; m != 0; m &= m - 1) {
        out.push_back(x.values[static_cast<std::size_t>(std::countr_zero(m))]);
    }
    return out;
}

bool Store::set_mask(int v, std::uint64_t mask) {
    auto& x = vars_[static_cast<std::size_t>(v)];
    if (mask == x.mask) return true;
    trail_.emplace_back(v, x.mask);
    x.mask = mask;
    if (mask == 0) return false;
    modified_.push_back(v);
    return true;
}

bool Store::remove(int v, int value) {
    const int i = index_of(v, value);
    if (i < 0) return true;
    return set_mask(v, var(v).mask & ~(std::uint64_t{1} << i));
}

bool Store::fix(int v, int value) {
    const int i = index_of(v, value);
    if (i < 0) return set_mask(v, 0);
    return set_mask(v, var(v).mask & (std::uint64_t{1} << i));
}

bool Store::remove_above(int v, int bound) {
    const auto& vals = var(v).values;
    const auto keep = static_cast<std::size_t>(std::upper_bound(vals.begin(), vals.end(), bound) - vals.begin());
    const std::uint64_t keep_mask = keep >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << keep) - 1);
    return set_mask(v, var(v).mask & keep_mask);
}

bool Store::remove_below(int v, int bound) {
    const auto& vals = var(v).values;
    const auto drop = static_cast<std::size_t>(std::lower_bound(vals.begin(), vals.end(), bound) - vals.begin());
    const std::uint64_t drop_mask = drop >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << drop) - 1);
    return set_mask(v, var(v).mask & ~drop_mask);
}

int Store::add_int(int initial) {
    ints_.push_back(initial);
    return static_cast<int>(ints_.size() - 1);
}

void Store::set_int(int slot, int value) {
    auto& cur = ints_[static_cast<std::size_t>(slot)];
    if (cur == value) return;
    int_trail_.emplace_back(slot, cur);
    cur = value;
}

void Store::undo(Mark m) {
    while (trail_.size() > m.domains) {
        auto [v, mask] = trail_.back();
        vars_[static_cast<std::size_t>(v)].mask = mask;
        trail_.pop_back();
    }
    while (int_trail_.size() > m.ints) {
        auto [slot, value] = int_trail_.back();
        ints_[static_cast<std::size_t>(slot)] = value;
        int_trail_.pop_back();
    }
    modified_.clear();
}

std::vector<int> Store::take_modified() {
    std::vector<int> out;
    out.swap(modified_);
    return out;
}

}  // namespace matsym::solver
