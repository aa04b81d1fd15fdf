#pragma once

#include <initializer_list>
#include <vector>

namespace matsym {

// Finite set of integer values, kept sorted and duplicate-free.
class Domain {
public:
    Domain() = default;
    Domain(std::initializer_list<int> values);
    explicit Domain(std::vector<int> values);

    // {lo, lo+1, ..., hi}; empty when hi < lo.
    static Domain range(int lo, int hi);

    const std::vector<int>& values() const noexcept { return values_; }
    bool empty() const noexcept { return values_.empty(); }
    std::size_t size() const noexcept { return values_.size(); }
    int min() const { return values_.front(); }
    int max() const { return values_.back(); }
    bool contains(int value) const;

    bool operator==(const Domain&) const = default;

private:
    std::vector<int> values_;
};

}  // namespace matsym
