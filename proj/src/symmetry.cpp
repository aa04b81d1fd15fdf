#include "matsym/symmetry.hpp"

#include <algorithm>
#include <limits>

#include "matsym/error.hpp"

namespace matsym {

namespace {

BigInt factorial(std::size_t n) {
    BigInt f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

std::string to_string(const BigInt& value) { return value.str(); }

SymmetrySpec::SymmetrySpec(std::vector<Partition> per_dimension) : partitions_(std::move(per_dimension)) {
    for (auto& partition : partitions_) {
        for (auto& block : partition) std::sort(block.begin(), block.end());
        std::sort(partition.begin(), partition.end(), [](const Block& a, const Block& b) {
            if (a.empty() || b.empty()) return a.size() < b.size();
            return a.front() < b.front();
        });
    }
}

SymmetrySpec SymmetrySpec::full(std::span<const int> dims) {
    std::vector<Partition> parts;
    for (int extent : dims) {
        Block block;
        for (int i = 0; i < extent; ++i) block.push_back(i);
        parts.push_back({block});
    }
    return SymmetrySpec(std::move(parts));
}

SymmetrySpec SymmetrySpec::none(std::span<const int> dims) {
    std::vector<Partition> parts;
    for (int extent : dims) {
        Partition p;
        for (int i = 0; i < extent; ++i) p.push_back({i});
        parts.push_back(std::move(p));
    }
    return SymmetrySpec(std::move(parts));
}

void SymmetrySpec::validate(std::span<const int> dims) const {
    if (partitions_.size() != dims.size()) {
        throw Error(ErrorCode::MalformedPartition,
                    "symmetry has " + std::to_string(partitions_.size()) + " dimensions, model has " +
                        std::to_string(dims.size()));
    }
    for (std::size_t d = 0; d < dims.size(); ++d) {
        std::vector<int> seen(static_cast<std::size_t>(dims[d]), 0);
        for (const auto& block : partitions_[d]) {
            if (block.empty()) {
                throw Error(ErrorCode::MalformedPartition, "empty block in dimension " + std::to_string(d));
            }
            for (int i : block) {
                if (i < 0 || i >= dims[d]) {
                    throw Error(ErrorCode::MalformedPartition,
                                "index " + std::to_string(i) + " outside dimension " + std::to_string(d));
                }
                if (seen[static_cast<std::size_t>(i)]++) {
                    throw Error(ErrorCode::MalformedPartition,
                                "index " + std::to_string(i) + " in two blocks of dimension " +
                                    std::to_string(d));
                }
            }
        }
        if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
            throw Error(ErrorCode::MalformedPartition,
                        "blocks of dimension " + std::to_string(d) + " do not cover every index");
        }
    }
}

BigInt SymmetrySpec::dimension_order(std::size_t dim) const {
    BigInt order = 1;
    for (const auto& block : partitions_.at(dim)) order *= factorial(block.size());
    return order;
}

BigInt SymmetrySpec::group_order() const {
    BigInt order = 1;
    for (std::size_t d = 0; d < partitions_.size(); ++d) order *= dimension_order(d);
    return order;
}

std::optional<std::uint64_t> SymmetrySpec::group_order_u64() const {
    BigInt order = group_order();
    if (order > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    return order.convert_to<std::uint64_t>();
}

bool SymmetrySpec::dimension_has_symmetry(std::size_t dim) const {
    const auto& p = partitions_.at(dim);
    return std::any_of(p.begin(), p.end(), [](const Block& b) { return b.size() > 1; });
}

bool SymmetrySpec::has_symmetry() const {
    for (std::size_t d = 0; d < partitions_.size(); ++d) {
        if (dimension_has_symmetry(d)) return true;
    }
    return false;
}

int SymmetrySpec::block_of(std::size_t dim, int index) const {
    const auto& p = partitions_.at(dim);
    for (std::size_t b = 0; b < p.size(); ++b) {
        if (std::binary_search(p[b].begin(), p[b].end(), index)) return static_cast<int>(b);
    }
    throw Error(ErrorCode::OutOfRangeIndex,
                "index " + std::to_string(index) + " not in any block of dimension " + std::to_string(dim));
}

bool SymmetrySpec::respects(std::size_t dim, std::span<const int> perm) const {
    std::vector<int> seen(perm.size(), 0);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        const int src = perm[i];
        if (src < 0 || static_cast<std::size_t>(src) >= perm.size() || seen[static_cast<std::size_t>(src)]++) {
            return false;
        }
        if (block_of(dim, static_cast<int>(i)) != block_of(dim, src)) return false;
    }
    return true;
}

void for_each_dimension_permutation(const SymmetrySpec::Partition& partition, int extent,
                                    const std::function<bool(const Permutation&)>& visit) {
    std::vector<SymmetrySpec::Block> arrangement = partition;
    Permutation perm(static_cast<std::size_t>(extent));
    auto write = [&] {
        for (std::size_t b = 0; b < partition.size(); ++b) {
            for (std::size_t k = 0; k < partition[b].size(); ++k) {
                perm[static_cast<std::size_t>(partition[b][k])] = arrangement[b][k];
            }
        }
    };
    while (true) {
        write();
        if (!visit(perm)) return;
        std::size_t b = 0;
        while (b < arrangement.size() &&
               !std::next_permutation(arrangement[b].begin(), arrangement[b].end())) {
            ++b;
        }
        if (b == arrangement.size()) return;
    }
}

void for_each_group_element(const SymmetrySpec& symmetry, std::span<const int> dims,
                            const std::function<bool(const std::vector<Permutation>&)>& visit) {
    std::vector<Permutation> element(dims.size());
    bool keep_going = true;
    std::function<void(std::size_t)> recurse = [&](std::size_t d) {
        if (d == dims.size()) {
            keep_going = visit(element);
            return;
        }
        for_each_dimension_permutation(symmetry.partition(d), dims[d], [&](const Permutation& p) {
            element[d] = p;
            recurse(d + 1);
            return keep_going;
        });
    };
    recurse(0);
}

}  // namespace matsym
