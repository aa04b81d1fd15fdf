#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace matsym {

using BigInt = boost::multiprecision::cpp_int;

// perm[i] is the source index placed at position i.
using Permutation = std::vector<int>;

/// Interchangeable index groups, one partition per dimension. The group is the
/// direct product of the symmetric groups on the blocks.
class SymmetrySpec {
public:
    using Block = std::vector<int>;
    using Partition = std::vector<Block>;

    SymmetrySpec() = default;
    // Blocks are normalized: sorted inside, ordered by smallest member.
    explicit SymmetrySpec(std::vector<Partition> per_dimension);

    static SymmetrySpec full(std::span<const int> dims);
    static SymmetrySpec none(std::span<const int> dims);

    const std::vector<Partition>& per_dimension() const noexcept { return partitions_; }
    const Partition& partition(std::size_t dim) const { return partitions_.at(dim); }
    std::size_t rank() const noexcept { return partitions_.size(); }

    // Throws MalformedPartition unless every dimension's blocks are disjoint and cover 0..extent-1.
    void validate(std::span<const int> dims) const;

    BigInt group_order() const;
    // Order of the subgroup acting on one dimension.
    BigInt dimension_order(std::size_t dim) const;
    std::optional<std::uint64_t> group_order_u64() const;

    bool has_symmetry() const;
    bool dimension_has_symmetry(std::size_t dim) const;

    // Index of the block holding `index` in dimension `dim`.
    int block_of(std::size_t dim, int index) const;

    // True when `perm` is a permutation of the dimension that keeps every index in its block.
    bool respects(std::size_t dim, std::span<const int> perm) const;

    bool operator==(const SymmetrySpec&) const = default;

private:
    std::vector<Partition> partitions_;
};

std::string to_string(const BigInt& value);

/// Calls `visit` on every block-respecting permutation of one dimension, identity first.
/// Stops early when `visit` returns false.
void for_each_dimension_permutation(const SymmetrySpec::Partition& partition, int extent,
                                    const std::function<bool(const Permutation&)>& visit);

/// Calls `visit` on every group element (one permutation per dimension), identity first.
void for_each_group_element(const SymmetrySpec& symmetry, std::span<const int> dims,
                            const std::function<bool(const std::vector<Permutation>&)>& visit);

}  // namespace matsym
