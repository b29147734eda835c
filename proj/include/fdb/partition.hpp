#pragma once

// Partitions of a binary multi-index: sets of nonzero indices with disjoint
// supports summing to the target. They correspond one-to-one with set
// partitions of the target's support.

#include "fdb/multi_index.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdb {

class Partition {
public:
    Partition() = default;

    /// Validates the blocks and puts them in canonical order
    /// (ascending by position of the least 1-digit).
    Partition(MultiIndex target, std::vector<MultiIndex> blocks) : target_(target), blocks_(std::move(blocks)) {
        std::uint64_t acc = 0;
        for (const auto& b : blocks_) {
            detail::require_same_length(b, target_);
            if (b.is_zero()) throw std::invalid_argument("partition block is zero");
            if ((acc & b.bits()) != 0) throw std::invalid_argument("partition blocks overlap");
            acc |= b.bits();
        }
        if (acc != target_.bits()) throw std::invalid_argument("partition blocks do not sum to " + target_.bitstring());
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const MultiIndex& a, const MultiIndex& b) { return a.least_support() < b.least_support(); });
    }

    [[nodiscard]] const MultiIndex& target() const noexcept { return target_; }
    [[nodiscard]] const std::vector<MultiIndex>& blocks() const noexcept { return blocks_; }
    [[nodiscard]] std::size_t size() const noexcept { return blocks_.size(); }

    /// Largest block order; 0 for the empty partition of the zero index.
    [[nodiscard]] std::size_t maxord() const noexcept {
        std::size_t m = 0;
        for (const auto& b : blocks_) m = std::max(m, b.order());
        return m;
    }

    [[nodiscard]] std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (i) s += ",";
            s += blocks_[i].bitstring();
        }
        return s + "}";
    }

    /// Size, then blocks lexicographically.
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
        if (auto c = a.target_ <=> b.target_; c != 0) return c;
        if (auto c = a.blocks_.size() <=> b.blocks_.size(); c != 0) return c;
        return std::lexicographical_compare_three_way(a.blocks_.begin(), a.blocks_.end(), b.blocks_.begin(),
                                                      b.blocks_.end());
    }
    friend bool operator==(const Partition&, const Partition&) = default;

private:
    MultiIndex target_;
    std::vector<MultiIndex> blocks_;
};

inline std::size_t maxord(const Partition& p) { return p.maxord(); }

struct PartitionTable {
    MultiIndex target;
    std::vector<Partition> partitions;
};

/// Bell numbers from the Bell triangle.
inline std::uint64_t bell_number(std::size_t n) {
    if (n > 25) throw std::out_of_range("Bell number overflows 64 bits");
    std::vector<std::uint64_t> row{1};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::uint64_t> next{row.back()};
        for (auto v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

/// All partitions of α, sorted. The zero index has exactly one partition,
/// the empty one.
inline PartitionTable enumerate_partitions(const MultiIndex& alpha) {
    PartitionTable table{alpha, {}};
    const auto supp = alpha.support();
    const std::size_t m = supp.size();
    if (m == 0) {
        table.partitions.emplace_back(alpha, std::vector<MultiIndex>{});
        return table;
    }
    // Restricted growth strings: rgs[j] is the block of support element j.
    std::vector<std::size_t> rgs(m, 0);
    std::vector<std::size_t> prefix_max(m, 0);
    while (true) {
        const std::size_t nblocks = prefix_max[m - 1] + 1;
        std::vector<std::uint64_t> codes(nblocks, 0);
        for (std::size_t j = 0; j < m; ++j) codes[rgs[j]] |= std::uint64_t{1} << supp[j];
        std::vector<MultiIndex> blocks;
        blocks.reserve(nblocks);
        for (auto c : codes) blocks.emplace_back(alpha.length(), c);
        table.partitions.emplace_back(alpha, std::move(blocks));

        std::size_t j = m - 1;
        while (j > 0 && rgs[j] == prefix_max[j - 1] + 1) --j;
        if (j == 0) break;
        ++rgs[j];
        prefix_max[j] = std::max(prefix_max[j - 1], rgs[j]);
        for (std::size_t i = j + 1; i < m; ++i) {
            rgs[i] = 0;
            prefix_max[i] = prefix_max[j];
        }
    }
    std::sort(table.partitions.begin(), table.partitions.end());
    return table;
}

/// Refinement of ξ ∈ 𝒫_α into partitions of α⋄1: element 0 is
/// {α¹⋄0, …, αⁿ⋄0, 0⋄1}; element i is ξ with block αⁱ replaced by αⁱ⋄1
/// and every other block extended by 0.
inline std::vector<Partition> refine(const Partition& xi) {
    const auto& blocks = xi.blocks();
    const MultiIndex target = diamond(xi.target(), true);
    std::vector<Partition> out;
    out.reserve(blocks.size() + 1);

    std::vector<MultiIndex> first = diamond(blocks, false);
    first.push_back(diamond(MultiIndex::zero(xi.target().length()), true));
    out.emplace_back(target, std::move(first));

    for (std::size_t i = 0; i < blocks.size(); ++i) {
        std::vector<MultiIndex> next = diamond(blocks, false);
        next[i] = diamond(blocks[i], true);
        out.emplace_back(target, std::move(next));
    }
    return out;
}

/// Re-expresses a partition of the all-ones index on |α| digits as a
/// partition of α, digit j going to the j-th support position of α.
inline Partition embed(const Partition& p, const MultiIndex& alpha) {
    const auto supp = alpha.support();
    std::vector<MultiIndex> blocks;
    blocks.reserve(p.size());
    for (const auto& b : p.blocks()) blocks.push_back(embed(b, supp, alpha.length()));
    return {alpha, std::move(blocks)};
}

}  // namespace fdb
