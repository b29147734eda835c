#pragma once

// The index sets 𝒜_β^ξ attached to each partition ξ of α. Summing cuboid
// components over 𝒜_β^ξ gives the direction (β a block) or the base point
// (β = 0) of the term indexed by ξ in the exact expansion of T_α f ū.

#include "fdb/multi_index.hpp"
#include "fdb/partition.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace fdb {

struct ASetFamily {
    Partition partition;
    /// 𝒜₀^ξ, sorted.
    std::vector<MultiIndex> base;
    /// blocks[i] is 𝒜_{αⁱ}^ξ for the i-th block in canonical order, sorted.
    std::vector<std::vector<MultiIndex>> blocks;

    friend bool operator==(const ASetFamily&, const ASetFamily&) = default;
};

namespace detail {

inline std::vector<MultiIndex> sorted_union(std::vector<MultiIndex> a, const std::vector<MultiIndex>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return a;
}

inline std::vector<MultiIndex> sorted(std::vector<MultiIndex> a) {
    std::sort(a.begin(), a.end());
    return a;
}

/// One step of the recursion: the families of α⋄1 generated by one family of α.
inline std::vector<ASetFamily> extend_by_one(const ASetFamily& fam) {
    const auto children = refine(fam.partition);
    const std::size_t n = fam.partition.size();
    std::vector<ASetFamily> out;
    out.reserve(n + 1);

    // New singleton block 0⋄1 sits last in canonical order.
    {
        ASetFamily next{children[0], detail::sorted(diamond(fam.base, false)), {}};
        for (const auto& a : fam.blocks) next.blocks.push_back(detail::sorted(diamond(a, false)));
        next.blocks.push_back(detail::sorted(diamond(fam.base, true)));
        out.push_back(std::move(next));
    }
    for (std::size_t i = 0; i < n; ++i) {
        ASetFamily next{children[i + 1], {}, {}};
        auto base = sorted_union(diamond(fam.base, false), diamond(fam.base, true));
        next.base = sorted_union(std::move(base), diamond(fam.blocks[i], false));
        for (std::size_t j = 0; j < n; ++j) {
            if (j < i)
                next.blocks.push_back(detail::sorted(diamond(fam.blocks[j], false)));
            else if (j == i)
                next.blocks.push_back(detail::sorted(diamond(fam.blocks[j], true)));
            else
                next.blocks.push_back(sorted_union(diamond(fam.blocks[j], false), diamond(fam.blocks[j], true)));
        }
        out.push_back(std::move(next));
    }
    return out;
}

inline std::vector<MultiIndex> embed_all(const std::vector<MultiIndex>& set, const std::vector<std::size_t>& positions,
                                         std::size_t k) {
    std::vector<MultiIndex> out;
    out.reserve(set.size());
    for (const auto& g : set) out.push_back(embed(g, positions, k));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Families for the all-ones index of length m ≥ 1 in recursion order,
/// starting from T₁f(ū) = Δ_{u₁}f(u₀) and extending one digit at a time.
inline std::vector<ASetFamily> build_asets_all_ones(std::size_t m) {
    const MultiIndex one = MultiIndex::ones(1);
    std::vector<ASetFamily> families{
        ASetFamily{Partition(one, {one}), {MultiIndex::zero(1)}, {{one}}},
    };
    for (std::size_t len = 1; len < m; ++len) {
        std::vector<ASetFamily> next;
        for (const auto& fam : families) {
            auto children = detail::extend_by_one(fam);
            next.insert(next.end(), std::make_move_iterator(children.begin()), std::make_move_iterator(children.end()));
        }
        families = std::move(next);
    }
    return families;
}

/// One family per partition of α, sorted by partition. Indices with zero
/// digits are computed on the support and re-embedded.
inline std::vector<ASetFamily> build_asets(const MultiIndex& alpha) {
    const std::size_t k = alpha.length();
    if (alpha.is_zero()) return {ASetFamily{Partition(alpha, {}), {MultiIndex::zero(k)}, {}}};

    const auto supp = alpha.support();
    std::vector<ASetFamily> out;
    for (const auto& fam : build_asets_all_ones(supp.size())) {
        ASetFamily e;
        e.partition = embed(fam.partition, alpha);
        e.base = detail::embed_all(fam.base, supp, k);
        // Embedding is monotone, so block order is preserved.
        for (const auto& a : fam.blocks) e.blocks.push_back(detail::embed_all(a, supp, k));
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(),
              [](const ASetFamily& a, const ASetFamily& b) { return a.partition < b.partition; });
    return out;
}

struct ConditionResult {
    std::string name;
    bool passed = true;
    std::vector<MultiIndex> offending;
};

struct ValidationReport {
    Partition partition;
    std::vector<ConditionResult> conditions;

    [[nodiscard]] bool passed() const {
        return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.passed; });
    }
};

/// Checks the four structural conditions on an A-set family, plus the
/// weaker "|γ| > |β| for γ ∈ 𝒜_β − {β}". Conditions 3 and 4 are split into
/// their order-relation part (a) and their |γ| bound (b). Failures are
/// reported, not thrown.
inline ValidationReport validate(const ASetFamily& fam) {
    const MultiIndex& alpha = fam.partition.target();
    const auto& blocks = fam.partition.blocks();
    const std::size_t mo = fam.partition.maxord();
    const MultiIndex zero = MultiIndex::zero(alpha.length());

    ConditionResult disjoint_sets{"1: pairwise disjoint", true, {}};
    ConditionResult membership{"2: beta in A_beta subset of [alpha]", true, {}};
    ConditionResult base_between{"3a: 0 < gamma < alpha on A_0", true, {}};
    ConditionResult base_bound{"3b: |gamma| < maxord on A_0", true, {}};
    ConditionResult block_between{"4a: alpha^i < gamma < alpha on A_alpha^i", true, {}};
    ConditionResult block_bound{"4b: |gamma| <= maxord on A_alpha^i", true, {}};
    ConditionResult order_growth{"B: |gamma| > |beta| on A_beta", true, {}};

    auto fail = [](ConditionResult& c, const MultiIndex& g) {
        c.passed = false;
        c.offending.push_back(g);
    };

    if (fam.blocks.size() != blocks.size()) {
        membership.passed = false;
    }

    // Condition 1 over the concatenation of all sets.
    std::vector<MultiIndex> all = fam.base;
    for (const auto& a : fam.blocks) all.insert(all.end(), a.begin(), a.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 1; i < all.size(); ++i)
        if (all[i] == all[i - 1]) fail(disjoint_sets, all[i]);

    auto check_set = [&](const MultiIndex& beta, const std::vector<MultiIndex>& set, bool is_base) {
        if (std::find(set.begin(), set.end(), beta) == set.end()) fail(membership, beta);
        for (const auto& g : set) {
            if (g.length() != alpha.length() || !leq(g, alpha)) {
                fail(membership, g);
                continue;
            }
            if (g == beta) continue;
            if (g.order() <= beta.order()) fail(order_growth, g);
            if (is_base) {
                if (!(strictly_below(zero, g) && strictly_below(g, alpha))) fail(base_between, g);
                if (g.order() >= mo) fail(base_bound, g);
            } else {
                if (!(strictly_below(beta, g) && strictly_below(g, alpha))) fail(block_between, g);
                if (g.order() > mo) fail(block_bound, g);
            }
        }
    };
    check_set(zero, fam.base, true);
    for (std::size_t i = 0; i < std::min(blocks.size(), fam.blocks.size()); ++i) check_set(blocks[i], fam.blocks[i], false);

    return {fam.partition, {disjoint_sets, membership, base_between, base_bound, block_between, block_bound, order_growth}};
}

}  // namespace fdb
