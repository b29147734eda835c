#pragma once

// Exact expansions generated from the A-sets:
//
//   T_α f ū        = Σ_ξ Δ^r_{u^ξ_{α¹},…,u^ξ_{α^r}} f(u^ξ_0),   u^ξ_β = Σ_{γ∈𝒜_β^ξ} u_γ
//   Δ_v^α(f∘g)(x)  = the same with every u_γ replaced by Δ_v^γ g(x)
//
// together with their leading parts (every direction truncated to its
// leading summand, the base to its first summand) and remainders written as
// sums of strictly higher order difference terms.

#include "fdb/asets.hpp"
#include "fdb/expr.hpp"
#include "fdb/multi_index.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace fdb {

/// Symbol names used by the generated expressions.
namespace names {
inline const std::string cuboid = "u";
inline const std::string outer = "f";
inline const std::string inner = "g";
inline const std::string point = "x";
inline const std::string vector_prefix = "v_";
}  // namespace names

inline Expr direction_symbol(std::size_t i) { return vec(names::vector_prefix + std::to_string(i + 1)); }

inline std::vector<Expr> direction_symbols(std::size_t k) {
    std::vector<Expr> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(direction_symbol(i));
    return out;
}

/// Σ_{γ∈set} u_γ, in the order of `set`.
inline Expr component_sum(const std::vector<MultiIndex>& set, const std::string& cuboid = names::cuboid) {
    std::vector<Expr> terms;
    terms.reserve(set.size());
    for (const auto& g : set) terms.push_back(component(cuboid, g));
    return sum(std::move(terms));
}

/// The term of T_α f ū attached to one family, directions in block order.
inline Expr tangent_term(const ASetFamily& fam) {
    std::vector<Expr> dirs;
    dirs.reserve(fam.blocks.size());
    for (const auto& a : fam.blocks) dirs.push_back(component_sum(a));
    return delta_term(std::move(dirs), names::outer, component_sum(fam.base));
}

/// Expansion of T_α f ū before canonicalization: terms in recursion order,
/// directions in canonical block order.
inline Expr expand_tangent_raw(const MultiIndex& alpha) {
    std::vector<Expr> terms;
    if (alpha.is_zero()) {
        for (const auto& fam : build_asets(alpha)) terms.push_back(tangent_term(fam));
        return sum(std::move(terms));
    }
    const auto supp = alpha.support();
    for (const auto& fam : build_asets_all_ones(supp.size())) {
        ASetFamily e;
        e.partition = embed(fam.partition, alpha);
        e.base = detail::embed_all(fam.base, supp, alpha.length());
        for (const auto& a : fam.blocks) e.blocks.push_back(detail::embed_all(a, supp, alpha.length()));
        terms.push_back(tangent_term(e));
    }
    return sum(std::move(terms));
}

inline Expr expand_tangent(const MultiIndex& alpha) { return canonicalize(expand_tangent_raw(alpha)); }

/// Replaces u_γ by Δ_v^γ g(x) for v = (v_1,…,v_k).
inline Expr substitute_chain(const Expr& tangent, std::size_t k) {
    const auto dirs = direction_symbols(k);
    return map_leaves(tangent, [&](const Expr& leaf) -> Expr {
        if (!leaf.is<ComponentSym>()) return leaf;
        const auto& c = leaf.as<ComponentSym>();
        return delta_term(c.index, dirs, names::inner, point(names::point));
    });
}

inline Expr expand_chain(const MultiIndex& alpha) {
    return canonicalize(substitute_chain(expand_tangent_raw(alpha), alpha.length()));
}

/// Σ_ξ Δ^r_{u_{α¹},…,u_{α^r}} f(u_0): the order-|α| part of T_α f ū.
inline Expr tangent_main_part(const MultiIndex& alpha) {
    std::vector<Expr> terms;
    for (const auto& fam : build_asets(alpha)) {
        std::vector<Expr> dirs;
        for (const auto& b : fam.partition.blocks()) dirs.push_back(component(names::cuboid, b));
        terms.push_back(delta_term(std::move(dirs), names::outer, component(names::cuboid, MultiIndex::zero(alpha.length()))));
    }
    return canonicalize(sum(std::move(terms)));
}

/// Σ_ξ Δ^r_{Δ^{α¹}g(x),…} f(g(x)): the order-|α| part of Δ_v^α(f∘g)(x).
inline Expr main_part(const MultiIndex& alpha) {
    return canonicalize(substitute_chain(tangent_main_part(alpha), alpha.length()));
}

/// Difference terms of
///   Δ^n_{u₁+v₁,…,u_n+v_n} f(x+w) − Δ^n_{u₁,…,u_n} f(x)
///   = Δ^{n+1}_{w,u₁,…,u_n} f(x) + Σ_i Δ^n_{u₁,…,u_{i−1},v_i,u_{i+1}+v_{i+1},…} f(x+w+u_i).
/// Terms with an empty-sum direction vanish and are omitted when
/// `drop_zero` is set.
inline std::vector<Expr> telescope(const std::vector<Expr>& u, const std::vector<Expr>& v, const Expr& x, const Expr& w,
                                   const std::string& fn, bool drop_zero) {
    auto is_empty = [](const Expr& e) { return e.is<Sum>() && e.as<Sum>().terms.empty(); };
    std::vector<Expr> out;
    const std::size_t n = u.size();

    if (!(drop_zero && is_empty(w))) {
        std::vector<Expr> dirs{w};
        dirs.insert(dirs.end(), u.begin(), u.end());
        out.push_back(delta_term(std::move(dirs), fn, x));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (drop_zero && is_empty(v[i])) continue;
        std::vector<Expr> dirs;
        for (std::size_t j = 0; j < n; ++j) {
            if (j < i)
                dirs.push_back(u[j]);
            else if (j == i)
                dirs.push_back(v[j]);
            else
                dirs.push_back(sum({u[j], v[j]}));
        }
        out.push_back(delta_term(std::move(dirs), fn, sum({x, w, u[i]})));
    }
    return out;
}

namespace detail {
inline std::vector<MultiIndex> without(const std::vector<MultiIndex>& set, const MultiIndex& drop) {
    std::vector<MultiIndex> out;
    for (const auto& g : set)
        if (g != drop) out.push_back(g);
    return out;
}
}  // namespace detail

/// T_α f ū minus its main part, as a sum of difference terms each of order > |α|.
inline Expr tangent_remainder(const MultiIndex& alpha) {
    std::vector<Expr> terms;
    const MultiIndex zero = MultiIndex::zero(alpha.length());
    for (const auto& fam : build_asets(alpha)) {
        const auto& blocks = fam.partition.blocks();
        std::vector<Expr> u;
        std::vector<Expr> v;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            u.push_back(component(names::cuboid, blocks[i]));
            v.push_back(component_sum(detail::without(fam.blocks[i], blocks[i])));
        }
        auto parts = telescope(u, v, component(names::cuboid, zero), component_sum(detail::without(fam.base, zero)),
                               names::outer, true);
        terms.insert(terms.end(), parts.begin(), parts.end());
    }
    return canonicalize(sum(std::move(terms)));
}

/// Δ_v^α(f∘g)(x) minus main_part(α), as a sum of higher order difference terms.
inline Expr chain_remainder(const MultiIndex& alpha) {
    return canonicalize(substitute_chain(tangent_remainder(alpha), alpha.length()));
}

/// Rewrites a raw expansion of T_α f ū into one of T_{α⋄1} f w̄ with
/// w̄ = [ū, v̄], using T_{α⋄1} f [ū, v̄] = T_α f(ū + v̄) − T_α f ū and the
/// telescoping identity term by term. Components u_γ of ū become u_{γ⋄0},
/// those of v̄ become u_{γ⋄1}.
inline Expr lemma3_step(const Expr& raw) {
    auto lift = [](const Expr& e, bool d) {
        return map_leaves(e, [d](const Expr& leaf) -> Expr {
            if (!leaf.is<ComponentSym>()) return leaf;
            const auto& c = leaf.as<ComponentSym>();
            return component(c.cuboid, diamond(c.index, d));
        });
    };
    std::vector<Expr> out;
    for (const auto& term : summands(raw)) {
        if (!term.is<DeltaTerm>()) throw std::invalid_argument("lemma3_step expects a sum of difference terms");
        const auto& t = term.as<DeltaTerm>();
        std::vector<Expr> u;
        std::vector<Expr> v;
        for (const auto& d : t.directions) {
            u.push_back(lift(d, false));
            v.push_back(lift(d, true));
        }
        auto parts = telescope(u, v, lift(*t.base, false), lift(*t.base, true), t.function, false);
        out.insert(out.end(), parts.begin(), parts.end());
    }
    return sum(std::move(out));
}

}  // namespace fdb
