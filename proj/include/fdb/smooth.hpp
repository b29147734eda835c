#pragma once

// The infinitesimal counterpart: T^α f ū = Σ_ξ D^n_{u_{α¹},…,u_{αⁿ}} f(x),
// and the chain rule D_u^α(f∘g)(x) = Σ_ξ D^n_{D^{α¹}g(x),…} f(g(x)).

#include "fdb/cuboid.hpp"
#include "fdb/multi_index.hpp"
#include "fdb/partition.hpp"
#include "fdb/polynomial.hpp"
#include "fdb/render.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fdb {

/// D^n_{u_{α¹},…,u_{αⁿ}} f(x) for one partition.
struct InfinitesimalTerm {
    std::vector<MultiIndex> blocks;

    /// Σ |αⁱ|; equal to |α| for every term of the expansion.
    [[nodiscard]] std::size_t order() const {
        std::size_t s = 0;
        for (const auto& b : blocks) s += b.order();
        return s;
    }
    friend bool operator==(const InfinitesimalTerm&, const InfinitesimalTerm&) = default;
};

/// Terms sorted by size, then by block subscripts.
inline std::vector<InfinitesimalTerm> infinitesimal_expansion(const MultiIndex& alpha) {
    std::vector<InfinitesimalTerm> out;
    for (const auto& p : enumerate_partitions(alpha).partitions) {
        auto blocks = p.blocks();
        std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return subscript_order(a, b) < 0; });
        out.push_back({std::move(blocks)});
    }
    std::sort(out.begin(), out.end(), [](const InfinitesimalTerm& a, const InfinitesimalTerm& b) {
        if (a.blocks.size() != b.blocks.size()) return a.blocks.size() < b.blocks.size();
        for (std::size_t i = 0; i < a.blocks.size(); ++i) {
            auto c = subscript_order(a.blocks[i], b.blocks[i]);
            if (c != 0) return c < 0;
        }
        return false;
    });
    return out;
}

/// "D_{u_{1,2}} f(x) + D^2_{u_1, u_2} f(x)".
inline std::string render_infinitesimal(const std::vector<InfinitesimalTerm>& terms) {
    std::string out;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        if (t) out += " + ";
        const auto& blocks = terms[t].blocks;
        if (blocks.empty()) {
            out += "f(x)";
            continue;
        }
        out += "D";
        if (blocks.size() > 1) out += "^" + std::to_string(blocks.size());
        out += "_{";
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (i) out += ", ";
            out += "u_" + detail::subscript_list(blocks[i], false);
        }
        out += "} f(x)";
    }
    return out;
}

/// Right-hand side of the tangent pattern on a cuboid over x = u₀:
/// Σ_ξ D^n_{u_{α¹},…} f(u₀).
inline Value eval_infinitesimal(const PolynomialMap& f, const Cuboid& u, const MultiIndex& alpha) {
    Value total = Value::zero(f.codomain_dim());
    const Value& x = u[MultiIndex::zero(u.dim())];
    for (const auto& term : infinitesimal_expansion(alpha)) {
        std::vector<Value> w;
        for (const auto& b : term.blocks) w.push_back(u[b]);
        total += multi_derivative(f, w)(x);
    }
    return total;
}

/// Σ_ξ D^n_{D^{α¹}g(x),…} f(g(x)).
inline Value eval_smooth_chain(const PolynomialMap& f, const PolynomialMap& g, const Value& x, std::span<const Value> u,
                               const MultiIndex& alpha) {
    Value total = Value::zero(f.codomain_dim());
    const Value gx = g(x);
    for (const auto& term : infinitesimal_expansion(alpha)) {
        std::vector<Value> w;
        for (const auto& b : term.blocks) w.push_back(d_alpha(g, u, b)(x));
        total += multi_derivative(f, w)(gx);
    }
    return total;
}

/// Flattens a cuboid into the variable layout of tangent_power.
inline Value flatten(const Cuboid& u) {
    std::vector<Rational> coords;
    for (const auto& c : u.components()) coords.insert(coords.end(), c.coords().begin(), c.coords().end());
    return Value(std::move(coords));
}

inline Cuboid unflatten(const Value& v, std::size_t k) {
    const std::size_t n = std::size_t{1} << k;
    if (v.dim() % n != 0) throw std::invalid_argument("flattened cuboid has an incompatible length");
    const std::size_t space = v.dim() / n;
    std::vector<Value> comps;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> c(v.coords().begin() + static_cast<std::ptrdiff_t>(i * space),
                                v.coords().begin() + static_cast<std::ptrdiff_t>((i + 1) * space));
        comps.emplace_back(std::move(c));
    }
    return {k, std::move(comps)};
}

}  // namespace fdb
