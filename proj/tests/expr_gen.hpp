#pragma once

// Random expressions for round-trip and normal-form tests.

#include "fdb/expr.hpp"
#include "fdb/random.hpp"

namespace fdb::testing {

inline Expr random_leaf(Rng& rng, std::size_t k) {
    switch (rng.uniform(0, 2)) {
        case 0: return point("x");
        case 1: return vec("v_" + std::to_string(rng.uniform(1, 12)));
        default: return component("u", MultiIndex(k, static_cast<std::uint64_t>(rng.uniform(0, (1 << k) - 1))));
    }
}

/// Difference terms keep a nonempty direction list with unit exponents, so
/// the text form can express them.
inline Expr random_expr(Rng& rng, std::size_t k, int depth) {
    if (depth <= 0) return random_leaf(rng, k);
    switch (rng.uniform(0, 3)) {
        case 0: return random_leaf(rng, k);
        case 1: {
            std::vector<Expr> terms;
            const auto n = rng.uniform(2, 4);
            for (int i = 0; i < n; ++i) terms.push_back(random_expr(rng, k, depth - 1));
            return sum(std::move(terms));
        }
        case 2: return app(rng.uniform(0, 1) ? "f" : "g", random_expr(rng, k, depth - 1));
        default: {
            std::vector<Expr> dirs;
            const auto n = rng.uniform(1, 3);
            for (int i = 0; i < n; ++i) dirs.push_back(random_expr(rng, k, depth - 1));
            return delta_term(std::move(dirs), rng.uniform(0, 1) ? "f" : "g", random_expr(rng, k, depth - 1));
        }
    }
}

}  // namespace fdb::testing
