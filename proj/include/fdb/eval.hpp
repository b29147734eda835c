#pragma once

// Exact evaluation of finite differences and of symbolic expressions.

#include "fdb/cuboid.hpp"
#include "fdb/expr.hpp"
#include "fdb/multi_index.hpp"
#include "fdb/value.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdb {

using Map = std::function<Value(const Value&)>;

/// Δ_u^α F(x) = Σ_{β≤α} (−1)^{|α|−|β|} F(x + β·u), by direct enumeration of the down-set.
template <class F>
Value eval_delta(F&& f, const Value& x, std::span<const Value> u, const MultiIndex& alpha) {
    if (u.size() != alpha.length())
        throw std::invalid_argument("direction count " + std::to_string(u.size()) + " differs from multi-index length " +
                                    std::to_string(alpha.length()));
    Value total;
    bool first = true;
    for (const auto& beta : down_set(alpha)) {
        Value pt = x;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (beta.digit(i)) pt += u[i];
        Value fx = f(pt);
        if ((alpha.order() - beta.order()) % 2 == 1) fx = -fx;
        if (first) {
            total = std::move(fx);
            first = false;
        } else {
            total += fx;
        }
    }
    return total;
}

/// Δ^α along directions with arbitrary nonnegative multiplicities:
/// Σ_{β≤α} (−1)^{|α|−|β|} Π C(αᵢ, βᵢ) F(x + Σ βᵢ tᵢ).
template <class F>
Value eval_delta_general(F&& f, const Value& x, std::span<const Value> t, std::span<const unsigned> exponents) {
    if (t.size() != exponents.size()) throw std::invalid_argument("exponent count differs from direction count");
    std::vector<unsigned> beta(t.size(), 0);
    unsigned total_order = 0;
    for (auto e : exponents) total_order += e;

    auto binom = [](unsigned n, unsigned r) {
        Integer c = 1;
        for (unsigned i = 0; i < r; ++i) c = c * (n - i) / (i + 1);
        return c;
    };

    Value total;
    bool first = true;
    while (true) {
        Value pt = x;
        Integer coeff = 1;
        unsigned beta_order = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (beta[i] != 0) pt += Rational(beta[i]) * t[i];
            coeff *= binom(exponents[i], beta[i]);
            beta_order += beta[i];
        }
        if ((total_order - beta_order) % 2 == 1) coeff = -coeff;
        Value term = Rational(coeff) * f(pt);
        if (first) {
            total = std::move(term);
            first = false;
        } else {
            total += term;
        }
        std::size_t i = 0;
        while (i < beta.size() && beta[i] == exponents[i]) beta[i++] = 0;
        if (i == beta.size()) break;
        ++beta[i];
    }
    return total;
}

struct Bindings {
    std::map<std::string, Value> points;
    std::map<std::string, Value> vectors;
    std::map<std::string, Cuboid> cuboids;
    std::map<std::string, Map> functions;
    /// Space dimension used for the empty sum when it cannot be inferred.
    std::size_t zero_dim = 0;
};

namespace detail {

template <class M>
const auto& lookup(const M& m, const std::string& name, const char* what) {
    auto it = m.find(name);
    if (it == m.end()) throw std::invalid_argument(std::string("unbound ") + what + " '" + name + "'");
    return it->second;
}

}  // namespace detail

/// Interprets an expression under `b`. Sums add, applications apply, and
/// difference terms evaluate their directions and base first.
inline Value eval_expr(const Expr& e, const Bindings& b) {
    return std::visit(
        [&](const auto& n) -> Value {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PointSym>) {
                return detail::lookup(b.points, n.name, "point");
            } else if constexpr (std::is_same_v<T, VecSym>) {
                return detail::lookup(b.vectors, n.name, "vector");
            } else if constexpr (std::is_same_v<T, ComponentSym>) {
                return detail::lookup(b.cuboids, n.cuboid, "cuboid")[n.index];
            } else if constexpr (std::is_same_v<T, Sum>) {
                if (n.terms.empty()) return Value::zero(b.zero_dim);
                Value total = eval_expr(n.terms.front(), b);
                for (std::size_t i = 1; i < n.terms.size(); ++i) total += eval_expr(n.terms[i], b);
                return total;
            } else if constexpr (std::is_same_v<T, App>) {
                return detail::lookup(b.functions, n.function, "function")(eval_expr(*n.arg, b));
            } else {
                const auto& fn = detail::lookup(b.functions, n.function, "function");
                const Value base = eval_expr(*n.base, b);
                std::vector<Value> dirs;
                dirs.reserve(n.directions.size());
                for (const auto& d : n.directions) {
                    // The empty sum is the zero vector of the base's space.
                    if (d.template is<Sum>() && d.template as<Sum>().terms.empty())
                        dirs.push_back(Value::zero(base.dim()));
                    else
                        dirs.push_back(eval_expr(d, b));
                }
                return eval_delta_general(fn, base, dirs, n.exponents);
            }
        },
        e.node());
}

}  // namespace fdb
