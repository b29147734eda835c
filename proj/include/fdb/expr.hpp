#pragma once

// Symbolic finite-difference expressions: points, vectors, cuboid
// components, sums, function applications and difference terms
// Δ^α_{(t₁,…,t_k)} f(s).

#include "fdb/multi_index.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace fdb {

class Expr;

/// Owning pointer with value semantics (deep copy, structural equality).
template <class T>
class Box {
public:
    Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)
    Box(const Box& o) : ptr_(std::make_unique<T>(*o.ptr_)) {}
    Box(Box&&) noexcept = default;
    Box& operator=(const Box& o) {
        if (this != &o) ptr_ = std::make_unique<T>(*o.ptr_);
        return *this;
    }
    Box& operator=(Box&&) noexcept = default;
    ~Box() = default;

    const T& operator*() const { return *ptr_; }
    const T* operator->() const { return ptr_.get(); }
    T& operator*() { return *ptr_; }

private:
    std::unique_ptr<T> ptr_;
};

struct PointSym {
    std::string name;
};
struct VecSym {
    std::string name;
};
struct ComponentSym {
    std::string cuboid;
    MultiIndex index;
};
struct Sum {
    std::vector<Expr> terms;
};
struct App {
    std::string function;
    Box<Expr> arg;
};
struct DeltaTerm {
    /// Multiplicity of each direction; binary in everything the expanders generate.
    std::vector<unsigned> exponents;
    std::vector<Expr> directions;
    std::string function;
    Box<Expr> base;
};

class Expr {
public:
    using Node = std::variant<PointSym, VecSym, ComponentSym, Sum, App, DeltaTerm>;

    Expr() : node_(Sum{}) {}
    template <class T>
        requires(!std::is_same_v<std::remove_cvref_t<T>, Expr> && std::is_constructible_v<Node, T &&>)
    Expr(T&& node) : node_(std::forward<T>(node)) {}  // NOLINT(google-explicit-constructor)

    [[nodiscard]] const Node& node() const noexcept { return node_; }
    template <class T>
    [[nodiscard]] bool is() const noexcept {
        return std::holds_alternative<T>(node_);
    }
    template <class T>
    [[nodiscard]] const T& as() const {
        return std::get<T>(node_);
    }

private:
    Node node_;
};

// --- construction helpers ---------------------------------------------------

inline Expr point(std::string name) { return PointSym{std::move(name)}; }
inline Expr vec(std::string name) { return VecSym{std::move(name)}; }
inline Expr component(std::string cuboid, MultiIndex index) { return ComponentSym{std::move(cuboid), index}; }
inline Expr sum(std::vector<Expr> terms) { return Sum{std::move(terms)}; }
inline Expr app(std::string function, Expr arg) { return App{std::move(function), Box<Expr>(std::move(arg))}; }

inline Expr delta_term(std::vector<unsigned> exponents, std::vector<Expr> directions, std::string function, Expr base) {
    if (exponents.size() != directions.size())
        throw std::invalid_argument("difference term needs one exponent per direction");
    return DeltaTerm{std::move(exponents), std::move(directions), std::move(function), Box<Expr>(std::move(base))};
}

/// Δ^{(1,…,1)} along the given directions.
inline Expr delta_term(std::vector<Expr> directions, std::string function, Expr base) {
    std::vector<unsigned> ones(directions.size(), 1U);
    return delta_term(std::move(ones), std::move(directions), std::move(function), std::move(base));
}

/// Δ^α along all of `directions`, α binary.
inline Expr delta_term(const MultiIndex& alpha, std::vector<Expr> directions, std::string function, Expr base) {
    if (alpha.length() != directions.size()) throw std::invalid_argument("multi-index length differs from direction count");
    std::vector<unsigned> exps(alpha.length());
    for (std::size_t i = 0; i < alpha.length(); ++i) exps[i] = alpha.digit(i) ? 1U : 0U;
    return delta_term(std::move(exps), std::move(directions), std::move(function), std::move(base));
}

// --- ordering and equality --------------------------------------------------

namespace detail {

/// Compares names with a trailing integer numerically, so v_2 < v_10.
inline std::strong_ordering natural_compare(const std::string& a, const std::string& b) {
    auto split = [](const std::string& s) {
        std::size_t i = s.size();
        while (i > 0 && s[i - 1] >= '0' && s[i - 1] <= '9') --i;
        return std::pair{s.substr(0, i), s.substr(i)};
    };
    auto [pa, na] = split(a);
    auto [pb, nb] = split(b);
    if (auto c = pa <=> pb; c != 0) return c;
    // Equal prefixes: shorter digit run is the smaller number (after leading zeros).
    auto strip = [](const std::string& s) {
        std::size_t i = 0;
        while (i + 1 < s.size() && s[i] == '0') ++i;
        return s.substr(i);
    };
    const auto sa = strip(na);
    const auto sb = strip(nb);
    if (auto c = sa.size() <=> sb.size(); c != 0) return c;
    if (auto c = sa <=> sb; c != 0) return c;
    return na <=> nb;
}

inline int kind_rank(const Expr& e) {
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PointSym>) return 0;
            else if constexpr (std::is_same_v<T, ComponentSym>) return 1;
            else if constexpr (std::is_same_v<T, VecSym>) return 2;
            else if constexpr (std::is_same_v<T, App>) return 3;
            else if constexpr (std::is_same_v<T, DeltaTerm>) return 4;
            else return 5;
        },
        e.node());
}

}  // namespace detail

/// Sorting weight: order for components, total exponent for difference terms.
inline std::size_t weight(const Expr& e) {
    return std::visit(
        [](const auto& n) -> std::size_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VecSym>) return 1;
            else if constexpr (std::is_same_v<T, ComponentSym>) return n.index.order();
            else if constexpr (std::is_same_v<T, DeltaTerm>) {
                std::size_t w = 0;
                for (auto x : n.exponents) w += x;
                return w;
            } else if constexpr (std::is_same_v<T, Sum>) {
                std::size_t w = std::numeric_limits<std::size_t>::max();
                for (const auto& t : n.terms) w = std::min(w, weight(t));
                return n.terms.empty() ? 0 : w;
            } else
                return 0;
        },
        e.node());
}

/// Total order on expressions used by canonical form: weight, then kind,
/// then a structural comparison.
inline std::strong_ordering compare(const Expr& a, const Expr& b) {
    if (auto c = weight(a) <=> weight(b); c != 0) return c;
    if (auto c = detail::kind_rank(a) <=> detail::kind_rank(b); c != 0) return c;

    auto list_compare = [](const std::vector<Expr>& x, const std::vector<Expr>& y) {
        for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
            if (auto c = compare(x[i], y[i]); c != 0) return c;
        return x.size() <=> y.size();
    };

    return std::visit(
        [&](const auto& na) -> std::strong_ordering {
            using T = std::decay_t<decltype(na)>;
            const auto& nb = b.as<T>();
            if constexpr (std::is_same_v<T, PointSym> || std::is_same_v<T, VecSym>) {
                return detail::natural_compare(na.name, nb.name);
            } else if constexpr (std::is_same_v<T, ComponentSym>) {
                if (auto c = detail::natural_compare(na.cuboid, nb.cuboid); c != 0) return c;
                return subscript_order(na.index, nb.index);
            } else if constexpr (std::is_same_v<T, Sum>) {
                return list_compare(na.terms, nb.terms);
            } else if constexpr (std::is_same_v<T, App>) {
                if (auto c = detail::natural_compare(na.function, nb.function); c != 0) return c;
                return compare(*na.arg, *nb.arg);
            } else {
                if (auto c = na.directions.size() <=> nb.directions.size(); c != 0) return c;
                if (auto c = list_compare(na.directions, nb.directions); c != 0) return c;
                if (auto c = na.exponents <=> nb.exponents; c != 0) return c;
                if (auto c = detail::natural_compare(na.function, nb.function); c != 0) return c;
                return compare(*na.base, *nb.base);
            }
        },
        a.node());
}

inline bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

// --- order of a term ----------------------------------------------------------

/// Recursive order: points and applications 0, vectors 1, a cuboid
/// component u_γ has order |γ|, sums take the minimum, difference terms
/// Σ αᵢ·ord(tᵢ). The empty sum (the zero vector) is assigned 0.
inline std::size_t ord(const Expr& e) {
    return std::visit(
        [](const auto& n) -> std::size_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PointSym> || std::is_same_v<T, App>) return 0;
            else if constexpr (std::is_same_v<T, VecSym>) return 1;
            else if constexpr (std::is_same_v<T, ComponentSym>) return n.index.order();
            else if constexpr (std::is_same_v<T, Sum>) {
                if (n.terms.empty()) return 0;
                std::size_t m = std::numeric_limits<std::size_t>::max();
                for (const auto& t : n.terms) m = std::min(m, ord(t));
                return m;
            } else {
                std::size_t total = 0;
                for (std::size_t i = 0; i < n.directions.size(); ++i) total += n.exponents[i] * ord(n.directions[i]);
                return total;
            }
        },
        e.node());
}

// --- direction order --------------------------------------------------------------

namespace detail {

/// A leaf reduced to what direction ordering looks at: its kind and its
/// name or subscripts, ignoring order.
struct LeafKey {
    int kind = 0;
    std::string name;
    std::vector<std::size_t> subscripts;
};

inline std::strong_ordering compare_leaf(const LeafKey& a, const LeafKey& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = natural_compare(a.name, b.name); c != 0) return c;
    return std::lexicographical_compare_three_way(a.subscripts.begin(), a.subscripts.end(), b.subscripts.begin(),
                                                  b.subscripts.end());
}

inline std::strong_ordering compare_signature(const std::vector<LeafKey>& a, const std::vector<LeafKey>& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
        if (auto c = compare_leaf(a[i], b[i]); c != 0) return c;
    return a.size() <=> b.size();
}

/// Sorted leaves of a direction; a sum takes its smallest summand's signature.
inline std::vector<LeafKey> signature(const Expr& e) {
    return std::visit(
        [](const auto& n) -> std::vector<LeafKey> {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PointSym>) return {{0, n.name, {}}};
            else if constexpr (std::is_same_v<T, VecSym>) return {{1, n.name, {}}};
            else if constexpr (std::is_same_v<T, ComponentSym>) return {{1, n.cuboid, n.index.support()}};
            else if constexpr (std::is_same_v<T, App>) return signature(*n.arg);
            else if constexpr (std::is_same_v<T, Sum>) {
                std::vector<LeafKey> best;
                bool first = true;
                for (const auto& t : n.terms) {
                    auto s = signature(t);
                    if (first || compare_signature(s, best) < 0) best = std::move(s);
                    first = false;
                }
                return best;
            } else {
                std::vector<LeafKey> all;
                for (const auto& d : n.directions) {
                    auto s = signature(d);
                    all.insert(all.end(), s.begin(), s.end());
                }
                std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return compare_leaf(a, b) < 0; });
                return all;
            }
        },
        e.node());
}

}  // namespace detail

/// Order of the directions inside one difference term: by leaf subscripts
/// (so u_{1,3} precedes u_2 + u_{2,3}), then by compare().
inline std::strong_ordering compare_directions(const Expr& a, const Expr& b) {
    if (auto c = detail::compare_signature(detail::signature(a), detail::signature(b)); c != 0) return c;
    return compare(a, b);
}

// --- canonical form -------------------------------------------------------------

/// Normal form: nested sums flattened and sorted, singleton sums unwrapped,
/// zero-exponent directions dropped, Δ⁰f(s) rewritten as f(s), repeated
/// directions merged into one exponent, directions sorted by
/// compare_directions (difference operators commute).
inline Expr canonicalize(const Expr& e) {
    return std::visit(
        [](const auto& n) -> Expr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Sum>) {
                std::vector<Expr> flat;
                for (const auto& t : n.terms) {
                    Expr c = canonicalize(t);
                    if (c.is<Sum>()) {
                        const auto& inner = c.as<Sum>().terms;
                        flat.insert(flat.end(), inner.begin(), inner.end());
                    } else {
                        flat.push_back(std::move(c));
                    }
                }
                std::stable_sort(flat.begin(), flat.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
                if (flat.size() == 1) return std::move(flat.front());
                return Sum{std::move(flat)};
            } else if constexpr (std::is_same_v<T, App>) {
                return app(n.function, canonicalize(*n.arg));
            } else if constexpr (std::is_same_v<T, DeltaTerm>) {
                std::vector<std::pair<Expr, unsigned>> dirs;
                for (std::size_t i = 0; i < n.directions.size(); ++i)
                    if (n.exponents[i] != 0) dirs.emplace_back(canonicalize(n.directions[i]), n.exponents[i]);
                Expr base = canonicalize(*n.base);
                if (dirs.empty()) return app(n.function, std::move(base));
                std::stable_sort(dirs.begin(), dirs.end(),
                                 [](const auto& a, const auto& b) { return compare_directions(a.first, b.first) < 0; });
                std::vector<Expr> directions;
                std::vector<unsigned> exps;
                for (auto& [d, x] : dirs) {
                    if (!directions.empty() && directions.back() == d) {
                        exps.back() += x;
                    } else {
                        directions.push_back(std::move(d));
                        exps.push_back(x);
                    }
                }
                return delta_term(std::move(exps), std::move(directions), n.function, std::move(base));
            } else {
                return Expr(n);
            }
        },
        e.node());
}

// --- traversal ------------------------------------------------------------------

/// Rebuilds `e` bottom-up, replacing each leaf by `leaf(leaf_expr)`.
inline Expr map_leaves(const Expr& e, const std::function<Expr(const Expr&)>& leaf) {
    return std::visit(
        [&](const auto& n) -> Expr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Sum>) {
                std::vector<Expr> terms;
                terms.reserve(n.terms.size());
                for (const auto& t : n.terms) terms.push_back(map_leaves(t, leaf));
                return Sum{std::move(terms)};
            } else if constexpr (std::is_same_v<T, App>) {
                return app(n.function, map_leaves(*n.arg, leaf));
            } else if constexpr (std::is_same_v<T, DeltaTerm>) {
                std::vector<Expr> dirs;
                dirs.reserve(n.directions.size());
                for (const auto& d : n.directions) dirs.push_back(map_leaves(d, leaf));
                return delta_term(n.exponents, std::move(dirs), n.function, map_leaves(*n.base, leaf));
            } else {
                return leaf(Expr(n));
            }
        },
        e.node());
}

/// Top-level summands of `e` (a non-sum counts as one summand, the empty sum as none).
inline std::vector<Expr> summands(const Expr& e) {
    if (e.is<Sum>()) return e.as<Sum>().terms;
    return {e};
}

}  // namespace fdb
