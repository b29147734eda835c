#pragma once

// Multivariate polynomials with exact rational coefficients, polynomial maps
// Q^p → Q^q, directional derivatives and iterated tangent maps.

#include "fdb/multi_index.hpp"
#include "fdb/random.hpp"
#include "fdb/value.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fdb {

class Polynomial {
public:
    using Exponents = std::vector<unsigned>;

    explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rational& c) {
        Polynomial p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }
    static Polynomial variable(std::size_t nvars, std::size_t i) {
        Polynomial p(nvars);
        Exponents e(nvars, 0);
        e.at(i) = 1;
        p.add_term(std::move(e), 1);
        return p;
    }

    [[nodiscard]] std::size_t nvars() const noexcept { return nvars_; }
    [[nodiscard]] const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

    [[nodiscard]] unsigned degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) {
            unsigned s = 0;
            for (auto x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    void add_term(Exponents e, const Rational& c) {
        if (e.size() != nvars_) throw std::invalid_argument("monomial has the wrong number of variables");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    [[nodiscard]] Rational operator()(std::span<const Rational> x) const {
        if (x.size() != nvars_) throw std::invalid_argument("polynomial evaluated at a point of the wrong dimension");
        Rational total = 0;
        for (const auto& [e, c] : terms_) {
            Rational m = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (unsigned r = 0; r < e[i]; ++r) m *= x[i];
            total += m;
        }
        return total;
    }
    [[nodiscard]] Rational operator()(const Value& x) const { return (*this)(std::span<const Rational>(x.coords())); }

    Polynomial& operator+=(const Polynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Rational& s, const Polynomial& p) {
        Polynomial out(p.nvars_);
        for (const auto& [e, c] : p.terms_) out.add_term(e, s * c);
        return out;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check(b);
        Polynomial out(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.nvars_);
                for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                out.add_term(std::move(e), ca * cb);
            }
        return out;
    }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    /// ∂/∂x_i.
    [[nodiscard]] Polynomial partial(std::size_t i) const {
        if (i >= nvars_) throw std::out_of_range("partial derivative variable out of range");
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponents d = e;
            --d[i];
            out.add_term(std::move(d), c * e[i]);
        }
        return out;
    }

    /// Same polynomial over a larger variable set; old variable i becomes new variable positions[i].
    [[nodiscard]] Polynomial relabel(std::size_t new_nvars, std::span<const std::size_t> positions) const {
        if (positions.size() != nvars_) throw std::invalid_argument("relabel needs one position per variable");
        Polynomial out(new_nvars);
        for (const auto& [e, c] : terms_) {
            Exponents ne(new_nvars, 0);
            for (std::size_t i = 0; i < nvars_; ++i) ne.at(positions[i]) += e[i];
            out.add_term(std::move(ne), c);
        }
        return out;
    }

    /// p(s₁(y), …, s_n(y)).
    [[nodiscard]] Polynomial substitute(std::span<const Polynomial> subs) const {
        if (subs.size() != nvars_) throw std::invalid_argument("substitution needs one polynomial per variable");
        const std::size_t m = nvars_ == 0 ? 0 : subs.front().nvars();
        // Powers of each substituted polynomial, built lazily.
        std::vector<std::vector<Polynomial>> powers(nvars_);
        auto power = [&](std::size_t i, unsigned r) -> const Polynomial& {
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(constant(m, 1));
            while (pw.size() <= r) pw.push_back(pw.back() * subs[i]);
            return pw[r];
        };
        Polynomial out(m);
        for (const auto& [e, c] : terms_) {
            Polynomial mono = constant(m, c);
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i] != 0) mono = mono * power(i, e[i]);
            out += mono;
        }
        return out;
    }

private:
    void check(const Polynomial& o) const {
        if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials over different variable sets");
    }

    std::size_t nvars_;
    std::map<Exponents, Rational> terms_;
};

class PolynomialMap {
public:
    PolynomialMap() = default;
    PolynomialMap(std::size_t domain_dim, std::vector<Polynomial> components)
        : domain_dim_(domain_dim), components_(std::move(components)) {
        for (const auto& c : components_)
            if (c.nvars() != domain_dim_) throw std::invalid_argument("polynomial map component has the wrong arity");
    }

    [[nodiscard]] std::size_t domain_dim() const noexcept { return domain_dim_; }
    [[nodiscard]] std::size_t codomain_dim() const noexcept { return components_.size(); }
    [[nodiscard]] const std::vector<Polynomial>& components() const noexcept { return components_; }

    [[nodiscard]] Value operator()(const Value& x) const {
        Value out(components_.size());
        for (std::size_t j = 0; j < components_.size(); ++j) out[j] = components_[j](x);
        return out;
    }

    friend bool operator==(const PolynomialMap&, const PolynomialMap&) = default;

private:
    std::size_t domain_dim_ = 0;
    std::vector<Polynomial> components_;
};

/// f ∘ g.
inline PolynomialMap compose(const PolynomialMap& f, const PolynomialMap& g) {
    if (f.domain_dim() != g.codomain_dim()) throw std::invalid_argument("cannot compose: dimension mismatch");
    std::vector<Polynomial> comps;
    for (const auto& c : f.components()) comps.push_back(c.substitute(g.components()));
    return {g.domain_dim(), std::move(comps)};
}

/// D_u p = Σ_j u_j ∂p/∂x_j for a constant vector u.
inline Polynomial directional_derivative(const Polynomial& p, const Value& u) {
    if (u.dim() != p.nvars()) throw std::invalid_argument("direction has the wrong dimension");
    Polynomial out(p.nvars());
    for (std::size_t j = 0; j < p.nvars(); ++j)
        if (u[j] != 0) out += u[j] * p.partial(j);
    return out;
}

inline PolynomialMap directional_derivative(const PolynomialMap& f, const Value& u) {
    std::vector<Polynomial> comps;
    for (const auto& c : f.components()) comps.push_back(directional_derivative(c, u));
    return {f.domain_dim(), std::move(comps)};
}

/// D_u^α f = (D_{u₁})^{α₁} ∘ ⋯ ∘ (D_{u_k})^{α_k} f.
inline PolynomialMap d_alpha(PolynomialMap f, std::span<const Value> u, const MultiIndex& alpha) {
    if (u.size() != alpha.length()) throw std::invalid_argument("direction count differs from multi-index length");
    for (std::size_t i = 0; i < u.size(); ++i)
        if (alpha.digit(i)) f = directional_derivative(f, u[i]);
    return f;
}

/// D^n_{w₁,…,w_n} f, the n-th derivative applied to the listed vectors.
inline PolynomialMap multi_derivative(PolynomialMap f, std::span<const Value> w) {
    for (const auto& v : w) f = directional_derivative(f, v);
    return f;
}

/// Iterated tangent map T^k f as a polynomial map on flattened k-cuboids:
/// input variable γ·p + j is coordinate j of component γ, output γ·q + j
/// likewise. T^k f [ū, v̄] = (T^{k−1} f ū, D(T^{k−1} f)(ū)·v̄).
inline PolynomialMap tangent_power(const PolynomialMap& f, std::size_t k) {
    PolynomialMap t = f;
    for (std::size_t level = 0; level < k; ++level) {
        const std::size_t n = t.domain_dim();
        std::vector<std::size_t> lower(n);
        for (std::size_t i = 0; i < n; ++i) lower[i] = i;
        std::vector<Polynomial> comps;
        for (const auto& c : t.components()) comps.push_back(c.relabel(2 * n, lower));
        for (const auto& c : t.components()) {
            Polynomial d(2 * n);
            for (std::size_t m = 0; m < n; ++m) {
                const Polynomial dm = c.partial(m);
                if (dm.is_zero()) continue;
                d += Polynomial::variable(2 * n, n + m) * dm.relabel(2 * n, lower);
            }
            comps.push_back(std::move(d));
        }
        t = PolynomialMap(2 * n, std::move(comps));
    }
    return t;
}

/// Random polynomial map with every monomial of total degree ≤ degree,
/// coefficients p/q with p ∈ [−5, 5] and q ∈ [1, 4].
inline PolynomialMap random_polynomial_map(Rng& rng, std::size_t domain_dim, std::size_t codomain_dim, unsigned degree) {
    std::vector<Polynomial> comps;
    for (std::size_t j = 0; j < codomain_dim; ++j) {
        Polynomial p(domain_dim);
        Polynomial::Exponents e(domain_dim, 0);
        // Walk all exponent vectors with total degree ≤ degree.
        auto walk = [&](auto&& self, std::size_t var, unsigned left) -> void {
            if (var == domain_dim) {
                p.add_term(e, rng.rational(-5, 5, 4));
                return;
            }
            for (unsigned r = 0; r <= left; ++r) {
                e[var] = r;
                self(self, var + 1, left - r);
            }
            e[var] = 0;
        };
        walk(walk, 0, degree);
        comps.push_back(std::move(p));
    }
    return {domain_dim, std::move(comps)};
}

/// Affine map x ↦ Ax + b with small integer entries.
inline PolynomialMap random_affine_map(Rng& rng, std::size_t domain_dim, std::size_t codomain_dim) {
    std::vector<Polynomial> comps;
    for (std::size_t j = 0; j < codomain_dim; ++j) {
        Polynomial p = Polynomial::constant(domain_dim, Rational(rng.uniform(-5, 5)));
        for (std::size_t i = 0; i < domain_dim; ++i)
            p += Rational(rng.uniform(-5, 5)) * Polynomial::variable(domain_dim, i);
        comps.push_back(std::move(p));
    }
    return {domain_dim, std::move(comps)};
}

}  // namespace fdb
