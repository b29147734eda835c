#pragma once

// k-cuboids: families (u_α) of rational vectors indexed by {0,1}^k, together
// with the difference operator Δ, the sum operator Δ⁻¹ and the discrete
// tangent functor T_k(f) = Δ ∘ f_* ∘ Δ⁻¹.

#include "fdb/multi_index.hpp"
#include "fdb/value.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fdb {

class Cuboid {
public:
    Cuboid() : Cuboid(0, 0) {}

    /// All-zero cuboid.
    Cuboid(std::size_t dim, std::size_t space) : dim_(dim), space_(space) {
        if (dim > 24) throw std::invalid_argument("cuboid dimension too large");
        components_.assign(std::size_t{1} << dim, Value::zero(space));
    }

    /// Components in integer-encoding order; there must be exactly 2^dim of them.
    Cuboid(std::size_t dim, std::vector<Value> components) : dim_(dim), components_(std::move(components)) {
        if (dim > 24) throw std::invalid_argument("cuboid dimension too large");
        if (components_.size() != (std::size_t{1} << dim))
            throw std::invalid_argument("cuboid of dimension " + std::to_string(dim) + " needs " +
                                        std::to_string(std::size_t{1} << dim) + " components");
        space_ = components_.front().dim();
        for (const auto& c : components_)
            if (c.dim() != space_) throw std::invalid_argument("cuboid components differ in space dimension");
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t space() const noexcept { return space_; }
    [[nodiscard]] std::size_t size() const noexcept { return components_.size(); }
    [[nodiscard]] const std::vector<Value>& components() const noexcept { return components_; }

    Value& operator[](const MultiIndex& a) { return components_[slot(a)]; }
    const Value& operator[](const MultiIndex& a) const { return components_[slot(a)]; }
    Value& at(std::size_t code) { return components_.at(code); }
    const Value& at(std::size_t code) const { return components_.at(code); }

    Cuboid& operator+=(const Cuboid& o) {
        check_shape(o);
        for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += o.components_[i];
        return *this;
    }
    Cuboid& operator-=(const Cuboid& o) {
        check_shape(o);
        for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= o.components_[i];
        return *this;
    }
    friend Cuboid operator+(Cuboid a, const Cuboid& b) { return a += b; }
    friend Cuboid operator-(Cuboid a, const Cuboid& b) { return a -= b; }
    friend bool operator==(const Cuboid& a, const Cuboid& b) {
        return a.dim_ == b.dim_ && a.space_ == b.space_ && a.components_ == b.components_;
    }

private:
    std::size_t slot(const MultiIndex& a) const {
        if (a.length() != dim_)
            throw std::invalid_argument("index " + a.bitstring() + " does not address a " + std::to_string(dim_) +
                                        "-cuboid");
        return static_cast<std::size_t>(a.bits());
    }
    void check_shape(const Cuboid& o) const {
        if (o.dim_ != dim_ || o.space_ != space_) throw std::invalid_argument("cuboid shape mismatch");
    }

    std::size_t dim_;
    std::size_t space_ = 0;
    std::vector<Value> components_;
};

/// A base point x with k direction vectors u₁…u_k.
struct PointedDirections {
    Value base;
    std::vector<Value> vectors;
};

/// (Δū)_α = Σ_{β≤α} (−1)^{|α|−|β|} u_β, computed one digit at a time.
inline Cuboid delta(Cuboid u) {
    const std::size_t n = u.size();
    for (std::size_t bit = 1; bit < n; bit <<= 1)
        for (std::size_t i = 0; i < n; ++i)
            if (i & bit) u.at(i) -= u.at(i ^ bit);
    return u;
}

/// (Δ⁻¹ū)_α = Σ_{β≤α} u_β.
inline Cuboid delta_inv(Cuboid u) {
    const std::size_t n = u.size();
    for (std::size_t bit = 1; bit < n; bit <<= 1)
        for (std::size_t i = 0; i < n; ++i)
            if (i & bit) u.at(i) += u.at(i ^ bit);
    return u;
}

/// [ū, v̄]: the (k+1)-cuboid with w_{α⋄0} = u_α and w_{α⋄1} = v_α.
inline Cuboid pair(const Cuboid& u, const Cuboid& v) {
    if (u.dim() != v.dim() || u.space() != v.space()) throw std::invalid_argument("cannot pair cuboids of different shape");
    std::vector<Value> comps = u.components();
    comps.insert(comps.end(), v.components().begin(), v.components().end());
    return {u.dim() + 1, std::move(comps)};
}

inline std::pair<Cuboid, Cuboid> split(const Cuboid& w) {
    if (w.dim() == 0) throw std::invalid_argument("cannot split a 0-cuboid");
    const auto half = static_cast<std::ptrdiff_t>(w.size() / 2);
    const auto& c = w.components();
    return {Cuboid(w.dim() - 1, std::vector<Value>(c.begin(), c.begin() + half)),
            Cuboid(w.dim() - 1, std::vector<Value>(c.begin() + half, c.end()))};
}

/// ⟨⟨x; u⟩⟩: base x, u_i on the i-th unit index, zero elsewhere.
inline Cuboid inject(const PointedDirections& p) {
    const std::size_t k = p.vectors.size();
    Cuboid out(k, p.base.dim());
    out.at(0) = p.base;
    for (std::size_t i = 0; i < k; ++i) {
        if (p.vectors[i].dim() != p.base.dim()) throw std::invalid_argument("direction dimension differs from base");
        out.at(std::size_t{1} << i) = p.vectors[i];
    }
    return out;
}

/// f_*: applies f to every component.
template <class F>
Cuboid pointwise(F&& f, const Cuboid& x) {
    std::vector<Value> comps;
    comps.reserve(x.size());
    for (const auto& c : x.components()) {
        comps.push_back(f(c));
        if (comps.back().dim() != comps.front().dim())
            throw std::invalid_argument("map returned values of differing dimension");
    }
    return {x.dim(), std::move(comps)};
}

/// T_k(f)(ū) = Δ(f_*(Δ⁻¹ū)); component α is T_α f ū.
template <class F>
Cuboid discrete_tangent(F&& f, const Cuboid& u) {
    return delta(pointwise(std::forward<F>(f), delta_inv(u)));
}

inline nlohmann::json to_json(const Cuboid& u) {
    nlohmann::json comps = nlohmann::json::object();
    for (std::size_t code = 0; code < u.size(); ++code) {
        nlohmann::json coords = nlohmann::json::array();
        for (const auto& r : u.at(code).coords()) coords.push_back(to_string(r));
        comps[MultiIndex(u.dim(), code).bitstring()] = std::move(coords);
    }
    return {{"dim", u.dim()}, {"space", u.space()}, {"components", std::move(comps)}};
}

inline Cuboid cuboid_from_json(const nlohmann::json& j) {
    const auto dim = j.at("dim").get<std::size_t>();
    const auto space = j.at("space").get<std::size_t>();
    Cuboid out(dim, space);
    const auto& comps = j.at("components");
    if (comps.size() != out.size()) throw std::invalid_argument("cuboid JSON has the wrong number of components");
    for (const auto& [key, coords] : comps.items()) {
        const MultiIndex idx = MultiIndex::from_bitstring(key);
        if (idx.length() != dim) throw std::invalid_argument("cuboid JSON key '" + key + "' has the wrong length");
        if (coords.size() != space) throw std::invalid_argument("cuboid JSON component has the wrong dimension");
        Value v(space);
        for (std::size_t i = 0; i < space; ++i) v[i] = parse_rational(coords.at(i).get<std::string>());
        out[idx] = std::move(v);
    }
    return out;
}

}  // namespace fdb
