#pragma once

// Deterministic randomness: a seed derivation tree, a small counter-based
// generator, and memoized random rational maps. Everything here is defined
// on 64-bit integer arithmetic only, so values agree across platforms and
// standard library implementations.
//
// Seed derivation: derive_seed(parent, label, index) mixes the FNV-1a hash of
// `label` and `index` into `parent` with SplitMix64. Suites derive one seed
// per (suite, alpha) and one per trial below it; a trial seed alone
// reproduces that trial.

#include "fdb/cuboid.hpp"
#include "fdb/value.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fdb {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::string_view label, std::uint64_t index = 0) {
    return splitmix64(parent ^ splitmix64(fnv1a(label) + 0x632be59bd9b4e019ULL * (index + 1)));
}

/// Sequential generator: splitmix64 over an incrementing state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        const std::uint64_t s = state_;
        state_ += 0x9e3779b97f4a7c15ULL;
        return splitmix64(s);
    }

    /// Uniform-ish integer in [lo, hi] (modulo reduction; the bias is irrelevant here).
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    Value integer_vector(std::size_t dim, std::int64_t lo = -5, std::int64_t hi = 5) {
        Value v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = Rational(uniform(lo, hi));
        return v;
    }

    Rational rational(std::int64_t num_lo, std::int64_t num_hi, std::int64_t den_max) {
        const auto num = uniform(num_lo, num_hi);
        const auto den = uniform(1, den_max);
        return {num, den};
    }

    Cuboid integer_cuboid(std::size_t k, std::size_t space) {
        std::vector<Value> comps;
        comps.reserve(std::size_t{1} << k);
        for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) comps.push_back(integer_vector(space));
        return {k, std::move(comps)};
    }

private:
    std::uint64_t state_;
};

/// An arbitrary map Q^p → Q^q: the value at a point is a pure function of
/// (seed, point). Components have numerators in [−100, 100] and
/// denominators in [1, 16]. Not safe for concurrent calls on one instance.
class RandomRationalMap {
public:
    RandomRationalMap(std::uint64_t seed, std::size_t domain_dim, std::size_t codomain_dim)
        : seed_(seed), domain_dim_(domain_dim), codomain_dim_(codomain_dim) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::size_t domain_dim() const noexcept { return domain_dim_; }
    [[nodiscard]] std::size_t codomain_dim() const noexcept { return codomain_dim_; }
    [[nodiscard]] std::size_t memo_size() const noexcept { return memo_.size(); }

    Value operator()(const Value& x) const {
        if (x.dim() != domain_dim_)
            throw std::invalid_argument("random map expects dimension " + std::to_string(domain_dim_) + ", got " +
                                        std::to_string(x.dim()));
        if (auto it = memo_.find(x); it != memo_.end()) return it->second;
        std::string key;
        for (const auto& c : x.coords()) {
            key += to_string(c);
            key += ';';
        }
        const std::uint64_t h = fnv1a(key);
        Value out(codomain_dim_);
        for (std::size_t j = 0; j < codomain_dim_; ++j) {
            const std::uint64_t r1 = splitmix64(seed_ ^ splitmix64(h + 2 * j));
            const std::uint64_t r2 = splitmix64(r1 ^ splitmix64(h + 2 * j + 1));
            const auto num = static_cast<std::int64_t>(r1 % 201) - 100;
            const auto den = static_cast<std::int64_t>(r2 % 16) + 1;
            out[j] = Rational(num, den);
        }
        memo_.emplace(x, out);
        return out;
    }

private:
    std::uint64_t seed_;
    std::size_t domain_dim_;
    std::size_t codomain_dim_;
    mutable std::map<Value, Value> memo_;
};

}  // namespace fdb
