#pragma once

// Verification suites. Every discrete identity is checked by exact rational
// evaluation on random instances; only the remainder scaling estimate uses
// floating point. Each trial is driven by one derived seed, recorded with any
// failure, so a failing trial can be rerun in isolation.

#include "fdb/asets.hpp"
#include "fdb/cuboid.hpp"
#include "fdb/eval.hpp"
#include "fdb/expand.hpp"
#include "fdb/partition.hpp"
#include "fdb/polynomial.hpp"
#include "fdb/random.hpp"
#include "fdb/smooth.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fdb {

struct Failure {
    std::uint64_t seed = 0;
    std::string alpha;
    std::string detail;
};

struct VerificationReport {
    std::string identity;
    std::size_t trials = 0;
    std::vector<Failure> failures;
    bool exact = true;
    nlohmann::json details = nlohmann::json::object();

    [[nodiscard]] bool passed() const noexcept { return failures.empty(); }
};

inline nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& f : r.failures) fails.push_back({{"seed", f.seed}, {"alpha", f.alpha}, {"detail", f.detail}});
    nlohmann::json j = {{"identity", r.identity}, {"trials", r.trials}, {"failures", std::move(fails)}, {"exact", r.exact}};
    if (!r.details.empty()) j["details"] = r.details;
    return j;
}

inline bool all_passed(const std::vector<VerificationReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
}

/// Space dimensions for g: Z → X and f: X → Y.
struct Dims {
    std::size_t z = 2;
    std::size_t x = 2;
    std::size_t y = 2;
};

struct SuiteOptions {
    std::uint64_t seed = 0;
    std::size_t trials = 50;
    Dims dims{};
};

using TrialResult = std::optional<std::string>;

namespace detail {

inline std::string mismatch(const Value& lhs, const Value& rhs) { return "lhs " + lhs.str() + " != rhs " + rhs.str(); }

template <class Trial>
VerificationReport run_trials(const std::string& identity, std::uint64_t suite_seed, std::size_t trials,
                              const std::string& alpha_label, Trial&& trial) {
    VerificationReport rep{identity, trials, {}, true, nlohmann::json::object()};
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(suite_seed, "trial", t);
        if (auto err = trial(s)) rep.failures.push_back({s, alpha_label, *err});
    }
    return rep;
}

inline std::vector<Value> integer_vectors(Rng& rng, std::size_t n, std::size_t dim) {
    std::vector<Value> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(rng.integer_vector(dim));
    return out;
}

}  // namespace detail

// --- exact expansion vs brute force ---------------------------------------------

/// eval(expand_chain(α)) against Δ_v^α(f∘g)(x) evaluated directly, for
/// independent random f, g.
inline TrialResult theorem_b_trial(std::uint64_t seed, const MultiIndex& alpha, const Expr& chain, const Dims& d = {}) {
    Rng rng(seed);
    const RandomRationalMap f(derive_seed(seed, "f"), d.x, d.y);
    const RandomRationalMap g(derive_seed(seed, "g"), d.z, d.x);
    const Value x = rng.integer_vector(d.z);
    const auto v = detail::integer_vectors(rng, alpha.length(), d.z);

    const Value lhs = eval_delta([&](const Value& p) { return f(g(p)); }, x, v, alpha);

    Bindings b;
    b.points[names::point] = x;
    for (std::size_t i = 0; i < v.size(); ++i) b.vectors[names::vector_prefix + std::to_string(i + 1)] = v[i];
    b.functions[names::outer] = [&f](const Value& p) { return f(p); };
    b.functions[names::inner] = [&g](const Value& p) { return g(p); };
    b.zero_dim = d.x;
    const Value rhs = eval_expr(chain, b);
    if (lhs != rhs) return detail::mismatch(lhs, rhs);
    return std::nullopt;
}

inline TrialResult theorem_b_trial(std::uint64_t seed, const MultiIndex& alpha, const Dims& d = {}) {
    return theorem_b_trial(seed, alpha, expand_chain(alpha), d);
}

inline VerificationReport verify_theorem_b(const SuiteOptions& o, const MultiIndex& alpha) {
    const Expr chain = expand_chain(alpha);
    auto rep = detail::run_trials("theorem-b", derive_seed(o.seed, "theorem-b:" + alpha.bitstring()), o.trials,
                                  alpha.bitstring(), [&](std::uint64_t s) { return theorem_b_trial(s, alpha, chain, o.dims); });
    rep.details["alpha"] = alpha.bitstring();
    return rep;
}

/// eval(expand_tangent(α)) against component α of Δ∘f_*∘Δ⁻¹ on a random cuboid.
inline TrialResult eq9_trial(std::uint64_t seed, const MultiIndex& alpha, const Expr& tangent, const Dims& d = {}) {
    Rng rng(seed);
    const RandomRationalMap f(derive_seed(seed, "f"), d.x, d.y);
    const Cuboid u = rng.integer_cuboid(alpha.length(), d.x);
    const Value lhs = discrete_tangent(f, u)[alpha];
    Bindings b;
    b.cuboids[names::cuboid] = u;
    b.functions[names::outer] = [&f](const Value& p) { return f(p); };
    b.zero_dim = d.x;
    const Value rhs = eval_expr(tangent, b);
    if (lhs != rhs) return detail::mismatch(lhs, rhs);
    return std::nullopt;
}

inline TrialResult eq9_trial(std::uint64_t seed, const MultiIndex& alpha, const Dims& d = {}) {
    return eq9_trial(seed, alpha, expand_tangent(alpha), d);
}

inline VerificationReport verify_eq9(const SuiteOptions& o, const MultiIndex& alpha) {
    const Expr tangent = expand_tangent(alpha);
    auto rep = detail::run_trials("eq9", derive_seed(o.seed, "eq9:" + alpha.bitstring()), o.trials, alpha.bitstring(),
                                  [&](std::uint64_t s) { return eq9_trial(s, alpha, tangent, o.dims); });
    rep.details["alpha"] = alpha.bitstring();
    return rep;
}

// --- identity suite ------------------------------------------------------------------

/// Δ_{u+v} f(x) = Δ_u f(x) + Δ_v f(x+u).
inline TrialResult eq7_trial(std::uint64_t seed, const Dims& d = {}) {
    Rng rng(seed);
    const RandomRationalMap f(derive_seed(seed, "f"), d.x, d.y);
    const Value x = rng.integer_vector(d.x);
    const Value u = rng.integer_vector(d.x);
    // Every eighth trial takes the degenerate v = 0.
    const Value v = rng.uniform(0, 7) == 0 ? Value::zero(d.x) : rng.integer_vector(d.x);
    const MultiIndex one = MultiIndex::ones(1);
    const Value lhs = eval_delta(f, x, std::vector<Value>{u + v}, one);
    const Value rhs = eval_delta(f, x, std::vector<Value>{u}, one) + eval_delta(f, x + u, std::vector<Value>{v}, one);
    if (lhs != rhs) return detail::mismatch(lhs, rhs);
    return std::nullopt;
}

/// Δ^n_{u+v} f(x+w) − Δ^n_u f(x) = Δ^{n+1}_{w,u} f(x)
///   + Σ_i Δ^n_{u₁,…,u_{i−1},v_i,u_{i+1}+v_{i+1},…} f(x+w+u_i),
/// checked numerically and through the symbolic telescope().
inline TrialResult lemma3_trial(std::uint64_t seed, std::size_t n, const Dims& d = {}) {
    Rng rng(seed);
    const RandomRationalMap f(derive_seed(seed, "f"), d.x, d.y);
    const Value x = rng.integer_vector(d.x);
    const Value w = rng.integer_vector(d.x);
    const auto u = detail::integer_vectors(rng, n, d.x);
    const auto v = detail::integer_vectors(rng, n, d.x);
    const MultiIndex all = MultiIndex::ones(n);

    std::vector<Value> uv;
    for (std::size_t i = 0; i < n; ++i) uv.push_back(u[i] + v[i]);
    const Value lhs = eval_delta(f, x + w, uv, all) - eval_delta(f, x, u, all);

    std::vector<Value> wu{w};
    wu.insert(wu.end(), u.begin(), u.end());
    Value rhs = eval_delta(f, x, wu, MultiIndex::ones(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Value> dirs;
        for (std::size_t j = 0; j < n; ++j) dirs.push_back(j < i ? u[j] : j == i ? v[j] : u[j] + v[j]);
        rhs += eval_delta(f, x + w + u[i], dirs, all);
    }
    if (lhs != rhs) return "numeric: " + detail::mismatch(lhs, rhs);

    Bindings b;
    b.points["x"] = x;
    b.vectors["w"] = w;
    std::vector<Expr> us;
    std::vector<Expr> vs;
    for (std::size_t i = 0; i < n; ++i) {
        b.vectors["a_" + std::to_string(i + 1)] = u[i];
        b.vectors["b_" + std::to_string(i + 1)] = v[i];
        us.push_back(vec("a_" + std::to_string(i + 1)));
        vs.push_back(vec("b_" + std::to_string(i + 1)));
    }
    b.functions["f"] = [&f](const Value& p) { return f(p); };
    b.zero_dim = d.x;
    const Value symbolic = eval_expr(sum(telescope(us, vs, point("x"), vec("w"), "f", false)), b);
    if (symbolic != lhs) return "symbolic: " + detail::mismatch(lhs, symbolic);
    return std::nullopt;
}

/// The three pairing identities for Δ⁻¹, Δ and T_{k+1}.
inline TrialResult lemma2_trial(std::uint64_t seed, int item, const Dims& d = {}) {
    Rng rng(seed);
    const auto k = static_cast<std::size_t>(rng.uniform(0, 4));
    const Cuboid u = rng.integer_cuboid(k, d.x);
    const Cuboid v = rng.integer_cuboid(k, d.x);
    const Cuboid w = pair(u, v);
    Cuboid lhs;
    Cuboid rhs;
    if (item == 1) {
        lhs = delta_inv(w);
        rhs = pair(delta_inv(u), delta_inv(u + v));
    } else if (item == 2) {
        lhs = delta(w);
        rhs = pair(delta(u), delta(v) - delta(u));
    } else {
        const RandomRationalMap f(derive_seed(seed, "f"), d.x, d.y);
        lhs = discrete_tangent(f, w);
        const Cuboid tu = discrete_tangent(f, u);
        rhs = pair(tu, discrete_tangent(f, u + v) - tu);
    }
    if (lhs != rhs) return "k=" + std::to_string(k) + ": cuboids differ";
    return std::nullopt;
}

/// Refining every partition of α yields every partition of α⋄1 exactly once.
inline TrialResult lemma1_trial(std::uint64_t seed) {
    Rng rng(seed);
    const auto k = static_cast<std::size_t>(rng.uniform(0, 7));
    const MultiIndex alpha(k, k == 0 ? 0 : static_cast<std::uint64_t>(rng.uniform(0, (std::int64_t{1} << k) - 1)));
    std::vector<Partition> produced;
    for (const auto& xi : enumerate_partitions(alpha).partitions) {
        auto children = refine(xi);
        if (children.front().size() != xi.size() + 1) return "refinement 0 of " + xi.str() + " has the wrong size";
        for (std::size_t i = 1; i < children.size(); ++i)
            if (children[i].size() != xi.size()) return "refinement of " + xi.str() + " has the wrong size";
        produced.insert(produced.end(), children.begin(), children.end());
    }
    std::sort(produced.begin(), produced.end());
    if (std::adjacent_find(produced.begin(), produced.end()) != produced.end())
        return "duplicate refinement for alpha " + alpha.bitstring();
    if (produced != enumerate_partitions(diamond(alpha, true)).partitions)
        return "refinements do not exhaust the partitions of " + diamond(alpha, true).bitstring();
    return std::nullopt;
}

/// Main part plus higher-order remainder equals T_α f ū, and the remainder
/// terms all have order > |α|.
inline TrialResult prop7_trial(std::uint64_t seed, const MultiIndex& alpha, const Expr& main, const Expr& remainder,
                               const Dims& d = {}) {
    for (const auto& t : summands(main))
        if (ord(t) != alpha.order()) return "main term of order " + std::to_string(ord(t));
    for (const auto& t : summands(remainder))
        if (ord(t) <= alpha.order()) return "remainder term of order " + std::to_string(ord(t));

    Rng rng(seed);
    const RandomRationalMap f(derive_seed(seed, "f"), d.x, d.y);
    const Cuboid u = rng.integer_cuboid(alpha.length(), d.x);
    Bindings b;
    b.cuboids[names::cuboid] = u;
    b.functions[names::outer] = [&f](const Value& p) { return f(p); };
    b.zero_dim = d.x;
    const Value lhs = discrete_tangent(f, u)[alpha];
    Value rhs = eval_expr(main, b);
    if (!summands(remainder).empty()) rhs += eval_expr(remainder, b);
    if (lhs != rhs) return detail::mismatch(lhs, rhs);
    return std::nullopt;
}

/// T_k(F)(⟨⟨x;u⟩⟩) = (Δ_u^α F(x))_α and T_k(f∘g) = T_k f ∘ T_k g.
inline TrialResult discrete_functor_trial(std::uint64_t seed, const Dims& d = {}) {
    Rng rng(seed);
    const auto k = static_cast<std::size_t>(rng.uniform(0, 4));
    const RandomRationalMap f(derive_seed(seed, "f"), d.x, d.y);
    const RandomRationalMap g(derive_seed(seed, "g"), d.z, d.x);
    const PointedDirections p{rng.integer_vector(d.x), detail::integer_vectors(rng, k, d.x)};
    const Cuboid t = discrete_tangent(f, inject(p));
    for (std::size_t code = 0; code < t.size(); ++code) {
        const MultiIndex a(k, code);
        if (t[a] != eval_delta(f, p.base, p.vectors, a)) return "injected tangent differs at " + a.bitstring();
    }
    const Cuboid u = rng.integer_cuboid(k, d.z);
    const auto fg = [&](const Value& z) { return f(g(z)); };
    if (discrete_tangent(fg, u) != discrete_tangent(f, discrete_tangent(g, u))) return "functor law fails";
    return std::nullopt;
}

inline std::vector<VerificationReport> identity_suite(const SuiteOptions& o) {
    std::vector<VerificationReport> out;
    const std::uint64_t s = o.seed;
    out.push_back(detail::run_trials("eq7", derive_seed(s, "eq7"), o.trials, "",
                                     [&](std::uint64_t t) { return eq7_trial(t, o.dims); }));

    {
        VerificationReport rep{"lemma3", o.trials, {}, true, nlohmann::json::object()};
        const std::uint64_t base = derive_seed(s, "lemma3");
        for (std::size_t t = 0; t < o.trials; ++t) {
            const std::size_t n = 1 + t % 4;
            const std::uint64_t ts = derive_seed(base, "trial", t);
            if (auto err = lemma3_trial(ts, n, o.dims)) rep.failures.push_back({ts, "n=" + std::to_string(n), *err});
        }
        out.push_back(std::move(rep));
    }

    for (int item = 1; item <= 3; ++item) {
        const std::string name = "lemma2-item" + std::to_string(item);
        out.push_back(detail::run_trials(name, derive_seed(s, name), o.trials, "",
                                         [&](std::uint64_t t) { return lemma2_trial(t, item, o.dims); }));
    }

    out.push_back(detail::run_trials("lemma1", derive_seed(s, "lemma1"), o.trials, "", lemma1_trial));

    {
        VerificationReport rep{"prop7", o.trials, {}, true, nlohmann::json::object()};
        std::vector<std::pair<Expr, Expr>> parts;
        for (std::size_t k = 1; k <= 4; ++k) {
            const MultiIndex a = MultiIndex::ones(k);
            parts.emplace_back(tangent_main_part(a), tangent_remainder(a));
        }
        const std::uint64_t base = derive_seed(s, "prop7");
        for (std::size_t t = 0; t < o.trials; ++t) {
            const std::size_t k = 1 + t % 4;
            const MultiIndex a = MultiIndex::ones(k);
            const std::uint64_t ts = derive_seed(base, "trial", t);
            if (auto err = prop7_trial(ts, a, parts[k - 1].first, parts[k - 1].second, o.dims))
                rep.failures.push_back({ts, a.bitstring(), *err});
        }
        out.push_back(std::move(rep));
    }

    out.push_back(detail::run_trials("discrete-tangent-functor", derive_seed(s, "functor"), o.trials, "",
                                     [&](std::uint64_t t) { return discrete_functor_trial(t, o.dims); }));
    return out;
}

// --- remainder scaling ---------------------------------------------------------------

struct ScalingResult {
    bool degenerate = false;
    double slope = 0.0;
    std::vector<double> log2_norms;
    std::string problem;
};

namespace detail {
inline double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}
}  // namespace detail

/// r(ε) = Δ_{εw}^α(f∘g)(x) − main_part(α) evaluated exactly for
/// ε = 2^{-e}, e ∈ eps_exponents; returns the least-squares slope of
/// log‖r(ε)‖ against log ε.
inline ScalingResult scaling_slope(const PolynomialMap& f, const PolynomialMap& g, const Value& x,
                                   const std::vector<Value>& w, const MultiIndex& alpha,
                                   const std::vector<unsigned>& eps_exponents) {
    if (w.size() != alpha.length()) throw std::invalid_argument("one direction per multi-index digit is required");
    if (eps_exponents.size() < 2) throw std::invalid_argument("scaling needs at least two values of epsilon");
    const Expr main = main_part(alpha);
    ScalingResult res;
    std::vector<double> xs;
    std::size_t zeros = 0;
    for (auto e : eps_exponents) {
        const Rational eps(Integer(1), Integer(1) << e);
        std::vector<Value> v;
        for (const auto& wi : w) v.push_back(eps * wi);
        const Value lhs = eval_delta([&](const Value& z) { return f(g(z)); }, x, v, alpha);
        Bindings b;
        b.points[names::point] = x;
        for (std::size_t i = 0; i < v.size(); ++i) b.vectors[names::vector_prefix + std::to_string(i + 1)] = v[i];
        b.functions[names::outer] = [&f](const Value& p) { return f(p); };
        b.functions[names::inner] = [&g](const Value& p) { return g(p); };
        b.zero_dim = f.domain_dim();
        const Value r = lhs - eval_expr(main, b);
        double norm2 = 0.0;
        for (const auto& c : r.coords()) norm2 += to_double(c) * to_double(c);
        if (r.is_zero()) {
            ++zeros;
            continue;
        }
        xs.push_back(-static_cast<double>(e));
        res.log2_norms.push_back(0.5 * std::log2(norm2));
    }
    if (zeros == eps_exponents.size()) {
        res.degenerate = true;
        return res;
    }
    if (zeros != 0) {
        res.problem = "remainder vanished for some but not all epsilon";
        return res;
    }
    res.slope = detail::least_squares_slope(xs, res.log2_norms);
    return res;
}

inline std::vector<unsigned> default_eps_exponents() { return {3, 4, 5, 6, 7, 8, 9, 10}; }

inline VerificationReport verify_scaling(const SuiteOptions& o, const MultiIndex& alpha,
                                         const std::vector<unsigned>& eps_exponents = default_eps_exponents(),
                                         double tolerance = 0.2) {
    VerificationReport rep{"scaling", o.trials, {}, false, nlohmann::json::object()};
    const double threshold = static_cast<double>(alpha.order()) + 1.0 - tolerance;
    const auto degree = static_cast<unsigned>(alpha.order() + 1);
    const std::uint64_t base = derive_seed(o.seed, "scaling:" + alpha.bitstring());
    std::size_t degenerate = 0;
    double min_slope = INFINITY;
    nlohmann::json slopes = nlohmann::json::array();
    for (std::size_t t = 0; t < o.trials; ++t) {
        const std::uint64_t ts = derive_seed(base, "trial", t);
        Rng rng(ts);
        const PolynomialMap g = random_polynomial_map(rng, o.dims.z, o.dims.x, degree);
        const PolynomialMap f = random_polynomial_map(rng, o.dims.x, o.dims.y, degree);
        const Value x = rng.integer_vector(o.dims.z);
        // Unit-scale directions keep every step of the fixed grid small.
        std::vector<Value> w;
        while (w.size() < alpha.length()) {
            Value wi = rng.integer_vector(o.dims.z, -1, 1);
            if (!wi.is_zero()) w.push_back(std::move(wi));
        }
        const auto res = scaling_slope(f, g, x, w, alpha, eps_exponents);
        if (res.degenerate) {
            ++degenerate;
            slopes.push_back(nullptr);
            continue;
        }
        if (!res.problem.empty()) {
            rep.failures.push_back({ts, alpha.bitstring(), res.problem});
            slopes.push_back(nullptr);
            continue;
        }
        slopes.push_back(res.slope);
        min_slope = std::min(min_slope, res.slope);
        if (res.slope < threshold)
            rep.failures.push_back({ts, alpha.bitstring(), "slope " + std::to_string(res.slope) + " below " +
                                                                std::to_string(threshold)});
    }
    rep.details = {{"alpha", alpha.bitstring()},
                   {"threshold", threshold},
                   {"degenerate", degenerate},
                   {"slopes", std::move(slopes)},
                   {"eps_exponents", eps_exponents}};
    if (degenerate < o.trials) rep.details["min_slope"] = min_slope;
    return rep;
}

// --- the infinitesimal side --------------------------------------------------------------

inline TrialResult prop3_trial(std::uint64_t seed, const MultiIndex& alpha, const Dims& d = {}, unsigned degree = 2) {
    Rng rng(seed);
    const PolynomialMap g = random_polynomial_map(rng, d.z, d.x, degree);
    const PolynomialMap f = random_polynomial_map(rng, d.x, d.y, degree);
    const Value x = rng.integer_vector(d.z);
    const auto u = detail::integer_vectors(rng, alpha.length(), d.z);
    const Value lhs = d_alpha(compose(f, g), u, alpha)(x);
    const Value rhs = eval_smooth_chain(f, g, x, u, alpha);
    if (lhs != rhs) return detail::mismatch(lhs, rhs);
    return std::nullopt;
}

/// T^k f at ⟨⟨x;u⟩⟩ has component β equal to D_u^β f(x), for every β.
inline TrialResult prop1_trial(std::uint64_t seed, std::size_t k, const Dims& d = {}, unsigned degree = 2) {
    Rng rng(seed);
    const PolynomialMap f = random_polynomial_map(rng, d.x, d.y, degree);
    const PointedDirections p{rng.integer_vector(d.x), detail::integer_vectors(rng, k, d.x)};
    const Cuboid injected = inject(p);
    for (std::size_t code = 0; code < injected.size(); ++code) {
        const MultiIndex b(k, code);
        if (b.order() >= 2 && !injected[b].is_zero()) return "injected cuboid has a nonzero component " + b.bitstring();
    }
    const Cuboid t = unflatten(tangent_power(f, k)(flatten(injected)), k);
    for (std::size_t code = 0; code < t.size(); ++code) {
        const MultiIndex b(k, code);
        const Value expect = d_alpha(f, p.vectors, b)(p.base);
        if (t[b] != expect) return "component " + b.bitstring() + ": " + detail::mismatch(t[b], expect);
    }
    return std::nullopt;
}

/// T^k f ū component β equals Σ_ξ D^n_{u_{β¹},…} f(u₀) on a general cuboid.
inline TrialResult eq6_trial(std::uint64_t seed, std::size_t k, const Dims& d = {}, unsigned degree = 2) {
    Rng rng(seed);
    const PolynomialMap f = random_polynomial_map(rng, d.x, d.y, degree);
    const Cuboid u = rng.integer_cuboid(k, d.x);
    const Cuboid t = unflatten(tangent_power(f, k)(flatten(u)), k);
    for (std::size_t code = 0; code < t.size(); ++code) {
        const MultiIndex b(k, code);
        const Value expect = eval_infinitesimal(f, u, b);
        if (t[b] != expect) return "component " + b.bitstring() + ": " + detail::mismatch(t[b], expect);
    }
    return std::nullopt;
}

/// T^k(f∘g) = T^k f ∘ T^k g.
inline TrialResult tangent_functor_trial(std::uint64_t seed, std::size_t k, const Dims& d = {}, unsigned degree = 2) {
    Rng rng(seed);
    const PolynomialMap g = random_polynomial_map(rng, d.z, d.x, degree);
    const PolynomialMap f = random_polynomial_map(rng, d.x, d.y, degree);
    const Value u = flatten(rng.integer_cuboid(k, d.z));
    const Value lhs = tangent_power(compose(f, g), k)(u);
    const Value rhs = tangent_power(f, k)(tangent_power(g, k)(u));
    if (lhs != rhs) return detail::mismatch(lhs, rhs);
    return std::nullopt;
}

inline const std::string& worked_example_11() {
    static const std::string s = "D_{u_{1,2}} f(x) + D^2_{u_1, u_2} f(x)";
    return s;
}
inline const std::string& worked_example_111() {
    static const std::string s =
        "D_{u_{1,2,3}} f(x) + D^2_{u_1, u_{2,3}} f(x) + D^2_{u_2, u_{1,3}} f(x) + D^2_{u_3, u_{1,2}} f(x) + "
        "D^3_{u_1, u_2, u_3} f(x)";
    return s;
}

inline std::vector<VerificationReport> verify_smooth_chain(const SuiteOptions& o, const std::vector<MultiIndex>& alphas) {
    std::vector<VerificationReport> out;

    VerificationReport p3{"prop3", 0, {}, true, nlohmann::json::object()};
    VerificationReport p1{"prop1", 0, {}, true, nlohmann::json::object()};
    VerificationReport e6{"eq6", 0, {}, true, nlohmann::json::object()};
    VerificationReport fn{"tangent-functor", 0, {}, true, nlohmann::json::object()};
    VerificationReport hom{"homogeneity", 0, {}, true, nlohmann::json::object()};

    std::set<std::size_t> lengths;
    for (const auto& a : alphas) {
        lengths.insert(a.length());
        const std::uint64_t base = derive_seed(o.seed, "prop3:" + a.bitstring());
        for (std::size_t t = 0; t < o.trials; ++t) {
            const std::uint64_t ts = derive_seed(base, "trial", t);
            ++p3.trials;
            if (auto err = prop3_trial(ts, a, o.dims)) p3.failures.push_back({ts, a.bitstring(), *err});
        }
        ++hom.trials;
        for (const auto& term : infinitesimal_expansion(a))
            if (term.order() != a.order())
                hom.failures.push_back({0, a.bitstring(), "summand of order " + std::to_string(term.order())});
    }
    for (auto k : lengths) {
        const std::string label = "k=" + std::to_string(k);
        const std::uint64_t base = derive_seed(o.seed, "tangent:" + label);
        for (std::size_t t = 0; t < o.trials; ++t) {
            const std::uint64_t ts = derive_seed(base, "trial", t);
            ++p1.trials;
            ++e6.trials;
            ++fn.trials;
            if (auto err = prop1_trial(ts, k, o.dims)) p1.failures.push_back({ts, label, *err});
            if (auto err = eq6_trial(ts, k, o.dims)) e6.failures.push_back({ts, label, *err});
            if (auto err = tangent_functor_trial(ts, k, o.dims)) fn.failures.push_back({ts, label, *err});
        }
    }

    VerificationReport ex{"worked-examples", 2, {}, true, nlohmann::json::object()};
    const auto t11 = render_infinitesimal(infinitesimal_expansion(MultiIndex::ones(2)));
    const auto t111 = render_infinitesimal(infinitesimal_expansion(MultiIndex::ones(3)));
    if (t11 != worked_example_11()) ex.failures.push_back({0, "11", "got " + t11});
    if (t111 != worked_example_111()) ex.failures.push_back({0, "111", "got " + t111});
    ex.details = {{"11", t11}, {"111", t111}};

    out.push_back(std::move(p3));
    out.push_back(std::move(p1));
    out.push_back(std::move(e6));
    out.push_back(std::move(fn));
    out.push_back(std::move(hom));
    out.push_back(std::move(ex));
    return out;
}

// --- A-set validation --------------------------------------------------------------------

/// Validates every family of every α, and checks that the families are
/// indexed by exactly the partitions of α, Bell(|α|) of them.
inline VerificationReport verify_asets(const std::vector<MultiIndex>& alphas) {
    VerificationReport rep{"asets", 0, {}, true, nlohmann::json::object()};
    std::size_t families = 0;
    for (const auto& a : alphas) {
        ++rep.trials;
        const auto fams = build_asets(a);
        families += fams.size();
        const auto expected = bell_number(a.order());
        if (fams.size() != expected)
            rep.failures.push_back({0, a.bitstring(), std::to_string(fams.size()) + " families, expected Bell(" +
                                                          std::to_string(a.order()) + ") = " + std::to_string(expected)});
        std::vector<Partition> parts;
        for (const auto& f : fams) parts.push_back(f.partition);
        if (parts != enumerate_partitions(a).partitions)
            rep.failures.push_back({0, a.bitstring(), "families are not indexed by the partitions of alpha"});
        for (const auto& f : fams) {
            const auto v = validate(f);
            for (const auto& c : v.conditions) {
                if (c.passed) continue;
                std::string bad;
                for (const auto& g : c.offending) bad += " " + g.bitstring();
                rep.failures.push_back({0, a.bitstring(), f.partition.str() + " fails " + c.name + ":" + bad});
            }
        }
    }
    rep.details = {{"families", families}};
    return rep;
}

}  // namespace fdb
