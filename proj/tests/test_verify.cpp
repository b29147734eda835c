#include "fdb/verify.hpp"

#include <catch_amalgamated.hpp>

using namespace fdb;

namespace {

SuiteOptions small(std::uint64_t seed, std::size_t trials) { return {seed, trials, {}}; }

}  // namespace

TEST_CASE("theorem B and the tangent formula hold on small suites") {
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto a = MultiIndex::ones(k);
        const auto b = verify_theorem_b(small(3, 5), a);
        CHECK(b.passed());
        CHECK(b.trials == 5);
        CHECK(b.exact);
        CHECK(verify_eq9(small(3, 5), a).passed());
    }
    CHECK(verify_theorem_b(small(3, 5), MultiIndex::from_bitstring("0110")).passed());
}

TEST_CASE("mismatched dimensions are exercised") {
    const Dims d{1, 3, 2};
    CHECK_FALSE(theorem_b_trial(5, MultiIndex::ones(3), d));
    CHECK_FALSE(eq9_trial(5, MultiIndex::ones(3), d));
}

TEST_CASE("a wrong expansion is caught") {
    // Dropping one summand of the chain expansion must break the identity.
    const auto a = MultiIndex::ones(3);
    auto terms = summands(expand_chain(a));
    terms.pop_back();
    const Expr broken = canonicalize(sum(terms));
    std::size_t caught = 0;
    for (std::uint64_t s = 0; s < 10; ++s)
        if (theorem_b_trial(s, a, broken)) ++caught;
    CHECK(caught == 10);
}

TEST_CASE("a failing trial is reproduced from its seed alone") {
    const auto a = MultiIndex::ones(2);
    auto terms = summands(expand_chain(a));
    terms.pop_back();
    const Expr broken = canonicalize(sum(terms));
    const auto rep = detail::run_trials("broken", 99, 3, a.bitstring(),
                                        [&](std::uint64_t s) { return theorem_b_trial(s, a, broken); });
    REQUIRE(rep.failures.size() == 3);
    for (const auto& f : rep.failures) CHECK(theorem_b_trial(f.seed, a, broken) == f.detail);
}

TEST_CASE("identity suite passes and is deterministic") {
    const auto a = identity_suite(small(8, 20));
    const auto b = identity_suite(small(8, 20));
    REQUIRE(a.size() == b.size());
    std::vector<std::string> names;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].passed());
        CHECK(to_json(a[i]).dump() == to_json(b[i]).dump());
        names.push_back(a[i].identity);
    }
    CHECK(names == std::vector<std::string>{"eq7", "lemma3", "lemma2-item1", "lemma2-item2", "lemma2-item3", "lemma1",
                                            "prop7", "discrete-tangent-functor"});
}

TEST_CASE("individual identity trials") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        CHECK_FALSE(eq7_trial(s));
        for (std::size_t n = 1; n <= 4; ++n) CHECK_FALSE(lemma3_trial(s, n));
        for (int item = 1; item <= 3; ++item) CHECK_FALSE(lemma2_trial(s, item));
        CHECK_FALSE(lemma1_trial(s));
        CHECK_FALSE(discrete_functor_trial(s));
    }
}

TEST_CASE("first-order remainder is degenerate") {
    const auto rep = verify_scaling(small(1, 3), MultiIndex::ones(1));
    CHECK(rep.passed());
    CHECK(rep.details["degenerate"].get<std::size_t>() == 3);
    CHECK_FALSE(rep.details.contains("min_slope"));
}

TEST_CASE("affine maps give zero second differences") {
    Rng rng(4);
    const auto f = random_affine_map(rng, 2, 2);
    const auto g = random_affine_map(rng, 2, 2);
    const std::vector<Value> w{rng.integer_vector(2), rng.integer_vector(2)};
    const auto res = scaling_slope(f, g, Value{1, 2}, w, MultiIndex::ones(2), default_eps_exponents());
    CHECK(res.degenerate);
}

TEST_CASE("remainder of order 2 decays like the cube of epsilon") {
    const auto rep = verify_scaling(small(5, 20), MultiIndex::ones(2));
    CHECK(rep.passed());
    CHECK(rep.details["min_slope"].get<double>() >= 2.8);
    CHECK_FALSE(rep.exact);
}

TEST_CASE("a closed-form remainder has the exact slope") {
    // f(y) = g(y) = y² at 0: the remainder is 8ε⁴.
    const Polynomial y = Polynomial::variable(1, 0);
    const PolynomialMap sq(1, {y * y});
    const std::vector<Value> w{Value{1}, Value{1}};
    const auto res = scaling_slope(sq, sq, Value{0}, w, MultiIndex::ones(2), {3, 4, 5, 6});
    REQUIRE_FALSE(res.degenerate);
    CHECK(res.slope == Catch::Approx(4.0));
    CHECK(res.log2_norms.front() == Catch::Approx(3.0 - 12.0));
}

TEST_CASE("smooth chain suite passes") {
    const auto reps = verify_smooth_chain(small(2, 3), {MultiIndex::ones(1), MultiIndex::ones(2), MultiIndex::ones(3)});
    std::vector<std::string> names;
    for (const auto& r : reps) {
        CHECK(r.passed());
        names.push_back(r.identity);
    }
    CHECK(names == std::vector<std::string>{"prop3", "prop1", "eq6", "tangent-functor", "homogeneity",
                                            "worked-examples"});
}

TEST_CASE("A-set suite reports the order bound failures and nothing else") {
    std::vector<MultiIndex> small_alphas;
    for (std::uint64_t bits = 0; bits < 8; ++bits) small_alphas.emplace_back(3, bits);
    CHECK(verify_asets(small_alphas).passed());
    const auto rep = verify_asets({MultiIndex::ones(4)});
    CHECK_FALSE(rep.failures.empty());
    for (const auto& f : rep.failures) {
        const bool order_bound = f.detail.find("3b:") != std::string::npos || f.detail.find("4b:") != std::string::npos;
        CHECK(order_bound);
    }
}

TEST_CASE("report JSON") {
    VerificationReport r{"eq7", 2, {{7, "11", "bad"}}, true, nlohmann::json::object()};
    const auto j = to_json(r);
    CHECK(j["identity"] == "eq7");
    CHECK(j["failures"][0]["seed"] == 7);
    CHECK_FALSE(j.contains("details"));
    CHECK_FALSE(all_passed({r}));
}
