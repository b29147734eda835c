#include "expr_gen.hpp"

#include "fdb/expr.hpp"
#include "fdb/render.hpp"

#include <catch_amalgamated.hpp>

using namespace fdb;

namespace {
Expr u(const char* bits) { return component("u", MultiIndex::from_bitstring(bits)); }
}  // namespace

TEST_CASE("order of terms") {
    CHECK(ord(point("x")) == 0);
    CHECK(ord(vec("v_1")) == 1);
    CHECK(ord(u("110")) == 2);
    CHECK(ord(sum({u("110"), u("001")})) == 1);
    CHECK(ord(sum({})) == 0);
    CHECK(ord(app("g", point("x"))) == 0);
    // Δ²_{u_{1,2}, u_3} f(u_0) has order 2 + 1.
    CHECK(ord(delta_term({u("110"), u("001")}, "f", u("000"))) == 3);
    // A repeated direction counts with its exponent.
    CHECK(ord(delta_term(std::vector<unsigned>{2}, {vec("v_1")}, "f", point("x"))) == 2);
    // Δ_{Δ^2_{v1,v2} g(x)} f(g(x)) has order 2.
    const Expr inner = delta_term({vec("v_1"), vec("v_2")}, "g", point("x"));
    CHECK(ord(delta_term({inner}, "f", app("g", point("x")))) == 2);
}

TEST_CASE("names with numbers compare naturally") {
    CHECK(compare(vec("v_2"), vec("v_10")) < 0);
    CHECK(compare(vec("v_10"), vec("v_2")) > 0);
    CHECK(compare(vec("w"), vec("v_1")) > 0);
}

TEST_CASE("canonical sums are flat, sorted and unwrapped") {
    const Expr e = sum({u("11"), sum({u("01"), u("00")}), u("10")});
    CHECK(render_text(canonicalize(e)) == "u_0 + u_1 + u_2 + u_{1,2}");
    CHECK(render_text(canonicalize(sum({sum({u("01")})}))) == "u_2");
}

TEST_CASE("canonical difference terms merge repeated directions and drop empty ones") {
    const Expr e = delta_term(std::vector<unsigned>{1, 0, 1}, {vec("v_1"), vec("v_2"), vec("v_1")}, "f", point("x"));
    const Expr c = canonicalize(e);
    REQUIRE(c.is<DeltaTerm>());
    CHECK(c.as<DeltaTerm>().exponents == std::vector<unsigned>{2});
    const Expr zero = delta_term(std::vector<unsigned>{0}, {vec("v_1")}, "f", point("x"));
    CHECK(canonicalize(zero) == app("f", point("x")));
}

TEST_CASE("directions are ordered by their subscripts") {
    const Expr e = delta_term({sum({u("010"), u("011")}), u("101")}, "f", u("000"));
    CHECK(render_text(canonicalize(e)) == "Δ^2_{u_{1,3}, u_2 + u_{2,3}} f(u_0)");
}

TEST_CASE("canonicalization is idempotent and order-insensitive") {
    Rng rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        const Expr e = testing::random_expr(rng, 4, 4);
        const Expr c = canonicalize(e);
        CHECK(canonicalize(c) == c);
        // Reversing every sum does not change the normal form.
        std::function<Expr(const Expr&)> reversed = [&](const Expr& x) -> Expr {
            if (x.is<Sum>()) {
                std::vector<Expr> t;
                for (const auto& s : x.as<Sum>().terms) t.push_back(reversed(s));
                std::reverse(t.begin(), t.end());
                return sum(std::move(t));
            }
            if (x.is<App>()) return app(x.as<App>().function, reversed(*x.as<App>().arg));
            if (x.is<DeltaTerm>()) {
                const auto& d = x.as<DeltaTerm>();
                std::vector<Expr> dirs;
                for (const auto& s : d.directions) dirs.push_back(reversed(s));
                auto exps = d.exponents;
                std::reverse(dirs.begin(), dirs.end());
                std::reverse(exps.begin(), exps.end());
                return delta_term(exps, std::move(dirs), d.function, reversed(*d.base));
            }
            return x;
        };
        CHECK(canonicalize(reversed(e)) == c);
    }
}

TEST_CASE("compare is a strict total order on random expressions") {
    Rng rng(32);
    std::vector<Expr> xs;
    for (int i = 0; i < 60; ++i) xs.push_back(canonicalize(testing::random_expr(rng, 3, 3)));
    for (const auto& a : xs)
        for (const auto& b : xs) {
            const auto ab = compare(a, b);
            const auto ba = compare(b, a);
            CHECK((ab < 0) == (ba > 0));
            CHECK((ab == 0) == (ba == 0));
        }
}

TEST_CASE("difference terms need one direction per exponent") {
    CHECK_THROWS_AS(delta_term(std::vector<unsigned>{1, 1}, {vec("v_1")}, "f", point("x")), std::invalid_argument);
}

TEST_CASE("summands of sums and single terms") {
    CHECK(summands(sum({})).empty());
    CHECK(summands(point("x")).size() == 1);
    CHECK(summands(sum({point("x"), vec("v_1")})).size() == 2);
}
