#include "fdb/eval.hpp"
#include "fdb/expand.hpp"
#include "fdb/random.hpp"
#include "fdb/render.hpp"

#include <catch_amalgamated.hpp>

using namespace fdb;

namespace {

// Δ_{u_1} ∘ ⋯ ∘ Δ_{u_k} applied as nested first differences.
Value nested_delta(const Map& f, const Value& x, const std::vector<Value>& u, std::size_t i) {
    if (i == u.size()) return f(x);
    return nested_delta(f, x + u[i], u, i + 1) - nested_delta(f, x, u, i + 1);
}

}  // namespace

TEST_CASE("down-set evaluation agrees with nested first differences") {
    Rng rng(51);
    for (std::size_t k = 0; k <= 6; ++k) {
        const RandomRationalMap f(60 + k, 2, 2);
        const Map fm = [&](const Value& p) { return f(p); };
        const Value x = rng.integer_vector(2);
        std::vector<Value> u;
        for (std::size_t i = 0; i < k; ++i) u.push_back(rng.integer_vector(2));
        CHECK(eval_delta(f, x, u, MultiIndex::ones(k)) == nested_delta(fm, x, u, 0));
    }
}

TEST_CASE("zero digits skip their directions") {
    const RandomRationalMap f(7, 1, 1);
    const std::vector<Value> u{Value{2}, Value{3}, Value{5}};
    const std::vector<Value> only{Value{2}, Value{5}};
    CHECK(eval_delta(f, Value{1}, u, MultiIndex::from_bitstring("101")) ==
          eval_delta(f, Value{1}, only, MultiIndex::ones(2)));
    CHECK(eval_delta(f, Value{1}, u, MultiIndex::zero(3)) == f(Value{1}));
}

TEST_CASE("second difference of a square is constant") {
    const auto sq = [](const Value& p) { return Value{p[0] * p[0]}; };
    CHECK(eval_delta(sq, Value{7}, std::vector<Value>{Value{3}, Value{3}}, MultiIndex::ones(2)) == Value{18});
}

TEST_CASE("multiplicities expand binomially") {
    const RandomRationalMap f(9, 2, 2);
    const Value x{1, -1};
    const Value t{2, 3};
    const std::vector<Value> twice{t, t};
    const std::vector<unsigned> two{2};
    CHECK(eval_delta_general(f, x, std::vector<Value>{t}, two) == eval_delta(f, x, twice, MultiIndex::ones(2)));
    const std::vector<unsigned> ones{1, 1};
    CHECK(eval_delta_general(f, x, twice, ones) == eval_delta(f, x, twice, MultiIndex::ones(2)));
}

TEST_CASE("expressions evaluate under bindings") {
    Bindings b;
    b.points["x"] = Value{1, 2};
    b.vectors["v_1"] = Value{3, 0};
    b.functions["g"] = [](const Value& p) { return Value{p[0] * p[1], p[0]}; };
    const Expr e = parse_text("g(x) + Δ_{v_1} g(x)");
    // g(1,2) = (2,1); g(4,2) − g(1,2) = (6,3);
    CHECK(eval_expr(e, b) == Value{8, 4});
    b.zero_dim = 2;
    CHECK(eval_expr(sum({}), b) == Value{0, 0});
}

TEST_CASE("unbound names are reported") {
    Bindings b;
    CHECK_THROWS_AS(eval_expr(point("x"), b), std::invalid_argument);
    b.points["x"] = Value{1};
    CHECK_THROWS_AS(eval_expr(app("f", point("x")), b), std::invalid_argument);
}

TEST_CASE("evaluating the chain expansion of 1 gives the first difference") {
    const RandomRationalMap f(1, 2, 2);
    const RandomRationalMap g(2, 2, 2);
    Bindings b;
    b.points["x"] = Value{0, 1};
    b.vectors["v_1"] = Value{2, -3};
    b.functions["f"] = [&](const Value& p) { return f(p); };
    b.functions["g"] = [&](const Value& p) { return g(p); };
    const Value direct = f(g(Value{2, -2})) - f(g(Value{0, 1}));
    CHECK(eval_expr(expand_chain(MultiIndex::ones(1)), b) == direct);
}
