#include "fdb/polynomial.hpp"
#include "fdb/smooth.hpp"

#include <catch_amalgamated.hpp>

using namespace fdb;

TEST_CASE("directional derivative of a square") {
    // p(x) = x², D_h p = 2hx.
    const Polynomial x = Polynomial::variable(1, 0);
    const Polynomial p = x * x;
    const Polynomial d = directional_derivative(p, Value{Rational(3, 2)});
    CHECK(d == Rational(3) * x);
}

TEST_CASE("mixed directional derivatives commute") {
    Rng rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const PolynomialMap f = random_polynomial_map(rng, 3, 2, 3);
        const Value u = rng.integer_vector(3);
        const Value v = rng.integer_vector(3);
        CHECK(directional_derivative(directional_derivative(f, u), v) ==
              directional_derivative(directional_derivative(f, v), u));
    }
}

TEST_CASE("d_alpha with the zero index is the identity") {
    Rng rng(72);
    const PolynomialMap f = random_polynomial_map(rng, 2, 2, 3);
    const std::vector<Value> u{rng.integer_vector(2), rng.integer_vector(2)};
    CHECK(d_alpha(f, u, MultiIndex::zero(2)) == f);
    CHECK(d_alpha(f, u, MultiIndex::from_bitstring("01")) == directional_derivative(f, u[1]));
}

TEST_CASE("composition evaluates as nested application") {
    Rng rng(73);
    for (int trial = 0; trial < 20; ++trial) {
        const PolynomialMap g = random_polynomial_map(rng, 2, 3, 2);
        const PolynomialMap f = random_polynomial_map(rng, 3, 2, 2);
        const Value x = rng.integer_vector(2);
        CHECK(compose(f, g)(x) == f(g(x)));
    }
    CHECK_THROWS_AS(compose(random_polynomial_map(rng, 2, 2, 1), random_polynomial_map(rng, 2, 3, 1)),
                    std::invalid_argument);
}

TEST_CASE("partial derivatives of monomials") {
    Polynomial p(2);
    p.add_term({3, 2}, Rational(1, 2));
    const Polynomial dx = p.partial(0);
    REQUIRE(dx.terms().size() == 1);
    CHECK(dx.terms().begin()->first == std::vector<unsigned>{2, 2});
    CHECK(dx.terms().begin()->second == Rational(3, 2));
    CHECK(p.degree() == 5);
    CHECK(p(Value{2, 3}) == Rational(36));
}

TEST_CASE("the first tangent map is value and derivative") {
    Rng rng(74);
    const PolynomialMap f = random_polynomial_map(rng, 2, 2, 3);
    const Value x = rng.integer_vector(2);
    const Value u = rng.integer_vector(2);
    const Cuboid out = unflatten(tangent_power(f, 1)(flatten(inject({x, {u}}))), 1);
    CHECK(out.at(0) == f(x));
    CHECK(out.at(1) == directional_derivative(f, u)(x));
}

TEST_CASE("random polynomial maps have every monomial up to the degree") {
    Rng rng(75);
    const PolynomialMap f = random_polynomial_map(rng, 2, 1, 3);
    CHECK(f.components()[0].degree() <= 3);
    CHECK(f.components()[0].terms().size() <= 10);
    const PolynomialMap a = random_affine_map(rng, 3, 2);
    for (const auto& c : a.components()) CHECK(c.degree() <= 1);
}

TEST_CASE("flatten and unflatten are inverse") {
    Rng rng(76);
    const Cuboid u = rng.integer_cuboid(3, 2);
    CHECK(unflatten(flatten(u), 3) == u);
    CHECK_THROWS_AS(unflatten(Value{1, 2, 3}, 1), std::invalid_argument);
}
