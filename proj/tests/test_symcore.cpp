#include "dwv/poly.hpp"

#include <doctest.h>

#include <unordered_map>

using namespace dwv;

namespace {

Poly x() { return Poly::variable(0); }
Poly y() { return Poly::variable(1); }

}  // namespace

TEST_CASE("rationals are stored in lowest terms with a positive denominator") {
    Rational r(6, -4);
    CHECK(r.numerator() == "-3");
    CHECK(r.denominator() == "2");
    CHECK(Rational(0, 5).str() == "0");
    CHECK(Rational(0, 5).denominator() == "1");
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK(Rational(-7, 3).abs() == Rational(7, 3));
}

TEST_CASE("rationals exceed machine integers exactly") {
    Rational big(1);
    for (int i = 0; i < 40; ++i) big *= Rational(1000003);
    Rational back = big;
    for (int i = 0; i < 40; ++i) back /= Rational(1000003);
    CHECK(back.is_one());
    CHECK(big.numerator().size() > 200);
}

TEST_CASE("ring operations on small polynomials") {
    CHECK((x() + Poly(1)) * (x() - Poly(1)) == x() * x() - Poly(1));
    const Poly p = x() * y() + Poly(3);
    CHECK((p + (-p)).is_zero());
    CHECK((Poly(2) * x()).scaled(Rational(1, 2)) == x());
    CHECK(x().pow(3) == x() * x() * x());
}

TEST_CASE("terms are normalized: sorted, merged, no zero coefficients") {
    Poly p = Poly::from_terms({{Monomial::variable(1), Rational(2)},
                               {Monomial::variable(0), Rational(1)},
                               {Monomial::variable(1), Rational(-2)}});
    REQUIRE(p.size() == 1);
    CHECK(p == x());
    Poly q = x() * y() + y() * x();
    CHECK(q.size() == 1);
}

TEST_CASE("operands on different charts are rejected") {
    const Poly a = Poly::variable(0, 101), b = Poly::variable(0, 202);
    CHECK_THROWS_AS(a + b, ChartMismatch);
    CHECK_THROWS_AS(a * b, ChartMismatch);
    CHECK_NOTHROW(a + Poly(1));
}

TEST_CASE("partial derivatives") {
    CHECK((x() * x() * y()).derivative(0) == (x() * y()).scaled(Rational(2)));
    CHECK(Poly(7).derivative(0).is_zero());
    CHECK(y().derivative(0).is_zero());
}

TEST_CASE("substitution and evaluation") {
    std::unordered_map<VarId, Poly> sigma{{0, y() + Poly(1)}};
    CHECK((x() * x()).substitute(sigma) == y() * y() + y().scaled(Rational(2)) + Poly(1));
    std::unordered_map<VarId, Poly> kill{{1, Poly()}};
    CHECK((x() * y() + x()).substitute(kill) == x());
    CHECK((x() * x() + Poly(1)).evaluate({{0, Rational(3)}}) == Rational(10));
    CHECK_THROWS_AS((x() * y()).evaluate({{0, Rational(3)}}), std::out_of_range);
}

TEST_CASE("random polynomials are deterministic and respect the degree bound") {
    const std::vector<VarId> vars{0, 1, 2, 3};
    CHECK(random_polynomial(vars, 2, 9) == random_polynomial(vars, 2, 9));
    CHECK(random_polynomial(vars, 0, 5).is_constant());
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Poly p = random_polynomial(vars, 2, s);
        CHECK(p.size() <= 15);  // C(4 + 2, 2)
        CHECK(p.total_degree() <= 2);
        for (const auto& [m, c] : p.terms()) {
            CHECK(c >= Rational(-9));
            CHECK(c <= Rational(9));
        }
    }
    CHECK_THROWS_AS(random_polynomial(vars, -1, 0), std::invalid_argument);
}

TEST_CASE("ring axioms on seeded triples") {
    const std::vector<VarId> vars{0, 1, 2};
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Poly a = random_polynomial(vars, 2, 3 * s), b = random_polynomial(vars, 2, 3 * s + 1),
                   c = random_polynomial(vars, 2, 3 * s + 2);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
    }
}

TEST_CASE("mixed partial derivatives commute") {
    const std::vector<VarId> vars{0, 1, 2};
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Poly p = random_polynomial(vars, 3, s);
        CHECK(p.derivative(0).derivative(1) == p.derivative(1).derivative(0));
        CHECK(p.derivative(2).derivative(1) == p.derivative(1).derivative(2));
    }
}

TEST_CASE("substituting then evaluating equals evaluating the composite") {
    const std::vector<VarId> vars{0, 1};
    SplitMix64 r(17);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Poly p = random_polynomial(vars, 2, s);
        const Poly f = random_polynomial(vars, 2, 100 + s), g = random_polynomial(vars, 2, 200 + s);
        const std::unordered_map<VarId, Rational> pt{{0, Rational(r.uniform(-5, 5), 3)},
                                                     {1, Rational(r.uniform(-5, 5), 2)}};
        const Rational direct = p.evaluate({{0, f.evaluate(pt)}, {1, g.evaluate(pt)}});
        CHECK(p.substitute({{0, f}, {1, g}}).evaluate(pt) == direct);
    }
}
