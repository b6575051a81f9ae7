#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "burgers/errors.hpp"
#include "burgers/polynomial.hpp"

using namespace burgers;

TEST_CASE("construction and arithmetic are exact") {
    Polynomial x = Polynomial::variable("x");
    Polynomial y = Polynomial::variable("y");
    Polynomial p = x * x - y * Rational(2) + Polynomial::constant(rational(1, 3));
    CHECK(p.degree("x") == 2);
    CHECK(p.degree("y") == 1);
    CHECK(p.evaluate({{"x", Rational(3)}, {"y", rational(1, 2)}}) == Rational(3) * 3 - 1 + rational(1, 3));

    Polynomial q = (x + y) * (x - y);
    CHECK(q == x * x - y * y);
    CHECK((q - q).is_zero());
}

TEST_CASE("derivative, substitute, pow") {
    Polynomial x = Polynomial::variable("x");
    Polynomial t = Polynomial::variable("t");
    Polynomial p = x.pow(4) * t - x * Rational(3);
    CHECK(p.derivative("x") == x.pow(3) * t * Rational(4) - Polynomial(Rational(3)));
    CHECK(p.derivative("x", 4) == t * Rational(24));
    CHECK(p.substitute("x", t) == t.pow(5) - t * Rational(3));

    // substitution is a ring homomorphism on a random sample
    std::mt19937 rng(7);
    auto rnd = [&] { return rational(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 5)); };
    for (int i = 0; i < 20; ++i) {
        Rational a = rnd(), b = rnd();
        Polynomial val = x * a + Polynomial::constant(b);
        Rational at = rnd();
        Rational lhs = p.substitute("t", val).evaluate({{"x", at}});
        Rational rhs = p.evaluate({{"x", at}, {"t", a * at + b}});
        CHECK(lhs == rhs);
    }
}

TEST_CASE("text format round-trips exactly") {
    std::mt19937 rng(2026);
    for (int trial = 0; trial < 200; ++trial) {
        Polynomial p;
        int nterms = 1 + static_cast<int>(rng() % 6);
        for (int k = 0; k < nterms; ++k) {
            long num = static_cast<long>(rng() % 2001) - 1000;
            long den = 1 + static_cast<long>(rng() % 40);
            Polynomial term = Polynomial::constant(rational(num, den));
            term *= Polynomial::variable("x").pow(static_cast<int>(rng() % 5));
            term *= Polynomial::variable("y").pow(static_cast<int>(rng() % 4));
            term *= Polynomial::variable("t").pow(static_cast<int>(rng() % 3));
            p += term;
        }
        Polynomial q = Polynomial::parse(p.str());
        CHECK(q == p);
    }
    CHECK(Polynomial::parse("0").is_zero());
    CHECK(Polynomial::parse("-x + x").is_zero());
    CHECK(Polynomial::parse("3/2*x^2*y - t + 1/4").str() == "3/2*x^2*y - t + 1/4");
    CHECK_THROWS_AS(Polynomial::parse("x +"), Error);
    CHECK_THROWS_AS(Polynomial::parse("2**x"), Error);
}

TEST_CASE("rational function substitution clears denominators") {
    Polynomial x = Polynomial::variable("x");
    Polynomial s = Polynomial::variable("s");
    Polynomial p = x * x + Polynomial(Rational(1));
    // substitute x -> (s+1)/s : s^2 * p = (s+1)^2 + s^2
    Polynomial num = s + Polynomial(Rational(1));
    Polynomial cleared = p.substitute_rational("x", num, s);
    CHECK(cleared == num * num + s * s);
}

TEST_CASE("double and complex evaluation agree with rational evaluation") {
    Polynomial p = Polynomial::parse("2*x^3 - 1/2*x*y + 7");
    double dv = p.evaluate_double({{"x", 1.5}, {"y", -2.0}});
    Rational rv = p.evaluate({{"x", rational(3, 2)}, {"y", Rational(-2)}});
    CHECK(dv == doctest::Approx(to_double(rv)).epsilon(1e-15));
    auto cv = p.evaluate_complex({{"x", {1.5, 0.0}}, {"y", {-2.0, 0.0}}});
    CHECK(cv.real() == doctest::Approx(dv));
    CHECK(cv.imag() == doctest::Approx(0.0));
}
