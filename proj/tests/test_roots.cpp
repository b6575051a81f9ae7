#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "burgers/errors.hpp"
#include "burgers/numeric_roots.hpp"
#include "burgers/poly_algebra.hpp"
#include "burgers/root_isolation.hpp"

using namespace burgers;

namespace {
Polynomial P(const std::string& s) { return Polynomial::parse(s); }

bool contains(const RootIsolation::Interval& iv, double v) {
    return to_double(iv.lo) - 1e-15 <= v && v <= to_double(iv.hi) + 1e-15;
}
}

TEST_CASE("isolate x^3 - x") {
    auto iso = isolate_real_roots(P("x^3 - x"), "x");
    REQUIRE(iso.intervals.size() == 3);
    CHECK(contains(iso.intervals[0], -1.0));
    CHECK(contains(iso.intervals[1], 0.0));
    CHECK(contains(iso.intervals[2], 1.0));
    for (const auto& iv : iso.intervals) CHECK(iv.multiplicity == 1);
}

TEST_CASE("multiplicity-aware isolation: 2 lam^4 t^2 - lam^2 - k at t=1, k=0") {
    // factorisation lam^2 (2 lam^2 - 1): roots -1/sqrt2, 0 (double), 1/sqrt2
    auto iso = isolate_real_roots(P("2*lam^4 - lam^2"), "lam");
    REQUIRE(iso.intervals.size() == 3);
    CHECK(contains(iso.intervals[0], -std::sqrt(0.5)));
    CHECK(iso.intervals[0].multiplicity == 1);
    CHECK(iso.intervals[1].lo == Rational(0));
    CHECK(iso.intervals[1].hi == Rational(0));
    CHECK(iso.intervals[1].multiplicity == 2);
    CHECK(contains(iso.intervals[2], std::sqrt(0.5)));
    CHECK(iso.total_multiplicity() == 4);
}

TEST_CASE("no real roots and error paths") {
    CHECK(isolate_real_roots(P("x^2 + 1"), "x").intervals.empty());
    CHECK_THROWS_AS(isolate_real_roots(Polynomial(), "x"), Error);
    CHECK_THROWS_AS(isolate_real_roots(P("x*y"), "x"), Error);
}

TEST_CASE("interval count equals Sturm variation count at the endpoints") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        Polynomial p(Rational(1));
        int nroots = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < nroots; ++i) {
            long r = static_cast<long>(rng() % 9) - 4;
            p *= P("x") - Polynomial(rational(r, 1 + static_cast<long>(rng() % 3)));
        }
        Polynomial sf = exact_divide(p, poly_gcd(p, p.derivative("x")));
        auto iso = isolate_real_roots(p, "x");
        int count = sturm_root_count(sf, "x", Rational(-100), Rational(100));
        CHECK(static_cast<int>(iso.intervals.size()) == count);
    }
}

TEST_CASE("refinement narrows to requested width") {
    Polynomial p = P("x^2 - 2");
    auto iso = isolate_real_roots(p, "x");
    REQUIRE(iso.intervals.size() == 2);
    auto iv = refine_interval(p, "x", iso.intervals[1], rational(1, 1 << 30));
    double lo = to_double(iv.lo), hi = to_double(iv.hi);
    CHECK(lo <= std::sqrt(2.0));
    CHECK(std::sqrt(2.0) <= hi);
    CHECK(hi - lo <= 1.0 / (1 << 30));
}

TEST_CASE("range restriction") {
    auto iso = isolate_real_roots(P("x^3 - x"), "x",
                                  std::make_pair(rational(1, 2), Rational(2)));
    REQUIRE(iso.intervals.size() == 1);
    CHECK(contains(iso.intervals[0], 1.0));
}

TEST_CASE("complex roots: exact small cases") {
    auto r = complex_roots({1.0, 0.0, 1.0});  // x^2 + 1
    REQUIRE(r.size() == 2);
    CHECK(r[0].real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r[0].imag() == doctest::Approx(-1.0));
    CHECK(r[1].imag() == doctest::Approx(1.0));

    // (x-1)(x^2-2x+5) -> 1, 1±2i
    auto r2 = complex_roots(P("(x - 1)*(x^2 - 2*x + 5)"), "x");
    REQUIRE(r2.size() == 3);
    std::vector<std::complex<double>> expect = {{1, -2}, {1, 0}, {1, 2}};
    for (const auto& e : expect) {
        bool found = false;
        for (const auto& z : r2) found |= std::abs(z - e) < 1e-9;
        CHECK(found);
    }
}

TEST_CASE("complex roots: residual check on random degree-7 polynomials") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(8);
        for (auto& c : a) c = U(rng);
        if (std::fabs(a.back()) < 0.1) a.back() = 1.0;
        double scale = 0.0;
        for (double c : a) scale = std::max(scale, std::fabs(c));
        auto roots = complex_roots(a);
        REQUIRE(roots.size() == 7);
        for (const auto& z : roots) {
            double zs = std::max(1.0, std::pow(std::abs(z), 7.0));
            CHECK(std::abs(horner(a, z)) < 1e-9 * scale * zs);
        }
        // conjugate pairing: multiset closed under conjugation
        for (const auto& z : roots) {
            if (std::fabs(z.imag()) < 1e-12) continue;
            bool paired = false;
            for (const auto& w : roots) paired |= std::abs(w - std::conj(z)) < 1e-9 * (1.0 + std::abs(z));
            CHECK(paired);
        }
    }
}

TEST_CASE("conditioning error on negligible leading coefficient") {
    CHECK_THROWS_AS(complex_roots({1.0, 1.0, 1e-30}), Error);
}

TEST_CASE("real_roots filters and sorts") {
    auto rr = real_roots({-2.0, 0.0, 1.0});  // x^2 - 2
    REQUIRE(rr.size() == 2);
    CHECK(rr[0] == doctest::Approx(-std::sqrt(2.0)));
    CHECK(rr[1] == doctest::Approx(std::sqrt(2.0)));
}
