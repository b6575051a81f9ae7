#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "burgers/kernels.hpp"

using namespace burgers;

namespace {

struct IsaGuard {
    kern::Isa saved;
    IsaGuard() : saved(kern::active_isa()) {}
    ~IsaGuard() { kern::force_isa(saved); }
};

std::vector<double> rnd_vec(std::mt19937_64& rng, size_t n) {
    std::uniform_real_distribution<double> U(-10.0, 10.0);
    std::vector<double> v(n);
    for (auto& x : v) x = U(rng);
    return v;
}

bool have_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return kern::detail::cpu_has_avx2();
#else
    return false;
#endif
}

}  // namespace

TEST_CASE("scalar and avx2 variants are bitwise identical") {
    if (!have_avx2()) {
        MESSAGE("AVX2 not available; scalar-only run");
        return;
    }
    IsaGuard guard;
    std::mt19937_64 rng(12345);
    for (size_t n : {0ul, 1ul, 3ul, 4ul, 5ul, 7ul, 64ul, 1001ul}) {
        auto x = rnd_vec(rng, n), y = rnd_vec(rng, n), z = rnd_vec(rng, n);
        std::vector<double> a(n), b(n);

        kern::force_isa(kern::Isa::scalar);
        kern::axpb(1.7, x.data(), -0.3, a.data(), n);
        kern::force_isa(kern::Isa::avx2);
        kern::axpb(1.7, x.data(), -0.3, b.data(), n);
        CHECK(a == b);

        kern::force_isa(kern::Isa::scalar);
        kern::squared_norm2(x.data(), y.data(), a.data(), n);
        kern::force_isa(kern::Isa::avx2);
        kern::squared_norm2(x.data(), y.data(), b.data(), n);
        CHECK(a == b);

        kern::force_isa(kern::Isa::scalar);
        kern::squared_norm3(x.data(), y.data(), z.data(), a.data(), n);
        kern::force_isa(kern::Isa::avx2);
        kern::squared_norm3(x.data(), y.data(), z.data(), b.data(), n);
        CHECK(a == b);

        std::vector<double> coeffs = {0.25, -1.5, 0.0, 2.0, -0.125};
        kern::force_isa(kern::Isa::scalar);
        kern::horner_batch(coeffs.data(), coeffs.size(), x.data(), a.data(), n);
        kern::force_isa(kern::Isa::avx2);
        kern::horner_batch(coeffs.data(), coeffs.size(), x.data(), b.data(), n);
        CHECK(a == b);

        kern::force_isa(kern::Isa::scalar);
        double s1 = kern::sum(x.data(), n), d1 = kern::dot(x.data(), y.data(), n);
        kern::force_isa(kern::Isa::avx2);
        double s2 = kern::sum(x.data(), n), d2 = kern::dot(x.data(), y.data(), n);
        CHECK(s1 == s2);
        CHECK(d1 == d2);
    }
}

TEST_CASE("heat step variants identical and correct on a known stencil") {
    IsaGuard guard;
    std::mt19937_64 rng(777);
    size_t nx = 13, ny = 17;
    auto u = rnd_vec(rng, nx * ny);
    std::vector<double> a(nx * ny), b(nx * ny);
    kern::force_isa(kern::Isa::scalar);
    kern::heat_step(u.data(), a.data(), nx, ny, 0.125);
    if (have_avx2()) {
        kern::force_isa(kern::Isa::avx2);
        kern::heat_step(u.data(), b.data(), nx, ny, 0.125);
        CHECK(a == b);
    }
    // reference check at one interior point
    size_t i = 5, j = 7;
    double lap = (u[(i - 1) * ny + j] + u[(i + 1) * ny + j]) +
                 (u[i * ny + j - 1] + u[i * ny + j + 1]) - 4.0 * u[i * ny + j];
    CHECK(a[i * ny + j] == doctest::Approx(u[i * ny + j] + 0.125 * lap).epsilon(1e-15));
    // boundary untouched
    CHECK(a[0] == u[0]);
    CHECK(a[(nx - 1) * ny + (ny - 1)] == u[(nx - 1) * ny + (ny - 1)]);
}

TEST_CASE("horner_batch matches direct evaluation") {
    IsaGuard guard;
    kern::force_isa(kern::active_isa());
    std::vector<double> c = {1.0, -2.0, 0.5};
    std::vector<double> xs = {0.0, 1.0, -3.0};
    std::vector<double> out(3);
    kern::horner_batch(c.data(), c.size(), xs.data(), out.data(), 3);
    for (size_t i = 0; i < 3; ++i) {
        double x = xs[i];
        CHECK(out[i] == doctest::Approx(1.0 - 2.0 * x + 0.5 * x * x).epsilon(1e-15));
    }
}
