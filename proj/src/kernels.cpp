#include "burgers/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace burgers::kern {

namespace detail {

namespace {

void axpb_scalar(double a, const double* x, double b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b;
}

void squared_norm2_scalar(const double* x, const double* y, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * x[i] + y[i] * y[i];
}

void squared_norm3_scalar(const double* x, const double* y, const double* z, double* out,
                          std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
}

void horner_batch_scalar(const double* c, std::size_t nc, const double* xs, double* out,
                         std::size_t n) {
    if (nc == 0) {
        std::memset(out, 0, n * sizeof(double));
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        double acc = c[nc - 1];
        for (std::size_t k = nc - 1; k-- > 0;) acc = acc * xs[i] + c[k];
        out[i] = acc;
    }
}

void heat_step_scalar(const double* u, double* out, std::size_t nx, std::size_t ny,
                      double alpha) {
    std::memcpy(out, u, nx * ny * sizeof(double));
    for (std::size_t i = 1; i + 1 < nx; ++i) {
        const double* row = u + i * ny;
        const double* up = u + (i - 1) * ny;
        const double* dn = u + (i + 1) * ny;
        double* o = out + i * ny;
        for (std::size_t j = 1; j + 1 < ny; ++j) {
            double vert = up[j] + dn[j];
            double horiz = row[j - 1] + row[j + 1];
            double lap = (vert + horiz) - 4.0 * row[j];
            o[j] = row[j] + alpha * lap;
        }
    }
}

// Reductions mirror the 4-lane AVX2 pattern: lane accumulators combined as
// (l0+l2) + (l1+l3), tail elements appended in order.
double sum_scalar(const double* x, std::size_t n) {
    double l[4] = {0, 0, 0, 0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (std::size_t j = 0; j < 4; ++j) l[j] += x[i + j];
    double acc = (l[0] + l[2]) + (l[1] + l[3]);
    for (; i < n; ++i) acc += x[i];
    return acc;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double l[4] = {0, 0, 0, 0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (std::size_t j = 0; j < 4; ++j) l[j] += x[i + j] * y[i + j];
    double acc = (l[0] + l[2]) + (l[1] + l[3]);
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

}  // namespace

const Ops scalar_ops = {axpb_scalar,       squared_norm2_scalar, squared_norm3_scalar,
                        horner_batch_scalar, heat_step_scalar,   sum_scalar,
                        dot_scalar};

}  // namespace detail

namespace {

Isa pick_initial() {
#if defined(__x86_64__) || defined(_M_X64)
    const char* env = std::getenv("BURGERS_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (detail::cpu_has_avx2()) return Isa::avx2;
#endif
    return Isa::scalar;
}

Isa& current() {
    static Isa isa = pick_initial();
    return isa;
}

const detail::Ops& ops() {
#if defined(__x86_64__) || defined(_M_X64)
    if (current() == Isa::avx2) return detail::avx2_ops;
#endif
    return detail::scalar_ops;
}

}  // namespace

Isa active_isa() { return current(); }

void force_isa(Isa isa) {
#if !defined(__x86_64__) && !defined(_M_X64)
    isa = Isa::scalar;
#endif
    current() = isa;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void axpb(double a, const double* x, double b, double* out, std::size_t n) {
    ops().axpb(a, x, b, out, n);
}
void squared_norm2(const double* x, const double* y, double* out, std::size_t n) {
    ops().squared_norm2(x, y, out, n);
}
void squared_norm3(const double* x, const double* y, const double* z, double* out,
                   std::size_t n) {
    ops().squared_norm3(x, y, z, out, n);
}
void horner_batch(const double* c, std::size_t nc, const double* xs, double* out,
                  std::size_t n) {
    ops().horner_batch(c, nc, xs, out, n);
}
void heat_step(const double* u, double* out, std::size_t nx, std::size_t ny, double alpha) {
    ops().heat_step(u, out, nx, ny, alpha);
}
double sum(const double* x, std::size_t n) { return ops().sum(x, n); }
double dot(const double* x, const double* y, std::size_t n) { return ops().dot(x, y, n); }

}  // namespace burgers::kern
