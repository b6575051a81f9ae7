#pragma once

#include <cstddef>
#include <string>

namespace burgers::kern {

enum class Isa { scalar, avx2 };

/// Active instruction set.  Chosen at first use from CPU support, overridable
/// with BURGERS_SIMD=scalar|avx2 or force_isa().  All variants produce
/// bitwise-identical results; the scalar kernels mirror the vector lane
/// structure so reductions associate the same way.
Isa active_isa();
void force_isa(Isa isa);
const char* isa_name(Isa isa);

/// out[i] = a*x[i] + b
void axpb(double a, const double* x, double b, double* out, std::size_t n);

/// out[i] = x[i]^2 + y[i]^2  (and the 3-component variant)
void squared_norm2(const double* x, const double* y, double* out, std::size_t n);
void squared_norm3(const double* x, const double* y, const double* z, double* out,
                   std::size_t n);

/// Horner evaluation of one ascending-coefficient polynomial at many points.
void horner_batch(const double* coeffs, std::size_t ncoeff, const double* xs, double* out,
                  std::size_t n);

/// One explicit heat step on the interior of a row-major nx x ny grid:
/// out = u + alpha * (north + south + east + west - 4u).  Boundary rows and
/// columns are copied unchanged.
void heat_step(const double* u, double* out, std::size_t nx, std::size_t ny, double alpha);

/// Lane-blocked deterministic reductions.
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);

namespace detail {
struct Ops {
    void (*axpb)(double, const double*, double, double*, std::size_t);
    void (*squared_norm2)(const double*, const double*, double*, std::size_t);
    void (*squared_norm3)(const double*, const double*, const double*, double*, std::size_t);
    void (*horner_batch)(const double*, std::size_t, const double*, double*, std::size_t);
    void (*heat_step)(const double*, double*, std::size_t, std::size_t, double);
    double (*sum)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
};
extern const Ops scalar_ops;
#if defined(__x86_64__) || defined(_M_X64)
extern const Ops avx2_ops;
bool cpu_has_avx2();
#endif
}  // namespace detail

}  // namespace burgers::kern
