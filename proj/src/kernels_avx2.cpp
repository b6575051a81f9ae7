// AVX2 kernel variants.  Compiled with -mavx2; only invoked after the runtime
// CPU check in kernels.cpp.  No FMA: mul/add round exactly like the scalar
// reference, so both paths are bitwise identical.
#include "burgers/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstring>

namespace burgers::kern::detail {

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

namespace {

void axpb_avx2(double a, const double* x, double b, double* out, std::size_t n) {
    __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(va, v), vb));
    }
    for (; i < n; ++i) out[i] = a * x[i] + b;
}

void squared_norm2_avx2(const double* x, const double* y, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i), vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(out + i,
                         _mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vy, vy)));
    }
    for (; i < n; ++i) out[i] = x[i] * x[i] + y[i] * y[i];
}

void squared_norm3_avx2(const double* x, const double* y, const double* z, double* out,
                        std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i), vy = _mm256_loadu_pd(y + i),
                vz = _mm256_loadu_pd(z + i);
        __m256d s = _mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vy, vy));
        _mm256_storeu_pd(out + i, _mm256_add_pd(s, _mm256_mul_pd(vz, vz)));
    }
    for (; i < n; ++i) out[i] = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
}

void horner_batch_avx2(const double* c, std::size_t nc, const double* xs, double* out,
                       std::size_t n) {
    if (nc == 0) {
        std::memset(out, 0, n * sizeof(double));
        return;
    }
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(xs + i);
        __m256d acc = _mm256_set1_pd(c[nc - 1]);
        for (std::size_t k = nc - 1; k-- > 0;)
            acc = _mm256_add_pd(_mm256_mul_pd(acc, vx), _mm256_set1_pd(c[k]));
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) {
        double acc = c[nc - 1];
        for (std::size_t k = nc - 1; k-- > 0;) acc = acc * xs[i] + c[k];
        out[i] = acc;
    }
}

void heat_step_avx2(const double* u, double* out, std::size_t nx, std::size_t ny,
                    double alpha) {
    std::memcpy(out, u, nx * ny * sizeof(double));
    __m256d va = _mm256_set1_pd(alpha);
    __m256d four = _mm256_set1_pd(4.0);
    for (std::size_t i = 1; i + 1 < nx; ++i) {
        const double* row = u + i * ny;
        const double* up = u + (i - 1) * ny;
        const double* dn = u + (i + 1) * ny;
        double* o = out + i * ny;
        std::size_t j = 1;
        for (; j + 4 <= ny - 1; j += 4) {
            __m256d c = _mm256_loadu_pd(row + j);
            __m256d vert = _mm256_add_pd(_mm256_loadu_pd(up + j), _mm256_loadu_pd(dn + j));
            __m256d horiz =
                _mm256_add_pd(_mm256_loadu_pd(row + j - 1), _mm256_loadu_pd(row + j + 1));
            __m256d lap = _mm256_sub_pd(_mm256_add_pd(vert, horiz), _mm256_mul_pd(four, c));
            _mm256_storeu_pd(o + j, _mm256_add_pd(c, _mm256_mul_pd(va, lap)));
        }
        for (; j + 1 < ny; ++j) {
            double vert = up[j] + dn[j];
            double horiz = row[j - 1] + row[j + 1];
            double lap = (vert + horiz) - 4.0 * row[j];
            o[j] = row[j] + alpha * lap;
        }
    }
}

inline double reduce_lanes(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);     // l0, l1
    __m128d hi = _mm256_extractf128_pd(v, 1);   // l2, l3
    __m128d s = _mm_add_pd(lo, hi);             // l0+l2, l1+l3
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = reduce_lanes(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    double s = reduce_lanes(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

}  // namespace

const Ops avx2_ops = {axpb_avx2,       squared_norm2_avx2, squared_norm3_avx2,
                      horner_batch_avx2, heat_step_avx2,   sum_avx2,
                      dot_avx2};

}  // namespace burgers::kern::detail

#endif  // x86_64
