#include "burgers/numeric_roots.hpp"

#include <algorithm>
#include <cmath>

#include "burgers/errors.hpp"

namespace burgers {

double horner(const std::vector<double>& a, double x) {
    double acc = 0.0;
    for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

std::complex<double> horner(const std::vector<double>& a, std::complex<double> x) {
    std::complex<double> acc = 0.0;
    for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

std::vector<std::complex<double>> complex_roots(std::vector<double> a, double precision) {
    while (!a.empty() && a.back() == 0.0) a.pop_back();
    if (a.size() <= 1) return {};
    double max_abs = 0.0;
    for (double c : a) max_abs = std::max(max_abs, std::fabs(c));
    if (std::fabs(a.back()) < 1e-13 * max_abs)
        throw Error(ErrorCode::conditioning,
                    "leading coefficient negligible; root count ill-defined");

    size_t n = a.size() - 1;
    std::vector<double> da(n);
    for (size_t i = 1; i <= n; ++i) da[i - 1] = a[i] * static_cast<double>(i);

    // Initial guesses on a circle at the Cauchy radius, slightly detuned so no
    // start sits on a symmetry axis.
    double radius = 0.0;
    for (size_t i = 0; i < n; ++i) radius = std::max(radius, std::fabs(a[i] / a.back()));
    radius = 1.0 + radius;
    std::vector<std::complex<double>> z(n);
    const double two_pi = 6.283185307179586476925286766559;
    for (size_t i = 0; i < n; ++i) {
        double ang = two_pi * (static_cast<double>(i) + 0.35411) / static_cast<double>(n) + 0.5;
        z[i] = std::polar(0.5 * radius + 0.1, ang);
    }

    for (int iter = 0; iter < 400; ++iter) {
        double worst = 0.0;
        for (size_t i = 0; i < n; ++i) {
            std::complex<double> p = horner(a, z[i]);
            std::complex<double> dp = horner(da, z[i]);
            std::complex<double> newton = (dp == 0.0) ? std::complex<double>(0.0) : p / dp;
            std::complex<double> rep = 0.0;
            for (size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                std::complex<double> diff = z[i] - z[j];
                if (std::abs(diff) < 1e-300) diff = 1e-300;
                rep += 1.0 / diff;
            }
            std::complex<double> denom = 1.0 - newton * rep;
            std::complex<double> step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
            z[i] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (worst < precision * 0.01) break;
    }
    // Newton polish.
    for (auto& zi : z) {
        for (int k = 0; k < 8; ++k) {
            std::complex<double> dp = horner(da, zi);
            if (std::abs(dp) == 0.0) break;
            std::complex<double> step = horner(a, zi) / dp;
            zi -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(zi))) break;
        }
    }

    // Conjugate pairing for real coefficients: snap near-real roots, then
    // average conjugate partners.
    std::vector<bool> used(n, false);
    for (size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        double scale = 1.0 + std::abs(z[i]);
        if (std::fabs(z[i].imag()) < precision * scale) {
            z[i] = {z[i].real(), 0.0};
            used[i] = true;
            continue;
        }
        size_t best = n;
        double best_d = 1e300;
        for (size_t j = i + 1; j < n; ++j) {
            if (used[j]) continue;
            double d = std::abs(z[j] - std::conj(z[i]));
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        if (best < n && best_d < 1e-6 * scale) {
            std::complex<double> avg = 0.5 * (z[i] + std::conj(z[best]));
            z[i] = avg;
            z[best] = std::conj(avg);
            used[i] = used[best] = true;
        } else {
            used[i] = true;
        }
    }
    std::sort(z.begin(), z.end(), [](const auto& u, const auto& v) {
        if (u.real() != v.real()) return u.real() < v.real();
        return u.imag() < v.imag();
    });
    return z;
}

std::vector<std::complex<double>> complex_roots(const Polynomial& p, const std::string& var,
                                                double precision) {
    return complex_roots(p.univariate_doubles(var), precision);
}

std::vector<double> real_roots(const std::vector<double>& a, double im_tol) {
    std::vector<double> out;
    for (const auto& z : complex_roots(a, std::min(im_tol, 1e-12)))
        if (std::fabs(z.imag()) <= im_tol * (1.0 + std::abs(z))) out.push_back(z.real());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace burgers
