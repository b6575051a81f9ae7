#include "burgers/wiener.hpp"

#include <cmath>

#include "burgers/errors.hpp"
#include "burgers/kernels.hpp"

namespace burgers {

double GaussianSource::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

WienerPath WienerPath::simulate(int dimension, double horizon, std::size_t steps,
                                std::uint64_t seed) {
    if (steps < 2) throw Error(ErrorCode::config, "path needs at least 2 steps");
    if (horizon <= 0) throw Error(ErrorCode::config, "horizon must be positive");
    if (dimension < 1) throw Error(ErrorCode::config, "dimension must be positive");
    WienerPath p;
    p.dim_ = dimension;
    p.horizon_ = horizon;
    p.steps_ = steps;
    p.seed_ = seed;
    GaussianSource g(seed);
    double sd = std::sqrt(horizon / static_cast<double>(steps));
    p.w_.assign(static_cast<size_t>(dimension), std::vector<double>(steps + 1, 0.0));
    for (std::size_t i = 1; i <= steps; ++i)
        for (int a = 0; a < dimension; ++a)
            p.w_[static_cast<size_t>(a)][i] = p.w_[static_cast<size_t>(a)][i - 1] + sd * g.next();
    p.build_functionals();
    return p;
}

WienerPath WienerPath::from_function(int dimension, double horizon, std::size_t steps,
                                     const std::function<std::vector<double>(double)>& w) {
    if (steps < 2) throw Error(ErrorCode::config, "path needs at least 2 steps");
    if (horizon <= 0) throw Error(ErrorCode::config, "horizon must be positive");
    WienerPath p;
    p.dim_ = dimension;
    p.horizon_ = horizon;
    p.steps_ = steps;
    p.seed_ = 0;
    p.w_.assign(static_cast<size_t>(dimension), std::vector<double>(steps + 1, 0.0));
    for (std::size_t i = 0; i <= steps; ++i) {
        auto v = w(p.time_at(i));
        if (static_cast<int>(v.size()) != dimension)
            throw Error(ErrorCode::config, "substituted path has wrong dimension");
        for (int a = 0; a < dimension; ++a) p.w_[static_cast<size_t>(a)][i] = v[static_cast<size_t>(a)];
    }
    p.build_functionals();
    return p;
}

void WienerPath::build_functionals() {
    std::size_t n = steps_ + 1;
    double h = dt();
    iw_.assign(static_cast<size_t>(dim_), std::vector<double>(n, 0.0));
    for (int a = 0; a < dim_; ++a) {
        const auto& w = w_[static_cast<size_t>(a)];
        auto& iw = iw_[static_cast<size_t>(a)];
        for (std::size_t i = 1; i < n; ++i) iw[i] = iw[i - 1] + 0.5 * h * (w[i - 1] + w[i]);
    }
    std::vector<double> sq(n);
    if (dim_ == 1) {
        for (std::size_t i = 0; i < n; ++i) sq[i] = w_[0][i] * w_[0][i];
    } else if (dim_ == 2) {
        kern::squared_norm2(w_[0].data(), w_[1].data(), sq.data(), n);
    } else if (dim_ == 3) {
        kern::squared_norm3(w_[0].data(), w_[1].data(), w_[2].data(), sq.data(), n);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0;
            for (int a = 0; a < dim_; ++a) s += w_[static_cast<size_t>(a)][i] * w_[static_cast<size_t>(a)][i];
            sq[i] = s;
        }
    }
    iw2_.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) iw2_[i] = iw2_[i - 1] + 0.5 * h * (sq[i - 1] + sq[i]);
}

double WienerPath::interp(const std::vector<double>& g, double t) const {
    if (t <= 0) return g.front();
    double pos = t / dt();
    if (pos >= static_cast<double>(steps_)) return g.back();
    std::size_t i = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(i);
    return g[i] + frac * (g[i + 1] - g[i]);
}

double WienerPath::value(int alpha, double t) const { return interp(w_[static_cast<size_t>(alpha)], t); }
double WienerPath::integral(int alpha, double t) const { return interp(iw_[static_cast<size_t>(alpha)], t); }
double WienerPath::integral_sq(double t) const { return interp(iw2_, t); }

std::vector<double> WienerPath::value_vec(double t) const {
    std::vector<double> v(static_cast<size_t>(dim_));
    for (int a = 0; a < dim_; ++a) v[static_cast<size_t>(a)] = value(a, t);
    return v;
}

std::vector<double> WienerPath::integral_vec(double t) const {
    std::vector<double> v(static_cast<size_t>(dim_));
    for (int a = 0; a < dim_; ++a) v[static_cast<size_t>(a)] = integral(a, t);
    return v;
}

double WienerPath::strassen_y(double t) const {
    double dotv = 0;
    for (int a = 0; a < dim_; ++a) dotv += value(a, t) * integral(a, t);
    return dotv - 0.5 * integral_sq(t);
}

}  // namespace burgers
