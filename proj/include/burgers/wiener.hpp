#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace burgers {

/// Seeded d-dimensional Brownian path on a uniform grid, with cumulative
/// functionals W(t), int_0^t W ds and int_0^t |W|^2 ds cached at every grid
/// point.  Identical (dimension, horizon, steps, seed) give bitwise-identical
/// paths.  A deterministic function can be substituted for the driving path;
/// the derived functionals are then plain trapezoid quadratures of it.
class WienerPath {
public:
    static WienerPath simulate(int dimension, double horizon, std::size_t steps, std::uint64_t seed);
    static WienerPath from_function(int dimension, double horizon, std::size_t steps,
                                    const std::function<std::vector<double>(double)>& w);

    int dimension() const { return dim_; }
    double horizon() const { return horizon_; }
    std::size_t steps() const { return steps_; }
    std::uint64_t seed() const { return seed_; }
    double dt() const { return horizon_ / static_cast<double>(steps_); }
    double time_at(std::size_t i) const { return dt() * static_cast<double>(i); }

    /// Linear interpolation between grid points.
    double value(int alpha, double t) const;
    double integral(int alpha, double t) const;
    double integral_sq(double t) const;
    std::vector<double> value_vec(double t) const;
    std::vector<double> integral_vec(double t) const;

    /// W(t) . int_0^t W ds - 1/2 int_0^t |W|^2 ds
    double strassen_y(double t) const;

    const std::vector<double>& component(int alpha) const { return w_[static_cast<size_t>(alpha)]; }
    const std::vector<double>& integral_component(int alpha) const {
        return iw_[static_cast<size_t>(alpha)];
    }
    const std::vector<double>& integral_sq_grid() const { return iw2_; }

private:
    int dim_ = 0;
    double horizon_ = 0;
    std::size_t steps_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<std::vector<double>> w_;   // [dim][steps+1]
    std::vector<std::vector<double>> iw_;  // [dim][steps+1]
    std::vector<double> iw2_;              // [steps+1]

    void build_functionals();
    double interp(const std::vector<double>& g, double t) const;
};

/// Standard normal deviates from a seeded 64-bit Mersenne Twister via an
/// explicit Box-Muller transform.  Both pieces are fully specified, so the
/// same seed reproduces the same stream on any platform.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}
    double next();

private:
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }  // [0,1)
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace burgers
