#pragma once

#include <optional>
#include <string>
#include <vector>

#include "burgers/action.hpp"
#include "burgers/scenario.hpp"

namespace burgers {

/// Explicit heat solve of du/dtau = (mu^2/2) Lap u with frozen Dirichlet
/// boundary, stored against a log offset so the initial exp(-S0/mu^2) data
/// never overflows.  Positivity is preserved under the step bound
/// dtau <= h^2 / (2 mu^2 d).
struct Grid2D {
    double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
    double spacing = 0;
    double time_step = 0;
    double viscosity = 0;
    std::size_t nx = 0, ny = 0;
    std::vector<double> u;      // row-major (x index major), scaled
    double log_offset = 0;      // true u = u * exp(log_offset)

    double value(std::size_t i, std::size_t j) const { return u[i * ny + j]; }
    double log_u(double x, double y) const;  // bilinear in ln u, plus offset
};

struct HeatProbeError {
    std::vector<double> probe;
    double mu = 0;
    double pde_value = 0;      // -mu^2 ln u at the probe
    double hj_value = 0;       // Hamilton-Jacobi value from the minimiser
    double error = 0;          // |difference|
    bool excluded = false;     // probe too close to the caustic/Maxwell set
    std::string note;
};

class HeatVerifier {
public:
    explicit HeatVerifier(Scenario sc);

    /// Solves to time t. The domain must contain the probes with padding; the
    /// spacing defaults to mu/5 so the Laplace peaks stay resolved for every
    /// viscosity in a ladder.
    Grid2D solve_heat(double mu, double t, double x_lo, double x_hi, double y_lo, double y_hi,
                      std::optional<double> spacing = {}) const;

    /// e(mu) per probe per viscosity, plus the halving ratios e(mu)/e(mu/2).
    struct CompareResult {
        std::vector<HeatProbeError> table;  // probe-major, mu in given order
        std::vector<std::vector<double>> ratios;  // [probe][mu pair]
    };
    CompareResult hopf_cole_compare(const std::vector<std::vector<double>>& probes, double t,
                                    const std::vector<double>& mus, double x_lo, double x_hi,
                                    double y_lo, double y_hi) const;

    /// Distance from a point to the nearest singular feature (caustic sample
    /// or Maxwell line) used for probe exclusion.
    double singular_distance(const std::vector<double>& x, double t) const;

private:
    Scenario scenario_;
    ActionSystem actions_;
};

}  // namespace burgers
