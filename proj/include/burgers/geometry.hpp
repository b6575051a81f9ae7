#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "burgers/action.hpp"
#include "burgers/poly_algebra.hpp"

namespace burgers {

struct CurveSample {
    double lambda = 0;
    double lambda2 = 0;  // 3-D grids only
    std::vector<double> point;
    std::vector<double> deriv;    // d point / d lambda
    std::vector<double> deriv2;   // second lambda-derivative (2-D)
    bool valid = true;
    std::string label;
};

/// Sampled pre-parameterised curve with an optional analytic re-evaluator
/// for refinement near features.
struct ParamCurve {
    int dimension = 2;
    bool grid = false;  // 3-D (lambda1, lambda2) sampling
    std::vector<CurveSample> samples;
    std::function<CurveSample(double, double)> evaluator;
};

struct ComplexDoublePoint {
    double a = 0;
    double eta = 0;  // > 0
    double t = 0;
    double residual = 0;  // | Im x_t(a + i eta) |
};

struct PerestroikaHit {
    double t = 0;
    double lambda = 0;
    std::array<double, 4> derivative_residuals{};  // |f'|..|f''''| at the hit
};

struct MaxwellSet {
    Polynomial algebraic;            // multiplicity-2 factor of the double discriminant
    Polynomial caustic_factor;       // multiplicity-3 factor
    Polynomial content;              // time-only content
    ParamCurve filtered;             // points passing the real-equal-action test
};

/// Caustics, level surfaces, Maxwell sets and their pre-images for one
/// scenario, plus swallowtail births and complex double points.
class SingularGeometry {
public:
    explicit SingularGeometry(Scenario sc);

    const ActionSystem& actions() const { return actions_; }
    const Scenario& scenario() const { return actions_.scenario(); }

    /// det(I + t Hess S0) in the pre-image coordinates; zero set is the
    /// pre-caustic for every noise level.
    Polynomial pre_caustic() const;

    /// Caustic pre-parameterisation as rational functions of the pre-image
    /// parameters with a shared denominator (the last coordinate solved from
    /// the pre-caustic, then pushed through the flow).
    struct CausticChart {
        std::vector<Polynomial> numerators;  // per image coordinate
        Polynomial denominator;
        Polynomial last_coord_num;  // eliminated pre-image coordinate = num/den
    };
    const CausticChart& caustic_chart() const { return chart_; }

    ParamCurve caustic_curve(double t, const std::vector<double>& lambda_grid,
                             const WienerPath* path,
                             const std::vector<double>& lambda2_grid = {}) const;

    ParamCurve level_surface_curve(double level, double t,
                                   const std::vector<double>& lambda_grid,
                                   const WienerPath* path) const;

    /// Implicit pre-Maxwell polynomial in the pre-image coordinates (and t
    /// when no time is fixed).
    Polynomial pre_maxwell(const WienerPath* path = nullptr,
                           std::optional<Rational> t = {}) const;

    /// Samples the pre-Maxwell zero set and maps it through the flow.
    ParamCurve pre_maxwell_curve(double t, const std::vector<double>& lambda_grid,
                                 const WienerPath* path) const;

    MaxwellSet maxwell_set(double t, const WienerPath* path,
                           const std::vector<double>& sample_grid) const;

    std::vector<CurveSample> detect_generalised_cusps(const ParamCurve& curve) const;

    std::vector<PerestroikaHit> detect_perestroika(double t_lo, double t_hi) const;

    /// Third and fourth argument-derivatives of the reduced action pulled back
    /// along the caustic, cleared of denominators: polynomials in x0 (and t
    /// when symbolic).
    std::pair<Polynomial, Polynomial> caustic_jet_numerators(const WienerPath* path,
                                                             std::optional<Rational> t) const;

    std::vector<ComplexDoublePoint> complex_double_points(double t) const;

    std::vector<double> level_normal(const std::vector<double>& x0, double t,
                                     const WienerPath* path) const;
    std::vector<double> maxwell_normal(const std::vector<double>& x0, double t,
                                       const WienerPath* path) const;

    static constexpr double tol_cusp = 1e-7;
    static constexpr double tol_newton = 1e-10;
    static constexpr double tol_dedup = 1e-6;

private:
    ActionSystem actions_;
    Polynomial pre_caustic_;
    CausticChart chart_;

    CurveSample eval_caustic(double l1, double l2, double t,
                             const std::vector<double>& shift) const;
    std::vector<std::vector<double>> hessian_s0(const std::vector<double>& x0) const;
    std::vector<double> apply_normal_matrix(const std::vector<double>& x0,
                                            const std::vector<double>& velocity,
                                            double t) const;
};

}  // namespace burgers
