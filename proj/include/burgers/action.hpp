#pragma once

#include <optional>
#include <vector>

#include "burgers/polynomial.hpp"
#include "burgers/scenario.hpp"
#include "burgers/wiener.hpp"

namespace burgers {

/// Reduced action f(x0; x, t) stored with denominators cleared:
/// f = cleared / (2 t).  The chain holds the eliminated coordinates
/// x0^alpha(x0, x, t) for alpha = d..2, each a polynomial in the first
/// pre-image coordinate and the image point.
struct ReducedAction {
    Polynomial cleared;              // 2t * f, polynomial in x0, x, y[, z], t
    std::vector<Polynomial> chain;   // index 0 eliminates the last coordinate
    std::vector<std::string> chain_vars;
    std::optional<Rational> fixed_time;  // set when t was substituted

    /// f and derivatives at a concrete point; t must match fixed_time if set.
    double value(double x0, const std::vector<double>& x, double t) const;
    double derivative_value(int order, double x0, const std::vector<double>& x, double t) const;
    /// Ascending coefficients of 2t*f as a univariate in x0 at a point.
    std::vector<double> cleared_coefficients(const std::vector<double>& x, double t) const;
};

struct CriticalPoint {
    double root;         // x0^1 coordinate
    double value;        // f value
    int second_sign;     // sign of f'' there (0 within tolerance: degenerate)
};

struct PointClassification {
    std::vector<CriticalPoint> critical_points;  // sorted by value, ties by |root|
    double minimiser = 0;
    double hamilton_jacobi = 0;
    int preimage_count = 0;
    bool on_caustic = false;
    bool on_maxwell = false;
    bool is_cool = false;
};

struct HessianFactorCheck {
    Polynomial flow_hessian_det;   // det of the x0-Hessian of 2tA, on the chain
    Polynomial reduced_second;     // 2^{d-1} * (2t f)''
    bool exact_match = false;      // equality up to overall sign
};

/// Builds actions and reduced actions for a scenario and answers pointwise
/// questions (pre-images, minimiser, Hamilton-Jacobi value).
class ActionSystem {
public:
    explicit ActionSystem(Scenario scenario);

    const Scenario& scenario() const { return scenario_; }

    /// 2t * A(x0, x, t).  With no fixed time, t stays symbolic (requires
    /// epsilon = 0); with a fixed time, path functionals and t enter as exact
    /// rationals snapped from doubles.
    Polynomial action_cleared(const WienerPath* path, std::optional<Rational> t) const;

    /// Same action with symbolic time and symbolic path functionals
    /// (variables W1..Wd, I1..Id, J_); epsilon enters exactly.  Reduce once,
    /// then evaluate pointwise along a path.
    Polynomial action_cleared_symbolic_noise() const;

    ReducedAction reduce(const Polynomial& action_cleared,
                         std::optional<Rational> fixed_time = {}) const;
    ReducedAction reduced_action(const WienerPath* path, std::optional<Rational> t) const;
    ReducedAction reduced_action_symbolic_noise() const;

    std::vector<CriticalPoint> critical_points(const ReducedAction& f,
                                               const std::vector<double>& x, double t) const;
    PointClassification classify_point(const std::vector<double>& x, double t,
                                       const WienerPath* path) const;
    PointClassification classify_point(const ReducedAction& f, const std::vector<double>& x,
                                       double t) const;

    std::vector<double> flow_map(const std::vector<double>& x0, double t,
                                 const WienerPath* path) const;

    /// Full pre-image (root, eliminated coordinates) for a critical root.
    std::vector<double> preimage_from_root(const ReducedAction& f, double root,
                                           const std::vector<double>& x, double t) const;

    HessianFactorCheck hessian_factor_check(const WienerPath* path,
                                            std::optional<Rational> t) const;

    /// Gradient of the initial potential at a numeric point.
    std::vector<double> initial_gradient(const std::vector<double>& x0) const;

    static constexpr double tol_action = 1e-9;   // relative tie tolerance
    static constexpr double tol_caustic = 1e-7;  // |f''| threshold, relative

private:
    Scenario scenario_;
    std::vector<Polynomial> grad_s0_;  // dS0/dx0^alpha
};

}  // namespace burgers
