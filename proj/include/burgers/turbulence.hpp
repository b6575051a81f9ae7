#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "burgers/action.hpp"
#include "burgers/fast_eval.hpp"
#include "burgers/geometry.hpp"
#include "burgers/wiener.hpp"

namespace burgers {

enum class Branch { cusped, orthogonal, zero_speed, subcaustic };
const char* branch_name(Branch b);
Branch branch_from_name(const std::string& name);

struct LambdaRoot {
    Branch branch;
    double lambda1 = 0;
    double lambda2 = 0;  // 3-D only
};

struct ZetaSample {
    double t = 0;
    double lambda1 = 0;
    double lambda2 = 0;
    double closed_form = 0;  // explicit form: deterministic term + noise terms - c
    double direct = 0;       // stochastic reduced action on the shifted caustic - c
    bool valid = true;
};

struct ZetaPath {
    Branch branch = Branch::cusped;
    double level = 0;
    std::vector<ZetaSample> samples;
};

struct TurbulenceReport {
    struct Zero {
        double t_lo = 0, t_hi = 0, t_root = 0;
        double lambda = 0;
        bool cool = false;
        bool classified = false;
    };
    Branch branch = Branch::cusped;
    std::vector<Zero> zeros;
    bool degenerate = false;  // the process vanishes along the whole grid
};

struct EtaPath {
    std::vector<double> t;
    std::vector<double> value;       // signed jet resultant
    std::vector<bool> valid;
    std::vector<double> zeros;       // interpolated zero times
};

struct SpitzerResult {
    std::vector<double> samples;  // 2 theta_t / ln t per trial
    double ks_to_cauchy = 0;
    int resampled_trials = 0;
};

struct RecurrenceSummary {
    std::vector<double> prefixes;                  // observation horizons
    std::vector<std::vector<int>> zero_counts;     // [seed][prefix]
    std::vector<double> fraction_at_least;         // >= k zeros at the last horizon, k=1..5
    std::vector<double> median_counts;             // per prefix
};

/// Zeta and jet-resultant processes on simulated paths, with the recurrence
/// and winding-angle experiments.
class Turbulence {
public:
    explicit Turbulence(Scenario sc);

    const SingularGeometry& geometry() const { return geom_; }

    std::vector<LambdaRoot> solve_lambda_branches(double t, const WienerPath* path) const;

    ZetaPath zeta_path(Branch branch, double level, const WienerPath& path,
                       const std::vector<double>& t_grid, bool small_eps = false) const;

    /// Single zeta evaluation at a chosen parameter; the explicit-form and
    /// direct routes are exposed separately for cross-checking.
    double zeta_value(double l1, double l2, double t, const WienerPath& path, double level,
                      bool small_eps, bool direct) const;

    /// Residual of the gradient system (the lambda-equation) at a parameter,
    /// relative to its coefficient scale.
    double lambda_equation_residual(double l1, double t, const WienerPath* path) const;

    TurbulenceReport find_turbulent_times(const ZetaPath& zeta, const WienerPath* path,
                                          bool classify_cool = true) const;

    EtaPath eta_path(const WienerPath* path, const std::vector<double>& t_grid) const;

    /// Y_T = W(T) . int W - 1/2 int |W|^2 from the cached functionals.
    static double strassen_functional(const WienerPath& path);

    /// (h(n)^2 Y_n / n, Y_1 of the rescaled path); equal up to quadrature noise.
    static std::pair<double, double> strassen_scaling_check(const WienerPath& path, int n);

    /// Winding angle about the origin of (1,0) + W(t); clockwise loops count
    /// +2pi.  One angle sample per grid point.
    static std::vector<double> winding_angle(const WienerPath& path2d);

    static SpitzerResult spitzer_sample(int trials, double t, std::uint64_t seed);

    RecurrenceSummary recurrence_experiment(Branch branch, double level, int seeds, double horizon,
                                            std::uint64_t seed0,
                                            const std::vector<double>& prefixes) const;

    /// Verifies that the published two-factor split of the butterfly
    /// lambda-equation reproduces the eliminated gradient system; returns the
    /// monomial cofactor.  Throws on mismatch.
    Polynomial butterfly_factor_residual(double t, const WienerPath* path) const;

    static constexpr double tol_lambda = 1e-8;

private:
    SingularGeometry geom_;

    // symbolic lambda-equation pieces, built once (2-D scenarios)
    Polynomial cusped_factor_;   // gcd of the caustic tangent numerators, in (x0, t)
    Polynomial other_factor_;    // remaining factor with symbolic noise (W*, I*)
    Polynomial full_equation_;   // cusped * other (with symbolic noise)
    // 3-D (butterfly family): published factors and the lambda2 elimination
    Polynomial sub_factor_3d_;       // subcaustic factor in (x0, t, W*)
    Polynomial main_factor_3d_;      // zero-speed/orthogonal factor
    Polynomial lambda2_num_, lambda2_den_;  // lambda2 = num/den from the second equation

    ReducedAction f_det_;       // deterministic reduced action (symbolic t)
    ReducedAction f_noise_;     // symbolic-noise reduced action
    FastPoly fast_f_det_, fast_f_noise_;
    FastPoly fast_chart_[4];    // X num, Y num, denominator, (Z num 3-D)
    std::vector<std::string> det_order_, noise_order_;

    std::vector<double> caustic_point(double l1, double l2, double t,
                                      const WienerPath* path) const;
    double zeta_closed(double l1, double l2, double t, const WienerPath& path, double level,
                       bool small_eps) const;
    double zeta_direct(double l1, double l2, double t, const WienerPath& path,
                       double level) const;
    void classify_roots(std::vector<LambdaRoot>& roots, double t,
                        const WienerPath* path) const;
};

/// Signed resultant of two double-coefficient polynomials via LU on the
/// Sylvester matrix.
double numeric_resultant(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace burgers
