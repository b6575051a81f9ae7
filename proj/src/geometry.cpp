#include "burgers/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "burgers/errors.hpp"
#include "burgers/kernels.hpp"
#include "burgers/numeric_roots.hpp"
#include "burgers/root_isolation.hpp"

namespace burgers {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return s;
}

std::vector<double> to_doubles(const Polynomial& p, const std::string& var, double tval,
                               bool has_t) {
    Polynomial q = has_t ? p.substitute("t", Polynomial::constant(rational_from_double(tval)))
                         : p;
    return q.univariate_doubles(var);
}

}  // namespace

SingularGeometry::SingularGeometry(Scenario sc) : actions_(std::move(sc)) {
    const auto& scenario = actions_.scenario();
    auto pre = scenario.preimage_vars();
    size_t d = pre.size();

    // Hessian of the initial potential; pre-caustic = det(I + t Hess S0).
    Polynomial t = Polynomial::variable("t");
    std::vector<std::vector<Polynomial>> m(d, std::vector<Polynomial>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            m[i][j] = actions_.scenario().initial_potential.derivative(pre[i]).derivative(pre[j]) * t;
            if (i == j) m[i][j] += Polynomial(Rational(1));
        }
    if (d == 2) {
        pre_caustic_ = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    } else {
        pre_caustic_ = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
    pre_caustic_ = pre_caustic_.compact();

    // Solve the pre-caustic for the last pre-image coordinate (linear for this
    // family) and push through the deterministic flow.  Potentials without a
    // usable chart (no dependence on the last coordinate) still support the
    // level-surface and Maxwell operations.
    const std::string& last = pre.back();
    if (pre_caustic_.degree(last) != 1) return;
    auto coeffs = pre_caustic_.coefficients_in(last);
    Polynomial den = coeffs[1];
    Polynomial num = -coeffs[0];
    chart_.denominator = den;
    chart_.last_coord_num = num;
    for (size_t a = 0; a < d; ++a) {
        Polynomial comp = Polynomial::variable(pre[a]) +
                          t * actions_.scenario().initial_potential.derivative(pre[a]);
        int dl = comp.degree(last);
        Polynomial cleared = comp.substitute_rational(last, num, den);
        if (dl == 0) cleared = comp * den;
        chart_.numerators.push_back(cleared.compact());
    }
}

Polynomial SingularGeometry::pre_caustic() const { return pre_caustic_; }

CurveSample SingularGeometry::eval_caustic(double l1, double l2, double t,
                                           const std::vector<double>& shift) const {
    if (chart_.numerators.empty())
        throw Error(ErrorCode::unsupported_scenario,
                    "pre-caustic cannot be solved for the last coordinate");
    const auto& sc = actions_.scenario();
    auto pre = sc.preimage_vars();
    std::map<std::string, double> pt{{"t", t}, {pre[0], l1}};
    if (pre.size() == 3) pt[pre[1]] = l2;

    CurveSample s;
    s.lambda = l1;
    s.lambda2 = l2;
    double dv = chart_.denominator.evaluate_double(pt);
    double dscale = 1e-12;
    if (std::fabs(dv) < dscale) {
        s.valid = false;
        return s;
    }
    size_t d = pre.size();
    s.point.resize(d);
    s.deriv.resize(d);
    s.deriv2.resize(d);
    for (size_t a = 0; a < d; ++a) {
        const Polynomial& N = chart_.numerators[a];
        double n = N.evaluate_double(pt);
        double x = n / dv;
        s.point[a] = x + shift[a];
        // quotient rule in the first parameter
        double n1 = N.derivative(pre[0]).evaluate_double(pt);
        double d1 = chart_.denominator.derivative(pre[0]).evaluate_double(pt);
        double xp = (n1 - x * d1) / dv;
        s.deriv[a] = xp;
        if (pre.size() == 2) {
            double n2 = N.derivative(pre[0], 2).evaluate_double(pt);
            double d2v = chart_.denominator.derivative(pre[0], 2).evaluate_double(pt);
            s.deriv2[a] = (n2 - 2.0 * xp * d1 - x * d2v) / dv;
        } else {
            // 3-D grids report the second tangent direction instead.
            double n2 = N.derivative(pre[1]).evaluate_double(pt);
            double d2v = chart_.denominator.derivative(pre[1]).evaluate_double(pt);
            s.deriv2[a] = (n2 - x * d2v) / dv;
        }
    }
    return s;
}

ParamCurve SingularGeometry::caustic_curve(double t, const std::vector<double>& lambda_grid,
                                           const WienerPath* path,
                                           const std::vector<double>& lambda2_grid) const {
    const auto& sc = actions_.scenario();
    if (chart_.numerators.empty())
        throw Error(ErrorCode::unsupported_scenario,
                    "pre-caustic cannot be solved for the last coordinate");
    if (t <= 0) throw Error(ErrorCode::config, "time must be positive");
    if (sc.epsilon > 0 && path == nullptr)
        throw Error(ErrorCode::config, "scenario has noise but no path was given");
    std::vector<double> shift(static_cast<size_t>(sc.dimension), 0.0);
    if (sc.epsilon > 0)
        for (int a = 0; a < sc.dimension; ++a)
            shift[static_cast<size_t>(a)] = -sc.epsilon * path->integral(a, t);

    ParamCurve curve;
    curve.dimension = sc.dimension;
    curve.grid = (sc.dimension == 3);
    curve.evaluator = [this, t, shift](double a, double b) {
        return eval_caustic(a, b, t, shift);
    };

    if (sc.dimension == 2) {
        // batch-evaluate the shared-denominator chart over the grid
        size_t n = lambda_grid.size();
        auto nx = to_doubles(chart_.numerators[0], "x0", t, true);
        auto ny = to_doubles(chart_.numerators[1], "x0", t, true);
        auto dd = to_doubles(chart_.denominator, "x0", t, true);
        auto deriv = [](std::vector<double> c) {
            std::vector<double> d(c.size() > 1 ? c.size() - 1 : 0);
            for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
            return d;
        };
        auto nx1 = deriv(nx), ny1 = deriv(ny), dd1 = deriv(dd);
        auto nx2 = deriv(nx1), ny2 = deriv(ny1), dd2 = deriv(dd1);
        std::vector<std::vector<double>> vals(9, std::vector<double>(n));
        const std::vector<double>* polys[9] = {&nx, &ny, &dd, &nx1, &ny1, &dd1, &nx2, &ny2, &dd2};
        for (int k = 0; k < 9; ++k)
            kern::horner_batch(polys[k]->data(), polys[k]->size(), lambda_grid.data(),
                               vals[static_cast<size_t>(k)].data(), n);
        for (size_t i = 0; i < n; ++i) {
            CurveSample s;
            s.lambda = lambda_grid[i];
            double dv = vals[2][i];
            if (std::fabs(dv) < 1e-12) {
                s.valid = false;
                curve.samples.push_back(std::move(s));
                continue;
            }
            s.point.resize(2);
            s.deriv.resize(2);
            s.deriv2.resize(2);
            for (int a = 0; a < 2; ++a) {
                double x = vals[static_cast<size_t>(a)][i] / dv;
                double xp = (vals[static_cast<size_t>(3 + a)][i] - x * vals[5][i]) / dv;
                double xpp =
                    (vals[static_cast<size_t>(6 + a)][i] - 2.0 * xp * vals[5][i] - x * vals[8][i]) / dv;
                s.point[static_cast<size_t>(a)] = x + shift[static_cast<size_t>(a)];
                s.deriv[static_cast<size_t>(a)] = xp;
                s.deriv2[static_cast<size_t>(a)] = xpp;
            }
            curve.samples.push_back(std::move(s));
        }
    } else {
        const auto& grid2 = lambda2_grid.empty() ? lambda_grid : lambda2_grid;
        for (double l1 : lambda_grid)
            for (double l2 : grid2) curve.samples.push_back(eval_caustic(l1, l2, t, shift));
    }
    return curve;
}

ParamCurve SingularGeometry::level_surface_curve(double level, double t,
                                                 const std::vector<double>& lambda_grid,
                                                 const WienerPath* path) const {
    const auto& sc = actions_.scenario();
    if (sc.dimension != 2)
        throw Error(ErrorCode::unsupported_scenario, "level surface sampling is 2-D only");
    Rational tr = rational_from_double(t);
    Polynomial action = actions_.action_cleared(path, tr);

    // Substitute the flow image for the image variables: G(x0, y0) is the
    // action along the trajectory started at (x0, y0), cleared by 2t.
    auto pre = sc.preimage_vars();
    auto img = sc.image_vars();
    Polynomial g = action;
    for (size_t a = 0; a < pre.size(); ++a) {
        Polynomial comp = Polynomial::variable(pre[a]) +
                          Polynomial::constant(tr) * sc.initial_potential.derivative(pre[a]);
        if (sc.epsilon > 0)
            comp -= Polynomial::constant(rational_from_double(sc.epsilon * path->integral(static_cast<int>(a), t)));
        g = g.substitute(img[a], comp);
    }
    g -= Polynomial::constant(Rational(2) * tr * rational_from_double(level));
    g = g.compact();

    Polynomial gx = g.derivative("x0"), gy = g.derivative("y0");
    auto ycoeffs = g.coefficients_in("y0");

    ParamCurve curve;
    curve.dimension = 2;
    for (double lam : lambda_grid) {
        std::map<std::string, double> pt{{"x0", lam}, {"t", t}};
        std::vector<double> uni(ycoeffs.size());
        for (size_t k = 0; k < ycoeffs.size(); ++k) uni[k] = ycoeffs[k].evaluate_double(pt);
        std::vector<double> roots;
        try {
            roots = real_roots(uni, 1e-8);
        } catch (const Error&) {
            continue;  // degenerate coefficient collapse at this sample
        }
        std::sort(roots.begin(), roots.end());
        int branch = 0;
        for (double y0 : roots) {
            CurveSample s;
            s.lambda = lam;
            s.label = "branch" + std::to_string(branch++);
            std::vector<double> x0 = {lam, y0};
            s.point = actions_.flow_map(x0, t, path);
            // implicit tangent: y0'(lam) = -G_x0 / G_y0, then the flow pushforward
            std::map<std::string, double> q{{"x0", lam}, {"y0", y0}, {"t", t}};
            double gxv = gx.evaluate_double(q), gyv = gy.evaluate_double(q);
            if (std::fabs(gyv) > 1e-12) {
                double yp = -gxv / gyv;
                auto h = hessian_s0(x0);
                s.deriv = {1.0 + t * h[0][0] + t * h[0][1] * yp,
                           yp + t * h[1][0] + t * h[1][1] * yp};
            }
            curve.samples.push_back(std::move(s));
        }
    }
    return curve;
}

Polynomial SingularGeometry::pre_maxwell(const WienerPath* path, std::optional<Rational> t) const {
    const auto& sc = actions_.scenario();
    if (sc.dimension != 2)
        throw Error(ErrorCode::unsupported_scenario, "pre-Maxwell set is 2-D only");
    ReducedAction f = actions_.reduced_action(path, t);
    Polynomial tp = t ? Polynomial::constant(*t) : Polynomial::variable("t");

    // Rename the reduced-action argument, then substitute the flow image of
    // the pre-image point (x0, y0) for the space variables.
    Polynomial body = f.cleared.substitute("x0", Polynomial::variable("s_"));
    auto pre = sc.preimage_vars();
    auto img = sc.image_vars();
    for (size_t a = 0; a < pre.size(); ++a) {
        Polynomial comp = Polynomial::variable(pre[a]) + tp * sc.initial_potential.derivative(pre[a]);
        if (sc.epsilon > 0) {
            if (!t) throw Error(ErrorCode::config, "noise terms need a concrete time");
            comp -= Polynomial::constant(
                rational_from_double(sc.epsilon * path->integral(static_cast<int>(a), to_double(*t))));
        }
        body = body.substitute(img[a], comp);
    }
    Polynomial diff = body.substitute("s_", Polynomial::variable("x0")) -
                      body.substitute("s_", Polynomial::variable("u_"));
    Polynomial gap = Polynomial::variable("x0") - Polynomial::variable("u_");
    Polynomial quotient;
    if (!try_exact_divide(diff, gap * gap, quotient))
        throw Error(ErrorCode::internal,
                    "action difference not divisible by the squared root gap");
    if (quotient.degree("u_") < 2)
        throw Error(ErrorCode::degenerate_input, "no Maxwell structure for this potential");
    return discriminant(quotient, "u_").compact();
}

ParamCurve SingularGeometry::pre_maxwell_curve(double t, const std::vector<double>& lambda_grid,
                                               const WienerPath* path) const {
    Rational tr = rational_from_double(t);
    Polynomial pm = pre_maxwell(path, tr);
    Polynomial pmx = pm.derivative("x0"), pmy = pm.derivative("y0");
    auto ycoeffs = pm.coefficients_in("y0");
    ParamCurve curve;
    curve.dimension = 2;
    for (double lam : lambda_grid) {
        std::map<std::string, double> pt{{"x0", lam}, {"t", t}};
        std::vector<double> uni(ycoeffs.size());
        for (size_t k = 0; k < ycoeffs.size(); ++k) uni[k] = ycoeffs[k].evaluate_double(pt);
        std::vector<double> roots;
        try {
            roots = real_roots(uni, 1e-8);
        } catch (const Error&) {
            continue;
        }
        std::sort(roots.begin(), roots.end());
        int branch = 0;
        for (double y0 : roots) {
            CurveSample s;
            s.lambda = lam;
            s.label = "branch" + std::to_string(branch++);
            std::vector<double> x0 = {lam, y0};
            s.point = actions_.flow_map(x0, t, path);
            std::map<std::string, double> q{{"x0", lam}, {"y0", y0}, {"t", t}};
            double gx = pmx.evaluate_double(q), gy = pmy.evaluate_double(q);
            if (std::fabs(gy) > 1e-12) {
                double yp = -gx / gy;  // implicit slope of the pre-Maxwell set
                auto h = hessian_s0(x0);
                s.deriv = {1.0 + t * h[0][0] + t * h[0][1] * yp,
                           yp + t * h[1][0] + t * h[1][1] * yp};
            }
            curve.samples.push_back(std::move(s));
        }
    }
    return curve;
}

MaxwellSet SingularGeometry::maxwell_set(double t, const WienerPath* path,
                                         const std::vector<double>& sample_grid) const {
    const auto& sc = actions_.scenario();
    if (sc.dimension != 2)
        throw Error(ErrorCode::unsupported_scenario, "Maxwell extraction is 2-D only");
    Rational tr = rational_from_double(t);
    ReducedAction f = actions_.reduced_action(path, tr);
    Polynomial dd = double_discriminant(f.cleared, "x0", "c_");
    auto fd = factor_multiplicity(dd);

    MaxwellSet out;
    out.content = fd.content;
    Polynomial caustic(Rational(1)), maxwell(Rational(1));
    bool have3 = false, have2 = false;
    for (const auto& [fac, mult] : fd.factors) {
        if (mult == 3) {
            caustic *= fac;
            have3 = true;
        } else if (mult == 2) {
            maxwell *= fac;
            have2 = true;
        } else {
            throw Error(ErrorCode::structural,
                        "double discriminant has a factor of multiplicity " +
                            std::to_string(mult) + "; outside the cubed/squared pattern");
        }
    }
    if (!have3 || !have2)
        throw Error(ErrorCode::structural,
                    "double discriminant lacks the cubed/squared factor pair");
    out.caustic_factor = caustic;
    out.algebraic = maxwell;

    // Sample the algebraic set: solve for whichever space variable appears,
    // sweeping the other over the grid, then keep points with two real
    // equal-action pre-images.
    std::string solve_var = maxwell.degree("x") >= 1 ? "x" : "y";
    std::string sweep_var = solve_var == "x" ? "y" : "x";
    if (maxwell.degree(solve_var) < 1)
        throw Error(ErrorCode::structural, "Maxwell factor has no space variable");
    auto coeffs = maxwell.coefficients_in(solve_var);
    out.filtered.dimension = 2;
    for (double g : sample_grid) {
        std::map<std::string, double> pt{{sweep_var, g}, {"t", t}};
        std::vector<double> uni(coeffs.size());
        for (size_t k = 0; k < coeffs.size(); ++k) uni[k] = coeffs[k].evaluate_double(pt);
        std::vector<double> roots;
        try {
            roots = real_roots(uni, 1e-8);
        } catch (const Error&) {
            continue;
        }
        for (double r : roots) {
            std::vector<double> x(2);
            x[solve_var == "x" ? 0 : 1] = r;
            x[solve_var == "x" ? 1 : 0] = g;
            auto pc = actions_.classify_point(f, x, t);
            if (!pc.on_maxwell) continue;
            CurveSample s;
            s.lambda = g;
            s.point = x;
            s.label = pc.is_cool ? "cool" : "hot";
            out.filtered.samples.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<CurveSample> SingularGeometry::detect_generalised_cusps(const ParamCurve& curve) const {
    std::vector<CurveSample> hits;
    if (curve.grid || curve.samples.size() < 3) return hits;
    const auto& ss = curve.samples;
    for (size_t i = 1; i + 1 < ss.size(); ++i) {
        if (!ss[i].valid || !ss[i - 1].valid || !ss[i + 1].valid) continue;
        if (ss[i].deriv.empty()) continue;
        double v = norm2(ss[i].deriv);
        if (v > norm2(ss[i - 1].deriv) || v > norm2(ss[i + 1].deriv)) continue;
        double a = ss[i - 1].lambda, b = ss[i + 1].lambda;
        CurveSample best = ss[i];
        if (curve.evaluator) {
            // golden-section refinement of |dx/dlambda|^2
            const double phi = 0.6180339887498949;
            double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
            CurveSample s1 = curve.evaluator(x1, 0), s2 = curve.evaluator(x2, 0);
            for (int it = 0; it < 90 && b - a > 1e-14 * (1.0 + std::fabs(a)); ++it) {
                double f1 = s1.valid ? norm2(s1.deriv) : 1e300;
                double f2 = s2.valid ? norm2(s2.deriv) : 1e300;
                if (f1 < f2) {
                    b = x2;
                    x2 = x1;
                    s2 = s1;
                    x1 = b - phi * (b - a);
                    s1 = curve.evaluator(x1, 0);
                } else {
                    a = x1;
                    x1 = x2;
                    s1 = s2;
                    x2 = a + phi * (b - a);
                    s2 = curve.evaluator(x2, 0);
                }
            }
            best = curve.evaluator(0.5 * (a + b), 0);
        }
        if (!best.valid || std::sqrt(norm2(best.deriv)) >= tol_cusp) continue;
        // sign structure: the tangent direction reverses through a cusp
        double h = std::max(1e-7, 1e-6 * std::fabs(best.lambda));
        CurveSample before = curve.evaluator ? curve.evaluator(best.lambda - h, 0) : ss[i - 1];
        CurveSample after = curve.evaluator ? curve.evaluator(best.lambda + h, 0) : ss[i + 1];
        double dot = 0;
        for (size_t k = 0; k < best.point.size(); ++k) dot += before.deriv[k] * after.deriv[k];
        best.label = dot < 0 ? "cusp" : "degenerate";
        hits.push_back(best);
    }
    return hits;
}

std::pair<Polynomial, Polynomial> SingularGeometry::caustic_jet_numerators(
    const WienerPath* path, std::optional<Rational> t) const {
    const auto& sc = actions_.scenario();
    if (sc.dimension != 2)
        throw Error(ErrorCode::unsupported_scenario, "caustic jets are 2-D only");
    ReducedAction f = actions_.reduced_action(path, t);
    Polynomial f3 = f.cleared.derivative("x0", 3);
    Polynomial f4 = f.cleared.derivative("x0", 4);
    if (f3.is_zero() || f4.is_zero())
        throw Error(ErrorCode::degenerate_input, "reduced action degree too low for jets");

    auto img = sc.image_vars();
    std::vector<Polynomial> nums = chart_.numerators;
    Polynomial den = chart_.denominator;
    if (t) {
        Polynomial tc = Polynomial::constant(*t);
        for (auto& n : nums) n = n.substitute("t", tc).compact();
        den = den.substitute("t", tc).compact();
        if (sc.epsilon > 0) {
            for (size_t a = 0; a < img.size(); ++a) {
                Rational sh = rational_from_double(
                    sc.epsilon * path->integral(static_cast<int>(a), to_double(*t)));
                nums[a] -= den * sh;
            }
        }
    }
    auto pull_back = [&](Polynomial p) {
        for (size_t a = 0; a < img.size(); ++a) {
            int dv = p.degree(img[a]);
            if (dv <= 0) {
                continue;
            }
            p = p.substitute_rational(img[a], nums[a], den);
        }
        return p.compact();
    };
    return {pull_back(f3), pull_back(f4)};
}

std::vector<PerestroikaHit> SingularGeometry::detect_perestroika(double t_lo, double t_hi) const {
    if (!(t_lo > 0) || !(t_hi > t_lo))
        throw Error(ErrorCode::config, "invalid time range");
    // Swallowtail births are a property of the caustic shape, which noise only
    // translates; detect them on the deterministic chart.
    Scenario det = actions_.scenario();
    det.epsilon = 0;
    SingularGeometry detg(det);
    auto [n3, n4] = detg.caustic_jet_numerators(nullptr, std::nullopt);
    Polynomial rho = resultant(n3, n4, "x0");
    if (rho.is_zero())
        throw Error(ErrorCode::structural, "degenerate jet resultant (common factor)");
    rho = rho.compact();

    std::vector<PerestroikaHit> hits;
    if (rho.is_constant()) return hits;
    auto iso = isolate_real_roots(rho, "t",
                                  std::make_pair(rational_from_double(t_lo),
                                                 rational_from_double(t_hi)));
    for (auto iv : iso.intervals) {
        iv = refine_interval(rho, "t", iv, rational(1, 1000000000) / 1000);
        double that = 0.5 * (to_double(iv.lo) + to_double(iv.hi));
        Rational tr = rational_from_double(that);
        auto n3t = n3.substitute("t", Polynomial::constant(tr)).univariate_doubles("x0");
        auto n4t = n4.substitute("t", Polynomial::constant(tr)).univariate_doubles("x0");
        double scale3 = 0, scale4 = 0;
        for (double c : n3t) scale3 = std::max(scale3, std::fabs(c));
        for (double c : n4t) scale4 = std::max(scale4, std::fabs(c));
        double best = 1e300, best_lam = 0;
        std::vector<double> roots;
        try {
            roots = real_roots(n3t, 1e-6);
        } catch (const Error&) {
            continue;
        }
        for (double r : roots) {
            double m = std::fabs(horner(n4t, r)) / std::max(scale4, 1e-30);
            if (m < best) {
                best = m;
                best_lam = r;
            }
        }
        if (best > 1e-4) continue;  // resultant zero from leading-term collapse
        PerestroikaHit hit;
        hit.t = that;
        hit.lambda = best_lam;
        auto sample = detg.eval_caustic(best_lam, 0, that, {0, 0});
        ReducedAction f = detg.actions().reduced_action(nullptr, std::nullopt);
        for (int k = 1; k <= 4; ++k)
            hit.derivative_residuals[static_cast<size_t>(k - 1)] =
                std::fabs(f.derivative_value(k, best_lam, sample.point, that));
        hits.push_back(hit);
    }
    return hits;
}

std::vector<ComplexDoublePoint> SingularGeometry::complex_double_points(double t) const {
    const auto& sc = actions_.scenario();
    if (sc.dimension != 2)
        throw Error(ErrorCode::unsupported_scenario, "complex double points are 2-D only");
    Rational tr = rational_from_double(t);
    Polynomial tc = Polynomial::constant(tr);
    auto nx = chart_.numerators[0].substitute("t", tc).univariate_doubles("x0");
    auto ny = chart_.numerators[1].substitute("t", tc).univariate_doubles("x0");
    auto dd = chart_.denominator.substitute("t", tc).univariate_doubles("x0");
    auto deriv = [](const std::vector<double>& c) {
        std::vector<double> d(c.size() > 1 ? c.size() - 1 : 0);
        for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
        return d;
    };
    auto nx1 = deriv(nx), ny1 = deriv(ny), dd1 = deriv(dd);

    auto eval_pair = [&](std::complex<double> lam, std::complex<double>& X,
                         std::complex<double>& Y, std::complex<double>& Xp,
                         std::complex<double>& Yp) -> bool {
        std::complex<double> D = horner(dd, lam);
        if (std::abs(D) < 1e-14) return false;
        std::complex<double> Dp = horner(dd1, lam);
        X = horner(nx, lam) / D;
        Y = horner(ny, lam) / D;
        Xp = (horner(nx1, lam) - X * Dp) / D;
        Yp = (horner(ny1, lam) - Y * Dp) / D;
        return true;
    };

    std::vector<ComplexDoublePoint> found;
    for (double a0 = -2.0; a0 <= 2.0001; a0 += 0.1) {
        for (double e0 = 0.05; e0 <= 2.0001; e0 += 0.08) {
            std::complex<double> lam(a0, e0);
            bool ok = false;
            for (int it = 0; it < 80; ++it) {
                std::complex<double> X, Y, Xp, Yp;
                if (!eval_pair(lam, X, Y, Xp, Yp)) break;
                double f1 = X.imag(), f2 = Y.imag();
                double r = std::hypot(f1, f2);
                if (r < tol_newton * 0.01) {
                    ok = true;
                    break;
                }
                // derivative of Im F wrt (a, eta): [Im F', Re F']
                double j11 = Xp.imag(), j12 = Xp.real();
                double j21 = Yp.imag(), j22 = Yp.real();
                double det = j11 * j22 - j12 * j21;
                if (std::fabs(det) < 1e-18) break;
                double da = (f1 * j22 - f2 * j12) / det;
                double de = (j11 * f2 - j21 * f1) / det;
                double damp = 1.0;
                for (int h = 0; h < 6; ++h) {
                    std::complex<double> trial(lam.real() - damp * da, lam.imag() - damp * de);
                    std::complex<double> X2, Y2, X2p, Y2p;
                    if (eval_pair(trial, X2, Y2, X2p, Y2p) &&
                        std::hypot(X2.imag(), Y2.imag()) < r) {
                        lam = trial;
                        break;
                    }
                    damp *= 0.5;
                    if (h == 5) lam = trial;
                }
                if (std::abs(lam) > 10) break;
            }
            if (!ok) continue;
            double eta = std::fabs(lam.imag());
            if (eta < 1e-4) continue;  // merged into the real curve
            std::complex<double> X, Y, Xp, Yp;
            if (!eval_pair({lam.real(), eta}, X, Y, Xp, Yp)) continue;
            double res = std::hypot(X.imag(), Y.imag());
            if (res > tol_newton) continue;
            bool dup = false;
            for (const auto& p : found)
                dup |= std::hypot(p.a - lam.real(), p.eta - eta) < tol_dedup;
            if (!dup) found.push_back({lam.real(), eta, t, res});
        }
    }
    std::sort(found.begin(), found.end(),
              [](const ComplexDoublePoint& u, const ComplexDoublePoint& v) { return u.a < v.a; });
    return found;
}

std::vector<std::vector<double>> SingularGeometry::hessian_s0(const std::vector<double>& x0) const {
    const auto& sc = actions_.scenario();
    auto pre = sc.preimage_vars();
    std::map<std::string, double> pt;
    for (size_t a = 0; a < pre.size(); ++a) pt[pre[a]] = x0[a];
    std::vector<std::vector<double>> h(pre.size(), std::vector<double>(pre.size()));
    for (size_t i = 0; i < pre.size(); ++i)
        for (size_t j = 0; j < pre.size(); ++j)
            h[i][j] = sc.initial_potential.derivative(pre[i]).derivative(pre[j]).evaluate_double(pt);
    return h;
}

std::vector<double> SingularGeometry::apply_normal_matrix(const std::vector<double>& x0,
                                                          const std::vector<double>& velocity,
                                                          double t) const {
    auto h = hessian_s0(x0);
    size_t d = x0.size();
    std::vector<double> out(d, 0.0);
    for (size_t i = 0; i < d; ++i) {
        out[i] = velocity[i];
        for (size_t j = 0; j < d; ++j) out[i] += t * h[i][j] * velocity[j];
    }
    return out;
}

std::vector<double> SingularGeometry::level_normal(const std::vector<double>& x0, double t,
                                                   const WienerPath* path) const {
    const auto& sc = actions_.scenario();
    auto v = actions_.initial_gradient(x0);
    if (sc.epsilon > 0) {
        if (!path) throw Error(ErrorCode::config, "scenario has noise but no path was given");
        for (size_t a = 0; a < v.size(); ++a)
            v[a] -= sc.epsilon * path->value(static_cast<int>(a), t);
    }
    return apply_normal_matrix(x0, v, t);
}

std::vector<double> SingularGeometry::maxwell_normal(const std::vector<double>& x0, double t,
                                                     const WienerPath* path) const {
    auto x = actions_.flow_map(x0, t, path);
    ReducedAction f = actions_.reduced_action(path, rational_from_double(t));
    auto pc = actions_.classify_point(f, x, t);
    // locate this pre-image among the critical roots, then its equal-action partner
    const CriticalPoint* self = nullptr;
    for (const auto& cp : pc.critical_points)
        if (std::fabs(cp.root - x0[0]) < 1e-6 * (1.0 + std::fabs(x0[0]))) self = &cp;
    if (!self)
        throw Error(ErrorCode::numerical, "point is not a pre-image of its own flow image");
    const CriticalPoint* partner = nullptr;
    double vscale = std::max(1.0, std::fabs(self->value));
    for (const auto& cp : pc.critical_points) {
        if (&cp == self) continue;
        if (std::fabs(cp.root - self->root) < 1e-6 * (1.0 + std::fabs(cp.root))) continue;
        if (std::fabs(cp.value - self->value) <= 1e-6 * vscale) partner = &cp;
    }
    if (!partner)
        throw Error(ErrorCode::degenerate_input,
                    "no second equal-action pre-image at this point");
    auto other = actions_.preimage_from_root(f, partner->root, x, t);
    auto va = actions_.initial_gradient(x0);
    auto vb = actions_.initial_gradient(other);
    std::vector<double> dv(va.size());
    for (size_t i = 0; i < va.size(); ++i) dv[i] = va[i] - vb[i];
    return apply_normal_matrix(x0, dv, t);
}

}  // namespace burgers
