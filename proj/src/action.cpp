#include "burgers/action.hpp"

#include <algorithm>
#include <cmath>

#include "burgers/errors.hpp"
#include "burgers/numeric_roots.hpp"

namespace burgers {

namespace {

std::map<std::string, double> point_map(const std::vector<std::string>& names,
                                        const std::vector<double>& values, double t) {
    if (names.size() != values.size())
        throw Error(ErrorCode::config, "point has wrong dimension");
    std::map<std::string, double> m;
    for (size_t i = 0; i < names.size(); ++i) m[names[i]] = values[i];
    m["t"] = t;
    return m;
}

}  // namespace

double ReducedAction::value(double x0, const std::vector<double>& x, double t) const {
    return derivative_value(0, x0, x, t);
}

double ReducedAction::derivative_value(int order, double x0, const std::vector<double>& x,
                                       double t) const {
    Polynomial d = order == 0 ? cleared : cleared.derivative("x0", order);
    std::vector<std::string> names = {"x", "y"};
    if (x.size() == 3) names.push_back("z");
    auto pt = point_map(names, x, t);
    pt["x0"] = x0;
    return d.evaluate_double(pt) / (2.0 * t);
}

std::vector<double> ReducedAction::cleared_coefficients(const std::vector<double>& x,
                                                        double t) const {
    std::vector<std::string> names = {"x", "y"};
    if (x.size() == 3) names.push_back("z");
    auto pt = point_map(names, x, t);
    auto coeffs = cleared.coefficients_in("x0");
    std::vector<double> out(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) out[i] = coeffs[i].evaluate_double(pt);
    return out;
}

ActionSystem::ActionSystem(Scenario scenario) : scenario_(std::move(scenario)) {
    scenario_.validate();
    for (const auto& v : scenario_.preimage_vars())
        grad_s0_.push_back(scenario_.initial_potential.derivative(v));
}

Polynomial ActionSystem::action_cleared(const WienerPath* path, std::optional<Rational> t) const {
    const double eps = scenario_.epsilon;
    const bool noisy = eps > 0;
    if (noisy && path == nullptr)
        throw Error(ErrorCode::config, "scenario has noise but no path was given");
    if (noisy && !t)
        throw Error(ErrorCode::config, "noise terms need a concrete time");
    if (t && *t <= 0) throw Error(ErrorCode::config, "time must be positive");

    Polynomial tp = t ? Polynomial::constant(*t) : Polynomial::variable("t");
    auto pre = scenario_.preimage_vars();
    auto img = scenario_.image_vars();

    // 2tA = |x - x0|^2 + 2 eps (x - x0).I - 2 t eps x.W + eps^2 |I|^2
    //       - t eps^2 J + 2t S0(x0)
    Polynomial acc;
    for (size_t a = 0; a < pre.size(); ++a) {
        Polynomial diff = Polynomial::variable(img[a]) - Polynomial::variable(pre[a]);
        acc += diff * diff;
    }
    acc += tp * scenario_.initial_potential * Rational(2);

    if (noisy) {
        double tv = to_double(*t);
        Rational eps_r = rational_from_double(eps);
        Rational i_sq(0), j_val = rational_from_double(path->integral_sq(tv));
        for (size_t a = 0; a < pre.size(); ++a) {
            Rational wa = rational_from_double(path->value(static_cast<int>(a), tv));
            Rational ia = rational_from_double(path->integral(static_cast<int>(a), tv));
            Polynomial diff = Polynomial::variable(img[a]) - Polynomial::variable(pre[a]);
            acc += diff * (eps_r * ia * 2);
            acc -= Polynomial::variable(img[a]) * (Rational(2) * *t * eps_r * wa);
            i_sq += ia * ia;
        }
        acc += Polynomial::constant(eps_r * eps_r * i_sq);
        acc -= Polynomial::constant(*t * eps_r * eps_r * j_val);
    }
    return acc;
}

Polynomial ActionSystem::action_cleared_symbolic_noise() const {
    const double eps = scenario_.epsilon;
    Polynomial tp = Polynomial::variable("t");
    auto pre = scenario_.preimage_vars();
    auto img = scenario_.image_vars();
    Polynomial acc;
    for (size_t a = 0; a < pre.size(); ++a) {
        Polynomial diff = Polynomial::variable(img[a]) - Polynomial::variable(pre[a]);
        acc += diff * diff;
    }
    acc += tp * scenario_.initial_potential * Rational(2);
    if (eps > 0) {
        Rational eps_r = rational_from_double(eps);
        Polynomial i_sq;
        for (size_t a = 0; a < pre.size(); ++a) {
            std::string suffix = std::to_string(a + 1);
            Polynomial wa = Polynomial::variable("W" + suffix);
            Polynomial ia = Polynomial::variable("I" + suffix);
            Polynomial diff = Polynomial::variable(img[a]) - Polynomial::variable(pre[a]);
            acc += diff * ia * (eps_r * 2);
            acc -= Polynomial::variable(img[a]) * tp * wa * (eps_r * 2);
            i_sq += ia * ia;
        }
        acc += i_sq * (eps_r * eps_r);
        acc -= tp * Polynomial::variable("J_") * (eps_r * eps_r);
    }
    return acc;
}

ReducedAction ActionSystem::reduced_action_symbolic_noise() const {
    return reduce(action_cleared_symbolic_noise());
}

ReducedAction ActionSystem::reduce(const Polynomial& action_cleared,
                                   std::optional<Rational> fixed_time) const {
    auto pre = scenario_.preimage_vars();
    ReducedAction out;
    out.fixed_time = fixed_time;
    Polynomial p = action_cleared;
    // Eliminate x0^d, ..., x0^2 in order; each criticality equation is linear
    // with a constant coefficient for this family.
    for (size_t a = pre.size(); a-- > 1;) {
        const std::string& var = pre[a];
        Polynomial d = p.derivative(var);
        if (d.degree(var) != 1)
            throw Error(ErrorCode::unsupported_scenario,
                        "criticality equation not linear in " + var);
        auto coeffs = d.coefficients_in(var);
        Polynomial lin = coeffs[1];
        if (!lin.is_constant())
            throw Error(ErrorCode::unsupported_scenario,
                        "coordinate " + var + " appears with non-constant coefficient");
        Rational lv = lin.constant_value();
        if (sgn(lv) == 0)
            throw Error(ErrorCode::singular_chain, "vanishing linear coefficient for " + var);
        Polynomial entry = coeffs[0] * Rational(-1 / lv);
        // Later eliminations may appear inside earlier entries; substitute back.
        for (size_t k = 0; k < out.chain.size(); ++k)
            out.chain[k] = out.chain[k].substitute(var, entry).compact();
        out.chain.push_back(entry);
        out.chain_vars.push_back(var);
        p = p.substitute(var, entry).compact();
    }
    if (p.degree("x0") < 1)
        throw Error(ErrorCode::degenerate_input, "reduced action has no x0 dependence");
    out.cleared = p;
    return out;
}

ReducedAction ActionSystem::reduced_action(const WienerPath* path,
                                           std::optional<Rational> t) const {
    return reduce(action_cleared(path, t), t);
}

std::vector<CriticalPoint> ActionSystem::critical_points(const ReducedAction& f,
                                                         const std::vector<double>& x,
                                                         double t) const {
    auto coeffs = f.cleared_coefficients(x, t);
    std::vector<double> dcoeffs(coeffs.size() > 1 ? coeffs.size() - 1 : 0);
    for (size_t k = 1; k < coeffs.size(); ++k)
        dcoeffs[k - 1] = coeffs[k] * static_cast<double>(k);
    double scale = 0;
    for (double c : dcoeffs) scale = std::max(scale, std::fabs(c));
    if (dcoeffs.empty() || scale == 0.0)
        throw Error(ErrorCode::degenerate_input, "f' vanishes identically at this point");

    std::vector<double> d2(dcoeffs.size() > 1 ? dcoeffs.size() - 1 : 0);
    for (size_t k = 1; k < dcoeffs.size(); ++k) d2[k - 1] = dcoeffs[k] * static_cast<double>(k);

    // Near-multiple roots (caustic points) come back as tight clusters of
    // numerical roots; merge them so pre-images are counted once.
    auto roots = real_roots(dcoeffs, 1e-6);
    for (auto& r : roots) {
        for (int it = 0; it < 4; ++it) {
            double fp = horner(dcoeffs, r), fpp = horner(d2, r);
            if (fpp == 0.0) break;
            double step = fp / fpp;
            if (!std::isfinite(step)) break;
            r -= step;
        }
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    for (double r : roots) {
        if (!merged.empty() && std::fabs(r - merged.back()) < 1e-6 * (1.0 + std::fabs(r)))
            merged.back() = 0.5 * (merged.back() + r);
        else
            merged.push_back(r);
    }

    std::vector<CriticalPoint> out;
    for (double r : merged) {
        double inv = 1.0 / (2.0 * t);
        double val = horner(coeffs, r) * inv;
        double sec = horner(d2, r) * inv;
        double sec_scale = 0;
        for (double c : d2) sec_scale = std::max(sec_scale, std::fabs(c));
        sec_scale = std::max(sec_scale * inv, 1e-30);
        int ssign = std::fabs(sec) < tol_caustic * sec_scale ? 0 : (sec > 0 ? 1 : -1);
        out.push_back({r, val, ssign});
    }
    std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        if (a.value != b.value) return a.value < b.value;
        return std::fabs(a.root) < std::fabs(b.root);
    });
    return out;
}

PointClassification ActionSystem::classify_point(const ReducedAction& f,
                                                 const std::vector<double>& x, double t) const {
    PointClassification pc;
    pc.critical_points = critical_points(f, x, t);
    pc.preimage_count = static_cast<int>(pc.critical_points.size());
    if (pc.critical_points.empty()) return pc;
    pc.minimiser = pc.critical_points.front().root;
    pc.hamilton_jacobi = pc.critical_points.front().value;

    double vscale = 1.0;
    for (const auto& cp : pc.critical_points) vscale = std::max(vscale, std::fabs(cp.value));

    for (const auto& cp : pc.critical_points) pc.on_caustic |= (cp.second_sign == 0);

    // Two distinct pre-images at the same action value; degenerate (caustic)
    // pairs do not count as Maxwell pairs.
    double maxwell_value = 0;
    bool have_pair = false;
    for (size_t i = 0; i < pc.critical_points.size() && !have_pair; ++i) {
        for (size_t j = i + 1; j < pc.critical_points.size(); ++j) {
            const auto& a = pc.critical_points[i];
            const auto& b = pc.critical_points[j];
            if (std::fabs(a.value - b.value) > tol_action * vscale) continue;
            if (a.second_sign == 0 && b.second_sign == 0) continue;
            if (std::fabs(a.root - b.root) < 1e-5 * (1.0 + std::fabs(a.root))) continue;
            have_pair = true;
            maxwell_value = 0.5 * (a.value + b.value);
            break;
        }
    }
    pc.on_maxwell = have_pair && !pc.on_caustic;

    if (pc.on_maxwell) {
        pc.is_cool = maxwell_value <= pc.hamilton_jacobi + tol_action * vscale;
    } else if (pc.on_caustic) {
        for (const auto& cp : pc.critical_points)
            if (cp.second_sign == 0)
                pc.is_cool |= (cp.value <= pc.hamilton_jacobi + tol_action * vscale);
    }
    return pc;
}

PointClassification ActionSystem::classify_point(const std::vector<double>& x, double t,
                                                 const WienerPath* path) const {
    auto f = reduced_action(path, rational_from_double(t));
    return classify_point(f, x, t);
}

std::vector<double> ActionSystem::flow_map(const std::vector<double>& x0, double t,
                                           const WienerPath* path) const {
    if (t < 0) throw Error(ErrorCode::config, "flow time must be non-negative");
    const double eps = scenario_.epsilon;
    if (eps > 0 && path == nullptr)
        throw Error(ErrorCode::config, "scenario has noise but no path was given");
    auto pre = scenario_.preimage_vars();
    if (x0.size() != pre.size()) throw Error(ErrorCode::config, "point has wrong dimension");
    std::map<std::string, double> pt;
    for (size_t a = 0; a < pre.size(); ++a) pt[pre[a]] = x0[a];
    std::vector<double> x(x0.size());
    for (size_t a = 0; a < x0.size(); ++a) {
        x[a] = x0[a] + t * grad_s0_[a].evaluate_double(pt);
        if (eps > 0) x[a] -= eps * path->integral(static_cast<int>(a), t);
    }
    return x;
}

std::vector<double> ActionSystem::preimage_from_root(const ReducedAction& f, double root,
                                                     const std::vector<double>& x,
                                                     double t) const {
    auto pre = scenario_.preimage_vars();
    std::vector<std::string> img = scenario_.image_vars();
    std::map<std::string, double> pt;
    for (size_t a = 0; a < img.size(); ++a) pt[img[a]] = x[a];
    pt["t"] = t;
    pt["x0"] = root;
    std::vector<double> x0(pre.size());
    x0[0] = root;
    for (size_t k = 0; k < f.chain.size(); ++k) {
        size_t coord = pre.size() - 1 - k;  // chain eliminates last coordinate first
        x0[coord] = f.chain[k].evaluate_double(pt);
    }
    return x0;
}

std::vector<double> ActionSystem::initial_gradient(const std::vector<double>& x0) const {
    auto pre = scenario_.preimage_vars();
    std::map<std::string, double> pt;
    for (size_t a = 0; a < pre.size(); ++a) pt[pre[a]] = x0[a];
    std::vector<double> g(x0.size());
    for (size_t a = 0; a < x0.size(); ++a) g[a] = grad_s0_[a].evaluate_double(pt);
    return g;
}

HessianFactorCheck ActionSystem::hessian_factor_check(const WienerPath* path,
                                                      std::optional<Rational> t) const {
    Polynomial action = action_cleared(path, t);
    ReducedAction f = reduce(action, t);
    auto pre = scenario_.preimage_vars();
    size_t d = pre.size();

    // Hessian of 2tA in the pre-image coordinates, then pull back through the
    // chain (substitute the eliminated coordinates).
    std::vector<std::vector<Polynomial>> h(d, std::vector<Polynomial>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) h[i][j] = action.derivative(pre[i]).derivative(pre[j]);
    Polynomial det;
    if (d == 2) {
        det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    } else {
        det = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
              h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
              h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    }
    for (size_t k = 0; k < f.chain.size(); ++k)
        det = det.substitute(f.chain_vars[k], f.chain[k]).compact();

    HessianFactorCheck out;
    out.flow_hessian_det = det;
    Rational two_pow(1);
    for (size_t k = 1; k < d; ++k) two_pow *= 2;
    out.reduced_second = f.cleared.derivative("x0", 2) * two_pow;
    out.exact_match = (det == out.reduced_second) || (det == -out.reduced_second);
    return out;
}

}  // namespace burgers
