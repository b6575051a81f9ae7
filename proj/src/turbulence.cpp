#include "burgers/turbulence.hpp"

#include <algorithm>
#include <cmath>

#include "burgers/errors.hpp"
#include "burgers/numeric_roots.hpp"
#include "burgers/poly_algebra.hpp"

namespace burgers {

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::cusped: return "cusped";
        case Branch::orthogonal: return "orthogonal";
        case Branch::zero_speed: return "zero-speed";
        case Branch::subcaustic: return "subcaustic";
    }
    return "?";
}

Branch branch_from_name(const std::string& name) {
    if (name == "cusped") return Branch::cusped;
    if (name == "orthogonal") return Branch::orthogonal;
    if (name == "zero-speed" || name == "zero_speed") return Branch::zero_speed;
    if (name == "subcaustic") return Branch::subcaustic;
    throw Error(ErrorCode::config, "unknown branch: " + name);
}

double numeric_resultant(const std::vector<double>& p_in, const std::vector<double>& q_in) {
    auto trim = [](std::vector<double> v) {
        double m = 0;
        for (double c : v) m = std::max(m, std::fabs(c));
        while (!v.empty() && std::fabs(v.back()) <= 1e-14 * m) v.pop_back();
        return v;
    };
    auto p = trim(p_in), q = trim(q_in);
    if (p.empty() || q.empty()) return 0.0;
    int m = static_cast<int>(p.size()) - 1, n = static_cast<int>(q.size()) - 1;
    if (m == 0 && n == 0) return 1.0;
    if (n == 0) return std::pow(q[0], m);
    if (m == 0) return std::pow(p[0], n);
    int size = m + n;
    std::vector<std::vector<double>> a(static_cast<size_t>(size),
                                       std::vector<double>(static_cast<size_t>(size), 0.0));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) a[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = p[static_cast<size_t>(m - j)];
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) a[static_cast<size_t>(n + r)][static_cast<size_t>(r + j)] = q[static_cast<size_t>(n - j)];
    double det = 1.0;
    for (int k = 0; k < size; ++k) {
        int pivot = k;
        for (int i = k + 1; i < size; ++i)
            if (std::fabs(a[static_cast<size_t>(i)][static_cast<size_t>(k)]) >
                std::fabs(a[static_cast<size_t>(pivot)][static_cast<size_t>(k)]))
                pivot = i;
        double pv = a[static_cast<size_t>(pivot)][static_cast<size_t>(k)];
        if (pv == 0.0) return 0.0;
        if (pivot != k) {
            std::swap(a[static_cast<size_t>(pivot)], a[static_cast<size_t>(k)]);
            det = -det;
        }
        det *= pv;
        for (int i = k + 1; i < size; ++i) {
            double f = a[static_cast<size_t>(i)][static_cast<size_t>(k)] / pv;
            if (f == 0.0) continue;
            for (int j = k; j < size; ++j)
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                    f * a[static_cast<size_t>(k)][static_cast<size_t>(j)];
        }
    }
    return det;
}

Turbulence::Turbulence(Scenario sc) : geom_(std::move(sc)) {
    const Scenario& scenario = geom_.scenario();
    Scenario det = scenario;
    det.epsilon = 0;
    ActionSystem det_actions(det);
    f_det_ = det_actions.reduced_action(nullptr, std::nullopt);
    f_noise_ = scenario.epsilon > 0 ? geom_.actions().reduced_action_symbolic_noise() : f_det_;

    const bool three_d = scenario.dimension == 3;
    det_order_ = three_d ? std::vector<std::string>{"x0", "x", "y", "z", "t"}
                         : std::vector<std::string>{"x0", "x", "y", "t"};
    noise_order_ = det_order_;
    for (int a = 1; a <= scenario.dimension; ++a) noise_order_.push_back("W" + std::to_string(a));
    for (int a = 1; a <= scenario.dimension; ++a) noise_order_.push_back("I" + std::to_string(a));
    noise_order_.push_back("J_");

    fast_f_det_ = FastPoly(f_det_.cleared, det_order_);
    fast_f_noise_ = FastPoly(f_noise_.cleared, noise_order_);
    const auto& chart = geom_.caustic_chart();
    std::vector<std::string> chart_order = three_d ? std::vector<std::string>{"x0", "y0", "t"}
                                                   : std::vector<std::string>{"x0", "t"};
    for (size_t a = 0; a < chart.numerators.size(); ++a)
        fast_chart_[a] = FastPoly(chart.numerators[a], chart_order);
    fast_chart_[3] = FastPoly(chart.denominator, chart_order);

    Rational eps_r = rational_from_double(scenario.epsilon);
    Polynomial t = Polynomial::variable("t");
    if (!three_d) {
        const Polynomial& nx = chart.numerators[0];
        const Polynomial& ny = chart.numerators[1];
        const Polynomial& d = chart.denominator;
        Polynomial px = nx.derivative("x0") * d - nx * d.derivative("x0");
        Polynomial py = ny.derivative("x0") * d - ny * d.derivative("x0");
        cusped_factor_ = poly_gcd(px, py);

        auto pull = [&](const Polynomial& p, int& k) {
            int dx = p.degree("x"), dy = p.degree("y");
            k = std::max(dx, 0) + std::max(dy, 0);
            Polynomial q = p.substitute_rational("x", nx, d);
            q = q.substitute_rational("y", ny, d);
            return q.compact();
        };
        int kx = 0, ky = 0;
        Polynomial gx = pull(f_det_.cleared.derivative("x"), kx);
        Polynomial gy = pull(f_det_.cleared.derivative("y"), ky);
        int k_max = std::max(kx, ky);
        Polynomial w1 = Polynomial::variable("W1"), w2 = Polynomial::variable("W2");
        Polynomial n = (gx * d.pow(k_max - kx) - t * w1 * d.pow(k_max) * (eps_r * 2)) * px +
                       (gy * d.pow(k_max - ky) - t * w2 * d.pow(k_max) * (eps_r * 2)) * py;
        full_equation_ = n.compact();
        other_factor_ = exact_divide(full_equation_, cusped_factor_).compact();
    } else {
        // Published factor split of the eliminated gradient system for the
        // butterfly family; verified against the generic construction by
        // butterfly_factor_residual.
        Polynomial l = Polynomial::variable("x0");
        Polynomial w1 = Polynomial::variable("W1"), w2 = Polynomial::variable("W2"),
                   w3 = Polynomial::variable("W3");
        main_factor_3d_ = t * t * l.pow(7) * Rational(54) + t * t * l.pow(5) * Rational(6) +
                          l.pow(3) + t * w1 * l.pow(2) * (eps_r * 3) + w3 * l * (eps_r * 3) -
                          w2 * eps_r;
        sub_factor_3d_ = l.pow(3) - w3 * l * (eps_r * 3) + w2 * (eps_r * 2);
        lambda2_num_ = t * t * l.pow(7) * Rational(27) + t * t * l.pow(5) * Rational(12) -
                       l.pow(3) - t * w1 * l.pow(2) * (eps_r * 3) - w3 * l * (eps_r * 3) +
                       w2 * eps_r;
        lambda2_den_ = t * l.pow(4) * Rational(9);
    }
}

std::vector<double> Turbulence::caustic_point(double l1, double l2, double t,
                                              const WienerPath* path) const {
    const Scenario& sc = geom_.scenario();
    double vals[3] = {l1, l2, t};
    if (sc.dimension == 2) {
        vals[1] = t;
    }
    double den = fast_chart_[3].eval(vals);
    std::vector<double> x(static_cast<size_t>(sc.dimension));
    for (int a = 0; a < sc.dimension; ++a)
        x[static_cast<size_t>(a)] = fast_chart_[a].eval(vals) / den;
    if (path != nullptr && sc.epsilon > 0)
        for (int a = 0; a < sc.dimension; ++a)
            x[static_cast<size_t>(a)] -= sc.epsilon * path->integral(a, t);
    return x;
}

double Turbulence::zeta_closed(double l1, double l2, double t, const WienerPath& path,
                               double level, bool small_eps) const {
    const Scenario& sc = geom_.scenario();
    auto x0pt = caustic_point(l1, l2, t, nullptr);  // deterministic caustic
    double vals[5];
    vals[0] = l1;
    for (int a = 0; a < sc.dimension; ++a) vals[1 + a] = x0pt[static_cast<size_t>(a)];
    vals[1 + sc.dimension] = t;
    double f0 = fast_f_det_.eval(vals) / (2.0 * t);
    double z = f0 - level;
    if (sc.epsilon > 0) {
        double xw = 0;
        for (int a = 0; a < sc.dimension; ++a) xw += x0pt[static_cast<size_t>(a)] * path.value(a, t);
        z -= sc.epsilon * xw;
        if (!small_eps) {
            double wi = 0;
            for (int a = 0; a < sc.dimension; ++a) wi += path.value(a, t) * path.integral(a, t);
            z += sc.epsilon * sc.epsilon * (wi - 0.5 * path.integral_sq(t));
        }
    }
    return z;
}

double Turbulence::zeta_direct(double l1, double l2, double t, const WienerPath& path,
                               double level) const {
    const Scenario& sc = geom_.scenario();
    auto x = caustic_point(l1, l2, t, &path);  // shifted caustic
    double vals[12];
    vals[0] = l1;
    for (int a = 0; a < sc.dimension; ++a) vals[1 + a] = x[static_cast<size_t>(a)];
    vals[1 + sc.dimension] = t;
    if (sc.epsilon > 0) {
        int base = 2 + sc.dimension;
        for (int a = 0; a < sc.dimension; ++a) vals[base + a] = path.value(a, t);
        for (int a = 0; a < sc.dimension; ++a) vals[base + sc.dimension + a] = path.integral(a, t);
        vals[base + 2 * sc.dimension] = path.integral_sq(t);
    }
    return fast_f_noise_.eval(vals) / (2.0 * t) - level;
}

namespace {

// Real roots of a low-degree polynomial given by per-point coefficients.
std::vector<double> small_real_roots(const std::vector<double>& c) {
    double m = 0;
    for (double v : c) m = std::max(m, std::fabs(v));
    std::vector<double> a = c;
    while (!a.empty() && std::fabs(a.back()) <= 1e-13 * m) a.pop_back();
    if (a.size() <= 1) return {};
    if (a.size() == 2) return {-a[0] / a[1]};
    if (a.size() == 3) {
        double disc = a[1] * a[1] - 4.0 * a[2] * a[0];
        if (disc < 0) return {};
        double s = std::sqrt(disc);
        double q = -0.5 * (a[1] + (a[1] >= 0 ? s : -s));
        std::vector<double> r;
        if (a[2] != 0) r.push_back(q / a[2]);
        if (q != 0) r.push_back(a[0] / q);
        std::sort(r.begin(), r.end());
        return r;
    }
    return real_roots(a, 1e-8);
}

}  // namespace

void Turbulence::classify_roots(std::vector<LambdaRoot>& roots, double t,
                                const WienerPath* path) const {
    const Scenario& sc = geom_.scenario();
    for (auto& r : roots) {
        if (r.branch == Branch::cusped || r.branch == Branch::subcaustic) continue;
        auto x0pt = caustic_point(r.lambda1, r.lambda2, t, nullptr);
        std::map<std::string, double> pt{{"x0", r.lambda1}, {"t", t}};
        auto img = sc.image_vars();
        for (size_t a = 0; a < img.size(); ++a) pt[img[a]] = x0pt[a];
        double scale = 1.0, nv = 0;
        for (size_t a = 0; a < img.size(); ++a) {
            double g = f_det_.cleared.derivative(img[a]).evaluate_double(pt) / (2.0 * t);
            if (sc.epsilon > 0 && path != nullptr)
                g -= sc.epsilon * path->value(static_cast<int>(a), t);
            nv += g * g;
            scale = std::max(scale, std::fabs(g));
        }
        r.branch = std::sqrt(nv) < 1e-6 * scale ? Branch::zero_speed : Branch::orthogonal;
    }
}

std::vector<LambdaRoot> Turbulence::solve_lambda_branches(double t, const WienerPath* path) const {
    const Scenario& sc = geom_.scenario();
    if (sc.epsilon > 0 && path == nullptr)
        throw Error(ErrorCode::config, "scenario has noise but no path was given");
    std::map<std::string, double> env{{"t", t}};
    if (sc.epsilon > 0) {
        for (int a = 1; a <= sc.dimension; ++a) {
            env["W" + std::to_string(a)] = path->value(a - 1, t);
            env["I" + std::to_string(a)] = path->integral(a - 1, t);
        }
        env["J_"] = path->integral_sq(t);
    } else {
        for (int a = 1; a <= sc.dimension; ++a) {
            env["W" + std::to_string(a)] = 0;
            env["I" + std::to_string(a)] = 0;
        }
        env["J_"] = 0;
    }
    auto eval_coeffs = [&](const Polynomial& p) {
        auto cs = p.coefficients_in("x0");
        std::vector<double> out(cs.size());
        for (size_t k = 0; k < cs.size(); ++k) out[k] = cs[k].evaluate_double(env);
        return out;
    };

    std::vector<LambdaRoot> roots;
    if (sc.dimension == 2) {
        auto den_c = eval_coeffs(geom_.caustic_chart().denominator);
        auto pole_free = [&](double lam) { return std::fabs(horner(den_c, lam)) > 1e-10; };
        for (double lam : small_real_roots(eval_coeffs(cusped_factor_)))
            if (pole_free(lam)) roots.push_back({Branch::cusped, lam, 0});
        for (double lam : small_real_roots(eval_coeffs(other_factor_)))
            if (pole_free(lam)) roots.push_back({Branch::orthogonal, lam, 0});
    } else {
        auto l2_num = eval_coeffs(lambda2_num_);
        auto l2_den = eval_coeffs(lambda2_den_);
        auto push = [&](double lam, Branch b) {
            double num = horner(l2_num, lam), den = horner(l2_den, lam);
            double l2 = std::fabs(den) > 1e-12 ? num / den : 0.0;
            roots.push_back({b, lam, l2});
        };
        for (double lam : small_real_roots(eval_coeffs(sub_factor_3d_)))
            push(lam, Branch::subcaustic);
        for (double lam : small_real_roots(eval_coeffs(main_factor_3d_)))
            push(lam, Branch::orthogonal);
    }
    classify_roots(roots, t, path);
    return roots;
}

ZetaPath Turbulence::zeta_path(Branch branch, double level, const WienerPath& path,
                               const std::vector<double>& t_grid, bool small_eps) const {
    ZetaPath out;
    out.branch = branch;
    out.level = level;
    out.samples.reserve(t_grid.size());
    bool have_prev = false;
    double prev_l1 = 0, prev_l2 = 0;
    for (double t : t_grid) {
        ZetaSample s;
        s.t = t;
        std::vector<LambdaRoot> roots;
        try {
            roots = solve_lambda_branches(t, &path);
        } catch (const Error&) {
            s.valid = false;
            out.samples.push_back(s);
            continue;
        }
        const LambdaRoot* pick = nullptr;
        double best = 1e300;
        for (const auto& r : roots) {
            // orthogonal and zero-speed are roots of the same factor and the
            // classification can flip along a tracked root; treat them as one
            // family for tracking purposes.
            bool family_ok = (r.branch == branch) ||
                             ((branch == Branch::orthogonal || branch == Branch::zero_speed) &&
                              (r.branch == Branch::orthogonal || r.branch == Branch::zero_speed));
            if (!family_ok) continue;
            double d = have_prev ? std::hypot(r.lambda1 - prev_l1, r.lambda2 - prev_l2)
                                 : std::fabs(r.lambda1);
            if (d < best) {
                best = d;
                pick = &r;
            }
        }
        if (pick == nullptr) {
            s.valid = false;  // solver found no root on this branch: gap
            out.samples.push_back(s);
            continue;
        }
        s.lambda1 = pick->lambda1;
        s.lambda2 = pick->lambda2;
        have_prev = true;
        prev_l1 = pick->lambda1;
        prev_l2 = pick->lambda2;
        s.closed_form = zeta_closed(s.lambda1, s.lambda2, t, path, level, small_eps);
        s.direct = small_eps ? s.closed_form : zeta_direct(s.lambda1, s.lambda2, t, path, level);
        out.samples.push_back(s);
    }
    return out;
}

TurbulenceReport Turbulence::find_turbulent_times(const ZetaPath& zeta, const WienerPath* path,
                                                  bool classify_cool) const {
    TurbulenceReport rep;
    rep.branch = zeta.branch;
    double scale = 0;
    size_t nvalid = 0;
    for (const auto& s : zeta.samples)
        if (s.valid) {
            scale = std::max(scale, std::fabs(s.closed_form));
            ++nvalid;
        }
    if (nvalid >= 2 && scale < 1e-12) {
        rep.degenerate = true;  // vanishes identically on the grid: no isolated zeros
        return rep;
    }
    const ZetaSample* prev = nullptr;
    for (const auto& s : zeta.samples) {
        if (!s.valid) {
            prev = nullptr;
            continue;
        }
        if (prev != nullptr) {
            double a = prev->closed_form, b = s.closed_form;
            if ((a < 0 && b > 0) || (a > 0 && b < 0)) {
                TurbulenceReport::Zero z;
                z.t_lo = prev->t;
                z.t_hi = s.t;
                double w = a / (a - b);
                z.t_root = prev->t + w * (s.t - prev->t);
                z.lambda = prev->lambda1 + w * (s.lambda1 - prev->lambda1);
                if (classify_cool) {
                    auto x = caustic_point(z.lambda, prev->lambda2, z.t_root, path);
                    try {
                        auto pc = geom_.actions().classify_point(x, z.t_root, path);
                        z.cool = pc.is_cool;
                        z.classified = true;
                    } catch (const Error&) {
                        z.classified = false;
                    }
                }
                rep.zeros.push_back(z);
            }
        }
        prev = &s;
    }
    return rep;
}

EtaPath Turbulence::eta_path(const WienerPath* path, const std::vector<double>& t_grid) const {
    const Scenario& sc = geom_.scenario();
    EtaPath out;
    out.t = t_grid;
    out.value.assign(t_grid.size(), 0.0);
    out.valid.assign(t_grid.size(), false);

    bool deterministic = sc.epsilon == 0;
    Polynomial n3_sym, n4_sym;
    if (deterministic) {
        auto [a, b] = geom_.caustic_jet_numerators(nullptr, std::nullopt);
        n3_sym = a;
        n4_sym = b;
    }
    for (size_t i = 0; i < t_grid.size(); ++i) {
        double t = t_grid[i];
        std::vector<double> c3, c4;
        try {
            if (deterministic) {
                Polynomial tc = Polynomial::constant(rational_from_double(t));
                c3 = n3_sym.substitute("t", tc).univariate_doubles("x0");
                c4 = n4_sym.substitute("t", tc).univariate_doubles("x0");
            } else {
                auto [a, b] = geom_.caustic_jet_numerators(path, rational_from_double(t));
                c3 = a.univariate_doubles("x0");
                c4 = b.univariate_doubles("x0");
            }
        } catch (const Error&) {
            continue;  // jet degree collapse at this sample: skip, stays invalid
        }
        out.value[i] = numeric_resultant(c3, c4);
        out.valid[i] = true;
    }
    double scale = 0;
    for (size_t i = 0; i < t_grid.size(); ++i)
        if (out.valid[i]) scale = std::max(scale, std::fabs(out.value[i]));
    for (size_t i = 1; i < t_grid.size(); ++i) {
        if (!out.valid[i - 1] || !out.valid[i]) continue;
        double a = out.value[i - 1], b = out.value[i];
        if ((a < 0 && b > 0) || (a > 0 && b < 0)) {
            out.zeros.push_back(out.t[i - 1] + a / (a - b) * (out.t[i] - out.t[i - 1]));
        } else if (i + 1 < t_grid.size() && out.valid[i + 1]) {
            // tangential zero: interior local minimum of |value| at noise level
            double c = std::fabs(out.value[i + 1]);
            if (std::fabs(b) <= std::fabs(a) && std::fabs(b) <= c &&
                std::fabs(b) < 1e-9 * scale)
                out.zeros.push_back(out.t[i]);
        }
    }
    return out;
}

double Turbulence::strassen_functional(const WienerPath& path) {
    return path.strassen_y(path.horizon());
}

std::pair<double, double> Turbulence::strassen_scaling_check(const WienerPath& path, int n) {
    if (n < 3)
        throw Error(ErrorCode::config, "scaling check needs n >= 3 (ln ln undefined below)");
    if (path.horizon() < static_cast<double>(n))
        throw Error(ErrorCode::config, "path horizon shorter than n");
    double h2 = 1.0 / (2.0 * n * std::log(std::log(static_cast<double>(n))));
    double lhs = h2 / static_cast<double>(n) * path.strassen_y(static_cast<double>(n));
    double h = std::sqrt(h2);
    std::size_t steps = static_cast<std::size_t>(
        std::llround(static_cast<double>(path.steps()) * n / path.horizon()));
    steps = std::max<std::size_t>(steps, 2);
    WienerPath z = WienerPath::from_function(path.dimension(), 1.0, steps, [&](double t) {
        std::vector<double> v(static_cast<size_t>(path.dimension()));
        for (int a = 0; a < path.dimension(); ++a) v[static_cast<size_t>(a)] = h * path.value(a, n * t);
        return v;
    });
    return {lhs, z.strassen_y(1.0)};
}

std::vector<double> Turbulence::winding_angle(const WienerPath& path2d) {
    if (path2d.dimension() != 2)
        throw Error(ErrorCode::config, "winding angle needs a 2-d path");
    const auto& w1 = path2d.component(0);
    const auto& w2 = path2d.component(1);
    std::vector<double> theta(w1.size(), 0.0);
    double px = 1.0 + w1[0], py = w2[0];
    for (std::size_t i = 1; i < w1.size(); ++i) {
        double cx = 1.0 + w1[i], cy = w2[i];
        double r2 = cx * cx + cy * cy;
        if (r2 < 1e-12)
            throw Error(ErrorCode::numerical, "path passed within 1e-6 of the winding origin");
        double cross = px * cy - py * cx;
        double dot = px * cx + py * cy;
        double step = -std::atan2(cross, dot);  // clockwise loops count +2pi
        if (std::fabs(step) > 0.5 * 3.14159265358979323846)
            throw Error(ErrorCode::numerical,
                        "winding step exceeds pi/2; path resolution too coarse");
        theta[i] = theta[i - 1] + step;
        px = cx;
        py = cy;
    }
    return theta;
}

SpitzerResult Turbulence::spitzer_sample(int trials, double t, std::uint64_t seed) {
    if (trials < 1 || t <= 1.0) throw Error(ErrorCode::config, "need trials >= 1 and t > 1");
    SpitzerResult out;
    out.samples.reserve(static_cast<size_t>(trials));
    const double logt = std::log(t);
    for (int trial = 0; trial < trials; ++trial) {
        for (int attempt = 0;; ++attempt) {
            GaussianSource g(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial) +
                             0x1000003ULL * static_cast<std::uint64_t>(attempt));
            double x = 1.0, y = 0.0, time = 0.0, theta = 0.0;
            bool ok = true;
            while (time < t) {
                double r2 = x * x + y * y;
                if (r2 < 1e-12) {
                    ok = false;  // too close to the origin: resample this trial
                    break;
                }
                double dt = std::min({0.02 * r2, t - time, 0.05 * t});
                double sd = std::sqrt(dt);
                double nx = x + sd * g.next();
                double ny = y + sd * g.next();
                double cross = x * ny - y * nx;
                double dot = x * nx + y * ny;
                theta += -std::atan2(cross, dot);
                x = nx;
                y = ny;
                time += dt;
            }
            if (ok) {
                out.samples.push_back(2.0 * theta / logt);
                break;
            }
            ++out.resampled_trials;
            if (attempt > 64)
                throw Error(ErrorCode::numerical, "trial kept hitting the winding origin");
        }
    }
    std::vector<double> sorted = out.samples;
    std::sort(sorted.begin(), sorted.end());
    double ks = 0.0;
    const double inv_pi = 0.31830988618379067154;
    for (size_t i = 0; i < sorted.size(); ++i) {
        double f = 0.5 + inv_pi * std::atan(sorted[i]);
        double lo = static_cast<double>(i) / static_cast<double>(sorted.size());
        double hi = static_cast<double>(i + 1) / static_cast<double>(sorted.size());
        ks = std::max({ks, std::fabs(f - lo), std::fabs(f - hi)});
    }
    out.ks_to_cauchy = ks;
    return out;
}

RecurrenceSummary Turbulence::recurrence_experiment(Branch branch, double level, int seeds,
                                                    double horizon, std::uint64_t seed0,
                                                    const std::vector<double>& prefixes) const {
    const Scenario& sc = geom_.scenario();
    RecurrenceSummary out;
    out.prefixes = prefixes;
    std::size_t steps = static_cast<std::size_t>(
        std::min(1e7, 1e4 * horizon));  // uniform quadrature error per unit time

    // Tight inner loop: evaluate the tracked branch root from precompiled
    // coefficient polynomials instead of the full symbolic solve.
    const bool fast_cusped = (branch == Branch::cusped && sc.dimension == 2);
    std::vector<FastPoly> cusp_coeffs;
    if (fast_cusped) {
        for (const auto& c : cusped_factor_.coefficients_in("x0"))
            cusp_coeffs.emplace_back(c, std::vector<std::string>{"t"});
    }

    for (int s = 0; s < seeds; ++s) {
        WienerPath path = WienerPath::simulate(sc.dimension, horizon, steps,
                                               seed0 + static_cast<std::uint64_t>(s));
        std::vector<int> counts(prefixes.size(), 0);
        double prev_val = 0;
        bool have_prev = false;
        double prev_l1 = 0, prev_l2 = 0;
        bool have_lambda = false;
        double dt = path.dt();
        std::size_t i0 = static_cast<std::size_t>(std::ceil(1.0 / dt));
        std::vector<double> cbuf(cusp_coeffs.size());
        for (std::size_t i = i0; i <= steps; ++i) {
            double t = dt * static_cast<double>(i);
            double l1 = 0, l2 = 0;
            bool found = false;
            if (fast_cusped) {
                for (size_t k = 0; k < cusp_coeffs.size(); ++k) cbuf[k] = cusp_coeffs[k].eval(&t);
                double best = 1e300;
                for (double lam : small_real_roots(cbuf)) {
                    double d = have_lambda ? std::fabs(lam - prev_l1) : std::fabs(lam);
                    if (d < best) {
                        best = d;
                        l1 = lam;
                        found = true;
                    }
                }
            } else {
                std::vector<LambdaRoot> roots;
                try {
                    roots = solve_lambda_branches(t, &path);
                } catch (const Error&) {
                    have_prev = false;
                    continue;
                }
                double best = 1e300;
                for (const auto& r : roots) {
                    if (r.branch != branch) continue;
                    double d = have_lambda ? std::fabs(r.lambda1 - prev_l1) : std::fabs(r.lambda1);
                    if (d < best) {
                        best = d;
                        l1 = r.lambda1;
                        l2 = r.lambda2;
                        found = true;
                    }
                }
            }
            if (!found) {
                have_prev = false;
                continue;
            }
            prev_l1 = l1;
            prev_l2 = l2;
            have_lambda = true;
            double v = zeta_closed(l1, l2, t, path, level, false);
            if (have_prev && ((prev_val < 0 && v > 0) || (prev_val > 0 && v < 0))) {
                for (size_t p = 0; p < prefixes.size(); ++p)
                    if (t <= prefixes[p]) ++counts[p];
            }
            prev_val = v;
            have_prev = true;
        }
        out.zero_counts.push_back(std::move(counts));
    }
    // fractions with >= k zeros at the final horizon
    out.fraction_at_least.assign(5, 0.0);
    size_t last = prefixes.size() - 1;
    for (const auto& c : out.zero_counts)
        for (int k = 1; k <= 5; ++k)
            if (c[last] >= k) out.fraction_at_least[static_cast<size_t>(k - 1)] += 1.0;
    for (auto& f : out.fraction_at_least) f /= static_cast<double>(seeds);
    out.median_counts.resize(prefixes.size());
    for (size_t p = 0; p < prefixes.size(); ++p) {
        std::vector<int> col;
        for (const auto& c : out.zero_counts) col.push_back(c[p]);
        std::sort(col.begin(), col.end());
        out.median_counts[p] = col[col.size() / 2];
    }
    return out;
}

Polynomial Turbulence::butterfly_factor_residual(double t, const WienerPath* path) const {
    const Scenario& sc = geom_.scenario();
    if (sc.dimension != 3)
        throw Error(ErrorCode::unsupported_scenario, "factor residual applies to 3-D scenarios");
    Rational tr = rational_from_double(t);
    Polynomial tc = Polynomial::constant(tr);
    const auto& chart = geom_.caustic_chart();
    std::vector<Polynomial> nums;
    for (const auto& n : chart.numerators) nums.push_back(n.substitute("t", tc).compact());
    Polynomial den = chart.denominator.substitute("t", tc).compact();

    // zeta target numerator: f0 pulled back minus eps x.W, cleared by 2t D^K
    Polynomial body = f_det_.cleared.substitute("t", tc);
    auto img = sc.image_vars();
    int k_total = 0;
    for (size_t a = 0; a < img.size(); ++a) k_total += std::max(body.degree(img[a]), 0);
    for (size_t a = 0; a < img.size(); ++a) body = body.substitute_rational(img[a], nums[a], den);
    Polynomial target = body;
    if (sc.epsilon > 0) {
        if (!path) throw Error(ErrorCode::config, "noise needs a path");
        Rational eps_r = rational_from_double(sc.epsilon);
        for (size_t a = 0; a < img.size(); ++a) {
            Rational w = rational_from_double(path->value(static_cast<int>(a), t));
            target -= nums[a] * den.pow(k_total - 1) * (eps_r * w * Rational(2) * tr);
        }
    }
    // gradient system, eliminated: d/dy0 gives the linear lambda2 relation
    auto quotient_num = [&](const Polynomial& p, const std::string& v) {
        return (p.derivative(v) * den - p * den.derivative(v) * Rational(k_total)).compact();
    };
    Polynomial e1 = quotient_num(target, "x0");
    Polynomial e2 = quotient_num(target, "y0");
    if (e2.degree("y0") != 1)
        throw Error(ErrorCode::structural, "second gradient equation not linear in the parameter");
    auto cs = e2.coefficients_in("y0");
    Polynomial elim = e1.substitute_rational("y0", -cs[0], cs[1]).compact();

    std::map<std::string, Rational> noise;
    if (sc.epsilon > 0) {
        for (int a = 1; a <= 3; ++a) {
            noise["W" + std::to_string(a)] = rational_from_double(path->value(a - 1, t));
        }
    } else {
        for (int a = 1; a <= 3; ++a) noise["W" + std::to_string(a)] = Rational(0);
    }
    Polynomial fac = (main_factor_3d_ * sub_factor_3d_).substitute("t", tc).evaluate_partial(noise);
    Polynomial elim_n = elim.evaluate_partial(noise);
    Polynomial q;
    if (!try_exact_divide(elim_n, fac, q))
        throw Error(ErrorCode::structural, "published factor pair does not divide the system");
    Polynomial qc = q.compact();
    if (qc.terms().size() != 1)
        throw Error(ErrorCode::structural, "cofactor is not a monomial");
    return qc;
}

}  // namespace burgers
