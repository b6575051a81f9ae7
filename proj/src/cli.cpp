#include "burgers/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <optional>

#include "burgers/errors.hpp"
#include "burgers/heat.hpp"
#include "burgers/io.hpp"
#include "burgers/turbulence.hpp"

namespace burgers {

namespace {

using json = nlohmann::ordered_json;

std::vector<double> parse_range(const std::string& text) {
    // "a:b:n" inclusive linspace, or a single value
    auto c1 = text.find(':');
    if (c1 == std::string::npos) return {std::stod(text)};
    auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw Error(ErrorCode::config, "range must be start:stop:steps, got " + text);
    double a = std::stod(text.substr(0, c1));
    double b = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    long n = std::stol(text.substr(c2 + 1));
    if (n < 1) throw Error(ErrorCode::config, "range needs at least one step");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n));
    if (n == 1) {
        out.push_back(a);
        return out;
    }
    for (long i = 0; i < n; ++i)
        out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(std::stod(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

struct Common {
    std::string scenario_name = "generic_cusp";
    std::string config_path;
    double eps = -1;  // <0: keep scenario default

    Scenario make() const {
        Scenario sc = config_path.empty() ? Scenario::builtin(scenario_name)
                                          : Scenario::from_config_file(config_path);
        if (eps >= 0) sc.epsilon = eps;
        sc.validate();
        return sc;
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--scenario", c.scenario_name, "built-in scenario name");
    cmd->add_option("--config", c.config_path, "key-value config file (overrides --scenario)");
    cmd->add_option("--eps", c.eps, "noise amplitude");
}

json classification_json(const PointClassification& pc) {
    json j;
    j["preimage_count"] = pc.preimage_count;
    j["hamilton_jacobi"] = pc.hamilton_jacobi;
    j["minimiser"] = pc.minimiser;
    j["on_caustic"] = pc.on_caustic;
    j["on_maxwell"] = pc.on_maxwell;
    j["is_cool"] = pc.is_cool;
    json cps = json::array();
    for (const auto& cp : pc.critical_points) {
        json e;
        e["root"] = cp.root;
        e["value"] = cp.value;
        e["second_sign"] = cp.second_sign;
        cps.push_back(e);
    }
    j["critical_points"] = cps;
    return j;
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{
        "singular geometry and turbulence diagnostics for an inviscid randomly forced fluid"};
    app.require_subcommand(1);

    // ---- caustic ----
    auto* cmd_caustic = app.add_subcommand(
        "caustic", "sample the caustic through its pre-image parameterisation");
    Common c_caustic;
    add_common(cmd_caustic, c_caustic);
    std::string t_str = "1", lam_str = "-2:2:401", lam2_str = "", out_path = "out.csv",
                svg_path = "";
    std::uint64_t seed = 1;
    cmd_caustic->add_option("--t", t_str, "time");
    cmd_caustic->add_option("--lambda", lam_str, "parameter grid start:stop:steps");
    cmd_caustic->add_option("--lambda2", lam2_str, "second parameter grid (3-D)");
    cmd_caustic->add_option("--seed", seed, "path seed (noisy runs)");
    cmd_caustic->add_option("--out", out_path, "output CSV");
    cmd_caustic->add_option("--svg", svg_path, "optional SVG");

    // ---- level ----
    auto* cmd_level =
        app.add_subcommand("level", "sample an action level set (wavefront at level 0)");
    Common c_level;
    add_common(cmd_level, c_level);
    std::string lt_str = "1", llam_str = "-2:2:401", lout = "level.csv", lsvg = "";
    double level_c = 0.0;
    std::uint64_t lseed = 1;
    cmd_level->add_option("--t", lt_str, "time");
    cmd_level->add_option("--c", level_c, "action level");
    cmd_level->add_option("--lambda", llam_str, "parameter grid");
    cmd_level->add_option("--seed", lseed, "path seed (noisy runs)");
    cmd_level->add_option("--out", lout, "output CSV");
    cmd_level->add_option("--svg", lsvg, "optional SVG");

    // ---- maxwell ----
    auto* cmd_maxwell = app.add_subcommand(
        "maxwell", "equal-action set: squared factor of the double discriminant, filtered");
    Common c_maxwell;
    add_common(cmd_maxwell, c_maxwell);
    std::string mt_str = "1", mgrid_str = "-2:2:101", mout = "maxwell.csv", mjson = "";
    std::uint64_t mseed = 1;
    cmd_maxwell->add_option("--t", mt_str, "time");
    cmd_maxwell->add_option("--grid", mgrid_str, "sweep grid for the free coordinate");
    cmd_maxwell->add_option("--seed", mseed, "path seed (noisy runs)");
    cmd_maxwell->add_option("--out", mout, "filtered points CSV");
    cmd_maxwell->add_option("--json", mjson, "factor report JSON");

    // ---- premaxwell ----
    auto* cmd_pm =
        app.add_subcommand("premaxwell", "pre-image of the equal-action set, sampled");
    Common c_pm;
    add_common(cmd_pm, c_pm);
    std::string pmt_str = "1", pmlam_str = "-2:2:401", pmout = "premaxwell.csv";
    std::uint64_t pmseed = 1;
    cmd_pm->add_option("--t", pmt_str, "time");
    cmd_pm->add_option("--lambda", pmlam_str, "parameter grid");
    cmd_pm->add_option("--seed", pmseed, "path seed (noisy runs)");
    cmd_pm->add_option("--out", pmout, "output CSV");

    // ---- classify ----
    auto* cmd_classify =
        app.add_subcommand("classify", "pre-images, minimiser and flags at one point");
    Common c_classify;
    add_common(cmd_classify, c_classify);
    std::vector<double> point;
    std::string ct_str = "1", cout_path = "";
    std::uint64_t cseed = 1;
    cmd_classify->add_option("--point", point, "x y [z]")->expected(2, 3);
    cmd_classify->add_option("--t", ct_str, "time");
    cmd_classify->add_option("--seed", cseed, "path seed (noisy runs)");
    cmd_classify->add_option("--out", cout_path, "JSON output path (default stdout)");

    // ---- zeta ----
    auto* cmd_zeta = app.add_subcommand(
        "zeta", "minimal action along the caustic minus a level, on a time grid");
    Common c_zeta;
    add_common(cmd_zeta, c_zeta);
    std::string zt_str = "1:100:1000", zbranch = "cusped", zout = "zeta.csv";
    double z_c = 0.0;
    std::uint64_t zseed = 1;
    bool z_small = false;
    cmd_zeta->add_option("--t", zt_str, "time grid start:stop:steps");
    cmd_zeta->add_option("--branch", zbranch, "cusped|orthogonal|zero-speed|subcaustic");
    cmd_zeta->add_option("--c", z_c, "level");
    cmd_zeta->add_option("--seed", zseed, "path seed");
    cmd_zeta->add_flag("--small-eps", z_small, "drop second-order noise terms");
    cmd_zeta->add_option("--out", zout, "output CSV");

    // ---- eta ----
    auto* cmd_eta = app.add_subcommand(
        "eta", "signed resultant of the third and fourth caustic jets, on a time grid");
    Common c_eta;
    add_common(cmd_eta, c_eta);
    std::string et_str = "2:3:500", eout = "eta.csv";
    std::uint64_t eseed = 1;
    cmd_eta->add_option("--t", et_str, "time grid");
    cmd_eta->add_option("--seed", eseed, "path seed");
    cmd_eta->add_option("--out", eout, "output CSV");

    // ---- perestroika ----
    auto* cmd_per = app.add_subcommand(
        "perestroika", "swallowtail birth/death times from the exact jet resultant");
    Common c_per;
    add_common(cmd_per, c_per);
    std::string pt_str = "2:3:100", pout = "";
    cmd_per->add_option("--t", pt_str, "time range start:stop[:steps]");
    cmd_per->add_option("--out", pout, "JSON output path (default stdout)");

    // ---- doublepoints ----
    auto* cmd_dp = app.add_subcommand(
        "doublepoints", "complex parameter pairs hitting real caustic points");
    Common c_dp;
    add_common(cmd_dp, c_dp);
    std::string dpt_str = "2", dpout = "";
    cmd_dp->add_option("--t", dpt_str, "time (or list a,b,c)");
    cmd_dp->add_option("--out", dpout, "JSON output path (default stdout)");

    // ---- recurrence ----
    auto* cmd_rec = app.add_subcommand(
        "recurrence", "zero counts of the zeta process over many seeded paths");
    Common c_rec;
    add_common(cmd_rec, c_rec);
    int rec_seeds = 100;
    double rec_T = 100, rec_c = 0;
    std::string rec_branch = "cusped", rec_out = "";
    std::string rec_prefixes = "10,100";
    std::uint64_t rec_seed0 = 1;
    cmd_rec->add_option("--seeds", rec_seeds, "number of seeds");
    cmd_rec->add_option("--T", rec_T, "horizon");
    cmd_rec->add_option("--prefixes", rec_prefixes, "observation horizons, comma separated");
    cmd_rec->add_option("--branch", rec_branch, "branch");
    cmd_rec->add_option("--c", rec_c, "level");
    cmd_rec->add_option("--seed0", rec_seed0, "first seed");
    cmd_rec->add_option("--out", rec_out, "JSON output path (default stdout)");

    // ---- spitzer ----
    auto* cmd_sp = app.add_subcommand(
        "spitzer", "winding-angle statistic of a planar path against the Cauchy law");
    int sp_trials = 2000;
    double sp_t = std::exp(8.0);
    std::uint64_t sp_seed = 1;
    std::string sp_out = "", sp_csv = "";
    cmd_sp->add_option("--trials", sp_trials, "number of trials");
    cmd_sp->add_option("--t", sp_t, "final time");
    cmd_sp->add_option("--seed", sp_seed, "seed");
    cmd_sp->add_option("--out", sp_out, "JSON output path (default stdout)");
    cmd_sp->add_option("--samples-csv", sp_csv, "optional per-trial samples CSV");

    // ---- verify-hopfcole ----
    auto* cmd_hc = app.add_subcommand(
        "verify-hopfcole", "heat-equation check of the minimal action value at probes");
    Common c_hc;
    add_common(cmd_hc, c_hc);
    std::string hc_probes = "0.6,-1.2;-0.6,-1.2;0.45,0.3;-0.45,0.3;0.3,-0.75";
    std::string hc_mus = "0.2,0.1,0.05", hc_domain = "-1.1,1.1,-1.7,0.8", hc_out = "hopfcole.csv";
    double hc_t = 0.5;
    cmd_hc->add_option("--probes", hc_probes, "semicolon-separated x,y probes");
    cmd_hc->add_option("--mus", hc_mus, "viscosity ladder, comma separated");
    cmd_hc->add_option("--domain", hc_domain, "xlo,xhi,ylo,yhi");
    cmd_hc->add_option("--t", hc_t, "time");
    cmd_hc->add_option("--out", hc_out, "error table CSV");

    // ---- plot ----
    auto* cmd_plot = app.add_subcommand(
        "plot", "caustic, level sets and equal-action set in one SVG");
    Common c_plot;
    add_common(cmd_plot, c_plot);
    std::string plt_t = "1", plt_lam = "-2:2:801", plt_levels = "0", plt_out = "plot.svg";
    std::string plt_grid = "-2:2:101";
    std::uint64_t plt_seed = 1;
    cmd_plot->add_option("--t", plt_t, "time");
    cmd_plot->add_option("--lambda", plt_lam, "parameter grid");
    cmd_plot->add_option("--levels", plt_levels, "action levels, comma separated");
    cmd_plot->add_option("--grid", plt_grid, "Maxwell sweep grid");
    cmd_plot->add_option("--seed", plt_seed, "path seed (noisy runs)");
    cmd_plot->add_option("--out", plt_out, "SVG path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            return app.exit(e);
        }
        json err = {{"code", "config"}, {"message", e.what()}, {"context", "argument parsing"}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

    auto path_for = [](const Scenario& sc, std::uint64_t s, double horizon)
        -> std::optional<WienerPath> {
        if (sc.epsilon <= 0) return std::nullopt;
        std::size_t steps =
            static_cast<std::size_t>(std::min(1e7, std::max(1e4, 1e4 * horizon)));
        return WienerPath::simulate(sc.dimension, horizon, steps, s);
    };

    if (*cmd_caustic) {
        Scenario sc = c_caustic.make();
        double t = parse_range(t_str).front();
        auto grid = parse_range(lam_str);
        auto grid2 = lam2_str.empty() ? std::vector<double>{} : parse_range(lam2_str);
        auto path = path_for(sc, seed, t);
        SingularGeometry geom(sc);
        auto curve = geom.caustic_curve(t, grid, path ? &*path : nullptr, grid2);
        auto cusps = geom.detect_generalised_cusps(curve);
        for (const auto& hit : cusps)
            for (auto& s : curve.samples)
                if (s.valid && std::fabs(s.lambda - hit.lambda) <=
                                   (grid.size() > 1 ? (grid[1] - grid[0]) : 1e-6))
                    s.label = hit.label;
        write_curve_csv(out_path, curve);
        if (!svg_path.empty()) write_svg(svg_path, {{&curve, "caustic"}});
        return 0;
    }
    if (*cmd_level) {
        Scenario sc = c_level.make();
        double t = parse_range(lt_str).front();
        auto grid = parse_range(llam_str);
        auto path = path_for(sc, lseed, t);
        SingularGeometry geom(sc);
        auto curve = geom.level_surface_curve(level_c, t, grid, path ? &*path : nullptr);
        write_curve_csv(lout, curve);
        if (!lsvg.empty()) write_svg(lsvg, {{&curve, "level"}});
        return 0;
    }
    if (*cmd_maxwell) {
        Scenario sc = c_maxwell.make();
        double t = parse_range(mt_str).front();
        auto grid = parse_range(mgrid_str);
        auto path = path_for(sc, mseed, t);
        SingularGeometry geom(sc);
        auto ms = geom.maxwell_set(t, path ? &*path : nullptr, grid);
        write_curve_csv(mout, ms.filtered);
        if (!mjson.empty()) {
            json j;
            j["maxwell_klein_factor"] = ms.algebraic.str();
            j["caustic_factor"] = ms.caustic_factor.str();
            j["time_content"] = ms.content.str();
            j["filtered_points"] = ms.filtered.samples.size();
            write_text(mjson, j.dump(2) + "\n");
        }
        return 0;
    }
    if (*cmd_pm) {
        Scenario sc = c_pm.make();
        double t = parse_range(pmt_str).front();
        auto grid = parse_range(pmlam_str);
        auto path = path_for(sc, pmseed, t);
        SingularGeometry geom(sc);
        auto curve = geom.pre_maxwell_curve(t, grid, path ? &*path : nullptr);
        write_curve_csv(pmout, curve);
        return 0;
    }
    if (*cmd_classify) {
        Scenario sc = c_classify.make();
        double t = parse_range(ct_str).front();
        if (static_cast<int>(point.size()) != sc.dimension)
            throw Error(ErrorCode::config, "--point must match the scenario dimension");
        auto path = path_for(sc, cseed, t);
        ActionSystem actions(sc);
        auto pc = actions.classify_point(point, t, path ? &*path : nullptr);
        json j = classification_json(pc);
        if (cout_path.empty())
            std::cout << j.dump(2) << "\n";
        else
            write_text(cout_path, j.dump(2) + "\n");
        return 0;
    }
    if (*cmd_zeta) {
        Scenario sc = c_zeta.make();
        auto grid = parse_range(zt_str);
        Turbulence turb(sc);
        double horizon = grid.back();
        std::size_t steps =
            static_cast<std::size_t>(std::min(1e7, std::max(1e4, 1e4 * horizon)));
        WienerPath path = WienerPath::simulate(sc.dimension, horizon, steps, zseed);
        auto zp = turb.zeta_path(branch_from_name(zbranch), z_c, path, grid, z_small);
        write_zeta_csv(zout, zp);
        return 0;
    }
    if (*cmd_eta) {
        Scenario sc = c_eta.make();
        auto grid = parse_range(et_str);
        Turbulence turb(sc);
        std::optional<WienerPath> path;
        if (sc.epsilon > 0) {
            double horizon = grid.back();
            std::size_t steps =
                static_cast<std::size_t>(std::min(1e7, std::max(1e4, 1e4 * horizon)));
            path = WienerPath::simulate(sc.dimension, horizon, steps, eseed);
        }
        auto ep = turb.eta_path(path ? &*path : nullptr, grid);
        write_eta_csv(eout, ep);
        return 0;
    }
    if (*cmd_per) {
        Scenario sc = c_per.make();
        auto grid = parse_range(pt_str);
        SingularGeometry geom(sc);
        auto hits = geom.detect_perestroika(grid.front(), grid.back());
        json j = json::array();
        for (const auto& h : hits) {
            json e;
            e["t"] = h.t;
            e["lambda"] = h.lambda;
            e["derivative_residuals"] = h.derivative_residuals;
            j.push_back(e);
        }
        if (pout.empty())
            std::cout << j.dump(2) << "\n";
        else
            write_text(pout, j.dump(2) + "\n");
        return 0;
    }
    if (*cmd_dp) {
        Scenario sc = c_dp.make();
        SingularGeometry geom(sc);
        json j = json::array();
        for (double t : parse_list(dpt_str)) {
            json e;
            e["t"] = t;
            json pts = json::array();
            for (const auto& p : geom.complex_double_points(t)) {
                json q;
                q["a"] = p.a;
                q["eta"] = p.eta;
                q["residual"] = p.residual;
                pts.push_back(q);
            }
            e["count"] = pts.size();
            e["points"] = pts;
            j.push_back(e);
        }
        if (dpout.empty())
            std::cout << j.dump(2) << "\n";
        else
            write_text(dpout, j.dump(2) + "\n");
        return 0;
    }
    if (*cmd_rec) {
        Scenario sc = c_rec.make();
        Turbulence turb(sc);
        auto prefixes = parse_list(rec_prefixes);
        prefixes.push_back(rec_T);
        auto summary = turb.recurrence_experiment(branch_from_name(rec_branch), rec_c, rec_seeds,
                                                  rec_T, rec_seed0, prefixes);
        json j;
        j["seeds"] = rec_seeds;
        j["horizons"] = summary.prefixes;
        j["fraction_at_least"] = summary.fraction_at_least;
        j["median_counts"] = summary.median_counts;
        json hist = json::array();
        for (const auto& row : summary.zero_counts) hist.push_back(row);
        j["zero_counts"] = hist;
        if (rec_out.empty())
            std::cout << j.dump(2) << "\n";
        else
            write_text(rec_out, j.dump(2) + "\n");
        return 0;
    }
    if (*cmd_sp) {
        auto res = Turbulence::spitzer_sample(sp_trials, sp_t, sp_seed);
        json j;
        j["trials"] = sp_trials;
        j["t"] = sp_t;
        j["ks_to_cauchy"] = res.ks_to_cauchy;
        j["resampled_trials"] = res.resampled_trials;
        if (sp_out.empty())
            std::cout << j.dump(2) << "\n";
        else
            write_text(sp_out, j.dump(2) + "\n");
        if (!sp_csv.empty()) {
            std::string body = "sample\n";
            for (double v : res.samples) body += format_double(v) + "\n";
            write_text(sp_csv, body);
        }
        return 0;
    }
    if (*cmd_hc) {
        Scenario sc = c_hc.make();
        HeatVerifier hv(sc);
        std::vector<std::vector<double>> probes;
        size_t pos = 0;
        while (pos < hc_probes.size()) {
            size_t semi = hc_probes.find(';', pos);
            if (semi == std::string::npos) semi = hc_probes.size();
            probes.push_back(parse_list(hc_probes.substr(pos, semi - pos)));
            pos = semi + 1;
        }
        auto dom = parse_list(hc_domain);
        if (dom.size() != 4) throw Error(ErrorCode::config, "--domain needs xlo,xhi,ylo,yhi");
        auto res = hv.hopf_cole_compare(probes, hc_t, parse_list(hc_mus), dom[0], dom[1],
                                        dom[2], dom[3]);
        std::string body = "px,py,mu,pde_value,hj_value,error,excluded\n";
        for (const auto& e : res.table) {
            body += format_double(e.probe[0]) + "," + format_double(e.probe[1]) + "," +
                    format_double(e.mu) + "," + format_double(e.pde_value) + "," +
                    format_double(e.hj_value) + "," + format_double(e.error) + "," +
                    (e.excluded ? "1" : "0") + "\n";
        }
        body += "ratios\n";
        for (size_t p = 0; p < res.ratios.size(); ++p)
            for (size_t k = 0; k < res.ratios[p].size(); ++k)
                body += format_double(probes[p][0]) + "," + format_double(probes[p][1]) + "," +
                        format_double(res.ratios[p][k]) + "\n";
        write_text(hc_out, body);
        return 0;
    }
    if (*cmd_plot) {
        Scenario sc = c_plot.make();
        double t = parse_range(plt_t).front();
        auto grid = parse_range(plt_lam);
        auto path = path_for(sc, plt_seed, t);
        const WienerPath* pw = path ? &*path : nullptr;
        SingularGeometry geom(sc);
        auto caustic = geom.caustic_curve(t, grid, pw);
        std::vector<ParamCurve> levels;
        for (double c : parse_list(plt_levels))
            levels.push_back(geom.level_surface_curve(c, t, grid, pw));
        auto ms = geom.maxwell_set(t, pw, parse_range(plt_grid));
        std::vector<SvgCurve> curves = {{&caustic, "caustic"}};
        for (const auto& l : levels) curves.push_back({&l, "level"});
        curves.push_back({&ms.filtered, "maxwell"});
        write_svg(plt_out, curves);
        return 0;
    }
    return 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const Error& e) {
        json err = {{"code", error_code_name(e.code())},
                    {"message", e.what()},
                    {"context", e.context()}};
        std::cerr << err.dump() << "\n";
        return e.code() == ErrorCode::config || e.code() == ErrorCode::io ? 2 : 3;
    } catch (const std::exception& e) {
        json err = {{"code", "config"}, {"message", e.what()}, {"context", ""}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
}

}  // namespace burgers
