#include "burgers/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "burgers/errors.hpp"

namespace burgers {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::io, "cannot write " + path);
    return f;
}

}  // namespace

void write_text(const std::string& path, const std::string& body) {
    auto f = open_out(path);
    f << body;
}

void write_curve_csv(const std::string& path, const ParamCurve& curve) {
    auto f = open_out(path);
    bool three = curve.dimension == 3;
    f << (curve.grid ? "lambda1,lambda2," : "lambda,");
    f << (three ? "x,y,z," : "x,y,");
    f << (three ? "dx1,dy1,dz1,dx2,dy2,dz2," : "dx,dy,d2x,d2y,");
    f << "label\n";
    for (const auto& s : curve.samples) {
        if (!s.valid) continue;
        f << format_double(s.lambda);
        if (curve.grid) f << "," << format_double(s.lambda2);
        for (double v : s.point) f << "," << format_double(v);
        auto put = [&](const std::vector<double>& vec) {
            for (size_t k = 0; k < static_cast<size_t>(curve.dimension); ++k)
                f << "," << format_double(k < vec.size() ? vec[k] : 0.0);
        };
        put(s.deriv);
        put(s.deriv2);
        f << "," << s.label << "\n";
    }
}

void write_zeta_csv(const std::string& path, const ZetaPath& zeta) {
    auto f = open_out(path);
    f << "t,value,branch,lambda,zero\n";
    const ZetaSample* prev = nullptr;
    for (const auto& s : zeta.samples) {
        if (!s.valid) {
            prev = nullptr;
            continue;
        }
        int zero = 0;
        if (prev != nullptr && ((prev->closed_form < 0 && s.closed_form > 0) ||
                                (prev->closed_form > 0 && s.closed_form < 0)))
            zero = 1;
        f << format_double(s.t) << "," << format_double(s.closed_form) << ","
          << branch_name(zeta.branch) << "," << format_double(s.lambda1) << "," << zero << "\n";
        prev = &s;
    }
}

void write_eta_csv(const std::string& path, const EtaPath& eta) {
    auto f = open_out(path);
    f << "t,value,zero\n";
    for (size_t i = 0; i < eta.t.size(); ++i) {
        if (!eta.valid[i]) continue;
        int zero = 0;
        for (double z : eta.zeros)
            if (i + 1 < eta.t.size() && z >= eta.t[i] && z < eta.t[i + 1]) zero = 1;
        f << format_double(eta.t[i]) << "," << format_double(eta.value[i]) << "," << zero
          << "\n";
    }
}

void write_svg(const std::string& path, const std::vector<SvgCurve>& curves, int size) {
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const auto& c : curves)
        for (const auto& s : c.curve->samples) {
            if (!s.valid || s.point.size() < 2) continue;
            if (!std::isfinite(s.point[0]) || !std::isfinite(s.point[1])) continue;
            lo_x = std::min(lo_x, s.point[0]);
            hi_x = std::max(hi_x, s.point[0]);
            lo_y = std::min(lo_y, s.point[1]);
            hi_y = std::max(hi_y, s.point[1]);
        }
    if (lo_x > hi_x) {
        lo_x = lo_y = -1;
        hi_x = hi_y = 1;
    }
    double span = std::max(hi_x - lo_x, hi_y - lo_y);
    if (span <= 0) span = 1;
    double margin = 0.05 * span;
    lo_x -= margin;
    lo_y -= margin;
    span += 2 * margin;
    auto px = [&](double x) { return (x - lo_x) / span * size; };
    auto py = [&](double y) { return size - (y - lo_y) / span * size; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
        << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& c : curves) {
        std::string dash, color = "black";
        if (c.kind == "caustic" || c.kind == "precaustic") dash = "12,6";
        if (c.kind == "maxwell" || c.kind == "premaxwell") dash = "3,4";
        if (c.kind == "caustic") color = "#b22222";
        if (c.kind == "maxwell") color = "#1f5fbf";
        std::string style = "fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.4\"";
        if (!dash.empty()) style += " stroke-dasharray=\"" + dash + "\"";
        // split polylines on gaps, label changes, and large jumps
        std::ostringstream pts;
        bool open = false;
        std::string label;
        double px_prev = 0, py_prev = 0;
        auto flush = [&]() {
            if (open) svg << "<polyline " << style << " points=\"" << pts.str() << "\"/>\n";
            pts.str("");
            pts.clear();
            open = false;
        };
        for (const auto& s : c.curve->samples) {
            if (!s.valid || s.point.size() < 2 || !std::isfinite(s.point[0]) ||
                !std::isfinite(s.point[1])) {
                flush();
                continue;
            }
            double X = px(s.point[0]), Y = py(s.point[1]);
            if (open && (s.label != label || std::hypot(X - px_prev, Y - py_prev) > size * 0.5))
                flush();
            pts << X << "," << Y << " ";
            label = s.label;
            px_prev = X;
            py_prev = Y;
            open = true;
        }
        flush();
    }
    svg << "</svg>\n";
    write_text(path, svg.str());
}

}  // namespace burgers
