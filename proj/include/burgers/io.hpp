#pragma once

#include <string>
#include <vector>

#include "burgers/geometry.hpp"
#include "burgers/turbulence.hpp"

namespace burgers {

/// Shortest round-trip decimal form; identical bytes for identical doubles.
std::string format_double(double v);

void write_curve_csv(const std::string& path, const ParamCurve& curve);
void write_zeta_csv(const std::string& path, const ZetaPath& zeta);
void write_eta_csv(const std::string& path, const EtaPath& eta);
void write_text(const std::string& path, const std::string& body);

struct SvgCurve {
    const ParamCurve* curve;
    std::string kind;  // "caustic" | "level" | "maxwell" | "premaxwell" | "precaustic"
};

/// Line conventions: caustic long-dash, Maxwell short-dash, level solid.
void write_svg(const std::string& path, const std::vector<SvgCurve>& curves, int size = 640);

}  // namespace burgers
