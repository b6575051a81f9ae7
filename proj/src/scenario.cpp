#include "burgers/scenario.hpp"

#include <fstream>
#include <sstream>

#include "burgers/errors.hpp"

namespace burgers {

Scenario Scenario::builtin(const std::string& name) {
    Scenario s;
    s.name = name;
    if (name == "generic_cusp") {
        s.dimension = 2;
        s.initial_potential = Polynomial::parse("1/2*x0^2*y0");
    } else if (name == "polynomial_swallowtail") {
        s.dimension = 2;
        s.initial_potential = Polynomial::parse("x0^5 + x0^2*y0");
    } else if (name == "perestroika_x5x6") {
        s.dimension = 2;
        s.initial_potential = Polynomial::parse("x0^5 + x0^6*y0");
    } else if (name == "butterfly") {
        s.dimension = 3;
        s.initial_potential = Polynomial::parse("x0^3*y0 + x0^2*z0");
    } else {
        throw Error(ErrorCode::config, "unknown scenario: " + name,
                    "known: generic_cusp, polynomial_swallowtail, perestroika_x5x6, butterfly");
    }
    return s;
}

std::vector<std::string> Scenario::builtin_names() {
    return {"generic_cusp", "polynomial_swallowtail", "perestroika_x5x6", "butterfly"};
}

std::vector<std::string> Scenario::preimage_vars() const {
    std::vector<std::string> v = {"x0", "y0"};
    if (dimension == 3) v.push_back("z0");
    return v;
}

std::vector<std::string> Scenario::image_vars() const {
    std::vector<std::string> v = {"x", "y"};
    if (dimension == 3) v.push_back("z");
    return v;
}

void Scenario::validate() const {
    if (dimension != 2 && dimension != 3)
        throw Error(ErrorCode::config, "dimension must be 2 or 3");
    if (epsilon < 0) throw Error(ErrorCode::config, "epsilon must be >= 0");
    if (initial_potential.is_zero() || initial_potential.is_constant())
        throw Error(ErrorCode::config, "initial potential must be non-constant");
    auto pre = preimage_vars();
    Polynomial s0 = initial_potential.compact();
    for (const auto& v : s0.variables()) {
        bool known = false;
        for (const auto& p : pre) known |= (p == v);
        if (!known)
            throw Error(ErrorCode::config, "initial potential uses unknown variable " + v);
    }
    for (size_t i = 1; i < pre.size(); ++i) {
        if (s0.degree(pre[i]) > 1)
            throw Error(ErrorCode::unsupported_scenario,
                        "initial potential must be at most linear in " + pre[i]);
    }
}

Scenario Scenario::from_config_text(const std::string& text) {
    Scenario s;
    std::istringstream in(text);
    std::string line;
    bool have_s0 = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string v) {
            size_t a = v.find_first_not_of(" \t\r");
            size_t b = v.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "dimension") {
            s.dimension = std::stoi(value);
        } else if (key == "s0") {
            s.initial_potential = Polynomial::parse(value);
            have_s0 = true;
            if (s.name == "custom") s.name = "config";
        } else if (key == "epsilon") {
            s.epsilon = std::stod(value);
        } else if (key == "builtin") {
            double eps = s.epsilon;
            s = builtin(value);
            s.epsilon = eps;
            have_s0 = true;
        } else if (!key.empty()) {
            throw Error(ErrorCode::config, "unknown config key: " + key);
        }
    }
    if (!have_s0) throw Error(ErrorCode::config, "config must set s0 or builtin");
    s.validate();
    return s;
}

Scenario Scenario::from_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::io, "cannot open config file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return from_config_text(buf.str());
}

}  // namespace burgers
