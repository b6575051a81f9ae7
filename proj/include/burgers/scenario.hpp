#pragma once

#include <string>
#include <vector>

#include "burgers/polynomial.hpp"

namespace burgers {

/// Problem setup: free flow (V = 0) with unit-gradient noise in every
/// coordinate direction, polynomial initial velocity potential.
///
/// The initial potential must be at most linear in each pre-image coordinate
/// after the first, so the critical-point equations solve as a rational
/// elimination chain.
struct Scenario {
    std::string name = "custom";
    int dimension = 2;
    Polynomial initial_potential;  // in x0, y0 [, z0]
    double epsilon = 0.0;

    static Scenario builtin(const std::string& name);
    static std::vector<std::string> builtin_names();

    /// Key-value text config: dimension, s0, epsilon, builtin (overrides).
    static Scenario from_config_file(const std::string& path);
    static Scenario from_config_text(const std::string& text);

    void validate() const;

    std::vector<std::string> preimage_vars() const;
    std::vector<std::string> image_vars() const;
};

}  // namespace burgers
