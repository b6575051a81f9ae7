#pragma once

#include <string>
#include <vector>

#include "burgers/polynomial.hpp"

namespace burgers {

/// Flat compiled form of a polynomial for tight numeric loops: coefficients
/// cast to double once, exponents indexed against a fixed variable order.
class FastPoly {
public:
    FastPoly() = default;
    FastPoly(const Polynomial& p, const std::vector<std::string>& var_order);

    /// values[i] corresponds to var_order[i] passed at compile time.
    double eval(const double* values) const;

    bool empty() const { return terms_.empty(); }

private:
    struct Term {
        double coeff;
        std::vector<std::pair<int, int>> powers;  // (variable index, exponent)
    };
    std::vector<Term> terms_;
};

}  // namespace burgers
