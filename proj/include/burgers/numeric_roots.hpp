#pragma once

#include <complex>
#include <vector>

#include "burgers/polynomial.hpp"

namespace burgers {

/// All complex roots of a polynomial given by ascending double coefficients
/// (Aberth–Ehrlich iteration with Newton polish).  Enforces conjugate pairing
/// for real input.  Throws ErrorCode::conditioning when the leading
/// coefficient is negligible relative to the rest.
std::vector<std::complex<double>> complex_roots(std::vector<double> ascending,
                                                double precision = 1e-12);

std::vector<std::complex<double>> complex_roots(const Polynomial& p, const std::string& var,
                                                double precision = 1e-12);

/// Real roots only (imaginary part below `im_tol` relative to root magnitude),
/// sorted ascending.
std::vector<double> real_roots(const std::vector<double>& ascending, double im_tol = 1e-9);

/// Horner evaluation of an ascending-coefficient polynomial.
double horner(const std::vector<double>& ascending, double x);
std::complex<double> horner(const std::vector<double>& ascending, std::complex<double> x);

}  // namespace burgers
