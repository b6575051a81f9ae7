#pragma once

#include <utility>
#include <vector>

#include "burgers/polynomial.hpp"

namespace burgers {

/// Exact division; throws ErrorCode::internal when the division is not exact.
Polynomial exact_divide(const Polynomial& num, const Polynomial& den);
bool try_exact_divide(const Polynomial& num, const Polynomial& den, Polynomial& quotient);

/// Multivariate gcd over the rationals (primitive subresultant PRS),
/// normalised to integer-primitive form with positive leading coefficient.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

/// Content of `p` viewed in the given variable: gcd of its coefficient polynomials.
Polynomial content_in(const Polynomial& p, const std::string& var);

/// Sylvester resultant of p and q with respect to `var`, exact.
/// For constant q returns q^deg_var(p) (and symmetrically for constant p).
Polynomial resultant(const Polynomial& p, const Polynomial& q, const std::string& var);

/// Discriminant of p with respect to `var`; requires deg >= 2.
Polynomial discriminant(const Polynomial& p, const std::string& var);

/// Discriminant in `level_var` of the discriminant in `lambda_var` of f - level_var.
/// The inner discriminant of degree <= 1 in the level variable collapses to a
/// nonzero constant (single critical value: no multi-valued structure).
Polynomial double_discriminant(const Polynomial& f, const std::string& lambda_var,
                               const std::string& level_var);

struct FactorDecomposition {
    std::vector<std::pair<Polynomial, int>> factors;  // square-free, multiplicity
    Polynomial content;  // rational constant times any factors in the time variable only
};

/// Square-free decomposition over the rationals.  Factors involving only the
/// time variable (default "t") are folded into `content` with their powers.
FactorDecomposition factor_multiplicity(const Polynomial& d, const std::string& time_var = "t");

/// Yun square-free decomposition (all variables significant; nothing folded).
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p);

/// Normalises to integer coefficients with content 1 and positive leading term.
Polynomial primitive_normalize(const Polynomial& p);

}  // namespace burgers
