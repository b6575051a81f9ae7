#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "burgers/rational.hpp"

namespace burgers {

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are keyed by exponent tuples over an ordered list of variable
/// names; no zero coefficient is ever stored.  All arithmetic is exact.
class Polynomial {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Rational>;

    Polynomial() = default;
    explicit Polynomial(const Rational& c);
    explicit Polynomial(long c);

    static Polynomial variable(const std::string& name);
    static Polynomial constant(const Rational& c);

    /// Parses "3/2*x^2*y - t + 1/4".  Round-trips str() exactly.
    static Polynomial parse(const std::string& text);
    std::string str() const;

    const std::vector<std::string>& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // zero polynomial yields 0

    bool depends_on(const std::string& var) const;
    /// Degree in one variable; -1 for the zero polynomial.
    int degree(const std::string& var) const;
    int total_degree() const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial operator*(const Rational& c) const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial pow(int k) const;
    Polynomial derivative(const std::string& var, int order = 1) const;

    /// Substitutes a polynomial for a variable (exact composition).
    Polynomial substitute(const std::string& var, const Polynomial& value) const;
    /// Substitutes a rational function num/den for `var`; returns the result
    /// multiplied by den^deg_var (the cleared numerator).
    Polynomial substitute_rational(const std::string& var, const Polynomial& num,
                                   const Polynomial& den) const;
    Polynomial evaluate_partial(const std::map<std::string, Rational>& point) const;

    Rational evaluate(const std::map<std::string, Rational>& point) const;
    double evaluate_double(const std::map<std::string, double>& point) const;
    std::complex<double> evaluate_complex(
        const std::map<std::string, std::complex<double>>& point) const;

    /// Coefficient polynomials in `var`, ascending from degree 0.
    std::vector<Polynomial> coefficients_in(const std::string& var) const;
    /// Ascending rational coefficients; requires the polynomial univariate in `var`.
    std::vector<Rational> univariate_coefficients(const std::string& var) const;
    static Polynomial from_univariate(const std::string& var,
                                      const std::vector<Rational>& ascending);
    static Polynomial from_coefficients(const std::string& var,
                                        const std::vector<Polynomial>& ascending);

    /// Ascending double coefficients (exact cast of the rational values).
    std::vector<double> univariate_doubles(const std::string& var) const;

    Polynomial leading_coefficient(const std::string& var) const;

    /// Strips variables that no longer occur.
    Polynomial compact() const;

    /// Rewrites both polynomials over the union of their variable sets.
    static void align_pair(Polynomial& a, Polynomial& b) { align(a, b); }

    /// Lexicographically largest term (requires non-zero).
    std::pair<Exponents, Rational> leading_term() const;

private:
    std::vector<std::string> vars_;
    TermMap terms_;

    void prune();
    static void align(Polynomial& a, Polynomial& b);
    friend Polynomial aligned_binary_add(const Polynomial&, const Polynomial&, int sgn_b);
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

}  // namespace burgers
