#pragma once

#include <gmpxx.h>

#include <string>

namespace burgers {

// Exact rational coefficients. GMP keeps mpq_class canonical after arithmetic.
using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
    Rational r(s);
    r.canonicalize();
    return r;
}

inline Rational rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double v) {
    Rational r;
    mpq_set_d(r.get_mpq_t(), v);
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string rational_to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline int sign(const Rational& r) { return sgn(r); }

}  // namespace burgers
