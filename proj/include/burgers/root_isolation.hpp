#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "burgers/polynomial.hpp"

namespace burgers {

/// Real-root isolation result: pairwise disjoint rational intervals, each
/// containing exactly one real root.  lo == hi marks an exact rational root.
struct RootIsolation {
    struct Interval {
        Rational lo;
        Rational hi;
        int multiplicity = 1;
    };
    std::vector<Interval> intervals;

    int total_multiplicity() const {
        int s = 0;
        for (const auto& iv : intervals) s += iv.multiplicity;
        return s;
    }
};

/// Sturm-sequence isolation of the real roots of a univariate polynomial with
/// exact coefficients.  Multiplicities come from the square-free decomposition.
RootIsolation isolate_real_roots(const Polynomial& p, const std::string& var,
                                 std::optional<std::pair<Rational, Rational>> range = {});

/// Bisects an isolating interval of `squarefree` until its width <= `width`.
RootIsolation::Interval refine_interval(const Polynomial& squarefree, const std::string& var,
                                        RootIsolation::Interval iv, const Rational& width);

/// Number of sign variations of the Sturm sequence of p at the two endpoints,
/// i.e. the count of distinct real roots in (lo, hi].
int sturm_root_count(const Polynomial& p, const std::string& var, const Rational& lo,
                     const Rational& hi);

}  // namespace burgers
