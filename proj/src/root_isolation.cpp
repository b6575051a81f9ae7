#include "burgers/root_isolation.hpp"

#include <algorithm>

#include "burgers/errors.hpp"
#include "burgers/poly_algebra.hpp"

namespace burgers {

namespace {

// Canonical Sturm chain; remainders rescaled by positive rationals only.
std::vector<Polynomial> sturm_sequence(const Polynomial& p, const std::string& var) {
    std::vector<Polynomial> seq;
    seq.push_back(p);
    Polynomial d = p.derivative(var);
    if (d.is_zero()) return seq;
    seq.push_back(d);
    while (seq.back().degree(var) > 0) {
        const Polynomial& a = seq[seq.size() - 2];
        const Polynomial& b = seq.back();
        auto ac = a.univariate_coefficients(var);
        auto bc = b.univariate_coefficients(var);
        std::vector<Rational> r = ac;
        int da = static_cast<int>(ac.size()) - 1, db = static_cast<int>(bc.size()) - 1;
        Rational lcb = bc[static_cast<size_t>(db)];
        for (int k = da; k >= db; --k) {
            Rational top = r[static_cast<size_t>(k)];
            if (sgn(top) != 0) {
                Rational f = top / lcb;
                for (int j = 0; j <= db; ++j)
                    r[static_cast<size_t>(k - db + j)] -= f * bc[static_cast<size_t>(j)];
            }
        }
        r.resize(static_cast<size_t>(std::max(db, 1)));
        Polynomial rem = Polynomial::from_univariate(var, r);
        if (rem.is_zero()) break;
        Polynomial neg = -rem;
        Polynomial norm = primitive_normalize(neg);
        if (sgn(neg.leading_term().second) < 0) norm = -norm;
        seq.push_back(norm);
    }
    return seq;
}

// Sign variations with zeros skipped; gives root counts on (a, b] even when
// an endpoint is itself a root of the leading polynomial.
int variations_at(const std::vector<Polynomial>& seq, const std::string& var, const Rational& x) {
    int count = 0, prev = 0;
    std::map<std::string, Rational> pt{{var, x}};
    for (const auto& p : seq) {
        int s = p.is_zero() ? 0 : sign(p.evaluate(pt));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

Rational cauchy_bound(const std::vector<Rational>& coeffs) {
    Rational lc = coeffs.back();
    Rational m(0);
    for (size_t i = 0; i + 1 < coeffs.size(); ++i) {
        Rational a = abs(coeffs[i] / lc);
        if (a > m) m = a;
    }
    return m + 1;
}

struct Isolator {
    const Polynomial& p;
    const std::string& var;
    std::vector<Polynomial> seq;
    std::vector<std::pair<Rational, Rational>> found;

    Isolator(const Polynomial& poly, const std::string& v)
        : p(poly), var(v), seq(sturm_sequence(poly, v)) {}

    int count(const Rational& lo, const Rational& hi) const {
        return variations_at(seq, var, lo) - variations_at(seq, var, hi);
    }
    bool is_root(const Rational& x) const { return sign(p.evaluate({{var, x}})) == 0; }

    void isolate(const Rational& lo, const Rational& hi, int n) {
        if (n <= 0) return;
        if (n == 1) {
            if (is_root(hi))
                found.emplace_back(hi, hi);
            else
                found.emplace_back(lo, hi);
            return;
        }
        Rational mid = (lo + hi) / 2;
        if (is_root(mid)) {
            found.emplace_back(mid, mid);
            Rational delta = (hi - lo) / 1048576;
            while (is_root(mid - delta) || is_root(mid + delta) ||
                   count(mid - delta, mid + delta) != 1)
                delta /= 2;
            isolate(lo, mid - delta, count(lo, mid - delta));
            isolate(mid + delta, hi, count(mid + delta, hi));
            return;
        }
        int left = count(lo, mid);
        isolate(lo, mid, left);
        isolate(mid, hi, n - left);
    }
};

}  // namespace

int sturm_root_count(const Polynomial& p, const std::string& var, const Rational& lo,
                     const Rational& hi) {
    auto seq = sturm_sequence(p, var);
    return variations_at(seq, var, lo) - variations_at(seq, var, hi);
}

RootIsolation isolate_real_roots(const Polynomial& p, const std::string& var,
                                 std::optional<std::pair<Rational, Rational>> range) {
    if (p.is_zero())
        throw Error(ErrorCode::degenerate_input, "cannot isolate roots of the zero polynomial");
    Polynomial q = p.compact();
    for (const auto& v : q.variables())
        if (v != var)
            throw Error(ErrorCode::degenerate_input,
                        "isolate_real_roots: polynomial not univariate in " + var);
    RootIsolation out;
    if (q.degree(var) <= 0) return out;

    auto factors = squarefree_decomposition(q);
    struct Owned {
        RootIsolation::Interval iv;
        size_t factor;
    };
    std::vector<Owned> all;
    for (size_t fi = 0; fi < factors.size(); ++fi) {
        const auto& [f, mult] = factors[fi];
        if (f.degree(var) <= 0) continue;
        Rational bound = cauchy_bound(f.univariate_coefficients(var));
        Rational lo = -bound, hi = bound;
        if (range) {
            lo = std::max(lo, range->first);
            hi = std::min(hi, range->second);
            if (lo >= hi) continue;
        }
        Isolator iso(f, var);
        iso.isolate(lo, hi, iso.count(lo, hi));
        for (auto& [l, h] : iso.found) all.push_back({{l, h, mult}, fi});
    }

    // Roots of distinct square-free factors are distinct; bisect overlapping
    // intervals against their own factor until all are pairwise disjoint.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < all.size(); ++i)
            for (size_t j = 0; j < all.size(); ++j) {
                if (i == j) continue;
                auto& a = all[i].iv;
                const auto& b = all[j].iv;
                bool disjoint = a.hi < b.lo || b.hi < a.lo ||
                                (a.hi == b.lo && a.hi != a.lo && b.lo != b.hi) ||
                                (b.hi == a.lo && b.hi != b.lo && a.lo != a.hi);
                if (disjoint || a.lo == a.hi) continue;
                a = refine_interval(factors[all[i].factor].first, var, a, (a.hi - a.lo) / 2);
                changed = true;
            }
    }
    for (auto& o : all) out.intervals.push_back(o.iv);
    std::sort(out.intervals.begin(), out.intervals.end(),
              [](const auto& a, const auto& b) { return a.lo < b.lo; });
    return out;
}

RootIsolation::Interval refine_interval(const Polynomial& squarefree, const std::string& var,
                                        RootIsolation::Interval iv, const Rational& width) {
    if (iv.lo == iv.hi) return iv;
    auto seq = sturm_sequence(squarefree, var);
    auto count = [&](const Rational& a, const Rational& b) {
        return variations_at(seq, var, a) - variations_at(seq, var, b);
    };
    while (iv.hi - iv.lo > width) {
        Rational mid = (iv.lo + iv.hi) / 2;
        if (sign(squarefree.evaluate({{var, mid}})) == 0) {
            iv.lo = iv.hi = mid;
            return iv;
        }
        if (count(iv.lo, mid) == 1)
            iv.hi = mid;
        else
            iv.lo = mid;
    }
    return iv;
}

}  // namespace burgers
