#include "burgers/poly_algebra.hpp"

#include <algorithm>

#include "burgers/errors.hpp"

namespace burgers {

namespace {

// Monomial divisibility and quotient for aligned exponent tuples.
bool mono_divides(const Polynomial::Exponents& den, const Polynomial::Exponents& num) {
    for (size_t i = 0; i < den.size(); ++i)
        if (den[i] > num[i]) return false;
    return true;
}

}  // namespace

bool try_exact_divide(const Polynomial& num, const Polynomial& den, Polynomial& quotient) {
    if (den.is_zero()) return false;
    if (num.is_zero()) {
        quotient = Polynomial();
        return true;
    }
    if (den.is_constant()) {
        quotient = num * Rational(1 / den.constant_value());
        return true;
    }
    Polynomial r = num, d = den;
    Polynomial::align_pair(r, d);
    auto [lt_d, lc_d] = d.leading_term();
    Polynomial q;
    while (!r.is_zero()) {
        Polynomial rr = r, dd = d;
        Polynomial::align_pair(rr, dd);
        auto [lt_r, lc_r] = rr.leading_term();
        auto [ltd, lcd] = dd.leading_term();
        if (!mono_divides(ltd, lt_r)) return false;
        Polynomial::Exponents qe(lt_r.size());
        for (size_t i = 0; i < qe.size(); ++i) qe[i] = lt_r[i] - ltd[i];
        // Build the quotient monomial over rr's variable set.
        Polynomial mono = Polynomial::constant(lc_r / lcd);
        {
            size_t i = 0;
            for (const auto& v : rr.variables()) {
                if (qe[i] != 0) mono *= Polynomial::variable(v).pow(qe[i]);
                ++i;
            }
        }
        q += mono;
        r = rr - mono * dd;
    }
    quotient = q.compact();
    return true;
}

Polynomial exact_divide(const Polynomial& num, const Polynomial& den) {
    Polynomial q;
    if (!try_exact_divide(num, den, q))
        throw Error(ErrorCode::internal, "exact polynomial division failed");
    return q;
}

Polynomial primitive_normalize(const Polynomial& p) {
    if (p.is_zero()) return p;
    mpz_class den_lcm(1), num_gcd(0);
    for (const auto& [e, c] : p.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    for (const auto& [e, c] : p.terms()) {
        mpz_class scaled = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    Polynomial out = p * scale;
    if (sgn(out.leading_term().second) < 0) out = -out;
    return out;
}

Polynomial content_in(const Polynomial& p, const std::string& var) {
    if (p.is_zero()) return Polynomial();
    Polynomial g;
    for (const auto& c : p.coefficients_in(var)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? primitive_normalize(c) : poly_gcd(g, c);
        if (g.is_constant()) return Polynomial(Rational(1));
    }
    return g;
}

namespace {

// Pseudo-remainder of a by b in `var`: prem = lc(b)^(da-db+1) * a  mod  b.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, const std::string& var) {
    int da = a.degree(var), db = b.degree(var);
    if (db < 0) throw Error(ErrorCode::internal, "pseudo_remainder by zero");
    if (da < db) return a;
    auto av = a.coefficients_in(var);
    auto bv = b.coefficients_in(var);
    Polynomial lcb = bv[static_cast<size_t>(db)];
    std::vector<Polynomial> r = av;
    for (int k = da; k >= db; --k) {
        Polynomial top = r[static_cast<size_t>(k)];
        for (auto& c : r) c = c * lcb;
        if (!top.is_zero()) {
            for (int j = 0; j <= db; ++j)
                r[static_cast<size_t>(k - db + j)] -= top * bv[static_cast<size_t>(j)];
        }
        r[static_cast<size_t>(k)] = Polynomial();
    }
    r.resize(static_cast<size_t>(db > 0 ? db : 1));
    return Polynomial::from_coefficients(var, r);
}

Polynomial gcd_univariate_main(const Polynomial& a, const Polynomial& b, const std::string& var) {
    Polynomial ca = content_in(a, var), cb = content_in(b, var);
    Polynomial pa = exact_divide(a, ca), pb = exact_divide(b, cb);
    Polynomial cont_gcd = poly_gcd(ca, cb);
    Polynomial r0 = pa, r1 = pb;
    if (r0.degree(var) < r1.degree(var)) std::swap(r0, r1);
    while (true) {
        if (r1.is_zero()) break;
        if (r1.degree(var) == 0) {
            r0 = r1.compact();
            r1 = Polynomial();
            break;
        }
        Polynomial rem = pseudo_remainder(r0, r1, var);
        if (!rem.is_zero()) {
            Polynomial c = content_in(rem, var);
            rem = exact_divide(rem, c);
        }
        r0 = r1;
        r1 = rem;
    }
    if (r0.degree(var) == 0) return cont_gcd;  // primitive parts are coprime in var
    return primitive_normalize(cont_gcd * primitive_normalize(r0));
}

}  // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b.is_zero() ? Polynomial() : primitive_normalize(b);
    if (b.is_zero()) return primitive_normalize(a);
    if (a.is_constant() || b.is_constant()) return Polynomial(Rational(1));
    Polynomial ac = a.compact(), bc = b.compact();
    // Main variable: shared if possible, otherwise the gcd is free of that var.
    std::string main;
    for (const auto& v : ac.variables())
        if (bc.depends_on(v)) {
            main = v;
            break;
        }
    if (main.empty()) {
        // No shared variable: gcd divides both contents, which are coprime
        // in each other's variables, hence constant.
        return Polynomial(Rational(1));
    }
    return gcd_univariate_main(ac, bc, main);
}

Polynomial resultant(const Polynomial& p, const Polynomial& q, const std::string& var) {
    int m = p.degree(var), n = q.degree(var);
    if (m <= 0 && n <= 0)
        throw Error(ErrorCode::degenerate_input, "resultant: both inputs constant in " + var);
    if (n <= 0) return q.pow(m);
    if (m <= 0) return p.pow(n);
    auto pc = p.coefficients_in(var);
    auto qc = q.coefficients_in(var);
    size_t size = static_cast<size_t>(m + n);
    std::vector<std::vector<Polynomial>> mat(size, std::vector<Polynomial>(size));
    for (int row = 0; row < n; ++row)
        for (int j = 0; j <= m; ++j) mat[static_cast<size_t>(row)][static_cast<size_t>(row + j)] =
            pc[static_cast<size_t>(m - j)];
    for (int row = 0; row < m; ++row)
        for (int j = 0; j <= n; ++j) mat[static_cast<size_t>(n + row)][static_cast<size_t>(row + j)] =
            qc[static_cast<size_t>(n - j)];

    // Bareiss fraction-free elimination.
    int det_sign = 1;
    Polynomial prev = Polynomial(Rational(1));
    for (size_t k = 0; k + 1 < size; ++k) {
        size_t pivot = k;
        while (pivot < size && mat[pivot][k].is_zero()) ++pivot;
        if (pivot == size) return Polynomial();  // singular: shared factor
        if (pivot != k) {
            std::swap(mat[pivot], mat[k]);
            det_sign = -det_sign;
        }
        for (size_t i = k + 1; i < size; ++i) {
            for (size_t j = k + 1; j < size; ++j) {
                Polynomial num = mat[k][k] * mat[i][j] - mat[i][k] * mat[k][j];
                mat[i][j] = exact_divide(num, prev);
            }
            mat[i][k] = Polynomial();
        }
        prev = mat[k][k];
    }
    Polynomial det = mat[size - 1][size - 1];
    return det_sign < 0 ? -det : det;
}

Polynomial discriminant(const Polynomial& p, const std::string& var) {
    int m = p.degree(var);
    if (m < 2)
        throw Error(ErrorCode::degenerate_input,
                    "discriminant requires degree >= 2 in " + var);
    Polynomial res = resultant(p, p.derivative(var), var);
    Polynomial lc = p.leading_coefficient(var);
    Polynomial d = exact_divide(res, lc);
    return (m % 4 == 2 || m % 4 == 3) ? -d : d;  // (-1)^{m(m-1)/2}
}

Polynomial double_discriminant(const Polynomial& f, const std::string& lambda_var,
                               const std::string& level_var) {
    if (f.degree(lambda_var) < 1)
        throw Error(ErrorCode::degenerate_input, "double_discriminant: f constant in " + lambda_var);
    if (f.depends_on(level_var))
        throw Error(ErrorCode::degenerate_input,
                    "double_discriminant: f already depends on " + level_var);
    Polynomial g = f - Polynomial::variable(level_var);
    if (g.degree(lambda_var) < 2) return Polynomial(Rational(1));
    Polynomial inner = discriminant(g, lambda_var);
    if (inner.degree(level_var) < 2) return Polynomial(Rational(1));
    return discriminant(inner, level_var);
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p) {
    std::vector<std::pair<Polynomial, int>> out;
    Polynomial q = p.compact();
    if (q.is_zero() || q.is_constant()) return out;
    const std::string main = q.variables().front();
    Polynomial cont = content_in(q, main);
    Polynomial pp = exact_divide(q, cont);
    // Factors free of `main` live in the content.
    for (auto& f : squarefree_decomposition(cont)) out.push_back(std::move(f));

    // Yun's algorithm on the primitive part.
    Polynomial dp = pp.derivative(main);
    Polynomial g = poly_gcd(pp, dp);
    Polynomial c = exact_divide(pp, g);
    Polynomial d = exact_divide(dp, g) - c.derivative(main);
    int i = 1;
    while (c.degree(main) > 0 || !c.is_constant()) {
        Polynomial a = poly_gcd(c, d);
        Polynomial c_next = exact_divide(c, a);
        Polynomial d_next = exact_divide(d, a) - c_next.derivative(main);
        if (!a.is_constant()) out.emplace_back(primitive_normalize(a), i);
        c = c_next;
        d = d_next;
        ++i;
        if (i > p.total_degree() + 2)
            throw Error(ErrorCode::internal, "square-free decomposition failed to terminate");
    }
    return out;
}

FactorDecomposition factor_multiplicity(const Polynomial& d, const std::string& time_var) {
    if (d.is_zero())
        throw Error(ErrorCode::degenerate_input, "factor_multiplicity of zero polynomial");
    FactorDecomposition out;
    auto all = squarefree_decomposition(d);
    Polynomial assembled(Rational(1));
    Polynomial time_part(Rational(1));
    for (auto& [f, m] : all) {
        assembled *= f.pow(m);
        bool pure_time = true;
        Polynomial fc = f.compact();
        for (const auto& v : fc.variables()) pure_time &= (v == time_var);
        if (pure_time)
            time_part *= f.pow(m);
        else
            out.factors.emplace_back(f, m);
    }
    Polynomial unit = exact_divide(d, assembled);
    if (!unit.is_constant())
        throw Error(ErrorCode::internal, "square-free residual is not constant");
    out.content = time_part * unit.constant_value();
    // Most significant factor first: highest multiplicity, then total degree.
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first.total_degree() > b.first.total_degree();
    });
    return out;
}

}  // namespace burgers
