#include "burgers/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "burgers/errors.hpp"

namespace burgers {

Polynomial::Polynomial(const Rational& c) {
    Rational v = c;
    v.canonicalize();
    if (sgn(v) != 0) terms_.emplace(Exponents{}, v);
}

Polynomial::Polynomial(long c) : Polynomial(Rational(c)) {}

Polynomial Polynomial::variable(const std::string& name) {
    Polynomial p;
    p.vars_ = {name};
    p.terms_.emplace(Exponents{1}, Rational(1));
    return p;
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(c); }

bool Polynomial::is_constant() const {
    for (const auto& [e, c] : terms_)
        for (int k : e)
            if (k != 0) return false;
    return true;
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw Error(ErrorCode::internal, "constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

bool Polynomial::depends_on(const std::string& var) const { return degree(var) > 0; }

int Polynomial::degree(const std::string& var) const {
    if (terms_.empty()) return -1;
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return 0;
    size_t idx = static_cast<size_t>(it - vars_.begin());
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
    return d;
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

void Polynomial::prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = (sgn(it->second) == 0) ? terms_.erase(it) : std::next(it);
}

void Polynomial::align(Polynomial& a, Polynomial& b) {
    if (a.vars_ == b.vars_) return;
    std::vector<std::string> merged = a.vars_;
    for (const auto& v : b.vars_)
        if (std::find(merged.begin(), merged.end(), v) == merged.end()) merged.push_back(v);
    std::sort(merged.begin(), merged.end());
    auto remap = [&merged](Polynomial& p) {
        std::vector<size_t> pos(p.vars_.size());
        for (size_t i = 0; i < p.vars_.size(); ++i)
            pos[i] = static_cast<size_t>(
                std::find(merged.begin(), merged.end(), p.vars_[i]) - merged.begin());
        TermMap out;
        for (const auto& [e, c] : p.terms_) {
            Exponents ne(merged.size(), 0);
            for (size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
            out.emplace(std::move(ne), c);
        }
        p.terms_ = std::move(out);
        p.vars_ = merged;
    };
    remap(a);
    remap(b);
}

Polynomial aligned_binary_add(const Polynomial& x, const Polynomial& y, int sgn_b) {
    Polynomial a = x, b = y;
    Polynomial::align(a, b);
    for (const auto& [e, c] : b.terms_) {
        auto [it, inserted] = a.terms_.emplace(e, sgn_b < 0 ? Rational(-c) : c);
        if (!inserted) {
            if (sgn_b < 0)
                it->second -= c;
            else
                it->second += c;
            if (sgn(it->second) == 0) a.terms_.erase(it);
        }
    }
    return a;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const { return aligned_binary_add(*this, o, +1); }
Polynomial Polynomial::operator-(const Polynomial& o) const { return aligned_binary_add(*this, o, -1); }

Polynomial& Polynomial::operator+=(const Polynomial& o) { return *this = *this + o; }
Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this = *this - o; }
Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial a = *this, b = o;
    align(a, b);
    Polynomial r;
    r.vars_ = a.vars_;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            Rational prod = ca * cb;
            auto [it, inserted] = r.terms_.emplace(std::move(e), prod);
            if (!inserted) {
                it->second += prod;
                if (sgn(it->second) == 0) r.terms_.erase(it);
            }
        }
    }
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Rational s = c;
    s.canonicalize();
    if (sgn(s) == 0) return Polynomial();
    Polynomial r = *this;
    for (auto& [e, v] : r.terms_) v *= s;
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    Polynomial a = *this, b = o;
    align(a, b);
    return a.terms_ == b.terms_;
}

Polynomial Polynomial::pow(int k) const {
    if (k < 0) throw Error(ErrorCode::internal, "negative polynomial power");
    Polynomial r(Rational(1));
    Polynomial base = *this;
    while (k > 0) {
        if (k & 1) r *= base;
        base = (k >>= 1) ? base * base : base;
    }
    return r;
}

Polynomial Polynomial::derivative(const std::string& var, int order) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return Polynomial();
    size_t idx = static_cast<size_t>(it - vars_.begin());
    Polynomial r = *this;
    for (int o = 0; o < order; ++o) {
        TermMap out;
        for (const auto& [e, c] : r.terms_) {
            if (e[idx] == 0) continue;
            Exponents ne = e;
            ne[idx] -= 1;
            out.emplace(std::move(ne), c * e[idx]);
        }
        r.terms_ = std::move(out);
    }
    return r;
}

Polynomial Polynomial::substitute(const std::string& var, const Polynomial& value) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return *this;
    size_t idx = static_cast<size_t>(it - vars_.begin());
    // Group terms by exponent of `var`, then Horner in `value`.
    std::map<int, Polynomial> by_exp;
    for (const auto& [e, c] : terms_) {
        Polynomial mono;
        mono.vars_ = vars_;
        Exponents ne = e;
        ne[idx] = 0;
        mono.terms_.emplace(std::move(ne), c);
        auto [bit, inserted] = by_exp.emplace(e[idx], mono);
        if (!inserted) bit->second += mono;
    }
    int maxdeg = by_exp.empty() ? 0 : by_exp.rbegin()->first;
    Polynomial acc;
    for (int k = maxdeg; k >= 0; --k) {
        acc = acc * value;
        auto bit = by_exp.find(k);
        if (bit != by_exp.end()) acc += bit->second;
    }
    return acc.compact();
}

Polynomial Polynomial::substitute_rational(const std::string& var, const Polynomial& num,
                                           const Polynomial& den) const {
    int d = degree(var);
    if (d <= 0) return *this;
    auto coeffs = coefficients_in(var);
    Polynomial acc;
    for (int k = d; k >= 0; --k) {
        acc = acc * num + coeffs[static_cast<size_t>(k)] * den.pow(d - k) * Polynomial(Rational(1));
    }
    return acc.compact();
}

Polynomial Polynomial::evaluate_partial(const std::map<std::string, Rational>& point) const {
    Polynomial r = *this;
    for (const auto& [name, value] : point) r = r.substitute(name, Polynomial::constant(value));
    return r.compact();
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& point) const {
    std::map<std::string, Rational> pt = point;
    for (auto& [k, v] : pt) v.canonicalize();
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = pt.find(vars_[i]);
            if (it == pt.end())
                throw Error(ErrorCode::internal, "evaluate: missing value for " + vars_[i]);
            Rational p(1);
            Rational base = it->second;
            for (int k = e[i]; k > 0; k >>= 1) {
                if (k & 1) p *= base;
                base = (k > 1) ? Rational(base * base) : base;
            }
            term *= p;
        }
        acc += term;
    }
    return acc;
}

template <typename T>
static T evaluate_generic(const std::vector<std::string>& vars, const Polynomial::TermMap& terms,
                          const std::map<std::string, T>& point) {
    std::vector<T> vals(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) {
        auto it = point.find(vars[i]);
        if (it == point.end()) throw Error(ErrorCode::internal, "evaluate: missing value for " + vars[i]);
        vals[i] = it->second;
    }
    T acc{};
    for (const auto& [e, c] : terms) {
        T term = T(to_double(c));
        for (size_t i = 0; i < e.size(); ++i) {
            T p = T(1.0);
            T base = vals[i];
            for (int k = e[i]; k > 0; k >>= 1) {
                if (k & 1) p *= base;
                base *= base;
            }
            term *= p;
        }
        acc += term;
    }
    return acc;
}

double Polynomial::evaluate_double(const std::map<std::string, double>& point) const {
    return evaluate_generic<double>(vars_, terms_, point);
}

std::complex<double> Polynomial::evaluate_complex(
    const std::map<std::string, std::complex<double>>& point) const {
    return evaluate_generic<std::complex<double>>(vars_, terms_, point);
}

std::vector<Polynomial> Polynomial::coefficients_in(const std::string& var) const {
    int d = degree(var);
    std::vector<Polynomial> out(static_cast<size_t>(std::max(d, 0)) + 1);
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) {
        out[0] = *this;
        return out;
    }
    size_t idx = static_cast<size_t>(it - vars_.begin());
    for (auto& p : out) p.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
        Exponents ne = e;
        int k = ne[idx];
        ne[idx] = 0;
        out[static_cast<size_t>(k)].terms_.emplace(std::move(ne), c);
    }
    for (auto& p : out) p = p.compact();
    return out;
}

std::vector<Rational> Polynomial::univariate_coefficients(const std::string& var) const {
    auto coeffs = coefficients_in(var);
    std::vector<Rational> out;
    out.reserve(coeffs.size());
    for (const auto& p : coeffs) {
        if (!p.is_constant())
            throw Error(ErrorCode::degenerate_input, "polynomial is not univariate in " + var);
        out.push_back(p.constant_value());
    }
    return out;
}

std::vector<double> Polynomial::univariate_doubles(const std::string& var) const {
    auto coeffs = univariate_coefficients(var);
    std::vector<double> out(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) out[i] = to_double(coeffs[i]);
    return out;
}

Polynomial Polynomial::from_univariate(const std::string& var, const std::vector<Rational>& asc) {
    Polynomial p;
    p.vars_ = {var};
    for (size_t k = 0; k < asc.size(); ++k) {
        Rational v = asc[k];
        v.canonicalize();
        if (sgn(v) != 0) p.terms_.emplace(Exponents{static_cast<int>(k)}, v);
    }
    return p;
}

Polynomial Polynomial::from_coefficients(const std::string& var,
                                         const std::vector<Polynomial>& asc) {
    Polynomial acc;
    Polynomial v = Polynomial::variable(var);
    for (size_t k = asc.size(); k-- > 0;) acc = acc * v + asc[k];
    return acc.compact();
}

Polynomial Polynomial::leading_coefficient(const std::string& var) const {
    int d = degree(var);
    if (d < 0) return Polynomial();
    return coefficients_in(var)[static_cast<size_t>(d)];
}

std::pair<Polynomial::Exponents, Rational> Polynomial::leading_term() const {
    if (terms_.empty()) throw Error(ErrorCode::internal, "leading_term of zero polynomial");
    auto it = terms_.rbegin();
    return {it->first, it->second};
}

Polynomial Polynomial::compact() const {
    Polynomial r = *this;
    std::vector<bool> used(r.vars_.size(), false);
    for (const auto& [e, c] : r.terms_)
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) used[i] = true;
    std::vector<std::string> nv;
    std::vector<size_t> keep;
    for (size_t i = 0; i < r.vars_.size(); ++i)
        if (used[i]) {
            nv.push_back(r.vars_[i]);
            keep.push_back(i);
        }
    if (nv.size() == r.vars_.size()) return r;
    TermMap out;
    for (const auto& [e, c] : r.terms_) {
        Exponents ne(keep.size());
        for (size_t i = 0; i < keep.size(); ++i) ne[i] = e[keep[i]];
        out.emplace(std::move(ne), c);
    }
    r.vars_ = std::move(nv);
    r.terms_ = std::move(out);
    return r;
}

// ---------------------------------------------------------------------------
// Text format: sum of `coeff * var^k * ...` terms, rationals printed as p/q.

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    // Total degree first, then reverse-lex, so output is stable and readable.
    std::vector<std::pair<Exponents, Rational>> ts(terms_.begin(), terms_.end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        int da = 0, db = 0;
        for (int k : a.first) da += k;
        for (int k : b.first) db += k;
        if (da != db) return da > db;
        return a.first > b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : ts) {
        Rational a = c;
        if (first) {
            if (sgn(a) < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
            if (sgn(a) < 0) a = -a;
        }
        first = false;
        bool any_var = false;
        for (int k : e) any_var |= (k != 0);
        if (!any_var || a != 1) {
            os << rational_to_string(a);
            if (any_var) os << "*";
        }
        bool first_var = true;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << vars_[i];
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return os.str();
}

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
        throw Error(ErrorCode::config, "polynomial parse error: " + what + " at offset " +
                                           std::to_string(i) + " in \"" + s + "\"");
    }

    Polynomial parse_sum() {
        Polynomial acc;
        int term_sign = +1;
        if (peek() == '+' || peek() == '-') {
            term_sign = (s[i] == '-') ? -1 : +1;
            ++i;
        }
        while (true) {
            Polynomial term = parse_product();
            acc += (term_sign < 0) ? -term : term;
            if (eof()) break;
            char c = peek();
            if (c == '+' || c == '-') {
                term_sign = (c == '-') ? -1 : +1;
                ++i;
            } else if (c == ')') {
                break;
            } else {
                fail("expected '+' or '-'");
            }
        }
        return acc;
    }

    Polynomial parse_product() {
        Polynomial acc = parse_factor();
        while (!eof() && peek() == '*') {
            ++i;
            acc *= parse_factor();
        }
        return acc;
    }

    Polynomial parse_factor() {
        Polynomial base = parse_atom();
        if (!eof() && peek() == '^') {
            ++i;
            skip_ws();
            bool neg = false;
            if (i < s.size() && s[i] == '-') fail("negative exponent");
            size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (i == start) fail("expected exponent");
            int k = std::stoi(s.substr(start, i - start));
            (void)neg;
            base = base.pow(k);
        }
        return base;
    }

    Polynomial parse_atom() {
        skip_ws();
        if (i >= s.size()) fail("unexpected end");
        char c = s[i];
        if (c == '(') {
            ++i;
            Polynomial inner = parse_sum();
            if (peek() != ')') fail("expected ')'");
            ++i;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            std::string num = s.substr(start, i - start);
            if (i < s.size() && s[i] == '/') {
                ++i;
                size_t d0 = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (i == d0) fail("expected denominator");
                num += "/" + s.substr(d0, i - d0);
            }
            return Polynomial::constant(rational_from_string(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = i;
            while (i < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            return Polynomial::variable(s.substr(start, i - start));
        }
        fail("unexpected character");
    }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text) {
    Parser p(text);
    if (p.eof()) throw Error(ErrorCode::config, "empty polynomial text");
    Polynomial r = p.parse_sum();
    if (!p.eof()) p.fail("trailing input");
    return r.compact();
}

}  // namespace burgers
