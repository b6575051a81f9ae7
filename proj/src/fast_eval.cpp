#include "burgers/fast_eval.hpp"

#include <algorithm>

#include "burgers/errors.hpp"

namespace burgers {

FastPoly::FastPoly(const Polynomial& p, const std::vector<std::string>& var_order) {
    const auto& vars = p.variables();
    std::vector<int> index(vars.size(), -1);
    for (size_t i = 0; i < vars.size(); ++i) {
        auto it = std::find(var_order.begin(), var_order.end(), vars[i]);
        if (it != var_order.end()) index[i] = static_cast<int>(it - var_order.begin());
    }
    for (const auto& [e, c] : p.terms()) {
        Term t;
        t.coeff = to_double(c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (index[i] < 0)
                throw Error(ErrorCode::internal,
                            "FastPoly: variable " + vars[i] + " missing from order");
            t.powers.emplace_back(index[i], e[i]);
        }
        terms_.push_back(std::move(t));
    }
}

double FastPoly::eval(const double* values) const {
    double acc = 0.0;
    for (const auto& t : terms_) {
        double term = t.coeff;
        for (const auto& [idx, e] : t.powers) {
            double v = values[idx];
            double p = v;
            for (int k = 1; k < e; ++k) p *= v;
            term *= p;
        }
        acc += term;
    }
    return acc;
}

}  // namespace burgers
