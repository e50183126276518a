#pragma once

// Test-side helpers for the random integrand family (a x + b y + c z + d)^n:
// multinomial expansion into the graded monomial basis, evaluation at rule
// nodes, and the analytic integral given per-monomial reference values.

#include <cmath>
#include <random>
#include <vector>

#include "quadbox/chebyshev.hpp"
#include "quadbox/rule.hpp"

namespace quadbox::testsupport {

inline double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

struct LinearPower {
    double a, b, c, d;
    int n;

    double eval(const Vec3& p) const {
        return std::pow(a * p[0] + b * p[1] + c * p[2] + d, n);
    }

    /// Coefficients on x^i y^j z^k, ordered like MultiIndexSet(n).
    std::vector<double> monomial_coefficients() const {
        const MultiIndexSet idx(n);
        std::vector<double> coeff(idx.size(), 0.0);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j)
                for (int k = 0; i + j + k <= n; ++k) {
                    const int l = n - i - j - k;
                    const double mult =
                        binomial(n, i) * binomial(n - i, j) * binomial(n - i - j, k);
                    coeff[idx.index_of({i, j, k})] = mult * std::pow(a, i) *
                                                     std::pow(b, j) * std::pow(c, k) *
                                                     std::pow(d, l);
                }
        return coeff;
    }

    /// Exact integral from per-monomial reference integrals (same ordering).
    double exact_integral(const std::vector<double>& monomial_integrals) const {
        const std::vector<double> coeff = monomial_coefficients();
        double acc = 0.0;
        for (std::size_t j = 0; j < coeff.size(); ++j)
            acc += coeff[j] * monomial_integrals[j];
        return acc;
    }
};

inline LinearPower random_linear_power(std::mt19937& gen, int n) {
    auto u = [&]() { return 2.0 * (static_cast<double>(gen()) / 4294967296.0) - 1.0; };
    return {u(), u(), u(), u(), n};
}

inline double apply_to_function(const QuadratureRule& rule, const LinearPower& g) {
    std::vector<double> samples;
    samples.reserve(rule.size());
    for (const Vec3& p : rule.nodes) samples.push_back(g.eval(p));
    return quadbox::apply(rule, samples);
}

/// Monomial values x^a y^b z^c at a point via power tables.
struct PowerTable {
    std::vector<double> px, py, pz;
    PowerTable(const Vec3& p, int n) : px(n + 1), py(n + 1), pz(n + 1) {
        px[0] = py[0] = pz[0] = 1.0;
        for (int k = 1; k <= n; ++k) {
            px[k] = px[k - 1] * p[0];
            py[k] = py[k - 1] * p[1];
            pz[k] = pz[k - 1] * p[2];
        }
    }
    double operator()(const Triple& t) const { return px[t.a] * py[t.b] * pz[t.c]; }
};

} // namespace quadbox::testsupport
