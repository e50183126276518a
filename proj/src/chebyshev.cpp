#include "quadbox/chebyshev.hpp"

#include <cmath>
#include <numbers>

#include "quadbox/errors.hpp"

namespace quadbox {

namespace {

constexpr double kDomainBand = 1e-14;

double clamp_to_interval(double x) {
    if (x > 1.0) {
        if (x > 1.0 + kDomainBand)
            throw DomainError("cheb_values: x = " + std::to_string(x) +
                              " outside [-1,1] beyond tolerance");
        return 1.0;
    }
    if (x < -1.0) {
        if (x < -1.0 - kDomainBand)
            throw DomainError("cheb_values: x = " + std::to_string(x) +
                              " outside [-1,1] beyond tolerance");
        return -1.0;
    }
    return x;
}

} // namespace

std::size_t basis_dimension(int n) {
    const std::size_t m = static_cast<std::size_t>(n);
    return (m + 1) * (m + 2) * (m + 3) / 6;
}

MultiIndexSet::MultiIndexSet(int degree) : degree_(degree) {
    triples_.reserve(basis_dimension(degree));
    for (int d = 0; d <= degree; ++d)
        for (int a = d; a >= 0; --a)
            for (int b = d - a; b >= 0; --b)
                triples_.push_back({a, b, d - a - b});
}

std::size_t MultiIndexSet::index_of(const Triple& t) const {
    const int d = t.degree();
    const std::size_t block_start = static_cast<std::size_t>(d) * (d + 1) * (d + 2) / 6;
    const int r = d - t.a; // triples with larger a come first
    const std::size_t in_block =
        static_cast<std::size_t>(r) * (r + 1) / 2 + static_cast<std::size_t>(r - t.b);
    return block_start + in_block;
}

OrthonormalBasis::OrthonormalBasis(int degree) : indices_(degree) {
    const double a0 = 1.0 / std::sqrt(std::numbers::pi);
    const double ak = std::sqrt(2.0 / std::numbers::pi);
    norms_.reserve(indices_.size());
    for (const Triple& t : indices_.triples()) {
        const double ca = (t.a == 0) ? a0 : ak;
        const double cb = (t.b == 0) ? a0 : ak;
        const double cc = (t.c == 0) ? a0 : ak;
        norms_.push_back(ca * cb * cc);
    }
}

void cheb_values_into(int k_max, double x, std::vector<double>& out) {
    x = clamp_to_interval(x);
    out.resize(static_cast<std::size_t>(k_max) + 1);
    out[0] = 1.0;
    if (k_max >= 1) out[1] = x;
    for (int k = 2; k <= k_max; ++k)
        out[k] = 2.0 * x * out[k - 1] - out[k - 2];
}

std::vector<double> cheb_values(int k_max, double x) {
    std::vector<double> out;
    cheb_values_into(k_max, x, out);
    return out;
}

GaussChebyshev1D gauss_chebyshev_1d(int m) {
    GaussChebyshev1D rule;
    rule.nodes.reserve(m);
    for (int i = 1; i <= m; ++i)
        rule.nodes.push_back(std::cos((2.0 * i - 1.0) * std::numbers::pi / (2.0 * m)));
    rule.weight = std::numbers::pi / m;
    return rule;
}

BoxRule box_rule(int n) {
    const int m = n + 1;
    const GaussChebyshev1D oned = gauss_chebyshev_1d(m);
    BoxRule rule;
    rule.degree = n;
    rule.weight = oned.weight * oned.weight * oned.weight;
    rule.nodes.reserve(static_cast<std::size_t>(m) * m * m);
    for (int iz = 0; iz < m; ++iz)
        for (int iy = 0; iy < m; ++iy)
            for (int ix = 0; ix < m; ++ix)
                rule.nodes.push_back({oned.nodes[ix], oned.nodes[iy], oned.nodes[iz]});
    return rule;
}

VandermondeMatrix vandermonde(int n, const std::vector<Vec3>& points) {
    const OrthonormalBasis basis(n);
    const auto& triples = basis.index_set().triples();
    const std::size_t N = triples.size();

    VandermondeMatrix v;
    v.degree = n;
    v.rows = points.size();
    v.cols = N;
    v.values.resize(v.rows * N);

    std::vector<double> tx, ty, tz;
    for (std::size_t i = 0; i < points.size(); ++i) {
        cheb_values_into(n, points[i][0], tx);
        cheb_values_into(n, points[i][1], ty);
        cheb_values_into(n, points[i][2], tz);
        double* row = v.values.data() + i * N;
        for (std::size_t j = 0; j < N; ++j) {
            const Triple& t = triples[j];
            row[j] = basis.normalization(j) * tx[t.a] * ty[t.b] * tz[t.c];
        }
    }
    return v;
}

double primitive_eval(int alpha, double x) {
    x = clamp_to_interval(x);
    if (alpha == 0) return x;
    if (alpha == 1) return 0.5 * x * x;
    const std::vector<double> t = cheb_values(alpha + 1, x);
    return t[alpha + 1] / (2.0 * (alpha + 1)) - t[alpha - 1] / (2.0 * (alpha - 1));
}

void primitive_values_from_cheb(const std::vector<double>& t, int n,
                                std::vector<double>& out) {
    // t must hold T_0..T_{n+1}.
    out.resize(static_cast<std::size_t>(n) + 1);
    const double x = t[1];
    out[0] = x;
    if (n >= 1) out[1] = 0.5 * x * x;
    for (int a = 2; a <= n; ++a)
        out[a] = t[a + 1] / (2.0 * (a + 1)) - t[a - 1] / (2.0 * (a - 1));
}

double primitive_basis_eval(const Triple& t, double c, const Vec3& p) {
    const std::vector<double> ty = cheb_values(t.b, p[1]);
    const std::vector<double> tz = cheb_values(t.c, p[2]);
    return c * primitive_eval(t.a, p[0]) * ty[t.b] * tz[t.c];
}

} // namespace quadbox
