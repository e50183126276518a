#include "quadbox/oracle.hpp"

#include <cmath>

#include "quadbox/chebyshev.hpp"
#include "quadbox/errors.hpp"
#include "quadbox/moments.hpp"

namespace quadbox {
namespace oracle {

namespace {

double power_integral(double lo, double hi, int k) {
    return (std::pow(hi, k + 1) - std::pow(lo, k + 1)) / (k + 1);
}

struct Tet {
    Vec3 a, b, c, d;
    double signed_volume() const {
        return dot(b - a, cross(c - a, d - a)) / 6.0;
    }
};

std::vector<Tet> fan_tets(const Polyhedron& p) {
    Vec3 centroid = {0.0, 0.0, 0.0};
    for (const Vec3& v : p.vertices()) centroid = centroid + v;
    centroid = (1.0 / static_cast<double>(p.vertex_count())) * centroid;

    std::vector<Tet> tets;
    for (const Face& f : p.faces()) {
        const auto& loop = f.vertex_indices;
        for (std::size_t i = 1; i + 1 < loop.size(); ++i)
            tets.push_back({centroid, p.vertex(loop[0]), p.vertex(loop[i]),
                            p.vertex(loop[i + 1])});
    }
    return tets;
}

/// Sums f over the Duffy-collapsed k^3 Gauss-Legendre rule of one tet,
/// where f receives the physical point and the quadrature weight.
template <typename F>
void for_each_tet_point(const Tet& t, const GaussLegendre1D& gl, F&& f) {
    const double vol6 = dot(t.b - t.a, cross(t.c - t.a, t.d - t.a));
    const int k = static_cast<int>(gl.nodes.size());
    for (int iu = 0; iu < k; ++iu) {
        const double u = gl.nodes[iu];
        for (int iv = 0; iv < k; ++iv) {
            const double v = gl.nodes[iv];
            const double jac_uv = (1.0 - u) * (1.0 - u) * (1.0 - v);
            for (int iw = 0; iw < k; ++iw) {
                const double w = gl.nodes[iw];
                const double l1 = u;
                const double l2 = v * (1.0 - u);
                const double l3 = w * (1.0 - u) * (1.0 - v);
                const Vec3 pt = t.a + l1 * (t.b - t.a) + l2 * (t.c - t.a) +
                                l3 * (t.d - t.a);
                f(pt, gl.weights[iu] * gl.weights[iv] * gl.weights[iw] * jac_uv * vol6);
            }
        }
    }
}

void check_convexity(const Polyhedron& p, const std::vector<Tet>& tets) {
    double vol = 0.0;
    for (const Tet& t : tets) vol += t.signed_volume();
    for (const Tet& t : tets)
        if (t.signed_volume() < -1e-12 * std::abs(vol))
            throw NonConvex("negative-volume tetrahedron in centroid fan; "
                            "polyhedron is not convex");
}

} // namespace

double box_monomial_integral(const Vec3& lo, const Vec3& hi, int a, int b, int c) {
    return power_integral(lo[0], hi[0], a) * power_integral(lo[1], hi[1], b) *
           power_integral(lo[2], hi[2], c);
}

double union_monomial_integral(const BoxUnion& u, int a, int b, int c) {
    double acc = 0.0;
    for (const SignedBox& box : u.boxes)
        acc += box.sign * box_monomial_integral(box.lo, box.hi, a, b, c);
    return acc;
}

double convex_tet_oracle(const Polyhedron& p, int a, int b, int c) {
    const std::vector<Tet> tets = fan_tets(p);
    check_convexity(p, tets);
    const GaussLegendre1D gl = gauss_legendre_1d((a + b + c + 4 + 1) / 2);
    double total = 0.0;
    for (const Tet& t : tets) {
        KahanSum acc;
        for_each_tet_point(t, gl, [&](const Vec3& pt, double w) {
            acc.add(w * std::pow(pt[0], a) * std::pow(pt[1], b) * std::pow(pt[2], c));
        });
        total += acc.value();
    }
    return total;
}

std::vector<double> convex_tet_oracle_all(const Polyhedron& p, int n) {
    const std::vector<Tet> tets = fan_tets(p);
    check_convexity(p, tets);
    const MultiIndexSet idx(n);
    const auto& triples = idx.triples();
    const std::size_t N = triples.size();
    const GaussLegendre1D gl = gauss_legendre_1d((n + 4 + 1) / 2);

    std::vector<double> out(N, 0.0);
    std::vector<double> px(n + 1), py(n + 1), pz(n + 1);
    std::vector<KahanSum> acc(N);
    for (const Tet& t : tets) {
        for_each_tet_point(t, gl, [&](const Vec3& pt, double w) {
            px[0] = py[0] = pz[0] = 1.0;
            for (int k = 1; k <= n; ++k) {
                px[k] = px[k - 1] * pt[0];
                py[k] = py[k - 1] * pt[1];
                pz[k] = pz[k - 1] * pt[2];
            }
            for (std::size_t j = 0; j < N; ++j)
                acc[j].add(w * px[triples[j].a] * py[triples[j].b] * pz[triples[j].c]);
        });
    }
    for (std::size_t j = 0; j < N; ++j) out[j] = acc[j].value();
    return out;
}

std::vector<double> union_monomials_all(const BoxUnion& u, int n) {
    const MultiIndexSet idx(n);
    const auto& triples = idx.triples();
    std::vector<double> out;
    out.reserve(triples.size());
    for (const Triple& t : triples)
        out.push_back(union_monomial_integral(u, t.a, t.b, t.c));
    return out;
}

} // namespace oracle
} // namespace quadbox
