#include "quadbox/moments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "quadbox/errors.hpp"

namespace quadbox {

namespace {

void legendre_pair(int k, double x, double& pk, double& dpk) {
    double p0 = 1.0, p1 = x;
    if (k == 0) {
        pk = 1.0;
        dpk = 0.0;
        return;
    }
    for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    pk = p1;
    dpk = k * (x * p1 - p0) / (x * x - 1.0);
}

/// Face loop rotated to start at its smallest vertex index, direction
/// chosen by the smaller neighbour; identical for a loop and its reverse.
std::vector<int> canonical_loop(const std::vector<int>& loop) {
    const std::size_t m = loop.size();
    std::size_t start = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (loop[i] < loop[start]) start = i;
    const int next = loop[(start + 1) % m];
    const int prev = loop[(start + m - 1) % m];
    std::vector<int> out;
    out.reserve(m);
    if (next <= prev)
        for (std::size_t i = 0; i < m; ++i) out.push_back(loop[(start + i) % m]);
    else
        for (std::size_t i = 0; i < m; ++i) out.push_back(loop[(start + m - i) % m]);
    return out;
}

Vec3 loop_newell(const Polyhedron& p, const std::vector<int>& loop) {
    Vec3 n = {0.0, 0.0, 0.0};
    const std::size_t m = loop.size();
    for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
        const Vec3& vi = p.vertex(loop[i]);
        const Vec3& vj = p.vertex(loop[j]);
        n[0] += (vj[1] - vi[1]) * (vj[2] + vi[2]);
        n[1] += (vj[2] - vi[2]) * (vj[0] + vi[0]);
        n[2] += (vj[0] - vi[0]) * (vj[1] + vi[1]);
    }
    return n;
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

} // namespace

GaussLegendre1D gauss_legendre_1d(int k) {
    if (k < 1 || k > 64)
        throw DomainError("gauss_legendre_1d: k = " + std::to_string(k) +
                          " outside [1,64]");
    GaussLegendre1D rule;
    rule.nodes.resize(k);
    rule.weights.resize(k);
    for (int i = 1; i <= k; ++i) {
        double x = std::cos(std::numbers::pi * (4.0 * i - 1.0) / (4.0 * k + 2.0));
        double pk = 0.0, dpk = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            legendre_pair(k, x, pk, dpk);
            const double dx = pk / dpk;
            x -= dx;
            if (std::abs(dx) <= 1e-15) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw ConvergenceFailure("gauss_legendre_1d: Newton stalled at k = " +
                                     std::to_string(k));
        legendre_pair(k, x, pk, dpk);
        // Shift from [-1,1] to [0,1]; nodes come out descending in i.
        rule.nodes[k - i] = 0.5 * (1.0 + x);
        rule.weights[k - i] = 1.0 / ((1.0 - x * x) * dpk * dpk);
    }
    return rule;
}

TriangleRule triangle_rule(int k, const std::array<double, 2>& a,
                           const std::array<double, 2>& b,
                           const std::array<double, 2>& c) {
    const double two_area = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    if (!(two_area > 0.0))
        throw DegenerateTriangle("triangle with non-positive signed area " +
                                 std::to_string(0.5 * two_area));
    const GaussLegendre1D gl = gauss_legendre_1d(k);
    TriangleRule rule;
    rule.points.reserve(static_cast<std::size_t>(k) * k);
    rule.weights.reserve(static_cast<std::size_t>(k) * k);
    for (int is = 0; is < k; ++is) {
        const double s = gl.nodes[is];
        const double ws = gl.weights[is] * s * two_area; // Duffy Jacobian s
        for (int it = 0; it < k; ++it) {
            const double t = gl.nodes[it];
            const double xi = s * (1.0 - t);
            const double eta = s * t;
            rule.points.push_back({a[0] + xi * (b[0] - a[0]) + eta * (c[0] - a[0]),
                                   a[1] + xi * (b[1] - a[1]) + eta * (c[1] - a[1])});
            rule.weights.push_back(ws * gl.weights[it]);
        }
    }
    return rule;
}

FaceQuadrature face_quadrature(const Polyhedron& p, int face_index, int order) {
    const Face& face = p.faces()[face_index];
    const std::vector<int> canon = canonical_loop(face.vertex_indices);

    const Vec3 nn = loop_newell(p, canon);
    const double len = norm(nn);
    if (len <= 0.0)
        throw DegenerateFace("face " + std::to_string(face_index) + " has zero area");

    FaceQuadrature fq;
    fq.unit_normal = {nn[0] / len, nn[1] / len, nn[2] / len};
    fq.orientation = dot(face.unit_normal, fq.unit_normal) >= 0.0 ? 1.0 : -1.0;

    LocalFrame frame;
    frame.origin = p.vertex(canon[0]);
    Vec3 e1 = {0.0, 0.0, 0.0};
    for (std::size_t i = 1; i < canon.size(); ++i) {
        const Vec3 d = p.vertex(canon[i]) - frame.origin;
        const double dn = norm(d);
        if (dn > 1e-300) {
            e1 = (1.0 / dn) * d;
            break;
        }
    }
    frame.e1 = e1;
    frame.e2 = normalized(cross(fq.unit_normal, e1));

    std::vector<std::array<double, 2>> poly2d;
    poly2d.reserve(canon.size());
    for (int idx : canon) poly2d.push_back(frame.project(p.vertex(idx)));

    for (const auto& tri : triangulate_polygon_2d(poly2d)) {
        const TriangleRule tr =
            triangle_rule(order, poly2d[tri[0]], poly2d[tri[1]], poly2d[tri[2]]);
        for (std::size_t q = 0; q < tr.points.size(); ++q) {
            fq.points.push_back(frame.unproject(tr.points[q][0], tr.points[q][1]));
            fq.weights.push_back(tr.weights[q]);
        }
    }
    return fq;
}

namespace {

/// Accumulates one face's contribution to the un-normalized moments
/// (c_j applied by the caller): sum_q w_q * prim[e1] * T[e2] * T[e3].
void face_moment_partial(const Polyhedron& pm, int face_index, int n, int order,
                         int axis, std::vector<double>& partial) {
    const MultiIndexSet idx(n);
    const auto& triples = idx.triples();
    const std::size_t N = triples.size();
    partial.assign(N, 0.0);

    const FaceQuadrature fq = face_quadrature(pm, face_index, order);
    const double n_axis = fq.orientation * fq.unit_normal[axis];

    std::vector<double> tx, ty, tz, prim;
    for (std::size_t q = 0; q < fq.points.size(); ++q) {
        const Vec3& pt = fq.points[q];
        const double w = fq.weights[q];
        cheb_values_into(n + 1, pt[0], tx);
        cheb_values_into(n + 1, pt[1], ty);
        cheb_values_into(n, pt[2], tz);
        primitive_values_from_cheb(axis == 0 ? tx : ty, n, prim);
        if (axis == 0) {
            for (std::size_t j = 0; j < N; ++j) {
                const Triple& t = triples[j];
                partial[j] += w * prim[t.a] * ty[t.b] * tz[t.c];
            }
        } else {
            for (std::size_t j = 0; j < N; ++j) {
                const Triple& t = triples[j];
                partial[j] += w * tx[t.a] * prim[t.b] * tz[t.c];
            }
        }
    }
    for (std::size_t j = 0; j < N; ++j) partial[j] *= n_axis;
}

MomentVector moments_impl(const Polyhedron& p, const AffineMap& map, int n,
                          int axis, int threads) {
    std::vector<Vec3> mapped;
    mapped.reserve(p.vertex_count());
    for (const Vec3& v : p.vertices()) mapped.push_back(map.forward(v));
    std::vector<std::vector<int>> loops;
    loops.reserve(p.face_count());
    for (const Face& f : p.faces()) loops.push_back(f.vertex_indices);
    const Polyhedron pm(std::move(mapped), std::move(loops), p.label());

    const int order = (n + 4) / 2 + 1; // ceil((n+3)/2) + 1
    std::vector<int> active;
    for (int f = 0; f < static_cast<int>(pm.face_count()); ++f)
        if (std::abs(pm.faces()[f].unit_normal[axis]) > 1e-14) active.push_back(f);

    std::vector<std::vector<double>> partials(active.size());
    const int nthreads =
        std::min<int>(resolve_threads(threads), std::max<std::size_t>(active.size(), 1));
    if (nthreads <= 1 || active.size() <= 1) {
        for (std::size_t i = 0; i < active.size(); ++i)
            face_moment_partial(pm, active[i], n, order, axis, partials[i]);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= active.size()) return;
                face_moment_partial(pm, active[i], n, order, axis, partials[i]);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    const OrthonormalBasis basis(n);
    const std::size_t N = basis.size();
    MomentVector m;
    m.degree = n;
    m.reference_frame = map;
    m.values.assign(N, 0.0);
    // Face order is fixed regardless of which thread produced a partial.
    for (const auto& partial : partials)
        for (std::size_t j = 0; j < N; ++j) m.values[j] += partial[j];
    for (std::size_t j = 0; j < N; ++j) {
        m.values[j] *= basis.normalization(j);
        if (!std::isfinite(m.values[j]))
            throw NonFiniteMoment("moment " + std::to_string(j) + " is not finite");
    }
    return m;
}

} // namespace

MomentVector polyhedron_moments(const Polyhedron& p, const AffineMap& map, int n,
                                const MomentOptions& opts) {
    return moments_impl(p, map, n, opts.primitive_axis, opts.threads);
}

double moments_crosscheck(const Polyhedron& p, const AffineMap& map, int n,
                          int threads) {
    const MomentVector mx = moments_impl(p, map, n, 0, threads);
    const MomentVector my = moments_impl(p, map, n, 1, threads);
    double residual = 0.0;
    for (std::size_t j = 0; j < mx.values.size(); ++j)
        residual = std::max(residual, std::abs(mx.values[j] - my.values[j]));
    return residual;
}

} // namespace quadbox
