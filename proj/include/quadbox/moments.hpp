#pragma once

#include <cstddef>
#include <vector>

#include "quadbox/chebyshev.hpp"
#include "quadbox/geometry.hpp"

namespace quadbox {

/// k-point Gauss-Legendre rule on [0,1], exact for degree 2k-1.
/// Nodes ascending; computed by Newton iteration on P_k.
struct GaussLegendre1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre1D gauss_legendre_1d(int k);

/// Quadrature nodes/weights for one planar face: the face loop is brought
/// to a canonical rotation/direction, triangulated, and each triangle
/// carries the k x k Duffy-mapped product Gauss-Legendre rule (exact for
/// bivariate total degree <= 2k-2). Weights are positive and sum to the
/// face area; `orientation` is +1 when the face loop winds like the
/// canonical loop and -1 otherwise, so the face's outward normal equals
/// orientation * unit_normal. Canonicalization makes the point set
/// independent of the loop's stored direction, which in turn makes
/// reversal flip divergence-theorem integrals exactly.
struct FaceQuadrature {
    std::vector<Vec3> points;
    std::vector<double> weights;
    Vec3 unit_normal = {0.0, 0.0, 0.0};
    double orientation = 1.0;
};

FaceQuadrature face_quadrature(const Polyhedron& p, int face_index, int order);

/// One triangle's share of a FaceQuadrature: Duffy map of the k x k
/// product Gauss-Legendre rule onto the 2D triangle (a, b, c).
struct TriangleRule {
    std::vector<std::array<double, 2>> points;
    std::vector<double> weights;
};

TriangleRule triangle_rule(int k, const std::array<double, 2>& a,
                           const std::array<double, 2>& b,
                           const std::array<double, 2>& c);

/// Chebyshev moments m_j = int_Omega phi_j dP of the mapped polyhedron,
/// ordered like MultiIndexSet(degree).
struct MomentVector {
    int degree = 0;
    std::vector<double> values;
    AffineMap reference_frame;
    std::size_t size() const { return values.size(); }
};

struct MomentOptions {
    int threads = 1; // 0 = hardware concurrency
    int primitive_axis = 0; // 0 = x (default), 1 = y (cross-check)
};

/// Divergence-theorem moments over the oriented faces: maps vertices
/// through `map`, integrates Phi_j * n1 per face with a triangle rule of
/// order ceil((n+3)/2)+1, and accumulates faces in input order (per-face
/// partials are combined in face order regardless of thread count).
MomentVector polyhedron_moments(const Polyhedron& p, const AffineMap& map, int n,
                                const MomentOptions& opts = {});

/// Max absolute difference between x-primitive and y-primitive moments.
double moments_crosscheck(const Polyhedron& p, const AffineMap& map, int n,
                          int threads = 1);

} // namespace quadbox
