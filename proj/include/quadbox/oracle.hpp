#pragma once

#include <vector>

#include "quadbox/geometry.hpp"

namespace quadbox {
namespace oracle {

/// Signed union of axis-aligned boxes (+1 add, -1 subtract); encodes the
/// L-prism and holed-prism test shapes analytically.
struct SignedBox {
    Vec3 lo = {0.0, 0.0, 0.0};
    Vec3 hi = {0.0, 0.0, 0.0};
    int sign = 1;
};

struct BoxUnion {
    std::vector<SignedBox> boxes;
};

/// int over the box of x^a y^b z^c as a product of 1D power integrals.
double box_monomial_integral(const Vec3& lo, const Vec3& hi, int a, int b, int c);

double union_monomial_integral(const BoxUnion& u, int a, int b, int c);

/// int over a convex polyhedron of x^a y^b z^c: fan-tetrahedralization
/// from the vertex centroid, Duffy-collapsed product Gauss-Legendre per
/// tetrahedron, orientation-signed sum. Never touches the main pipeline.
double convex_tet_oracle(const Polyhedron& p, int a, int b, int c);

/// All monomial integrals with a+b+c <= n at once, ordered like
/// MultiIndexSet(n); one quadrature sweep at the order for degree n.
std::vector<double> convex_tet_oracle_all(const Polyhedron& p, int n);

std::vector<double> union_monomials_all(const BoxUnion& u, int n);

} // namespace oracle
} // namespace quadbox
