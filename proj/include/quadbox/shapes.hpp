#pragma once

#include <optional>
#include <string>

#include "quadbox/geometry.hpp"
#include "quadbox/oracle.hpp"

namespace quadbox {
namespace shapes {

/// Axis-aligned box with outward CCW quad faces.
Polyhedron make_box(const Vec3& lo, const Vec3& hi, std::string label = "box");

/// [-1,1]^3.
Polyhedron make_cube();

/// Unit corner tetrahedron (0,0,0),(1,0,0),(0,1,0),(0,0,1).
Polyhedron make_tetrahedron();

/// Nonconvex L-shaped prism ([0,2]x[0,1] U [0,1]x[1,2]) x [0,1], volume 3.
Polyhedron make_lprism();

/// Multiply connected prism [0,3]^3 minus the through-hole [1,2]^2x[0,3],
/// built from 16 simple faces; volume 24.
Polyhedron make_holedprism();

/// Convex 20-facet shape: icosahedron vertices deterministically jittered
/// (seed 42) so no two faces are coplanar in a special way.
Polyhedron make_hull20();

/// cube | tet | lprism | holedprism | hull20; throws UnknownShape.
Polyhedron by_name(const std::string& name);

/// Analytic box-union decomposition for the shapes that have one.
std::optional<oracle::BoxUnion> box_union_for(const std::string& name);

/// True when every vertex lies on the inner side of every face plane
/// (within tol * diameter).
bool is_convex(const Polyhedron& p, double tol = 1e-9);

} // namespace shapes
} // namespace quadbox
