#include "quadbox/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "quadbox/errors.hpp"

namespace quadbox {
namespace shapes {

namespace {

std::vector<std::vector<int>> box_faces() {
    return {{0, 3, 2, 1},  // z = lo
            {4, 5, 6, 7},  // z = hi
            {0, 1, 5, 4},  // y = lo
            {1, 2, 6, 5},  // x = hi
            {2, 3, 7, 6},  // y = hi
            {3, 0, 4, 7}}; // x = lo
}

/// Faces reoriented outward relative to the vertex centroid; exact for
/// convex solids with the centroid inside.
std::vector<std::vector<int>> orient_outward(const std::vector<Vec3>& verts,
                                             std::vector<std::vector<int>> faces) {
    Vec3 center = {0.0, 0.0, 0.0};
    for (const Vec3& v : verts) center = center + v;
    center = (1.0 / static_cast<double>(verts.size())) * center;
    for (auto& loop : faces) {
        const Vec3& a = verts[loop[0]];
        const Vec3& b = verts[loop[1]];
        const Vec3& c = verts[loop[2]];
        const Vec3 n = cross(b - a, c - a);
        Vec3 fc = {0.0, 0.0, 0.0};
        for (int idx : loop) fc = fc + verts[idx];
        fc = (1.0 / static_cast<double>(loop.size())) * fc;
        if (dot(n, fc - center) < 0.0) std::reverse(loop.begin(), loop.end());
    }
    return faces;
}

} // namespace

Polyhedron make_box(const Vec3& lo, const Vec3& hi, std::string label) {
    const std::vector<Vec3> verts = {
        {lo[0], lo[1], lo[2]}, {hi[0], lo[1], lo[2]}, {hi[0], hi[1], lo[2]},
        {lo[0], hi[1], lo[2]}, {lo[0], lo[1], hi[2]}, {hi[0], lo[1], hi[2]},
        {hi[0], hi[1], hi[2]}, {lo[0], hi[1], hi[2]}};
    return Polyhedron(verts, box_faces(), std::move(label));
}

Polyhedron make_cube() {
    return make_box({-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}, "cube");
}

Polyhedron make_tetrahedron() {
    const std::vector<Vec3> verts = {
        {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    const std::vector<std::vector<int>> faces = {
        {0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
    return Polyhedron(verts, faces, "tet");
}

Polyhedron make_lprism() {
    // CCW cross-section (0,0),(2,0),(2,1),(1,1),(1,2),(0,2) extruded in z.
    const std::array<std::array<double, 2>, 6> poly = {
        {{0.0, 0.0}, {2.0, 0.0}, {2.0, 1.0}, {1.0, 1.0}, {1.0, 2.0}, {0.0, 2.0}}};
    std::vector<Vec3> verts;
    for (double z : {0.0, 1.0})
        for (const auto& q : poly) verts.push_back({q[0], q[1], z});

    std::vector<std::vector<int>> faces;
    faces.push_back({0, 5, 4, 3, 2, 1});    // bottom, -z
    faces.push_back({6, 7, 8, 9, 10, 11});  // top, +z
    for (int i = 0; i < 6; ++i) {
        const int j = (i + 1) % 6;
        faces.push_back({i, j, j + 6, i + 6});
    }
    return Polyhedron(verts, faces, "lprism");
}

Polyhedron make_holedprism() {
    std::vector<Vec3> verts;
    const std::array<std::array<double, 2>, 4> outer = {
        {{0.0, 0.0}, {3.0, 0.0}, {3.0, 3.0}, {0.0, 3.0}}};
    const std::array<std::array<double, 2>, 4> inner = {
        {{1.0, 1.0}, {2.0, 1.0}, {2.0, 2.0}, {1.0, 2.0}}};
    for (double z : {0.0, 3.0}) {
        for (const auto& q : outer) verts.push_back({q[0], q[1], z});
        for (const auto& q : inner) verts.push_back({q[0], q[1], z});
    }
    // 0-3 outer bottom, 4-7 inner bottom, 8-11 outer top, 12-15 inner top.
    std::vector<std::vector<int>> faces;
    for (int i = 0; i < 4; ++i) {
        const int j = (i + 1) % 4;
        faces.push_back({4 + i, 4 + j, j, i});            // bottom annulus, -z
        faces.push_back({8 + i, 8 + j, 12 + j, 12 + i});  // top annulus, +z
        faces.push_back({i, j, 8 + j, 8 + i});            // outer wall
        faces.push_back({4 + j, 4 + i, 12 + i, 12 + j});  // hole wall
    }
    return Polyhedron(verts, faces, "holedprism");
}

Polyhedron make_hull20() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> verts = {
        {-1.0, phi, 0.0}, {1.0, phi, 0.0},   {-1.0, -phi, 0.0}, {1.0, -phi, 0.0},
        {0.0, -1.0, phi}, {0.0, 1.0, phi},   {0.0, -1.0, -phi}, {0.0, 1.0, -phi},
        {phi, 0.0, -1.0}, {phi, 0.0, 1.0},   {-phi, 0.0, -1.0}, {-phi, 0.0, 1.0}};
    // Deterministic jitter; raw mt19937 draws keep this platform-independent.
    std::mt19937 gen(42);
    auto jitter = [&]() {
        return 0.05 * (2.0 * (static_cast<double>(gen()) / 4294967296.0) - 1.0);
    };
    for (Vec3& v : verts) {
        v[0] += jitter();
        v[1] += jitter();
        v[2] += jitter();
    }
    std::vector<std::vector<int>> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    faces = orient_outward(verts, std::move(faces));
    return Polyhedron(verts, faces, "hull20");
}

Polyhedron by_name(const std::string& name) {
    if (name == "cube") return make_cube();
    if (name == "tet") return make_tetrahedron();
    if (name == "lprism") return make_lprism();
    if (name == "holedprism") return make_holedprism();
    if (name == "hull20") return make_hull20();
    throw UnknownShape("unknown shape '" + name +
                       "' (expected cube|tet|lprism|holedprism|hull20)");
}

std::optional<oracle::BoxUnion> box_union_for(const std::string& name) {
    using oracle::BoxUnion;
    if (name == "cube")
        return BoxUnion{{{{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}, 1}}};
    if (name == "lprism")
        return BoxUnion{{{{0.0, 0.0, 0.0}, {2.0, 1.0, 1.0}, 1},
                         {{0.0, 1.0, 0.0}, {1.0, 2.0, 1.0}, 1}}};
    if (name == "holedprism")
        return BoxUnion{{{{0.0, 0.0, 0.0}, {3.0, 3.0, 3.0}, 1},
                         {{1.0, 1.0, 0.0}, {2.0, 2.0, 3.0}, -1}}};
    return std::nullopt;
}

bool is_convex(const Polyhedron& p, double tol) {
    if (p.vertices().empty()) return false;
    BoundingBox bb;
    bb.lo = bb.hi = p.vertices()[0];
    for (const Vec3& v : p.vertices())
        for (int k = 0; k < 3; ++k) {
            bb.lo[k] = std::min(bb.lo[k], v[k]);
            bb.hi[k] = std::max(bb.hi[k], v[k]);
        }
    const double band = tol * bb.diameter();
    for (const Face& f : p.faces()) {
        const Vec3& p0 = p.vertex(f.vertex_indices[0]);
        for (const Vec3& v : p.vertices())
            if (dot(v - p0, f.unit_normal) > band) return false;
    }
    return true;
}

} // namespace shapes
} // namespace quadbox
