#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "quadbox/vec3.hpp"

namespace quadbox {

/// Planar polygonal face, vertices counter-clockwise seen from outside.
/// unit_normal and area are derived from the loop (Newell's method) and
/// cached when the polyhedron is assembled.
struct Face {
    std::vector<int> vertex_indices;
    Vec3 unit_normal = {0.0, 0.0, 0.0};
    double area = 0.0;
};

class Polyhedron {
public:
    Polyhedron() = default;
    /// Checks index validity (IndexOutOfRange) and face arity (ParseError),
    /// then caches face normals/areas. Geometric validity is validate()'s job.
    Polyhedron(std::vector<Vec3> vertices, std::vector<std::vector<int>> faces,
               std::string label);

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::string& label() const { return label_; }

    const Vec3& vertex(int i) const { return vertices_[i]; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t face_count() const { return faces_.size(); }

    /// Same solid with every face loop reversed (inward orientation).
    Polyhedron reversed() const;

private:
    std::vector<Vec3> vertices_;
    std::vector<Face> faces_;
    std::string label_;
};

struct BoundingBox {
    Vec3 lo = {0.0, 0.0, 0.0};
    Vec3 hi = {0.0, 0.0, 0.0};
    double diameter() const { return norm(hi - lo); }
};

/// Affine identification of a bounding box with [-1,1]^3.
struct AffineMap {
    Vec3 center = {0.0, 0.0, 0.0};
    Vec3 half_extent = {1.0, 1.0, 1.0};
    double jacobian = 1.0; // product of half extents = vol(B)/8

    Vec3 forward(const Vec3& p) const {
        return {(p[0] - center[0]) / half_extent[0],
                (p[1] - center[1]) / half_extent[1],
                (p[2] - center[2]) / half_extent[2]};
    }
    Vec3 inverse(const Vec3& q) const {
        return {center[0] + half_extent[0] * q[0],
                center[1] + half_extent[1] * q[1],
                center[2] + half_extent[2] * q[2]};
    }
};

struct LocalFrame {
    Vec3 origin = {0.0, 0.0, 0.0};
    Vec3 e1 = {1.0, 0.0, 0.0};
    Vec3 e2 = {0.0, 1.0, 0.0};

    std::array<double, 2> project(const Vec3& p) const {
        const Vec3 d = p - origin;
        return {dot(d, e1), dot(d, e2)};
    }
    Vec3 unproject(double u, double v) const {
        return origin + u * e1 + v * e2;
    }
};

struct TriangulatedFace {
    int face_index = -1;
    std::vector<std::array<int, 3>> triangles; // polyhedron vertex indices
    LocalFrame local_frame;
};

struct ValidationReport {
    std::vector<double> face_planarity; // max deviation from best-fit plane
    bool edge_pairing_ok = false;
    std::string edge_pairing_detail;
    double vector_area_residual = 0.0; // ||sum area*normal||
    double total_area = 0.0;
    double volume = 0.0; // signed divergence volume
    bool faces_well_formed = true;
    std::string face_detail;
    bool passed = false;
};

/// Reads the ASCII OFF dialect: "OFF" header, counts "V F E", V vertex
/// lines, F face lines "k i1 ... ik". '#' comments and blank lines are
/// skipped. Performs no geometric validation.
Polyhedron load_off(std::istream& in, const std::string& label = "off");
Polyhedron load_off_file(const std::string& path);

void write_off(std::ostream& out, const Polyhedron& p);
void write_off_file(const std::string& path, const Polyhedron& p);

ValidationReport validate(const Polyhedron& p,
                          double tol_planarity = 1e-9,
                          double tol_closure = 1e-12);

BoundingBox bounding_box(const Polyhedron& p);
AffineMap affine_map(const BoundingBox& b);

/// Signed volume from the divergence theorem, vol = sum_f n1_f int_f x dS;
/// negative for inward-oriented surfaces.
double signed_divergence_volume(const Polyhedron& p);

/// As above but rejects non-positive volumes (NegativeVolume).
double divergence_volume(const Polyhedron& p);

/// Triangulates face `face_index` in its plane: convex faces are fanned
/// from vertex 0, nonconvex ones ear-clipped; orientation preserved.
TriangulatedFace triangulate_face(const Polyhedron& p, int face_index);

/// Ear-clipping core on a 2D simple polygon (CCW); returns index triples
/// into `poly`. Collinear vertices are pruned first.
std::vector<std::array<int, 3>> triangulate_polygon_2d(
    const std::vector<std::array<double, 2>>& poly);

} // namespace quadbox
