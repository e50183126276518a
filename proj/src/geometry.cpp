#include "quadbox/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "quadbox/errors.hpp"
#include "quadbox/moments.hpp"

namespace quadbox {

namespace {

Vec3 newell_normal(const std::vector<Vec3>& pts) {
    Vec3 n = {0.0, 0.0, 0.0};
    const std::size_t m = pts.size();
    for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
        const Vec3& vi = pts[i];
        const Vec3& vj = pts[j];
        n[0] += (vj[1] - vi[1]) * (vj[2] + vi[2]);
        n[1] += (vj[2] - vi[2]) * (vj[0] + vi[0]);
        n[2] += (vj[0] - vi[0]) * (vj[1] + vi[1]);
    }
    return n;
}

std::vector<Vec3> face_points(const Polyhedron& p, const Face& f) {
    std::vector<Vec3> pts;
    pts.reserve(f.vertex_indices.size());
    for (int idx : f.vertex_indices) pts.push_back(p.vertex(idx));
    return pts;
}

struct TokenLine {
    int line_no = 0;
    std::vector<std::string> tokens;
};

std::vector<TokenLine> tokenize(std::istream& in) {
    std::vector<TokenLine> lines;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ss(raw);
        TokenLine tl;
        tl.line_no = line_no;
        std::string tok;
        while (ss >> tok) tl.tokens.push_back(tok);
        if (!tl.tokens.empty()) lines.push_back(std::move(tl));
    }
    return lines;
}

double parse_double(const std::string& tok, int line_no) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size())
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected number, got '" + tok + "'");
    return v;
}

long parse_int(const std::string& tok, int line_no) {
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size())
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected integer, got '" + tok + "'");
    return v;
}

} // namespace

Polyhedron::Polyhedron(std::vector<Vec3> vertices,
                       std::vector<std::vector<int>> faces, std::string label)
    : vertices_(std::move(vertices)), label_(std::move(label)) {
    faces_.reserve(faces.size());
    const int nv = static_cast<int>(vertices_.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        if (faces[f].size() < 3)
            throw ParseError("face " + std::to_string(f) + " has fewer than 3 vertices");
        for (int idx : faces[f])
            if (idx < 0 || idx >= nv)
                throw IndexOutOfRange("face " + std::to_string(f) +
                                      " references vertex " + std::to_string(idx) +
                                      " of " + std::to_string(nv));
        Face face;
        face.vertex_indices = std::move(faces[f]);
        const Vec3 nn = newell_normal(face_points(*this, face));
        const double len = norm(nn);
        face.area = 0.5 * len;
        face.unit_normal = (len > 0.0) ? Vec3{nn[0] / len, nn[1] / len, nn[2] / len}
                                       : Vec3{0.0, 0.0, 0.0};
        faces_.push_back(std::move(face));
    }
}

Polyhedron Polyhedron::reversed() const {
    std::vector<std::vector<int>> rev;
    rev.reserve(faces_.size());
    for (const Face& f : faces_) {
        std::vector<int> loop(f.vertex_indices.rbegin(), f.vertex_indices.rend());
        rev.push_back(std::move(loop));
    }
    return Polyhedron(vertices_, std::move(rev), label_);
}

Polyhedron load_off(std::istream& in, const std::string& label) {
    const std::vector<TokenLine> lines = tokenize(in);
    std::size_t cur = 0;
    auto next_line = [&]() -> const TokenLine& {
        if (cur >= lines.size())
            throw ParseError("unexpected end of file after line " +
                             std::to_string(lines.empty() ? 0 : lines.back().line_no));
        return lines[cur++];
    };

    const TokenLine& header = next_line();
    if (header.tokens.size() != 1 || header.tokens[0] != "OFF")
        throw ParseError("line " + std::to_string(header.line_no) +
                         ": expected 'OFF' header");

    const TokenLine& counts = next_line();
    if (counts.tokens.size() != 3)
        throw ParseError("line " + std::to_string(counts.line_no) +
                         ": expected counts 'V F E'");
    const long nv = parse_int(counts.tokens[0], counts.line_no);
    const long nf = parse_int(counts.tokens[1], counts.line_no);
    parse_int(counts.tokens[2], counts.line_no); // edge count, unused
    if (nv < 0 || nf < 0)
        throw ParseError("line " + std::to_string(counts.line_no) +
                         ": negative counts");

    std::vector<Vec3> vertices;
    vertices.reserve(nv);
    for (long i = 0; i < nv; ++i) {
        if (cur >= lines.size())
            throw ParseError("counts declare " + std::to_string(nv) +
                             " vertices but only " + std::to_string(i) + " present");
        const TokenLine& tl = lines[cur++];
        if (tl.tokens.size() != 3)
            throw ParseError("line " + std::to_string(tl.line_no) +
                             ": expected 3 coordinates");
        vertices.push_back({parse_double(tl.tokens[0], tl.line_no),
                            parse_double(tl.tokens[1], tl.line_no),
                            parse_double(tl.tokens[2], tl.line_no)});
    }

    std::vector<std::vector<int>> faces;
    faces.reserve(nf);
    for (long i = 0; i < nf; ++i) {
        if (cur >= lines.size())
            throw ParseError("counts declare " + std::to_string(nf) +
                             " faces but only " + std::to_string(i) + " present");
        const TokenLine& tl = lines[cur++];
        const long k = parse_int(tl.tokens[0], tl.line_no);
        if (k < 3)
            throw ParseError("line " + std::to_string(tl.line_no) +
                             ": face with fewer than 3 vertices");
        if (static_cast<long>(tl.tokens.size()) != k + 1)
            throw ParseError("line " + std::to_string(tl.line_no) + ": face lists " +
                             std::to_string(tl.tokens.size() - 1) + " indices, declared " +
                             std::to_string(k));
        std::vector<int> loop;
        loop.reserve(k);
        for (long j = 1; j <= k; ++j) {
            const long idx = parse_int(tl.tokens[j], tl.line_no);
            if (idx < 0 || idx >= nv)
                throw IndexOutOfRange("line " + std::to_string(tl.line_no) +
                                      ": vertex index " + std::to_string(idx) +
                                      " out of range [0," + std::to_string(nv) + ")");
            loop.push_back(static_cast<int>(idx));
        }
        faces.push_back(std::move(loop));
    }
    if (cur != lines.size())
        throw ParseError("line " + std::to_string(lines[cur].line_no) +
                         ": trailing content after declared faces");

    return Polyhedron(std::move(vertices), std::move(faces), label);
}

Polyhedron load_off_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::string label = path;
    const auto slash = label.find_last_of("/\\");
    if (slash != std::string::npos) label.erase(0, slash + 1);
    const auto dot = label.rfind('.');
    if (dot != std::string::npos && dot > 0) label.erase(dot);
    return load_off(in, label);
}

void write_off(std::ostream& out, const Polyhedron& p) {
    // Count undirected edges for the header.
    std::map<std::pair<int, int>, int> edges;
    for (const Face& f : p.faces()) {
        const auto& loop = f.vertex_indices;
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const int u = loop[i];
            const int v = loop[(i + 1) % loop.size()];
            edges[{std::min(u, v), std::max(u, v)}]++;
        }
    }
    out << "OFF\n" << p.vertex_count() << ' ' << p.face_count() << ' '
        << edges.size() << '\n';
    char buf[96];
    for (const Vec3& v : p.vertices()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v[0], v[1], v[2]);
        out << buf;
    }
    for (const Face& f : p.faces()) {
        out << f.vertex_indices.size();
        for (int idx : f.vertex_indices) out << ' ' << idx;
        out << '\n';
    }
}

void write_off_file(const std::string& path, const Polyhedron& p) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    write_off(out, p);
}

BoundingBox bounding_box(const Polyhedron& p) {
    if (p.vertices().empty()) throw DegenerateBox("empty polyhedron");
    BoundingBox b;
    b.lo = b.hi = p.vertices()[0];
    for (const Vec3& v : p.vertices())
        for (int k = 0; k < 3; ++k) {
            b.lo[k] = std::min(b.lo[k], v[k]);
            b.hi[k] = std::max(b.hi[k], v[k]);
        }
    const double diam = b.diameter();
    for (int k = 0; k < 3; ++k)
        if (b.hi[k] - b.lo[k] < 1e-12 * diam)
            throw DegenerateBox("bounding box extent in axis " + std::to_string(k) +
                                " is degenerate");
    return b;
}

AffineMap affine_map(const BoundingBox& b) {
    AffineMap m;
    m.center = 0.5 * (b.lo + b.hi);
    m.half_extent = 0.5 * (b.hi - b.lo);
    m.jacobian = m.half_extent[0] * m.half_extent[1] * m.half_extent[2];
    return m;
}

ValidationReport validate(const Polyhedron& p, double tol_planarity,
                          double tol_closure) {
    ValidationReport r;
    const double diam = p.vertices().empty() ? 0.0 : [&] {
        BoundingBox b;
        b.lo = b.hi = p.vertices()[0];
        for (const Vec3& v : p.vertices())
            for (int k = 0; k < 3; ++k) {
                b.lo[k] = std::min(b.lo[k], v[k]);
                b.hi[k] = std::max(b.hi[k], v[k]);
            }
        return b.diameter();
    }();

    // Planarity: distance to the plane through the centroid with the
    // Newell normal (an upper bound on the best-fit deviation).
    bool planar_ok = true;
    r.face_planarity.reserve(p.face_count());
    for (const Face& f : p.faces()) {
        const std::vector<Vec3> pts = face_points(p, f);
        Vec3 centroid = {0.0, 0.0, 0.0};
        for (const Vec3& q : pts) centroid = centroid + q;
        centroid = (1.0 / static_cast<double>(pts.size())) * centroid;
        double dev = 0.0;
        if (f.area > 0.0)
            for (const Vec3& q : pts)
                dev = std::max(dev, std::abs(dot(q - centroid, f.unit_normal)));
        else
            r.faces_well_formed = false;
        r.face_planarity.push_back(dev);
        if (dev > tol_planarity * diam) planar_ok = false;
    }

    // Edge pairing: every undirected edge on exactly 2 faces, opposite
    // traversal directions.
    std::map<std::pair<int, int>, std::pair<int, int>> edges; // -> {count, dir sum}
    for (const Face& f : p.faces()) {
        const auto& loop = f.vertex_indices;
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const int u = loop[i];
            const int v = loop[(i + 1) % loop.size()];
            if (u == v) {
                r.faces_well_formed = false;
                r.face_detail = "degenerate edge (repeated vertex)";
                continue;
            }
            auto& e = edges[{std::min(u, v), std::max(u, v)}];
            e.first += 1;
            e.second += (u < v) ? 1 : -1;
        }
    }
    r.edge_pairing_ok = true;
    for (const auto& [key, e] : edges) {
        if (e.first != 2 || e.second != 0) {
            r.edge_pairing_ok = false;
            r.edge_pairing_detail =
                "edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                ") " + (e.first != 2 ? "on " + std::to_string(e.first) + " faces"
                                     : "traversed twice in the same direction");
            break;
        }
    }

    // Vector-area closure: sum of area-weighted outward normals vanishes
    // on a closed surface.
    Vec3 va = {0.0, 0.0, 0.0};
    double total_area = 0.0;
    for (const Face& f : p.faces()) {
        va = va + f.area * f.unit_normal;
        total_area += f.area;
    }
    r.vector_area_residual = norm(va);
    r.total_area = total_area;
    const bool closure_ok = r.vector_area_residual <= tol_closure * total_area;

    r.volume = (r.edge_pairing_ok && r.faces_well_formed
                    ? signed_divergence_volume(p)
                    : std::numeric_limits<double>::quiet_NaN());

    r.passed = planar_ok && r.edge_pairing_ok && closure_ok &&
               r.faces_well_formed && std::isfinite(r.volume) && r.volume > 0.0;
    return r;
}

double signed_divergence_volume(const Polyhedron& p) {
    // vol = sum_f n1_f * int_f x dS; degree-1 integrand, low order suffices.
    const int order = 3;
    KahanSum vol;
    for (int f = 0; f < static_cast<int>(p.face_count()); ++f) {
        if (std::abs(p.faces()[f].unit_normal[0]) <= 1e-14) continue;
        const FaceQuadrature q = face_quadrature(p, f, order);
        const double n1 = q.orientation * q.unit_normal[0];
        double acc = 0.0;
        for (std::size_t i = 0; i < q.points.size(); ++i)
            acc += q.weights[i] * q.points[i][0];
        vol.add(n1 * acc);
    }
    return vol.value();
}

double divergence_volume(const Polyhedron& p) {
    const double v = signed_divergence_volume(p);
    if (v <= 0.0)
        throw NegativeVolume("divergence volume " + std::to_string(v) +
                             " is not positive; faces are inward-oriented");
    return v;
}

std::vector<std::array<int, 3>> triangulate_polygon_2d(
    const std::vector<std::array<double, 2>>& poly) {
    const std::size_t m = poly.size();
    if (m < 3) throw DegenerateFace("polygon with fewer than 3 vertices");

    double dmax = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            dmax = std::max(dmax, std::hypot(poly[i][0] - poly[j][0],
                                             poly[i][1] - poly[j][1]));
    const double merge_tol = 1e-12 * dmax;

    auto cross2 = [](const std::array<double, 2>& o, const std::array<double, 2>& a,
                     const std::array<double, 2>& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };

    // Prune vertices lying on the segment joining their neighbours.
    std::vector<int> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = static_cast<int>(i);
    bool pruned = true;
    while (pruned && idx.size() > 3) {
        pruned = false;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const auto& prev = poly[idx[(i + idx.size() - 1) % idx.size()]];
            const auto& curr = poly[idx[i]];
            const auto& next = poly[idx[(i + 1) % idx.size()]];
            const double seg = std::hypot(next[0] - prev[0], next[1] - prev[1]);
            const double dist = (seg > 0.0) ? std::abs(cross2(prev, next, curr)) / seg
                                            : std::hypot(curr[0] - prev[0], curr[1] - prev[1]);
            if (dist <= merge_tol) {
                idx.erase(idx.begin() + i);
                pruned = true;
                break;
            }
        }
    }
    if (idx.size() < 3) throw DegenerateFace("polygon collapses under collinearity pruning");

    double signed2 = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const auto& a = poly[idx[i]];
        const auto& b = poly[idx[(i + 1) % idx.size()]];
        signed2 += a[0] * b[1] - a[1] * b[0];
    }
    if (signed2 <= 0.0)
        throw EarClippingFailure("polygon is not counter-clockwise in its frame");

    const double area_eps = 1e-14 * dmax * dmax;

    // Convex fast path: fan from the first remaining vertex.
    bool convex = true;
    for (std::size_t i = 0; i < idx.size() && convex; ++i) {
        const auto& a = poly[idx[i]];
        const auto& b = poly[idx[(i + 1) % idx.size()]];
        const auto& c = poly[idx[(i + 2) % idx.size()]];
        if (cross2(a, b, c) < -area_eps) convex = false;
    }
    std::vector<std::array<int, 3>> tris;
    tris.reserve(idx.size() - 2);
    if (convex) {
        for (std::size_t i = 1; i + 1 < idx.size(); ++i)
            tris.push_back({idx[0], idx[i], idx[i + 1]});
        return tris;
    }

    // Ear clipping with a strict-convexity ear test.
    auto point_in_triangle = [&](const std::array<double, 2>& q,
                                 const std::array<double, 2>& a,
                                 const std::array<double, 2>& b,
                                 const std::array<double, 2>& c) {
        const double d1 = cross2(a, b, q);
        const double d2 = cross2(b, c, q);
        const double d3 = cross2(c, a, q);
        return d1 >= -area_eps && d2 >= -area_eps && d3 >= -area_eps;
    };

    std::vector<int> work = idx;
    while (work.size() > 3) {
        bool clipped = false;
        for (std::size_t i = 0; i < work.size(); ++i) {
            const std::size_t ip = (i + work.size() - 1) % work.size();
            const std::size_t in = (i + 1) % work.size();
            const auto& a = poly[work[ip]];
            const auto& b = poly[work[i]];
            const auto& c = poly[work[in]];
            if (cross2(a, b, c) <= area_eps) continue; // reflex or flat
            bool contains_other = false;
            for (std::size_t j = 0; j < work.size(); ++j) {
                if (j == ip || j == i || j == in) continue;
                if (point_in_triangle(poly[work[j]], a, b, c)) {
                    contains_other = true;
                    break;
                }
            }
            if (contains_other) continue;
            tris.push_back({work[ip], work[i], work[in]});
            work.erase(work.begin() + i);
            clipped = true;
            break;
        }
        if (!clipped)
            throw EarClippingFailure("no ear found; polygon is self-intersecting");
    }
    tris.push_back({work[0], work[1], work[2]});
    return tris;
}

TriangulatedFace triangulate_face(const Polyhedron& p, int face_index) {
    if (face_index < 0 || face_index >= static_cast<int>(p.face_count()))
        throw IndexOutOfRange("face index " + std::to_string(face_index));
    const Face& f = p.faces()[face_index];
    const double diam = bounding_box(p).diameter();
    if (f.area < 1e-14 * diam * diam)
        throw DegenerateFace("face " + std::to_string(face_index) + " area " +
                             std::to_string(f.area) + " is degenerate");

    const auto& loop = f.vertex_indices;
    LocalFrame frame;
    frame.origin = p.vertex(loop[0]);
    // First edge of usable length sets e1.
    Vec3 e1 = {0.0, 0.0, 0.0};
    for (std::size_t i = 1; i < loop.size(); ++i) {
        const Vec3 d = p.vertex(loop[i]) - frame.origin;
        if (norm(d) > 1e-14 * diam) {
            e1 = normalized(d);
            break;
        }
    }
    if (norm(e1) == 0.0) throw DegenerateFace("face has coincident vertices");
    frame.e1 = e1;
    frame.e2 = normalized(cross(f.unit_normal, e1));

    std::vector<std::array<double, 2>> poly2d;
    poly2d.reserve(loop.size());
    for (int idx : loop) poly2d.push_back(frame.project(p.vertex(idx)));

    TriangulatedFace out;
    out.face_index = face_index;
    out.local_frame = frame;
    for (const auto& t : triangulate_polygon_2d(poly2d))
        out.triangles.push_back({loop[t[0]], loop[t[1]], loop[t[2]]});
    return out;
}

} // namespace quadbox
