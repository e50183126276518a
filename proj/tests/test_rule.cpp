#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "quadbox/errors.hpp"
#include "quadbox/oracle.hpp"
#include "quadbox/rule.hpp"
#include "quadbox/shapes.hpp"
#include "support/poly_family.hpp"

using namespace quadbox;
namespace ts = quadbox::testsupport;

namespace {

/// Relative error with the spec's scaling: denominator is
/// vol(Omega) * max over the bounding box of |x^a y^b z^c|.
double scaled_rel_error(double got, double exact, const BoundingBox& bb, double vol,
                        const Triple& t) {
    auto axis_max = [&](int k, int e) {
        return std::pow(std::max(std::abs(bb.lo[k]), std::abs(bb.hi[k])), e);
    };
    const double denom = vol * axis_max(0, t.a) * axis_max(1, t.b) * axis_max(2, t.c);
    return std::abs(got - exact) / denom;
}

double integrate_monomial(const QuadratureRule& rule, const Triple& t) {
    std::vector<double> samples;
    samples.reserve(rule.size());
    for (const Vec3& p : rule.nodes)
        samples.push_back(std::pow(p[0], t.a) * std::pow(p[1], t.b) *
                          std::pow(p[2], t.c));
    return quadbox::apply(rule, samples);
}

} // namespace

TEST_CASE("build_rule: weights sum to the volume") {
    RuleCache cache;
    for (int n : {0, 1, 4, 9}) {
        const QuadratureRule r = build_rule(shapes::make_cube(), n, cache);
        CHECK(r.size() == static_cast<std::size_t>((n + 1) * (n + 1) * (n + 1)));
        CHECK(r.volume_estimate == doctest::Approx(8.0).epsilon(1e-12));
    }
    const QuadratureRule tet = build_rule(shapes::make_tetrahedron(), 4, cache);
    CHECK(tet.volume_estimate == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("build_rule: nodes inside the physical bounding box") {
    RuleCache cache;
    const Polyhedron p = shapes::make_lprism();
    const BoundingBox bb = bounding_box(p);
    const QuadratureRule r = build_rule(p, 6, cache);
    for (const Vec3& node : r.nodes)
        for (int k = 0; k < 3; ++k) {
            CHECK(node[k] > bb.lo[k]);
            CHECK(node[k] < bb.hi[k]);
        }
}

TEST_CASE("build_rule: degree cap") {
    RuleCache cache;
    CHECK_THROWS_AS(build_rule(shapes::make_cube(), 31, cache), DegreeCapExceeded);
    CHECK_THROWS_AS(build_rule(shapes::make_cube(), -1, cache), DomainError);
}

TEST_CASE("L-prism rule integrates all monomials to the union value") {
    RuleCache cache;
    const Polyhedron p = shapes::make_lprism();
    const oracle::BoxUnion u = *shapes::box_union_for("lprism");
    const BoundingBox bb = bounding_box(p);
    const double vol = 3.0;
    for (int n : {4, 8, 12}) {
        const QuadratureRule r = build_rule(p, n, cache);
        const MultiIndexSet idx(n);
        double worst = 0.0;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            const Triple& t = idx[j];
            const double exact = oracle::union_monomial_integral(u, t.a, t.b, t.c);
            worst = std::max(worst,
                             scaled_rel_error(integrate_monomial(r, t), exact, bb, vol, t));
        }
        CHECK(worst <= 1e-11);
    }
}

TEST_CASE("apply basics") {
    RuleCache cache;
    const QuadratureRule r = build_rule(shapes::make_cube(), 3, cache);
    std::vector<double> ones(r.size(), 1.0);
    CHECK(quadbox::apply(r, ones) == doctest::Approx(8.0).epsilon(1e-12));
    std::vector<double> zeros(r.size(), 0.0);
    CHECK(quadbox::apply(r, zeros) == 0.0);
    CHECK_THROWS_AS(quadbox::apply(r, std::vector<double>(5, 1.0)), LengthMismatch);

    // xyz over [0,1]^3 at n >= 3.
    const QuadratureRule r01 =
        build_rule(shapes::make_box({0, 0, 0}, {1, 1, 1}, "cube01"), 3, cache);
    std::vector<double> xyz;
    for (const Vec3& p : r01.nodes) xyz.push_back(p[0] * p[1] * p[2]);
    CHECK(std::abs(quadbox::apply(r01, xyz) - 0.125) <= 1e-12);
}

TEST_CASE("stability report") {
    RuleCache cache;
    for (const char* name : {"cube", "tet", "lprism"}) {
        const QuadratureRule r = build_rule(shapes::by_name(name), 8, cache);
        const StabilityReport s = stability_report(r);
        CHECK(s.ratio >= 1.0 - 1e-10);
        CHECK(s.ratio <= 3.0);
        CHECK(s.sum_abs == doctest::Approx(s.ratio * r.volume_estimate).epsilon(1e-14));
        if (s.negative_count > 0) CHECK(s.min_weight < 0.0);
    }
}

TEST_CASE("stability ratio trend on the L-prism") {
    RuleCache cache;
    const Polyhedron p = shapes::make_lprism();
    const double r4 = build_rule(p, 4, cache).stability_ratio;
    const double r12 = build_rule(p, 12, cache).stability_ratio;
    CHECK(r4 <= 3.0);
    CHECK(r12 <= r4);
}

TEST_CASE("error bound factor") {
    RuleCache cache;
    const QuadratureRule cube = build_rule(shapes::make_cube(), 6, cache);
    const double factor = error_bound_factor(cube);
    const StabilityReport s = stability_report(cube);
    CHECK(factor >= 16.0 - 1e-9);
    CHECK(factor <= 8.0 + s.sum_abs + 1e-9);
    // factor = vol * (1 + ratio), up to roundoff in the two evaluations.
    CHECK(factor == doctest::Approx(cube.volume_estimate * (1.0 + s.ratio))
                        .epsilon(4e-16));

    const QuadratureRule lp = build_rule(shapes::make_lprism(), 12, cache);
    const double lf = error_bound_factor(lp);
    CHECK(lf >= 6.0);
    CHECK(lf <= 12.0);
}

TEST_CASE("cache transparency: shared vs fresh caches are bitwise equal") {
    RuleCache shared;
    const Polyhedron a = shapes::make_lprism();
    const Polyhedron b = shapes::make_hull20();
    const int n = 7;
    const QuadratureRule ra_shared = build_rule(a, n, shared);
    const QuadratureRule rb_shared = build_rule(b, n, shared);

    RuleCache fresh_a, fresh_b;
    const QuadratureRule ra = build_rule(a, n, fresh_a);
    const QuadratureRule rb = build_rule(b, n, fresh_b);

    REQUIRE(ra.size() == ra_shared.size());
    REQUIRE(rb.size() == rb_shared.size());
    CHECK(std::memcmp(ra.weights.data(), ra_shared.weights.data(),
                      ra.weights.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(rb.weights.data(), rb_shared.weights.data(),
                      rb.weights.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(ra.nodes.data(), ra_shared.nodes.data(),
                      ra.nodes.size() * sizeof(Vec3)) == 0);
    CHECK(std::memcmp(rb.nodes.data(), rb_shared.nodes.data(),
                      rb.nodes.size() * sizeof(Vec3)) == 0);
}

TEST_CASE("cache entries are built once per degree") {
    RuleCache cache;
    CHECK_FALSE(cache.contains(5));
    const auto e1 = cache.get(5);
    CHECK(cache.contains(5));
    const auto e2 = cache.get(5);
    CHECK(e1.get() == e2.get());
}

TEST_CASE("affine covariance: scaled and translated L-prism") {
    const double s = 2.75;
    const Vec3 shift = {-1.3, 0.4, 2.2};
    const Polyhedron base = shapes::make_lprism();
    std::vector<Vec3> verts;
    for (const Vec3& v : base.vertices()) verts.push_back(shift + s * v);
    std::vector<std::vector<int>> loops;
    for (const Face& f : base.faces()) loops.push_back(f.vertex_indices);
    const Polyhedron moved(verts, loops, "lprism-moved");

    // Transform the analytic union the same way; the rule must match it.
    oracle::BoxUnion u = *shapes::box_union_for("lprism");
    for (auto& box : u.boxes) {
        box.lo = shift + s * box.lo;
        box.hi = shift + s * box.hi;
    }
    RuleCache cache;
    const int n = 8;
    const QuadratureRule r = build_rule(moved, n, cache);
    const BoundingBox bb = bounding_box(moved);
    const double vol = oracle::union_monomial_integral(u, 0, 0, 0);
    CHECK(r.volume_estimate == doctest::Approx(vol).epsilon(1e-12));

    const MultiIndexSet idx(n);
    double worst = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        const Triple& t = idx[j];
        const double exact = oracle::union_monomial_integral(u, t.a, t.b, t.c);
        worst = std::max(worst,
                         scaled_rel_error(integrate_monomial(r, t), exact, bb, vol, t));
    }
    CHECK(worst <= 1e-11);
}

TEST_CASE("random linear-power integrands at desk scale") {
    RuleCache cache;
    const Polyhedron p = shapes::make_lprism();
    const oracle::BoxUnion u = *shapes::box_union_for("lprism");
    const int n = 8;
    const QuadratureRule r = build_rule(p, n, cache);
    const std::vector<double> monomials = oracle::union_monomials_all(u, n);

    std::mt19937 gen(1234);
    double log_sum = 0.0;
    int count = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const ts::LinearPower g = ts::random_linear_power(gen, n);
        const double exact = g.exact_integral(monomials);
        const double got = ts::apply_to_function(r, g);
        const double rel = std::abs(got - exact) / std::abs(exact);
        CHECK(rel <= 1e-9);
        log_sum += std::log10(std::max(rel, 1e-18));
        ++count;
    }
    CHECK(log_sum / count <= -12.0);
}

TEST_CASE("volume estimate is consistent with the divergence volume") {
    RuleCache cache;
    for (const char* name : {"cube", "tet", "lprism", "holedprism", "hull20"}) {
        const Polyhedron p = shapes::by_name(name);
        const double vol = divergence_volume(p);
        const QuadratureRule r = build_rule(p, 6, cache);
        CHECK(std::abs(r.volume_estimate - vol) <= 1e-12 * vol);
    }
}
