#include <doctest.h>

#include <cmath>

#include "quadbox/chebyshev.hpp"
#include "quadbox/errors.hpp"
#include "quadbox/oracle.hpp"
#include "quadbox/shapes.hpp"

using namespace quadbox;
using namespace quadbox::oracle;

TEST_CASE("box_monomial_integral closed forms") {
    CHECK(box_monomial_integral({0, 0, 0}, {1, 1, 1}, 1, 1, 1) ==
          doctest::Approx(0.125).epsilon(1e-15));
    CHECK(box_monomial_integral({-1, -1, -1}, {1, 1, 1}, 3, 0, 2) == 0.0);
    CHECK(box_monomial_integral({-1, -1, -1}, {1, 1, 1}, 0, 1, 0) == 0.0);
    CHECK(box_monomial_integral({0, 0, 0}, {2, 1, 1}, 2, 0, 0) ==
          doctest::Approx(8.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("union_monomial_integral on the registered shapes") {
    const BoxUnion lprism = *shapes::box_union_for("lprism");
    CHECK(union_monomial_integral(lprism, 0, 0, 0) == doctest::Approx(3.0));

    const BoxUnion holed = *shapes::box_union_for("holedprism");
    CHECK(union_monomial_integral(holed, 0, 0, 0) == doctest::Approx(24.0));
    CHECK(union_monomial_integral(holed, 1, 0, 0) == doctest::Approx(36.0));
}

TEST_CASE("convex_tet_oracle closed forms") {
    CHECK(convex_tet_oracle(shapes::make_cube(), 2, 0, 0) ==
          doctest::Approx(8.0 / 3.0).epsilon(1e-13));
    const Polyhedron tet = shapes::make_tetrahedron();
    CHECK(convex_tet_oracle(tet, 0, 0, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(convex_tet_oracle(tet, 1, 0, 0) == doctest::Approx(1.0 / 24.0).epsilon(1e-13));
}

TEST_CASE("convex_tet_oracle rejects nonconvex input") {
    // C-shaped prism: the vertex centroid lands inside the notch, so the
    // fan contains genuinely negative tetrahedra. (The L-prism would not
    // do: it is star-shaped around its own reentrant edge.)
    const std::array<std::array<double, 2>, 8> c_poly = {{{0, 0},
                                                          {4, 0},
                                                          {4, 1},
                                                          {1, 1},
                                                          {1, 3},
                                                          {4, 3},
                                                          {4, 4},
                                                          {0, 4}}};
    std::vector<Vec3> verts;
    for (double z : {0.0, 1.0})
        for (const auto& q : c_poly) verts.push_back({q[0], q[1], z});
    std::vector<std::vector<int>> faces;
    faces.push_back({7, 6, 5, 4, 3, 2, 1, 0});
    faces.push_back({8, 9, 10, 11, 12, 13, 14, 15});
    for (int i = 0; i < 8; ++i) {
        const int j = (i + 1) % 8;
        faces.push_back({i, j, j + 8, i + 8});
    }
    const Polyhedron cprism(verts, faces, "cprism");
    REQUIRE(validate(cprism).passed);
    CHECK_THROWS_AS(convex_tet_oracle(cprism, 0, 0, 0), NonConvex);
}

TEST_CASE("tet oracle self-consistency against box formulas") {
    const Polyhedron box = shapes::make_box({-0.4, 0.2, -1.1}, {0.9, 1.7, 0.3});
    const int n = 20;
    const std::vector<double> tet_vals = convex_tet_oracle_all(box, n);
    const MultiIndexSet idx(n);
    REQUIRE(tet_vals.size() == idx.size());
    const double vol = box_monomial_integral(box.vertices()[0], box.vertices()[6], 0, 0, 0);
    for (std::size_t j = 0; j < idx.size(); ++j) {
        const Triple& t = idx[j];
        const double exact =
            box_monomial_integral({-0.4, 0.2, -1.1}, {0.9, 1.7, 0.3}, t.a, t.b, t.c);
        const double scale = std::max(std::abs(exact), vol * 1e-3);
        CHECK(std::abs(tet_vals[j] - exact) <= 1e-12 * std::max(scale, 1.0));
    }
}

TEST_CASE("single-monomial and batched tet oracles agree") {
    const Polyhedron hull = shapes::make_hull20();
    const int n = 6;
    const std::vector<double> all = convex_tet_oracle_all(hull, n);
    const MultiIndexSet idx(n);
    for (std::size_t j = 0; j < idx.size(); j += 7) {
        const Triple& t = idx[j];
        CHECK(all[j] ==
              doctest::Approx(convex_tet_oracle(hull, t.a, t.b, t.c)).epsilon(1e-12));
    }
}
