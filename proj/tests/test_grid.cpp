// test_grid.cpp — junction polyform and grid lattice checks.

#include <doctest.h>

#include <cmath>

#include "ptam/grid.hpp"

using namespace ptam;

TEST_CASE("polyform constant") {
    CHECK(polyform_constant(4) == 1);
    CHECK(polyform_constant(7) == 2);
    CHECK(polyform_constant(12) == 3);
    // least k >= 1 with Re(omega^k) <= 0
    for (int n = 3; n <= 50; ++n) {
        int k = polyform_constant(n);
        CHECK(std::cos(2 * M_PI * k / n) <= 1e-12);
        if (k > 1) CHECK(std::cos(2 * M_PI * (k - 1) / n) > 0);
    }
}

TEST_CASE("junction polyform validates for n in 3..50") {
    for (int n = 3; n <= 50; ++n) {
        JunctionPolyform p = build_junction_polyform(n);
        // mirror symmetry: pixels 4..6 mirror pixels 1..3 across x = 1/2
        for (int m = 0; m < 3; ++m) {
            CHECK(p.pixels[m + 3].center.x ==
                  doctest::Approx(1.0 - p.pixels[m].center.x));
            CHECK(p.pixels[m + 3].center.y == doctest::Approx(p.pixels[m].center.y));
            CHECK(p.pixels[m + 3].orient != p.pixels[m].orient);
        }
    }
}

TEST_CASE("bounding box dimensions") {
    for (int n : {7, 8, 12, 20, 33}) {
        JunctionPolyform p = build_junction_polyform(n);
        std::vector<PolygonInstance> polys;
        for (const Placement& px : p.pixels) polys.push_back(realize(px));
        Rect box = bounding_rectangle(polys);
        double wk = 2 * M_PI * p.k / n;
        CHECK(box.max.x - box.min.x ==
              doctest::Approx(2 * (1 - std::cos(wk))).epsilon(1e-9));
        CHECK(box.max.y - box.min.y <= 4 * std::sin(wk) + 1e-12);
    }
}

TEST_CASE("basis vectors") {
    GridBasis b = grid_basis(7);
    CHECK(b.k == 2);
    CHECK(b.v.conj() == b.w);
    // pixel 5 of copy (0,0) and pixel 3 of copy (1,0) differ by exactly 1
    CycloNum p5 = *b.polyform.pixels[4].exact_center;
    CycloNum p3 = *b.polyform.pixels[2].exact_center + b.v;
    CHECK(p3 - p5 == CycloNum::integer(7, 1));
    // pixel 6 of copy (0,0) and pixel 2 of copy (0,1) differ by exactly 1
    CycloNum p6 = *b.polyform.pixels[5].exact_center;
    CycloNum p2 = *b.polyform.pixels[1].exact_center + b.w;
    CHECK(p2 - p6 == CycloNum::integer(7, 1));
}

TEST_CASE("grid generation builds tile by tile") {
    GridAssembly g = generate_grid(7, 3, 3);
    CHECK(g.assembly->size() == 54);
    GridAssembly one = generate_grid(7, 1, 1);
    CHECK(one.assembly->size() == 6);
}

TEST_CASE("on_grid accepts generated placements, rejects perturbations") {
    GridAssembly g = generate_grid(9, 2, 2);
    for (const PlacedTile& t : g.assembly->tiles()) {
        CHECK(on_grid(t.placement, g.basis));
        Placement shifted = Placement::approx(
            t.placement.shape, t.placement.orient,
            {t.placement.center.x + 1e-3, t.placement.center.y}, 0.0);
        CHECK_FALSE(on_grid(shifted, g.basis));
        Placement flipped = Placement::exact(
            t.placement.shape,
            t.placement.orient == Orientation::standard ? Orientation::negated
                                                        : Orientation::standard,
            *t.placement.exact_center);
        CHECK_FALSE(on_grid(flipped, g.basis));
    }
    // float placements matching the lattice are accepted
    const Placement& p0 = g.assembly->tiles()[10].placement;
    Placement f = Placement::approx(p0.shape, p0.orient, p0.center, 0.0);
    CHECK(on_grid(f, g.basis));
    // half-pixel shift is off-lattice
    Placement h = Placement::approx(p0.shape, p0.orient,
                                    {p0.center.x + 0.5, p0.center.y}, 0.0);
    CHECK_FALSE(on_grid(h, g.basis));
}

TEST_CASE("grid coordinates round-trip") {
    GridAssembly g = generate_grid(12, 2, 3);
    int count[6] = {0};
    for (const PlacedTile& t : g.assembly->tiles()) {
        auto c = grid_coord(t.placement, g.basis);
        REQUIRE(c.has_value());
        CHECK(c->i >= 0);
        CHECK(c->i < 2);
        CHECK(c->j >= 0);
        CHECK(c->j < 3);
        count[c->pixel]++;
    }
    for (int m = 0; m < 6; ++m) CHECK(count[m] == 6);
}
