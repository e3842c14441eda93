// test_geometry.cpp — realization, overlap predicates, edge sharing.

#include "doctest.h"
#include "ptam/geometry.hpp"

#include <cmath>

using namespace ptam;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("realize: standard heptagon has side s0 vertical at x = 1/2") {
    RegularPolygonShape hept(7);
    Placement p = Placement::exact(hept, Orientation::standard, CycloNum(7));
    PolygonInstance poly = realize(p);
    REQUIRE(poly.vertices.size() == 7);
    // first and last vertices bound side s0
    const Vec2& a = poly.vertices[0];
    const Vec2& b = poly.vertices[6];
    CHECK(a.x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(b.x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a.y == doctest::Approx(-b.y).epsilon(1e-12));
    CHECK(a.norm() == doctest::Approx(hept.circumradius()).epsilon(1e-12));
}

TEST_CASE("negated orientation mirrors across the vertical axis") {
    RegularPolygonShape hept(7);
    PolygonInstance s = realize(Placement::exact(hept, Orientation::standard, CycloNum(7)));
    PolygonInstance n = realize(Placement::exact(hept, Orientation::negated, CycloNum(7)));
    // every mirrored standard vertex appears among the negated vertices
    for (const Vec2& v : s.vertices) {
        bool found = false;
        for (const Vec2& w : n.vertices)
            if (std::abs(w.x + v.x) < 1e-12 && std::abs(w.y - v.y) < 1e-12) found = true;
        CHECK(found);
    }
}

TEST_CASE("abutting tiles share a full edge and do not overlap") {
    for (int n : {5, 7, 8, 12}) {
        RegularPolygonShape shape(n);
        for (int m = 0; m < n; ++m) {
            Placement a = Placement::exact(shape, Orientation::standard, CycloNum(n));
            Placement b = Placement::exact(shape, Orientation::negated,
                                           CycloNum::root_power(n, m));
            PolygonInstance pa = realize(a), pb = realize(b);
            CHECK(share_full_edge(pa, pb));
            CHECK_FALSE(interiors_overlap(pa, pb));
            CHECK(std::abs(penetration_depth(pa, pb)) < 1e-9);
        }
    }
}

TEST_CASE("overlap classification across center distance") {
    RegularPolygonShape shape(7);
    Placement a = Placement::approx(shape, Orientation::standard, {0, 0});
    // closer than twice the apothem: overlap
    Placement close = Placement::approx(shape, Orientation::standard, {0.9, 0});
    CHECK(placements_overlap(a, close));
    // beyond twice the circumradius: disjoint
    Placement far = Placement::approx(shape, Orientation::negated, {2.5, 0});
    CHECK_FALSE(placements_overlap(a, far));
    // vertex-to-vertex contact along x: distance 2R, non-overlap
    double two_r = 2 * shape.circumradius();
    Placement touch = Placement::approx(shape, Orientation::negated, {two_r, 0});
    CHECK_FALSE(placements_overlap(a, touch));
}

TEST_CASE("rotated float placements overlap test") {
    RegularPolygonShape sq(4);
    Placement a = Placement::approx(sq, Orientation::standard, {0, 0});
    // 45-degree rotated square whose corner pokes into a
    Placement b = Placement::approx(sq, Orientation::standard, {1.05, 0}, kPi / 4);
    CHECK(interiors_overlap(realize(a), realize(b)));
    Placement c = Placement::approx(sq, Orientation::standard, {1.3, 0}, kPi / 4);
    CHECK_FALSE(interiors_overlap(realize(a), realize(c)));
}

TEST_CASE("bounding rectangle") {
    RegularPolygonShape sq(4);
    std::vector<PolygonInstance> polys{
        realize(Placement::approx(sq, Orientation::standard, {0, 0})),
        realize(Placement::approx(sq, Orientation::standard, {3, 2}))};
    Rect r = bounding_rectangle(polys);
    double rc = sq.circumradius();
    CHECK(r.min.x == doctest::Approx(-rc * std::cos(kPi / 4)));
    CHECK(r.max.x == doctest::Approx(3 + rc * std::cos(kPi / 4)));
    CHECK(r.max.y == doctest::Approx(2 + rc * std::cos(kPi / 4)));
}
