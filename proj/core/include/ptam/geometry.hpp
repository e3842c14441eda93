// geometry.hpp — regular-polygon tiles in the plane.
//
// Tiles are regular n-gons with apothem 1/2, so tiles abutting along a full
// edge have centers exactly distance 1 apart.  A tile in standard
// orientation centered at the origin has side s_0 vertical with midpoint
// (1/2, 0); side s_m faces direction omega^m.  The negated orientation is
// the reflection across the vertical axis (equivalently the central
// inversion of the vertex set); side s'_m of a negated tile faces -omega^m.

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "ptam/cyclotomic.hpp"

namespace ptam {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const;
};

enum class Orientation { standard, negated };

struct RegularPolygonShape {
    int sides = 0;  // n >= 3

    explicit RegularPolygonShape(int n);
    double apothem() const { return 0.5; }
    double circumradius() const;  // 1/(2 cos(pi/n))
    // Center-to-center distance of two tiles sharing a full edge.
    double unit_distance() const { return 1.0; }
};

// A placed tile.  Exact placements carry a CycloNum center (an integer
// polynomial in omega_n); float placements carry a double pair and an
// arbitrary extra rotation (used only for externally loaded scenes).
struct Placement {
    RegularPolygonShape shape;
    Orientation orient = Orientation::standard;
    std::optional<CycloNum> exact_center;  // exact mode
    Vec2 center{};                         // always valid (derived in exact mode)
    double extra_rotation = 0.0;           // radians; float mode only

    static Placement exact(const RegularPolygonShape& shape, Orientation o,
                           const CycloNum& center);
    static Placement approx(const RegularPolygonShape& shape, Orientation o,
                            Vec2 center, double extra_rotation = 0.0);
    bool is_exact() const { return exact_center.has_value(); }
};

// Realized polygon: counter-clockwise vertex list.
struct PolygonInstance {
    std::vector<Vec2> vertices;
};

// Realizes a placement to vertices; coordinate error <= 1e-12 over the
// supported size range.
PolygonInstance realize(const Placement& p);

// Separating-axis test for convex polygons.  Contact along an edge or at a
// vertex (penetration <= eps) counts as NOT overlapping.
bool interiors_overlap(const PolygonInstance& a, const PolygonInstance& b,
                       double eps = 1e-9);

// Signed penetration depth: positive when interiors overlap, <= 0 when
// separated or just touching (max over separating axes of the overlap
// extent's minimum).
double penetration_depth(const PolygonInstance& a, const PolygonInstance& b);

// True when some side of a coincides (endpoint-to-endpoint) with a side of
// b within tol.
bool share_full_edge(const PolygonInstance& a, const PolygonInstance& b,
                     double tol = 1e-9);

struct Rect {
    Vec2 min;
    Vec2 max;
};

Rect bounding_rectangle(const std::vector<PolygonInstance>& polys);

// Distance-based fast classification for same-shape exact placements:
// center distance >= 2*circumradius certainly disjoint, < 1 (twice the
// apothem) certainly overlapping; in between, fall back to SAT.
bool placements_overlap(const Placement& a, const Placement& b, double eps = 1e-9);

}  // namespace ptam
