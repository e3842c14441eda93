// geometry.cpp — realization and convex-polygon predicates.

#include "ptam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ptam {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

double Vec2::norm() const { return std::sqrt(x * x + y * y); }

RegularPolygonShape::RegularPolygonShape(int n) : sides(n) {
    if (n < 3) throw std::invalid_argument("RegularPolygonShape: need n >= 3");
}

double RegularPolygonShape::circumradius() const {
    return 0.5 / std::cos(kPi / sides);
}

Placement Placement::exact(const RegularPolygonShape& shape, Orientation o,
                           const CycloNum& center) {
    if (center.order() != shape.sides)
        throw std::invalid_argument("Placement::exact: center order must match shape");
    Placement p{shape, o, center, {}, 0.0};
    std::complex<double> z = center.to_complex();
    p.center = {z.real(), z.imag()};
    return p;
}

Placement Placement::approx(const RegularPolygonShape& shape, Orientation o,
                            Vec2 center, double extra_rotation) {
    return Placement{shape, o, std::nullopt, center, extra_rotation};
}

PolygonInstance realize(const Placement& p) {
    int n = p.shape.sides;
    double r = p.shape.circumradius();
    PolygonInstance poly;
    poly.vertices.reserve(n);
    // Standard: vertices at angles (2j+1)pi/n, CCW; negated is the central
    // inversion of the same set (equal to the vertical-axis mirror because
    // the standard shape is symmetric across the horizontal axis).
    double flip = (p.orient == Orientation::standard) ? 0.0 : kPi;
    for (int j = 0; j < n; ++j) {
        double ang = flip + (2.0 * j + 1.0) * kPi / n + p.extra_rotation;
        poly.vertices.push_back(
            {p.center.x + r * std::cos(ang), p.center.y + r * std::sin(ang)});
    }
    return poly;
}

namespace {

// Project a polygon on an axis; returns [min, max].
std::pair<double, double> project(const PolygonInstance& p, const Vec2& axis) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Vec2& v : p.vertices) {
        double d = v.dot(axis);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return {lo, hi};
}

// Minimum overlap extent over the edge normals of `edges_of`, projected
// against both polygons.  Negative means a separating axis was found.
double min_extent_over_normals(const PolygonInstance& edges_of,
                               const PolygonInstance& a,
                               const PolygonInstance& b) {
    double best = std::numeric_limits<double>::infinity();
    size_t n = edges_of.vertices.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 e = edges_of.vertices[(i + 1) % n] - edges_of.vertices[i];
        double len = e.norm();
        if (len == 0.0) continue;
        Vec2 axis{-e.y / len, e.x / len};
        auto [alo, ahi] = project(a, axis);
        auto [blo, bhi] = project(b, axis);
        double extent = std::min(ahi, bhi) - std::max(alo, blo);
        best = std::min(best, extent);
    }
    return best;
}

}  // namespace

double penetration_depth(const PolygonInstance& a, const PolygonInstance& b) {
    double da = min_extent_over_normals(a, a, b);
    double db = min_extent_over_normals(b, a, b);
    return std::min(da, db);
}

bool interiors_overlap(const PolygonInstance& a, const PolygonInstance& b, double eps) {
    return penetration_depth(a, b) > eps;
}

bool share_full_edge(const PolygonInstance& a, const PolygonInstance& b, double tol) {
    size_t na = a.vertices.size(), nb = b.vertices.size();
    for (size_t i = 0; i < na; ++i) {
        const Vec2& p0 = a.vertices[i];
        const Vec2& p1 = a.vertices[(i + 1) % na];
        for (size_t j = 0; j < nb; ++j) {
            const Vec2& q0 = b.vertices[j];
            const Vec2& q1 = b.vertices[(j + 1) % nb];
            bool same = (p0 - q0).norm() <= tol && (p1 - q1).norm() <= tol;
            bool swapped = (p0 - q1).norm() <= tol && (p1 - q0).norm() <= tol;
            if (same || swapped) return true;
        }
    }
    return false;
}

Rect bounding_rectangle(const std::vector<PolygonInstance>& polys) {
    Rect r{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
           {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
    for (const auto& p : polys) {
        for (const Vec2& v : p.vertices) {
            r.min.x = std::min(r.min.x, v.x);
            r.min.y = std::min(r.min.y, v.y);
            r.max.x = std::max(r.max.x, v.x);
            r.max.y = std::max(r.max.y, v.y);
        }
    }
    return r;
}

bool placements_overlap(const Placement& a, const Placement& b, double eps) {
    if (a.shape.sides == b.shape.sides && a.extra_rotation == 0.0 &&
        b.extra_rotation == 0.0) {
        // Distance shortcut for same regular shape.
        double d = (a.center - b.center).norm();
        double two_r = 2.0 * a.shape.circumradius();
        if (d >= two_r - 1e-12) return false;   // certainly disjoint
        if (d < 1.0 - 1e-9) return true;        // inside twice the apothem
    }
    return interiors_overlap(realize(a), realize(b), eps);
}

}  // namespace ptam
