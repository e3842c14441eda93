// grid.cpp — junction polyform construction and grid generation.

#include "ptam/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace ptam {

namespace {

const char* kPixelGlueA = "a";
const char* kPixelGlueB = "b";

std::runtime_error grid_error(const std::string& what) {
    return std::runtime_error("grid construction: " + what);
}

}  // namespace

int polyform_constant(int n) {
    if (n < 3) throw std::invalid_argument("polyform_constant: n >= 3 required");
    // Re(omega^k) <= 0 first at k/n >= 1/4.
    return (n + 3) / 4;
}

JunctionPolyform build_junction_polyform(int n) {
    int k = polyform_constant(n);
    RegularPolygonShape shape(n);
    auto at = [&](long long j) { return CycloNum::root_power(n, j); };
    CycloNum one = CycloNum::integer(n, 1);

    JunctionPolyform p{
        n, k,
        {Placement::exact(shape, Orientation::standard, CycloNum(n)),
         Placement::exact(shape, Orientation::negated, at(k)),
         Placement::exact(shape, Orientation::negated, at(n - k)),
         Placement::exact(shape, Orientation::negated, one),
         Placement::exact(shape, Orientation::standard, one - at(n - k)),
         Placement::exact(shape, Orientation::standard, one - at(k))}};

    std::vector<PolygonInstance> poly;
    for (int i = 0; i < 6; ++i) poly.push_back(realize(p.pixels[i]));
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (interiors_overlap(poly[i], poly[j]))
                throw grid_error("pixels " + std::to_string(i + 1) + " and " +
                                 std::to_string(j + 1) + " overlap for n=" +
                                 std::to_string(n));
    // Spanning adjacencies of the cluster: 1-2, 1-3, 1-4, 4-5, 4-6.
    const int edges[5][2] = {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {3, 5}};
    for (auto& e : edges)
        if (!share_full_edge(poly[e[0]], poly[e[1]]))
            throw grid_error("pixels " + std::to_string(e[0] + 1) + " and " +
                             std::to_string(e[1] + 1) + " do not share an edge for n=" +
                             std::to_string(n));
    return p;
}

GridBasis grid_basis(int n) {
    GridBasis b;
    b.n = n;
    b.k = polyform_constant(n);
    b.polyform = build_junction_polyform(n);
    CycloNum two = CycloNum::integer(n, 2);
    b.v = two - CycloNum::root_power(n, n - b.k).scaled(2);
    b.w = two - CycloNum::root_power(n, b.k).scaled(2);

    // Non-overlap audit over nearby lattice offsets: each offset clears the
    // polyform's bounding box horizontally or vertically.
    std::vector<PolygonInstance> polys;
    for (const Placement& px : b.polyform.pixels) polys.push_back(realize(px));
    Rect box = bounding_rectangle(polys);
    double width = box.max.x - box.min.x;
    double height = box.max.y - box.min.y;
    std::complex<double> v = b.v.to_complex(), w = b.w.to_complex();
    for (int a = -3; a <= 3; ++a) {
        for (int c = -3; c <= 3; ++c) {
            if (a == 0 && c == 0) continue;
            std::complex<double> off = double(a) * v + double(c) * w;
            if (std::abs(off.real()) >= width - 1e-9) continue;
            if (std::abs(off.imag()) >= height - 1e-9) continue;
            throw grid_error("offset " + std::to_string(a) + "v+" + std::to_string(c) +
                             "w does not clear the bounding box for n=" + std::to_string(n));
        }
    }
    return b;
}

namespace {

// Tile types for the six pixels.  Internal glues join pixel 1 to 2/3/4 and
// pixel 4 to 5/6; ports "a" (pixel 5 -> pixel 3 of the v-neighbor) and "b"
// (pixel 6 -> pixel 2 of the w-neighbor) join polyform copies.
TileSystem grid_tile_system(const GridBasis& basis) {
    int n = basis.n, k = basis.k;
    TileSystem sys;
    sys.n = n;
    sys.temperature = 1;
    auto add = [&](const char* name, Orientation o,
                   std::initializer_list<std::pair<int, const char*>> glues) {
        TileType t;
        t.name = name;
        t.shape_sides = n;
        t.orientation = o;
        for (auto& [side, label] : glues) t.glues[side] = {label, 1};
        sys.add_type(std::move(t));
    };
    add("g1", Orientation::standard, {{0, "p14"}, {k, "p12"}, {n - k, "p13"}});
    add("g2", Orientation::negated, {{0, kPixelGlueB}, {k, "p12"}});
    add("g3", Orientation::negated, {{0, kPixelGlueA}, {n - k, "p13"}});
    add("g4", Orientation::negated, {{0, "p14"}, {k, "p46"}, {n - k, "p45"}});
    add("g5", Orientation::standard, {{0, kPixelGlueA}, {n - k, "p45"}});
    add("g6", Orientation::standard, {{0, kPixelGlueB}, {k, "p46"}});
    return sys;
}

}  // namespace

GridAssembly generate_grid(int n, int extent_i, int extent_j) {
    if (extent_i < 1 || extent_j < 1)
        throw std::invalid_argument("generate_grid: extents must be >= 1");
    GridAssembly out;
    out.basis = grid_basis(n);
    out.system = std::make_unique<TileSystem>(grid_tile_system(out.basis));

    auto pixel_placement = [&](long long i, long long j, int m) {
        const Placement& base = out.basis.polyform.pixels[m];
        CycloNum c = *base.exact_center + out.basis.v.scaled(i) + out.basis.w.scaled(j);
        return Placement::exact(base.shape, base.orient, c);
    };

    // Seed at the southwest pixel (pixel 3) of the (0,0) copy; each later
    // polyform is entered through its "b" port pixel (j > 0) or "a" port
    // pixel (j == 0), so the block is buildable one tile at a time.
    out.system->seed.push_back({2, pixel_placement(0, 0, 2)});
    out.assembly = std::make_unique<Assembly>(out.system.get());

    for (long long i = 0; i < extent_i; ++i) {
        for (long long j = 0; j < extent_j; ++j) {
            std::vector<int> order;
            if (i == 0 && j == 0) order = {0, 1, 3, 4, 5};
            else if (j > 0) order = {1, 0, 2, 3, 4, 5};
            else order = {2, 0, 1, 3, 4, 5};
            for (int m : order) {
                Placement p = pixel_placement(i, j, m);
                if (!out.assembly->attach(m, p))
                    throw grid_error("pixel " + std::to_string(m + 1) + " of copy (" +
                                     std::to_string(i) + "," + std::to_string(j) +
                                     ") failed to attach for n=" + std::to_string(n));
            }
        }
    }
    return out;
}

std::optional<GridCoord> grid_coord(const Placement& p, const GridBasis& basis) {
    if (p.shape.sides != basis.n) return std::nullopt;
    if (!p.is_exact() && p.extra_rotation != 0.0) return std::nullopt;
    std::complex<double> v = basis.v.to_complex(), w = basis.w.to_complex();
    double det = v.real() * w.imag() - w.real() * v.imag();
    for (int m = 0; m < 6; ++m) {
        const Placement& base = basis.polyform.pixels[m];
        if (base.orient != p.orient) continue;
        std::complex<double> z{p.center.x - base.center.x, p.center.y - base.center.y};
        double di = (z.real() * w.imag() - w.real() * z.imag()) / det;
        double dj = (v.real() * z.imag() - z.real() * v.imag()) / det;
        double i = std::round(di), j = std::round(dj);
        if (std::abs(di - i) > 0.25 || std::abs(dj - j) > 0.25) continue;
        if (std::abs(i) > 1e15 || std::abs(j) > 1e15) continue;
        if (p.is_exact()) {
            CycloNum expect = *base.exact_center + basis.v.scaled((long long)i) +
                              basis.w.scaled((long long)j);
            if (!(*p.exact_center == expect)) continue;
        } else {
            std::complex<double> r = z - i * v - j * w;
            if (std::abs(r) > 1e-9) continue;
        }
        return GridCoord{(long long)i, (long long)j, m};
    }
    return std::nullopt;
}

bool on_grid(const Placement& p, const GridBasis& basis) {
    return grid_coord(p, basis).has_value();
}

}  // namespace ptam
