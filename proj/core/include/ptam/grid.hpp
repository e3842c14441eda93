// grid.hpp — junction polyforms and the periodic grid they generate.
//
// A junction polyform is a six-pixel cluster of unit tiles: a standard pixel
// at the origin, negated pixels at omega^k and conj(omega)^k, and the mirror
// image of that triple across the line x = 1/2.  k is the polyform constant,
// the least k >= 1 with Re(omega^k) <= 0.  Copies translated by the lattice
// vectors v = -2*conj(omega)^k + 2 and w = -2*omega^k + 2 tile the plane
// without overlap, with neighboring copies joined pixel-edge to pixel-edge
// through the "a" (v direction) and "b" (w direction) glue ports.

#pragma once

#include <array>
#include <memory>

#include "ptam/tam.hpp"

namespace ptam {

// Least k >= 1 with Re(omega_n^k) <= 0; equals ceil(n/4).
int polyform_constant(int n);

struct JunctionPolyform {
    int n = 0;
    int k = 0;
    // Pixels 1..6 at indices 0..5: 1 standard at 0, 2 negated at omega^k,
    // 3 negated at conj(omega)^k, 4..6 their mirrors across x = 1/2.
    std::vector<Placement> pixels;  // size 6
    // Glue ports on side 0: "a" leaves pixel 5 and enters pixel 3 of the
    // v-neighbor; "b" leaves pixel 6 and enters pixel 2 of the w-neighbor.
};

// Builds and validates the polyform (pixels pairwise interior-disjoint,
// connected through full shared edges); throws on validation failure.
JunctionPolyform build_junction_polyform(int n);

struct GridBasis {
    int n = 0;
    int k = 0;
    CycloNum v;  // -2*conj(omega)^k + 2
    CycloNum w;  // -2*omega^k + 2
    JunctionPolyform polyform;

    GridBasis() : v(3), w(3) {}
};

// Computes the basis and spot-checks the non-overlap argument numerically:
// every offset a*v + b*w with 0 < max(|a|,|b|) <= 3 displaces the bounding
// box by at least its width horizontally or its height vertically.
GridBasis grid_basis(int n);

// Tile system plus assembly of an extent_i x extent_j block of junction
// polyforms, built one tile at a time from the southwest pixel of the
// (0,0) polyform.
struct GridAssembly {
    GridBasis basis;
    std::unique_ptr<TileSystem> system;
    std::unique_ptr<Assembly> assembly;
};
GridAssembly generate_grid(int n, int extent_i, int extent_j);

// Membership of (center, orientation) in the infinite pixel lattice: the
// placement must equal pixel m of some polyform copy i*v + j*w, confirmed
// exactly for exact placements and to 1e-9 for float placements.
bool on_grid(const Placement& p, const GridBasis& basis);

// The (i, j) polyform copy and pixel index (0..5) of an on-grid placement.
struct GridCoord {
    long long i = 0;
    long long j = 0;
    int pixel = 0;
};
std::optional<GridCoord> grid_coord(const Placement& p, const GridBasis& basis);

}  // namespace ptam
