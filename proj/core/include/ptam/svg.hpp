// svg.hpp — deterministic SVG rendering of assemblies.
//
// One <polygon> per tile.  Fill color is keyed by the tile's class — the
// leading alphabetic prefix of the type name (so "w0_blocker3" and
// "w1_blocker" share a class only if their prefixes match).  The y axis is
// flipped so renders match the usual mathematical orientation.

#pragma once

#include <string>

#include "ptam/tam.hpp"

namespace ptam {

struct SvgOptions {
    double scale = 40.0;   // pixels per tile unit
    bool labels = false;   // draw type names at tile centers
    double margin = 1.0;   // tile units of padding around the drawing
};

std::string render_svg(const Assembly& a, const SvgOptions& opts = {});

}  // namespace ptam
