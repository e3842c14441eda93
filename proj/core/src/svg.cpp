// svg.cpp — assembly rendering.

#include "ptam/svg.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "ptam/geometry.hpp"

namespace ptam {

namespace {

std::string type_class(const std::string& name) {
    size_t i = 0;
    while (i < name.size() && std::isalpha(static_cast<unsigned char>(name[i]))) ++i;
    return i == 0 ? name : name.substr(0, i);
}

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
                          "#edc948", "#76b7b2", "#ff9da7", "#9c755f", "#bab0ac"};

void fmt(std::ostringstream& os, double v) {
    char buf[32];
    snprintf(buf, sizeof buf, "%.4f", v);
    os << buf;
}

}  // namespace

std::string render_svg(const Assembly& a, const SvgOptions& opts) {
    const TileSystem& sys = a.system();

    // Deterministic class -> color assignment: classes sorted by name.
    std::map<std::string, int> classes;
    for (const TileType& t : sys.types) classes.emplace(type_class(t.name), 0);
    int ci = 0;
    for (auto& [name, idx] : classes) idx = ci++;
    size_t npal = sizeof kPalette / sizeof *kPalette;

    std::vector<PolygonInstance> polys;
    polys.reserve(a.size());
    for (const PlacedTile& t : a.tiles()) polys.push_back(realize(t.placement));

    double s = opts.scale;
    Rect box = polys.empty() ? Rect{{0, 0}, {0, 0}} : bounding_rectangle(polys);
    box.min.x -= opts.margin;
    box.min.y -= opts.margin;
    box.max.x += opts.margin;
    box.max.y += opts.margin;
    double w = (box.max.x - box.min.x) * s;
    double h = (box.max.y - box.min.y) * s;
    // y flipped: svg y = (box.max.y - y) * s
    auto tx = [&](double x) { return (x - box.min.x) * s; };
    auto ty = [&](double y) { return (box.max.y - y) * s; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
    fmt(os, w);
    os << "\" height=\"";
    fmt(os, h);
    os << "\">\n";
    for (size_t i = 0; i < polys.size(); ++i) {
        const TileType& t = sys.types[a.tiles()[i].type_index];
        os << "<polygon points=\"";
        bool first = true;
        for (const Vec2& v : polys[i].vertices) {
            if (!first) os << " ";
            first = false;
            fmt(os, tx(v.x));
            os << ",";
            fmt(os, ty(v.y));
        }
        os << "\" fill=\"" << kPalette[classes[type_class(t.name)] % npal]
           << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        if (opts.labels) {
            os << "<text x=\"";
            fmt(os, tx(a.tiles()[i].placement.center.x));
            os << "\" y=\"";
            fmt(os, ty(a.tiles()[i].placement.center.y));
            os << "\" font-size=\"" << int(s * 0.25)
               << "\" text-anchor=\"middle\">" << t.name << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace ptam
