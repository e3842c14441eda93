// serialize.cpp — canonical text I/O for tile systems and assemblies.

#include "ptam/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ptam {

namespace {

std::runtime_error parse_error(const std::string& what, const std::string& line) {
    return std::runtime_error("parse error: " + what + " in line: " + line);
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

void check_token_name(const std::string& name) {
    if (name.empty() || name.find_first_of(" \t\n") != std::string::npos)
        throw std::invalid_argument("serializable names must be non-empty single tokens: '" +
                                    name + "'");
}

}  // namespace

std::string placement_to_text(const Placement& p) {
    std::ostringstream os;
    os << (p.orient == Orientation::standard ? "S" : "N");
    if (p.is_exact()) {
        os << " e";
        for (long long v : p.exact_center->reduced_coeffs()) os << " " << v;
    } else {
        char buf[96];
        snprintf(buf, sizeof buf, " f %.17g %.17g %.17g", p.center.x, p.center.y,
                 p.extra_rotation);
        os << buf;
    }
    return os.str();
}

Placement placement_from_text(int n, const std::string& body) {
    std::vector<std::string> tk = tokens(body);
    if (tk.size() < 2) throw parse_error("truncated placement", body);
    Orientation o;
    if (tk[0] == "S") o = Orientation::standard;
    else if (tk[0] == "N") o = Orientation::negated;
    else throw parse_error("orientation must be S or N", body);
    RegularPolygonShape shape(n);
    if (tk[1] == "e") {
        std::vector<long long> c(static_cast<size_t>(n), 0);
        if (tk.size() - 2 > c.size()) throw parse_error("too many coefficients", body);
        for (size_t i = 2; i < tk.size(); ++i) c[i - 2] = std::stoll(tk[i]);
        return Placement::exact(shape, o, CycloNum(n, std::move(c)));
    }
    if (tk[1] == "f") {
        if (tk.size() != 5) throw parse_error("float placement needs x y rotation", body);
        return Placement::approx(shape, o, {std::stod(tk[2]), std::stod(tk[3])},
                                 std::stod(tk[4]));
    }
    throw parse_error("placement kind must be e or f", body);
}

std::string save_system(const TileSystem& sys) {
    std::ostringstream os;
    os << "ptam-system 1\n";
    os << "n " << sys.n << "\n";
    os << "temperature " << sys.temperature << "\n";
    for (const TileType& t : sys.types) {
        check_token_name(t.name);
        os << "type " << t.name << " "
           << (t.orientation == Orientation::standard ? "S" : "N");
        for (const auto& [side, glue] : t.glues) {
            check_token_name(glue.label);
            os << " " << side << ":" << glue.label << ":" << glue.strength;
        }
        os << "\n";
    }
    for (const PlacedTile& t : sys.seed)
        os << "seed " << sys.types[t.type_index].name << " "
           << placement_to_text(t.placement) << "\n";
    return os.str();
}

namespace {

// Parses system lines from `is` until EOF or a line starting with `stop_at`;
// the stop line (if any) is returned through `pending`.
TileSystem parse_system(std::istream& is, const std::string& stop_at,
                        std::string* pending) {
    std::string line;
    if (!std::getline(is, line) || tokens(line) != std::vector<std::string>{"ptam-system", "1"})
        throw parse_error("expected header 'ptam-system 1'", line);
    TileSystem sys;
    bool have_n = false;
    while (std::getline(is, line)) {
        std::vector<std::string> tk = tokens(line);
        if (tk.empty()) continue;
        if (!stop_at.empty() && tk[0] == stop_at) {
            if (pending) *pending = line;
            break;
        }
        if (tk[0] == "n") {
            if (tk.size() != 2) throw parse_error("n takes one value", line);
            sys.n = std::stoi(tk[1]);
            have_n = true;
        } else if (tk[0] == "temperature") {
            if (tk.size() != 2) throw parse_error("temperature takes one value", line);
            sys.temperature = std::stoi(tk[1]);
        } else if (tk[0] == "type") {
            if (!have_n) throw parse_error("type before n", line);
            if (tk.size() < 3) throw parse_error("type needs name and orientation", line);
            TileType t;
            t.name = tk[1];
            t.shape_sides = sys.n;
            if (tk[2] == "S") t.orientation = Orientation::standard;
            else if (tk[2] == "N") t.orientation = Orientation::negated;
            else throw parse_error("orientation must be S or N", line);
            for (size_t i = 3; i < tk.size(); ++i) {
                size_t a = tk[i].find(':'), b = tk[i].rfind(':');
                if (a == std::string::npos || a == b)
                    throw parse_error("glue must be side:label:strength", line);
                int side = std::stoi(tk[i].substr(0, a));
                if (side < 0 || side >= sys.n) throw parse_error("glue side out of range", line);
                t.glues[side] = {tk[i].substr(a + 1, b - a - 1),
                                 std::stoi(tk[i].substr(b + 1))};
            }
            sys.add_type(std::move(t));
        } else if (tk[0] == "seed") {
            if (!have_n) throw parse_error("seed before n", line);
            if (tk.size() < 3) throw parse_error("seed needs type and placement", line);
            int ti = sys.type_index(tk[1]);
            if (ti < 0) throw parse_error("seed references unknown type", line);
            std::istringstream ls(line);
            std::string directive, name, body;
            ls >> directive >> name;
            std::getline(ls, body);
            sys.seed.push_back({ti, placement_from_text(sys.n, body)});
        } else {
            throw parse_error("unknown directive", line);
        }
    }
    if (!have_n || sys.n < 3) throw std::runtime_error("parse error: system lacks a valid n");
    return sys;
}

}  // namespace

TileSystem load_system(const std::string& text) {
    std::istringstream is(text);
    return parse_system(is, "", nullptr);
}

std::string save_assembly(const Assembly& a) {
    const TileSystem& sys = a.system();
    std::ostringstream os;
    os << "ptam-assembly 1\n";
    os << save_system(sys);
    for (size_t i = sys.seed.size(); i < a.tiles().size(); ++i) {
        const PlacedTile& t = a.tiles()[i];
        os << "tile " << sys.types[t.type_index].name << " "
           << placement_to_text(t.placement) << "\n";
    }
    return os.str();
}

AssemblyDoc load_assembly(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) ||
        tokens(line) != std::vector<std::string>{"ptam-assembly", "1"})
        throw parse_error("expected header 'ptam-assembly 1'", line);

    AssemblyDoc doc;
    std::string pending;
    doc.system = std::make_unique<TileSystem>(parse_system(is, "tile", &pending));
    doc.assembly = std::make_unique<Assembly>(doc.system.get());

    auto replay = [&](const std::string& l) {
        std::vector<std::string> tk = tokens(l);
        if (tk.size() < 3) throw parse_error("tile needs type and placement", l);
        int ti = doc.system->type_index(tk[1]);
        if (ti < 0) throw parse_error("tile references unknown type", l);
        std::istringstream ls(l);
        std::string directive, name, body;
        ls >> directive >> name;
        std::getline(ls, body);
        Placement p = placement_from_text(doc.system->n, body);
        if (!doc.assembly->attach(ti, p))
            throw std::runtime_error("parse error: non-attachable tile in line: " + l);
    };
    if (!pending.empty()) replay(pending);
    while (std::getline(is, line)) {
        if (tokens(line).empty()) continue;
        replay(line);
    }
    return doc;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace ptam
