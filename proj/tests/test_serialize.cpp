// test_serialize.cpp — round-trip and canonicality checks for the text formats.

#include <doctest.h>

#include "ptam/serialize.hpp"

using namespace ptam;

namespace {

TileSystem chain_system() {
    TileSystem sys;
    sys.n = 7;
    TileType s, g;
    s.name = "A";
    s.shape_sides = 7;
    s.orientation = Orientation::standard;
    s.glues[0] = {"x", 1};
    s.glues[3] = {"y", 2};
    g.name = "B";
    g.shape_sides = 7;
    g.orientation = Orientation::negated;
    g.glues[0] = {"x", 1};
    sys.add_type(s);
    sys.add_type(g);
    sys.seed.push_back({0, Placement::exact(RegularPolygonShape(7), Orientation::standard,
                                            CycloNum(7))});
    return sys;
}

}  // namespace

TEST_CASE("system text round-trips and is canonical") {
    TileSystem sys = chain_system();
    std::string t1 = save_system(sys);
    TileSystem back = load_system(t1);
    CHECK(back.n == 7);
    CHECK(back.temperature == 1);
    CHECK(back.types.size() == 2);
    CHECK(back.types[0].name == "A");
    CHECK(back.types[0].glues.at(3).label == "y");
    CHECK(back.types[0].glues.at(3).strength == 2);
    CHECK(back.types[1].orientation == Orientation::negated);
    CHECK(back.seed.size() == 1);
    CHECK(save_system(back) == t1);
}

TEST_CASE("exact placements serialize as reduced coefficients") {
    // omega^2 == -1 for n=4: both spellings must serialize identically.
    RegularPolygonShape sq(4);
    Placement a = Placement::exact(sq, Orientation::standard,
                                   CycloNum(4, {0, 0, 1, 0}));
    Placement b = Placement::exact(sq, Orientation::standard,
                                   CycloNum(4, {-1, 0, 0, 0}));
    CHECK(placement_to_text(a) == placement_to_text(b));
    Placement back = placement_from_text(4, placement_to_text(a));
    CHECK(*back.exact_center == *a.exact_center);
}

TEST_CASE("float placements round-trip") {
    Placement p = Placement::approx(RegularPolygonShape(4), Orientation::negated,
                                    {0.125, -3.5}, 0.75);
    std::string body = placement_to_text(p);
    Placement back = placement_from_text(4, body);
    CHECK(back.orient == Orientation::negated);
    CHECK(back.center.x == 0.125);
    CHECK(back.center.y == -3.5);
    CHECK(back.extra_rotation == 0.75);
}

TEST_CASE("assembly text replays attachments on load") {
    TileSystem sys = chain_system();
    Assembly a(&sys);
    // grow A -> B across side 0 (negated neighbor at center + omega^0).
    REQUIRE(a.attach(1, Placement::exact(RegularPolygonShape(7), Orientation::negated,
                                         CycloNum::root_power(7, 0))));
    std::string text = save_assembly(a);
    AssemblyDoc doc = load_assembly(text);
    CHECK(doc.assembly->size() == 2);
    CHECK(save_assembly(*doc.assembly) == text);
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS(load_system("ptam-system 2\nn 7\n"));
    CHECK_THROWS(load_system("ptam-system 1\ntemperature 1\n"));
    CHECK_THROWS(load_system("ptam-system 1\nn 7\ntype A S 9:x:1\n"));
    CHECK_THROWS(load_system("ptam-system 1\nn 7\nseed A S e 0\n"));
    // tile that cannot legally attach
    TileSystem sys = chain_system();
    Assembly a(&sys);
    std::string text = save_assembly(a) +
                       "tile B N e 0 0 0 1 0 0 0\n";  // not adjacent to seed
    CHECK_THROWS(load_assembly(text));
}
