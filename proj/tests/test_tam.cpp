// test_tam.cpp — attachment rules, exploration, stability, lattice audits.

#include "doctest.h"
#include "ptam/tam.hpp"

using namespace ptam;

namespace {

TileType make_type(const std::string& name, int n, Orientation o,
                   std::initializer_list<std::pair<int, Glue>> glues) {
    TileType t;
    t.name = name;
    t.shape_sides = n;
    t.orientation = o;
    for (auto& [side, glue] : glues) t.glues[side] = glue;
    return t;
}

TileSystem seeded_single(int n, TileType seed_type) {
    TileSystem sys;
    sys.n = n;
    sys.temperature = 1;
    Orientation o = seed_type.orientation;
    int idx = sys.add_type(std::move(seed_type));
    sys.seed.push_back({idx, Placement::exact(RegularPolygonShape(n), o, CycloNum(n))});
    return sys;
}

// One free std/neg type pair with glue `u` on every side: grows the full
// regular tessellation.
TileSystem tessellation_system(int n) {
    TileSystem sys;
    sys.n = n;
    TileType s, g;
    s.name = "Tstd";
    s.shape_sides = n;
    s.orientation = Orientation::standard;
    g.name = "Tneg";
    g.shape_sides = n;
    g.orientation = Orientation::negated;
    for (int m = 0; m < n; ++m) {
        s.glues[m] = {"u", 1};
        g.glues[m] = {"u", 1};
    }
    int idx = sys.add_type(s);
    sys.add_type(g);
    sys.seed.push_back(
        {idx, Placement::exact(RegularPolygonShape(n), Orientation::standard, CycloNum(n))});
    return sys;
}

}  // namespace

TEST_CASE("attachment: bond required, labels must match") {
    TileSystem sys = seeded_single(
        4, make_type("S", 4, Orientation::standard, {{0, {"g", 1}}}));
    int t_ok = sys.add_type(make_type("A", 4, Orientation::negated, {{0, {"g", 1}}}));
    int t_bad = sys.add_type(
        make_type("B", 4, Orientation::negated, {{0, {"x", 1}}, {2, {"x", 1}}}));
    Assembly a(&sys);
    Placement east = Placement::exact(RegularPolygonShape(4), Orientation::negated,
                                      CycloNum::root_power(4, 0));
    CHECK(a.can_attach(t_ok, east) == AttachResult::ok);
    CHECK(a.can_attach(t_bad, east) == AttachResult::no_bond);
    // far placement: no adjacent tile at all
    Placement far = Placement::exact(RegularPolygonShape(4), Orientation::negated,
                                     CycloNum::root_power(4, 0).scaled(3));
    CHECK(a.can_attach(t_ok, far) == AttachResult::no_bond);
    CHECK(a.attach(t_ok, east));
    CHECK(a.can_attach(t_ok, east) == AttachResult::overlap);
}

TEST_CASE("attachment: temperature 2 needs cooperative bonds") {
    RegularPolygonShape sq(4);
    TileSystem sys;
    sys.n = 4;
    sys.temperature = 2;
    int base = sys.add_type(
        make_type("base", 4, Orientation::standard, {{0, {"a", 1}}}));
    int wing = sys.add_type(
        make_type("wing", 4, Orientation::standard, {{1, {"b", 1}}}));
    int coop = sys.add_type(
        make_type("coop", 4, Orientation::negated, {{0, {"a", 1}}, {1, {"b", 1}}}));
    sys.seed.push_back({base, Placement::exact(sq, Orientation::standard, CycloNum(4))});
    Placement east = Placement::exact(sq, Orientation::negated, CycloNum::root_power(4, 0));
    {
        Assembly a(&sys);
        // only the strength-1 bond to base: insufficient at tau = 2
        CHECK(a.can_attach(coop, east) == AttachResult::insufficient_strength);
        CHECK_FALSE(a.attach(coop, east));
    }
    // seed the diagonal wing so coop gets two bonds
    sys.seed.push_back({wing, Placement::exact(
        sq, Orientation::standard,
        CycloNum::root_power(4, 0) - CycloNum::root_power(4, 1))});
    Assembly b(&sys);
    CHECK(b.can_attach(coop, east) == AttachResult::ok);
}

TEST_CASE("explore: directed single chain has one terminal") {
    TileSystem sys = seeded_single(
        7, make_type("S", 7, Orientation::standard, {{0, {"g1", 1}}}));
    sys.add_type(make_type("A", 7, Orientation::negated, {{0, {"g1", 1}}, {3, {"g2", 1}}}));
    sys.add_type(make_type("B", 7, Orientation::standard, {{3, {"g2", 1}}}));
    ExploreResult r = explore_producibles(sys, 25);
    CHECK(r.complete);
    CHECK(r.terminals.size() == 1);
    CHECK(r.terminals[0].size() == 3);
    CHECK(is_directed(sys, 25) == Tristate::yes);
}

TEST_CASE("explore: competing types yield two terminals") {
    TileSystem sys = seeded_single(
        7, make_type("S", 7, Orientation::standard, {{0, {"g", 1}}}));
    sys.add_type(make_type("A", 7, Orientation::negated, {{0, {"g", 1}}}));
    sys.add_type(make_type("B", 7, Orientation::negated, {{0, {"g", 1}}}));
    ExploreResult r = explore_producibles(sys, 25);
    CHECK(r.complete);
    CHECK(r.terminals.size() == 2);
    CHECK(is_directed(sys, 25) == Tristate::no);
}

TEST_CASE("geometric blocking prunes a branch") {
    // Both glue paths' targets overlap; whichever attaches first excludes
    // the other, giving two distinct 2-tile terminals.
    TileSystem sys = seeded_single(
        7, make_type("S", 7, Orientation::standard, {{0, {"p", 1}}, {1, {"q", 1}}}));
    sys.add_type(make_type("P", 7, Orientation::negated, {{0, {"p", 1}}}));
    sys.add_type(make_type("Q", 7, Orientation::negated, {{1, {"q", 1}}}));
    ExploreResult r = explore_producibles(sys, 25);
    CHECK(r.complete);
    // neighbors at w^0 and w^1 overlap each other (distance 2 sin(pi/7) < 1)
    CHECK(r.terminals.size() == 2);
    for (Assembly& t : r.terminals) CHECK(t.size() == 2);
}

TEST_CASE("step grows to the unique terminal") {
    TileSystem sys = seeded_single(
        4, make_type("S", 4, Orientation::standard, {{0, {"g", 1}}}));
    sys.add_type(make_type("E", 4, Orientation::negated, {{0, {"g", 1}}}));
    Assembly a(&sys);
    std::mt19937_64 rng(7);
    size_t guard = 0;
    while (a.step(rng) && ++guard < 100) {
    }
    CHECK(a.size() == 2);
    CHECK(a.is_terminal());
}

TEST_CASE("tau stability: chain is 1-stable but not 2-stable") {
    TileSystem sys = seeded_single(
        4, make_type("S", 4, Orientation::standard, {{0, {"g", 1}}}));
    int e = sys.add_type(
        make_type("E", 4, Orientation::negated, {{0, {"g", 1}}, {2, {"g", 1}}}));
    Assembly a(&sys);
    CHECK(a.attach(e, Placement::exact(RegularPolygonShape(4), Orientation::negated,
                                       CycloNum::root_power(4, 0))));
    CHECK(tau_stable(a, 1));
    CHECK_FALSE(tau_stable(a, 2));
}

TEST_CASE("lattice audit accepts regular tessellation growth") {
    for (int n : {3, 4, 6}) {
        TileSystem sys = tessellation_system(n);
        Assembly a(&sys);
        std::mt19937_64 rng(42);
        while (a.size() < 30 && a.step(rng)) {
        }
        CHECK(a.size() == 30);
        LatticeAuditResult res = lattice_audit(a);
        INFO("n = " << n << ": " << res.detail);
        CHECK(res.ok);
    }
}

TEST_CASE("lattice audit rejects off-lattice centers") {
    TileSystem sys;
    sys.n = 4;
    int idx = sys.add_type(make_type("T", 4, Orientation::standard, {}));
    RegularPolygonShape sq(4);
    sys.seed.push_back({idx, Placement::approx(sq, Orientation::standard, {0, 0})});
    sys.seed.push_back({idx, Placement::approx(sq, Orientation::standard, {1.5, 0.25})});
    Assembly a(&sys);
    CHECK_FALSE(lattice_audit(a).ok);
}

TEST_CASE("pentagon growth uses at most two orientations") {
    TileSystem sys = tessellation_system(5);
    Assembly a(&sys);
    std::mt19937_64 rng(1);
    while (a.size() < 30 && a.step(rng)) {
    }
    CHECK(a.size() > 5);
    CHECK(lattice_audit(a).ok);
}
