#include <set>

#include "doctest.h"
#include "ptam/gadget.hpp"
#include "ptam/grid.hpp"

using namespace ptam;

TEST_CASE("no gadget below heptagons") {
    for (int n = 3; n <= 6; ++n) CHECK_THROWS_AS(gen_gadget(n), std::invalid_argument);
}

TEST_CASE("generated gadgets certify") {
    for (int n = 7; n <= 20; ++n) {
        CAPTURE(n);
        GadgetSpec g = gen_gadget(n);
        CHECK(g.writer0.size() >= 1);
        CHECK(g.writer1.size() >= 1);
        Certificate cert = certify(g);
        CAPTURE(cert.to_text());
        CHECK(cert.ok());
    }
}

TEST_CASE("landmark certificates hold") {
    for (int n : {7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 21, 24, 30}) {
        CAPTURE(n);
        Certificate cert = landmark_certificate(n);
        CHECK(!cert.claims.empty());
        CAPTURE(cert.to_text());
        CHECK(cert.ok());
    }
}

TEST_CASE("both writer configurations read correctly") {
    for (int n : {7, 8, 9, 12, 15, 18}) {
        CAPTURE(n);
        GadgetSpec g = gen_gadget(n);
        CHECK(definition1_check(g) == Tristate::yes);
    }
}

TEST_CASE("deleting the blocker breaks the gadget") {
    for (int n : {7, 10, 15}) {
        CAPTURE(n);
        GadgetSpec g = gen_gadget(n);
        CHECK(definition1_check_bit(g, 0, /*delete_blocker=*/true) == Tristate::no);
        CHECK(definition1_check_bit(g, 1, /*delete_blocker=*/true) == Tristate::no);
    }
}

TEST_CASE("gadget text round-trip is canonical") {
    GadgetSpec g = gen_gadget(9);
    std::string text = save_gadget(g);
    GadgetSpec h = load_gadget(text);
    CHECK(save_gadget(h) == text);
    CHECK(h.n == 9);
    CHECK(h.writer0.size() == g.writer0.size());
    CHECK(certify(gen_gadget(9)).ok());
}

TEST_CASE("loader rejects malformed and overlapping input") {
    CHECK_THROWS(load_gadget("nonsense"));
    CHECK_THROWS(load_gadget("ptam-gadget 1\nn 9\nmode exact\n"));
    GadgetSpec g = gen_gadget(9);
    // Move the 0-blocker onto the reader: overlapping configuration.
    g.writer0.back() =
        Placement::exact(RegularPolygonShape(9), Orientation::negated, CycloNum(9));
    CHECK_THROWS(load_gadget(save_gadget(g)));
}

TEST_CASE("normalized gadgets share grid entry and exit") {
    for (int n : {7, 10, 15}) {
        CAPTURE(n);
        GridBasis basis = grid_basis(n);
        GadgetSpec g = normalize(gen_gadget(n), basis);
        REQUIRE(g.writer0.size() >= 3);
        REQUIRE(g.writer1.size() >= 3);
        // shared entry and exit placements, on the grid (the chain ends with
        // the blocker branch, so the exit is the second-to-last element)
        const Placement& exit0 = g.writer0[g.writer0.size() - 2];
        const Placement& exit1 = g.writer1[g.writer1.size() - 2];
        CHECK(position_key(g.writer0.front()) == position_key(g.writer1.front()));
        CHECK(position_key(exit0) == position_key(exit1));
        CHECK(on_grid(g.writer0.front(), basis));
        CHECK(on_grid(exit0, basis));
        // reader anchored on the grid
        CHECK(on_grid(g.reader, basis));
        Certificate cert = certify(g);
        CAPTURE(cert.to_text());
        CHECK(cert.ok());
        CHECK(definition1_check(g) == Tristate::yes);
    }
}
