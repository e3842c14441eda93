// gadget.hpp — bit-reading gadgets for single-shape systems at temperature 1.
//
// A gadget is a reader tile R (negated) with two read sites: the 1-site at
// R - omega^{n-1} and the 0-site at R - 1, each accepting one tile class.
// Two writer configurations share R; each places a blocker that geometrically
// excludes the opposite site, so every terminal assembly reads exactly the
// written bit.  The 0-read continues with one further tile at the c2 site,
// which the 0-blocker provably does not obstruct.  All geometric facts are
// certified either exactly in Z[omega_n] or by rigorous interval enclosures;
// a separating-axis check on realized polygons is the fallback (and the only
// mode for externally loaded float configurations).

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptam/grid.hpp"
#include "ptam/tam.hpp"

namespace ptam {

enum class ClaimKind {
    exact_equality,     // zero test in Z[omega_n] (possibly lifted)
    abut_exact,         // difference is exactly a unit root: full-edge contact
    strict_inequality,  // rigorous interval comparison
    closed_form,        // squared distance matches an analytic expression
    sat_check,          // separating-axis test on realized polygons
};

enum class Verdict { proved, failed, undecided };

struct Claim {
    std::string id;
    ClaimKind kind = ClaimKind::sat_check;
    Verdict verdict = Verdict::undecided;
    std::string witness;
};

struct Certificate {
    int n = 0;
    std::vector<Claim> claims;

    bool ok() const;
    // Ids of claims that are not proved.
    std::vector<std::string> failures() const;
    std::string to_text() const;
};

struct GadgetSpec {
    int n = 0;
    bool exact = true;
    Placement reader;            // R
    Placement site1;             // 1-read site (tile class read1)
    Placement site0;             // 0-read site (tile class read0)
    Placement cont;              // 0-read continuation site (class read0c)
    std::vector<Placement> writer1;  // connector chain; blocker last
    std::vector<Placement> writer0;
    std::map<std::string, CycloNum> landmarks;  // named centers (exact mode)

    explicit GadgetSpec(int n);
};

// Generates the certified configuration for n >= 7; throws for smaller n
// (no single-shape temperature-1 bit reader exists for n <= 6).
GadgetSpec gen_gadget(int n);

// Geometric certification of a spec: pairwise non-overlap inside each
// configuration, blocker-overlap of the opposite site, and for generated
// specs with n >= 15 the analytic closed forms for the key distances.
Certificate certify(const GadgetSpec& g);

// Transcribed landmark claims for n in {7..14} and closed-form/dichotomy
// claims for n in {15..}; independent of any generated placement.
Certificate landmark_certificate(int n);

// Tile system realizing configuration `bit`: seed = R + writer chain, free
// tile types = the read tiles.  delete_blocker drops the blocker from the
// seed and the chain glue that would re-attach it (mutation testing).
TileSystem gadget_system(const GadgetSpec& g, int bit, bool delete_blocker = false);

// Exhaustive-exploration conformance: with writer b, every producible is
// free of opposite-bit read tiles and every terminal contains the b read
// tile (plus the continuation for b = 0).
Tristate definition1_check_bit(const GadgetSpec& g, int bit, bool delete_blocker = false,
                               size_t max_tiles = 25, size_t max_states = 200000);
Tristate definition1_check(const GadgetSpec& g);

// Re-anchors the gadget so R sits on a grid pixel and both writers share
// identical on-grid entry and exit tiles, with the blocker in the middle of
// the chain.  The result re-certifies and passes definition1_check.
GadgetSpec normalize(const GadgetSpec& g, const GridBasis& basis);

// Routing primitive: a chain of abutting tiles from `from` (exclusive) to
// `target` (inclusive), avoiding overlap with `obstacles` and itself.
// Sides of `from` listed in `banned_sides` are not used for the first step.
std::optional<std::vector<Placement>> route_path(const Placement& from,
                                                 const std::vector<int>& banned_sides,
                                                 const Placement& target,
                                                 const std::vector<Placement>& obstacles,
                                                 int max_depth = 12,
                                                 size_t node_budget = 500000);

std::string save_gadget(const GadgetSpec& g);
GadgetSpec load_gadget(const std::string& text);

}  // namespace ptam
