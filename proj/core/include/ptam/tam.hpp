// tam.hpp — temperature-tau tile assembly over regular polygonal tiles.
//
// Tile types carry glues (label + integer strength) on a subset of sides.
// Two placed tiles bond when they abut along a full edge and the glues on
// the coinciding sides have equal labels.  A tile may attach to an assembly
// when it bonds with total strength >= tau and its interior is disjoint
// from every placed tile.  Assemblies grow one tile at a time from a seed.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ptam/geometry.hpp"

namespace ptam {

struct Glue {
    std::string label;
    int strength = 1;
};

// Tile types carry a fixed orientation: tiles cannot rotate or reflect, so
// the mirror image of a type is a distinct type.  Across every abutment the
// orientation flips and the coinciding sides share the same index m
// (standard side s_m faces omega^m, negated side s'_m faces -omega^m).
struct TileType {
    std::string name;
    int shape_sides = 0;
    Orientation orientation = Orientation::standard;
    std::map<int, Glue> glues;  // side index -> glue
};

struct PlacedTile {
    int type_index = -1;
    Placement placement;
};

struct TileSystem {
    int n = 0;  // polygon side count shared by all tiles
    int temperature = 1;
    std::vector<TileType> types;
    std::vector<PlacedTile> seed;

    int add_type(TileType t);
    int type_index(const std::string& name) const;

private:
    std::map<std::string, int> index_by_name_;
};

// Stable canonical key for a placement position (exact coefficients when
// available, 1e-9-rounded coordinates otherwise) plus orientation.
std::string position_key(const Placement& p);

enum class AttachResult { ok, overlap, no_bond, insufficient_strength };

struct AttachCandidate {
    int type_index = -1;
    Placement placement;
};

class Assembly {
public:
    explicit Assembly(const TileSystem* sys);
    Assembly(const Assembly& o) = default;
    Assembly& operator=(const Assembly& o) = default;

    const TileSystem& system() const { return *sys_; }
    const std::vector<PlacedTile>& tiles() const { return tiles_; }
    size_t size() const { return tiles_.size(); }

    bool occupied(const std::string& pos_key) const;
    const PlacedTile* tile_at(const std::string& pos_key) const;

    // Attachment legality of an arbitrary (type, placement).
    AttachResult can_attach(int type_index, const Placement& p) const;
    // Total matched-glue strength at a placement for a type.
    int bond_strength(int type_index, const Placement& p) const;

    // Current frontier of attachable (type, placement) pairs, sorted by
    // position key then type for determinism.
    std::vector<AttachCandidate> attachable() const;

    // Attaches after re-validating; returns false if not legal.
    bool attach(int type_index, const Placement& p);

    // One uniformly random attachment among attachable(); false if terminal.
    bool step(std::mt19937_64& rng);

    bool is_terminal() const;

    // Sorted (position, type) key identifying the assembly up to nothing
    // (assemblies here are absolutely positioned).
    std::string canonical_key() const;

    // Bond graph edges (tile index pairs with strengths).
    std::vector<std::tuple<int, int, int>> bond_edges() const;

private:
    const TileSystem* sys_;
    std::vector<PlacedTile> tiles_;
    std::unordered_map<std::string, int> by_pos_;
    // lazily built index: "side|glue label" -> type indices carrying it
    mutable std::unordered_map<std::string, std::vector<int>> types_by_side_glue_;
    // spatial hash: unit-grid bucket -> tile indices
    std::unordered_map<int64_t, std::vector<int>> buckets_;
    // frontier candidates keyed by position key + '#' + type index
    std::map<std::string, AttachCandidate> frontier_;
    // candidate keys bucketed for overlap invalidation
    std::unordered_map<int64_t, std::set<std::string>> frontier_buckets_;

    void place_raw(int type_index, const Placement& p);
    void refresh_frontier_around(const Placement& p);
    void add_candidates_from(int tile_index);
    std::vector<int> nearby_tiles(const Vec2& c) const;
    bool overlaps_existing(const Placement& p) const;
    // Neighbor placement across side m of a placed tile.
    Placement neighbor_placement(const PlacedTile& t, int side) const;
};

// Multiset of producible assemblies by breadth-first exploration with
// canonical-form deduplication.
struct ExploreResult {
    std::vector<Assembly> producibles;   // all distinct producibles found
    std::vector<Assembly> terminals;     // those with empty frontier
    bool complete = false;               // false if a budget was hit
};

ExploreResult explore_producibles(const TileSystem& sys, size_t max_tiles = 25,
                                  size_t max_states = 200000);

enum class Tristate { no, yes, undecided };

// Directed within the tile bound: exactly one maximal assembly, where
// assemblies that hit max_tiles count as maximal-at-bound.  Undecided when
// the state budget is exhausted.
Tristate is_directed(const TileSystem& sys, size_t max_tiles = 25,
                     size_t max_states = 200000);

// Min-cut of the bond graph >= tau (Stoer-Wagner; plain connectivity when
// tau == 1).
bool tau_stable(const Assembly& a, int tau);

struct LatticeAuditResult {
    bool ok = false;
    std::string detail;
};

// For n in {3,4,6}: every tile center must lie on the regular tessellation
// lattice generated from the first seed tile, with orientation parity
// consistent for n == 3.  For n == 5: at most two distinct orientations
// may occur.  Other n are rejected.
LatticeAuditResult lattice_audit(const Assembly& a);

}  // namespace ptam
