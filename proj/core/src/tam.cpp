// tam.cpp — assemblies, attachment logic, exploration, stability audits.

#include "ptam/tam.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace ptam {

namespace {

int64_t bucket_key_cells(int32_t bx, int32_t by) {
    return (static_cast<int64_t>(static_cast<uint32_t>(bx)) << 32) |
           static_cast<uint32_t>(by);
}

int64_t bucket_key(double x, double y) {
    return bucket_key_cells(static_cast<int32_t>(std::floor(x)),
                            static_cast<int32_t>(std::floor(y)));
}

Orientation flipped(Orientation o) {
    return o == Orientation::standard ? Orientation::negated : Orientation::standard;
}

}  // namespace

int TileSystem::add_type(TileType t) {
    if (index_by_name_.count(t.name))
        throw std::invalid_argument("TileSystem: duplicate type name " + t.name);
    int idx = static_cast<int>(types.size());
    index_by_name_[t.name] = idx;
    types.push_back(std::move(t));
    return idx;
}

int TileSystem::type_index(const std::string& name) const {
    auto it = index_by_name_.find(name);
    return it == index_by_name_.end() ? -1 : it->second;
}

std::string position_key(const Placement& p) {
    std::ostringstream os;
    os << (p.orient == Orientation::standard ? "S" : "N");
    if (p.is_exact()) {
        os << "e";
        for (long long v : p.exact_center->reduced_coeffs()) os << ":" << v;
    } else {
        os << "f:" << llround(p.center.x * 1e9) << ":" << llround(p.center.y * 1e9)
           << ":" << llround(p.extra_rotation * 1e9);
    }
    return os.str();
}

Assembly::Assembly(const TileSystem* sys) : sys_(sys) {
    for (const PlacedTile& t : sys->seed) place_raw(t.type_index, t.placement);
    for (size_t i = 0; i < tiles_.size(); ++i) add_candidates_from(static_cast<int>(i));
}

void Assembly::place_raw(int type_index, const Placement& p) {
    if (sys_->types[type_index].orientation != p.orient)
        throw std::invalid_argument("Assembly: placement orientation must match type");
    int idx = static_cast<int>(tiles_.size());
    tiles_.push_back({type_index, p});
    by_pos_[position_key(p)] = idx;
    buckets_[bucket_key(p.center.x, p.center.y)].push_back(idx);
}

bool Assembly::occupied(const std::string& pos_key) const {
    return by_pos_.count(pos_key) > 0;
}

const PlacedTile* Assembly::tile_at(const std::string& pos_key) const {
    auto it = by_pos_.find(pos_key);
    return it == by_pos_.end() ? nullptr : &tiles_[it->second];
}

std::vector<int> Assembly::nearby_tiles(const Vec2& c) const {
    std::vector<int> out;
    // Offsets are applied to the integer cell, not the coordinate; adding an
    // integer to a double near a cell boundary can skip or repeat cells.
    int32_t bx = static_cast<int32_t>(std::floor(c.x));
    int32_t by = static_cast<int32_t>(std::floor(c.y));
    for (int dx = -2; dx <= 2; ++dx) {
        for (int dy = -2; dy <= 2; ++dy) {
            auto it = buckets_.find(bucket_key_cells(bx + dx, by + dy));
            if (it == buckets_.end()) continue;
            out.insert(out.end(), it->second.begin(), it->second.end());
        }
    }
    return out;
}

bool Assembly::overlaps_existing(const Placement& p) const {
    for (int i : nearby_tiles(p.center)) {
        if (placements_overlap(tiles_[i].placement, p)) return true;
    }
    return false;
}

Placement Assembly::neighbor_placement(const PlacedTile& t, int side) const {
    const Placement& p = t.placement;
    if (p.is_exact()) {
        CycloNum delta = CycloNum::root_power(sys_->n, side);
        CycloNum c = (p.orient == Orientation::standard) ? (*p.exact_center + delta)
                                                         : (*p.exact_center - delta);
        return Placement::exact(p.shape, flipped(p.orient), c);
    }
    const double two_pi = 6.283185307179586476925286766559;
    double ang = two_pi * side / sys_->n + p.extra_rotation;
    Vec2 d{std::cos(ang), std::sin(ang)};
    Vec2 c = (p.orient == Orientation::standard) ? p.center + d : p.center - d;
    return Placement::approx(p.shape, flipped(p.orient), c, p.extra_rotation);
}

int Assembly::bond_strength(int type_index, const Placement& p) const {
    const TileType& t = sys_->types[type_index];
    int total = 0;
    PlacedTile as_tile{type_index, p};
    for (const auto& [side, glue] : t.glues) {
        Placement np = neighbor_placement(as_tile, side);
        const PlacedTile* nb = tile_at(position_key(np));
        if (!nb) continue;
        const TileType& nt = sys_->types[nb->type_index];
        auto git = nt.glues.find(side);
        if (git == nt.glues.end()) continue;
        if (git->second.label != glue.label) continue;
        total += std::min(git->second.strength, glue.strength);
    }
    return total;
}

AttachResult Assembly::can_attach(int type_index, const Placement& p) const {
    if (sys_->types[type_index].orientation != p.orient)
        throw std::invalid_argument("can_attach: placement orientation must match type");
    if (occupied(position_key(p)) || overlaps_existing(p)) return AttachResult::overlap;
    int s = bond_strength(type_index, p);
    if (s == 0) return AttachResult::no_bond;
    if (s < sys_->temperature) return AttachResult::insufficient_strength;
    return AttachResult::ok;
}

void Assembly::add_candidates_from(int tile_index) {
    if (types_by_side_glue_.empty() && !sys_->types.empty()) {
        for (size_t u = 0; u < sys_->types.size(); ++u)
            for (const auto& [side, glue] : sys_->types[u].glues)
                types_by_side_glue_[std::to_string(side) + "|" + glue.label].push_back(
                    static_cast<int>(u));
    }
    const PlacedTile& t = tiles_[tile_index];
    const TileType& tt = sys_->types[t.type_index];
    for (const auto& [side, glue] : tt.glues) {
        Placement np = neighbor_placement(t, side);
        std::string npk = position_key(np);
        if (occupied(npk)) continue;
        auto lit = types_by_side_glue_.find(std::to_string(side) + "|" + glue.label);
        if (lit == types_by_side_glue_.end()) continue;
        for (int u : lit->second) {
            const TileType& ut = sys_->types[u];
            if (ut.shape_sides != tt.shape_sides) continue;
            if (ut.orientation != np.orient) continue;
            std::string key = npk + "#" + std::to_string(u);
            if (frontier_.count(key)) continue;
            if (can_attach(u, np) != AttachResult::ok) continue;
            frontier_.emplace(key, AttachCandidate{u, np});
            frontier_buckets_[bucket_key(np.center.x, np.center.y)].insert(key);
        }
    }
}

void Assembly::refresh_frontier_around(const Placement& p) {
    // Remove candidates at the now-occupied position or newly overlapping.
    std::vector<std::string> dead;
    int32_t bx = static_cast<int32_t>(std::floor(p.center.x));
    int32_t by = static_cast<int32_t>(std::floor(p.center.y));
    for (int dx = -2; dx <= 2; ++dx) {
        for (int dy = -2; dy <= 2; ++dy) {
            auto it = frontier_buckets_.find(bucket_key_cells(bx + dx, by + dy));
            if (it == frontier_buckets_.end()) continue;
            for (const std::string& key : it->second) {
                const AttachCandidate& c = frontier_.at(key);
                if (occupied(position_key(c.placement)) ||
                    placements_overlap(p, c.placement)) {
                    dead.push_back(key);
                }
            }
        }
    }
    for (const std::string& key : dead) {
        const AttachCandidate& c = frontier_.at(key);
        frontier_buckets_[bucket_key(c.placement.center.x, c.placement.center.y)].erase(key);
        frontier_.erase(key);
    }
}

bool Assembly::attach(int type_index, const Placement& p) {
    if (can_attach(type_index, p) != AttachResult::ok) return false;
    place_raw(type_index, p);
    refresh_frontier_around(p);
    add_candidates_from(static_cast<int>(tiles_.size()) - 1);
    return true;
}

std::vector<AttachCandidate> Assembly::attachable() const {
    std::vector<AttachCandidate> out;
    out.reserve(frontier_.size());
    for (const auto& [key, cand] : frontier_) {
        // Strengths can change under tau > 1; re-validate cheaply.
        if (sys_->temperature > 1 &&
            can_attach(cand.type_index, cand.placement) != AttachResult::ok)
            continue;
        out.push_back(cand);
    }
    return out;
}

bool Assembly::step(std::mt19937_64& rng) {
    std::vector<AttachCandidate> cands = attachable();
    if (cands.empty()) return false;
    std::uniform_int_distribution<size_t> pick(0, cands.size() - 1);
    const AttachCandidate& c = cands[pick(rng)];
    return attach(c.type_index, c.placement);
}

bool Assembly::is_terminal() const { return attachable().empty(); }

std::string Assembly::canonical_key() const {
    std::vector<std::string> keys;
    keys.reserve(tiles_.size());
    for (const PlacedTile& t : tiles_)
        keys.push_back(position_key(t.placement) + "#" + std::to_string(t.type_index));
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (const std::string& k : keys) {
        out += k;
        out += '|';
    }
    return out;
}

std::vector<std::tuple<int, int, int>> Assembly::bond_edges() const {
    std::vector<std::tuple<int, int, int>> edges;
    for (size_t i = 0; i < tiles_.size(); ++i) {
        const PlacedTile& t = tiles_[i];
        const TileType& tt = sys_->types[t.type_index];
        for (const auto& [side, glue] : tt.glues) {
            Placement np = neighbor_placement(t, side);
            auto it = by_pos_.find(position_key(np));
            if (it == by_pos_.end()) continue;
            int j = it->second;
            if (j <= static_cast<int>(i)) continue;  // count each pair once
            const TileType& nt = sys_->types[tiles_[j].type_index];
            auto git = nt.glues.find(side);
            if (git == nt.glues.end() || git->second.label != glue.label) continue;
            edges.emplace_back(static_cast<int>(i), j,
                               std::min(glue.strength, git->second.strength));
        }
    }
    return edges;
}

ExploreResult explore_producibles(const TileSystem& sys, size_t max_tiles,
                                  size_t max_states) {
    ExploreResult res;
    res.complete = true;
    Assembly start(&sys);
    std::unordered_set<std::string> seen;
    std::deque<Assembly> queue;
    seen.insert(start.canonical_key());
    queue.push_back(start);
    while (!queue.empty()) {
        Assembly a = std::move(queue.front());
        queue.pop_front();
        std::vector<AttachCandidate> cands = a.attachable();
        if (cands.empty()) {
            res.terminals.push_back(a);
        } else if (a.size() >= max_tiles) {
            res.complete = false;  // truncated by the tile bound
        } else {
            for (const AttachCandidate& c : cands) {
                Assembly b = a;
                b.attach(c.type_index, c.placement);
                std::string key = b.canonical_key();
                if (seen.count(key)) continue;
                if (seen.size() >= max_states) {
                    res.complete = false;
                    res.producibles.push_back(std::move(a));
                    return res;
                }
                seen.insert(key);
                queue.push_back(b);
            }
        }
        res.producibles.push_back(std::move(a));
    }
    return res;
}

Tristate is_directed(const TileSystem& sys, size_t max_tiles, size_t max_states) {
    ExploreResult res;
    res.complete = true;
    Assembly start(&sys);
    std::unordered_set<std::string> seen;
    std::deque<Assembly> queue;
    seen.insert(start.canonical_key());
    queue.push_back(start);
    size_t maximal = 0;  // terminals plus assemblies maximal-at-bound
    while (!queue.empty()) {
        Assembly a = std::move(queue.front());
        queue.pop_front();
        std::vector<AttachCandidate> cands = a.attachable();
        if (cands.empty() || a.size() >= max_tiles) {
            ++maximal;
            if (maximal > 1) return Tristate::no;
            continue;
        }
        for (const AttachCandidate& c : cands) {
            Assembly b = a;
            b.attach(c.type_index, c.placement);
            std::string key = b.canonical_key();
            if (seen.count(key)) continue;
            if (seen.size() >= max_states) return Tristate::undecided;
            seen.insert(key);
            queue.push_back(b);
        }
    }
    return maximal == 1 ? Tristate::yes : Tristate::no;
}

bool tau_stable(const Assembly& a, int tau) {
    size_t n = a.size();
    if (n <= 1) return true;
    auto edges = a.bond_edges();
    // Connectivity is exactly min-cut >= 1.
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (auto& [i, j, w] : edges) {
        adj[i].push_back({j, w});
        adj[j].push_back({i, w});
    }
    std::vector<char> vis(n, 0);
    std::deque<int> q{0};
    vis[0] = 1;
    size_t cnt = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (auto& [v, w] : adj[u])
            if (!vis[v]) {
                vis[v] = 1;
                ++cnt;
                q.push_back(v);
            }
    }
    if (cnt != n) return false;
    if (tau <= 1) return true;

    // Stoer-Wagner global min cut on the weighted bond graph.
    std::vector<std::vector<long long>> w(n, std::vector<long long>(n, 0));
    for (auto& [i, j, s] : edges) {
        w[i][j] += s;
        w[j][i] += s;
    }
    std::vector<int> vertices(n);
    for (size_t i = 0; i < n; ++i) vertices[i] = static_cast<int>(i);
    long long best = LLONG_MAX;
    while (vertices.size() > 1) {
        std::vector<long long> wsum(vertices.size(), 0);
        std::vector<char> added(vertices.size(), 0);
        int prev = -1, last = -1;
        for (size_t it = 0; it < vertices.size(); ++it) {
            int sel = -1;
            for (size_t i = 0; i < vertices.size(); ++i)
                if (!added[i] && (sel == -1 || wsum[i] > wsum[sel]))
                    sel = static_cast<int>(i);
            added[sel] = 1;
            if (it + 1 == vertices.size()) {
                best = std::min(best, wsum[sel]);
                prev = last;
                last = sel;
                break;
            }
            last = sel;
            for (size_t i = 0; i < vertices.size(); ++i)
                if (!added[i]) wsum[i] += w[vertices[sel]][vertices[i]];
        }
        // merge last into prev
        if (prev < 0) break;
        int vp = vertices[prev], vl = vertices[last];
        for (size_t i = 0; i < vertices.size(); ++i) {
            w[vp][vertices[i]] += w[vl][vertices[i]];
            w[vertices[i]][vp] += w[vertices[i]][vl];
        }
        vertices.erase(vertices.begin() + last);
    }
    return best >= tau;
}

LatticeAuditResult lattice_audit(const Assembly& a) {
    int n = a.system().n;
    LatticeAuditResult res;
    if (a.size() == 0) {
        res.ok = true;
        return res;
    }
    if (n == 5) {
        std::set<std::pair<int, long long>> orients;
        for (const PlacedTile& t : a.tiles())
            orients.insert({t.placement.orient == Orientation::standard ? 0 : 1,
                            llround(t.placement.extra_rotation * 1e9)});
        res.ok = orients.size() <= 2;
        res.detail = res.ok ? "pentagon orientations within the two-element set"
                            : "more than two distinct pentagon orientations";
        return res;
    }
    if (n != 3 && n != 4 && n != 6) {
        res.ok = false;
        res.detail = "lattice audit only defined for n in {3,4,5,6}";
        return res;
    }
    // Basis 1 and omega (omega = i for n=4).
    const double two_pi = 6.283185307179586476925286766559;
    Vec2 u{1.0, 0.0};
    Vec2 v{std::cos(two_pi / n), std::sin(two_pi / n)};
    const PlacedTile& seed = a.tiles()[0];
    Orientation seed_o = seed.placement.orient;
    int flip_sigma = -2;  // sigma class of flipped-orientation tiles (n == 3)
    for (const PlacedTile& t : a.tiles()) {
        Vec2 d = t.placement.center - seed.placement.center;
        double b = d.y / v.y;
        double aa = d.x - b * v.x;
        long long ib = llround(b), ia = llround(aa);
        Vec2 resid{d.x - ia * u.x - ib * v.x, d.y - ia * u.y - ib * v.y};
        if (std::abs(resid.x) > 1e-9 || std::abs(resid.y) > 1e-9) {
            res.ok = false;
            res.detail = "tile center off the tessellation lattice";
            return res;
        }
        if (t.placement.is_exact() && seed.placement.is_exact()) {
            // exact confirmation of lattice membership
            CycloNum delta = *t.placement.exact_center - *seed.placement.exact_center;
            CycloNum expect = CycloNum::integer(n, ia) +
                              CycloNum::root_power(n, 1).scaled(ib);
            if (!(delta - expect).is_zero()) {
                res.ok = false;
                res.detail = "exact center disagrees with lattice coordinates";
                return res;
            }
        }
        if (n == 3) {
            int sigma = static_cast<int>(((ia + ib) % 3 + 3) % 3);
            bool same = t.placement.orient == seed_o;
            if (same && sigma != 0) {
                res.ok = false;
                res.detail = "triangle orientation parity violated";
                return res;
            }
            if (!same) {
                if (flip_sigma == -2) flip_sigma = sigma;
                if (sigma == 0 || sigma != flip_sigma) {
                    res.ok = false;
                    res.detail = "triangle orientation parity violated";
                    return res;
                }
            }
        }
    }
    res.ok = true;
    res.detail = "all centers on lattice";
    return res;
}

}  // namespace ptam
