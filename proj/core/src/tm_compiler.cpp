// tm_compiler.cpp — Turing machine to temperature-1 tile system compiler.
//
// Layout summary.  Machine configurations become rows of bit clusters on
// the junction-polyform grid.  Each tape cell occupies S = 5 + Bs + 2*Bq
// consecutive slot columns (Bs/Bq = bits per symbol/state) holding, in
// ascending order for rows written rightward (the "A" layout):
//   [first, pad*Bq, pad, sym*Bs, pad, state*Bq, flag, last]
// Rows written leftward store the mirror image ("B" layout).  `first` and
// `last` flag the row's physical first cell and last live cell; `flag`
// marks the head cell, whose state is in the state bits.  Every row keeps
// one trailing all-zero dead cell and every row is one cell wider than its
// predecessor, so geometry is independent of the tape contents.
//
// A sweep that writes row r+1 walks the columns of row r (rightward for
// even rows, leftward for odd ones).  At each column it performs one visit:
// a writer detour that deposits one field of the sweep-previous cell into
// the cluster below its corridor, then a reader detour that reads one field
// of the current cell from the cluster above.  Reading is genuine: the
// reader tile R carries glues for both read tiles and the blocker written
// into the cluster geometrically excludes the wrong one.  Tile types are
// shared across cells and rows: they are keyed by a bounded register (slot
// index, block phase, field accumulators, pending emission buffer), so one
// finite type set serves the whole unbounded computation.

#include "ptam/tm_compiler.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "ptam/grid.hpp"

namespace ptam {

// ===================================================================
// Machine description
// ===================================================================

int TMSpec::state_id(const std::string& name) const {
    for (size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return (int)i;
    throw std::invalid_argument("unknown state: " + name);
}

int TMSpec::symbol_id(const std::string& name) const {
    for (size_t i = 0; i < symbols.size(); ++i)
        if (symbols[i] == name) return (int)i;
    throw std::invalid_argument("unknown symbol: " + name);
}

static void validate_machine(const TMSpec& m) {
    if (m.states.empty() || m.symbols.empty())
        throw std::invalid_argument("machine needs states and symbols");
    if (m.start_state < 0 || m.start_state >= (int)m.states.size())
        throw std::invalid_argument("bad start state");
    for (const auto& [key, t] : m.rules) {
        if (m.halting.count(key.first))
            throw std::invalid_argument("halting state has a rule: " + m.states[key.first]);
        if (t.next_state < 0 || t.next_state >= (int)m.states.size() ||
            t.write_symbol < 0 || t.write_symbol >= (int)m.symbols.size() ||
            t.move < -1 || t.move > 1)
            throw std::invalid_argument("rule out of range");
    }
    for (int q = 0; q < (int)m.states.size(); ++q) {
        if (m.halting.count(q)) continue;
        for (int s = 0; s < (int)m.symbols.size(); ++s)
            if (!m.rules.count({q, s}))
                throw std::invalid_argument("missing rule for (" + m.states[q] + ", " +
                                            m.symbols[s] + ")");
    }
}

TMSpec parse_tm(const std::string& text) {
    TMSpec m;
    std::istringstream in(text);
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "tm") {
            saw_header = true;
        } else if (kw == "states") {
            std::string s;
            while (ls >> s) m.states.push_back(s);
        } else if (kw == "symbols") {
            std::string s;
            while (ls >> s) m.symbols.push_back(s);
        } else if (kw == "start") {
            std::string s;
            ls >> s;
            m.start_state = m.state_id(s);
        } else if (kw == "halt") {
            std::string s;
            while (ls >> s) m.halting.insert(m.state_id(s));
        } else if (kw == "rule") {
            std::string q, s, arrow, q2, s2, mv;
            if (!(ls >> q >> s >> arrow >> q2 >> s2 >> mv) || arrow != "->")
                throw std::invalid_argument("bad rule line: " + line);
            TMTransition t;
            t.next_state = m.state_id(q2);
            t.write_symbol = m.symbol_id(s2);
            t.move = mv == "L" ? -1 : mv == "R" ? 1 : 0;
            if (mv != "L" && mv != "R" && mv != "S")
                throw std::invalid_argument("bad move: " + mv);
            m.rules[{m.state_id(q), m.symbol_id(s)}] = t;
        } else {
            throw std::invalid_argument("unknown directive: " + kw);
        }
    }
    if (!saw_header) throw std::invalid_argument("missing 'tm' header");
    validate_machine(m);
    return m;
}

std::string tm_to_text(const TMSpec& m) {
    std::ostringstream out;
    out << "tm\nstates";
    for (const auto& s : m.states) out << ' ' << s;
    out << "\nsymbols";
    for (const auto& s : m.symbols) out << ' ' << s;
    out << "\nstart " << m.states[m.start_state] << "\nhalt";
    for (int q : m.halting) out << ' ' << m.states[q];
    out << '\n';
    for (const auto& [key, t] : m.rules)
        out << "rule " << m.states[key.first] << ' ' << m.symbols[key.second] << " -> "
            << m.states[t.next_state] << ' ' << m.symbols[t.write_symbol] << ' '
            << (t.move < 0 ? 'L' : t.move > 0 ? 'R' : 'S') << '\n';
    return out.str();
}

std::vector<TMConfig> reference_interpret(const TMSpec& m, const std::vector<int>& input,
                                          int max_steps) {
    validate_machine(m);
    for (int s : input)
        if (s < 0 || s >= (int)m.symbols.size())
            throw std::invalid_argument("input symbol out of range");
    TMConfig c;
    c.tape = input.empty() ? std::vector<int>{0} : input;
    c.head = 0;
    c.state = m.start_state;
    std::vector<TMConfig> trace{c};
    for (int step = 0; step < max_steps; ++step) {
        if (m.halting.count(c.state)) return trace;
        const TMTransition& t = m.rules.at({c.state, c.tape[c.head]});
        c.tape[c.head] = t.write_symbol;
        c.state = t.next_state;
        if (t.move > 0) {
            ++c.head;
            if (c.head == (int)c.tape.size()) c.tape.push_back(0);
        } else if (t.move < 0 && c.head > 0) {
            --c.head;
        }
        trace.push_back(c);
    }
    if (m.halting.count(c.state)) return trace;
    throw std::runtime_error("machine did not halt within step budget");
}

// ===================================================================
// Geometry templates
// ===================================================================

namespace {

// Vertical pitch between successive sweep corridors, in grid rows.  The
// cluster written by a sweep sits 4 rows below its corridor and is read
// from the corridor kRowDrop rows further down, leaving kRowDrop-4 rows of
// climbing room for the reader below the writer's chains.
constexpr int kRowDrop = 10;

struct Geo {
    int n;
    GridBasis basis;
    GadgetSpec g;
    explicit Geo(int n_) : n(n_), basis(grid_basis(n_)), g(gen_gadget(n_)) {}
    CycloNum copyc(int r, int h) const {
        if ((r + h) % 2 != 0) throw std::logic_error("copy coordinate parity");
        int a = (r + h) / 2, b = (h - r) / 2;
        return basis.v.scaled(a) + basis.w.scaled(b);
    }
    Placement pix(int r, int h) const {
        return Placement::exact(RegularPolygonShape(n), Orientation::standard, copyc(r, h));
    }
};

Placement rot_place(const Placement& p, int k) {
    int n = p.exact_center->order();
    return Placement::exact(p.shape, p.orient, p.exact_center->mul_by_root(((k % n) + n) % n));
}

Placement shifted(const Placement& p, const CycloNum& d) {
    return Placement::exact(p.shape, p.orient, *p.exact_center + d);
}

bool clear_of(const Placement& p, const std::vector<Placement>& obst) {
    for (const auto& q : obst)
        if (placements_overlap(p, q)) return false;
    return true;
}

std::optional<std::vector<Placement>> leg(const Placement& from, const Placement& to,
                                          const std::vector<Placement>& obst, int maxd = 12,
                                          size_t budget = 250000) {
    std::optional<std::vector<Placement>> best;
    for (int d = 2; d <= maxd && !best; ++d) best = route_path(from, {}, to, obst, d, budget);
    return best;
}

// Chains legs through waypoints; later waypoints are obstacles for earlier
// legs so the route cannot preempt them.
std::optional<std::vector<Placement>> via(const Placement& from,
                                          const std::vector<Placement>& wps,
                                          std::vector<Placement> obst, int maxd = 12) {
    std::vector<Placement> out;
    Placement cur = from;
    for (size_t i = 0; i < wps.size(); ++i) {
        auto oo = obst;
        for (size_t j = i + 1; j < wps.size(); ++j) oo.push_back(wps[j]);
        auto l = leg(cur, wps[i], oo, maxd);
        if (!l) return std::nullopt;
        out.insert(out.end(), l->begin(), l->end());
        obst.insert(obst.end(), l->begin(), l->end() - 1);
        cur = wps[i];
    }
    return out;
}

// The bit cluster: reader R, read sites, and both blocker variants, rotated
// by omega^k and anchored with the 0-site center at `at`.
struct Cluster {
    Placement R, s1, s0, ct, b1, b0;
    std::vector<Placement> all() const { return {R, s1, s0, ct, b1, b0}; }
};

Cluster make_cluster(const Geo& G, int k, const CycloNum& at) {
    auto mk = [&](const Placement& p) {
        Placement q = rot_place(
            Placement::exact(p.shape, p.orient, *p.exact_center - *G.g.site0.exact_center), k);
        return Placement::exact(q.shape, q.orient, *q.exact_center + at);
    };
    return Cluster{mk(G.g.reader),          mk(G.g.site1), mk(G.g.site0),
                   mk(G.g.cont),            mk(G.g.writer1.back()),
                   mk(G.g.writer0.back())};
}

// A band of grid pixels used as routing obstacles, so writer legs stay
// below their corridor and reader legs stay inside their own band instead
// of wandering into the neighbouring sweep's territory.
std::vector<Placement> wall_rows(const Geo& G, std::initializer_list<int> rows, int hmax) {
    std::vector<Placement> w;
    for (int r : rows)
        for (int h = -hmax; h <= hmax; ++h)
            if (((r + h) % 2 + 2) % 2 == 0) w.push_back(G.pix(r, h));
    return w;
}

struct WriterParts {
    std::vector<Placement> head[2], tail[2];  // head: W_in-excl..anchor; tail: ..W_out incl
    std::optional<Placement> blocker[2];
    int m[2] = {-1, -1}, orient[2] = {-1, -1};
};

struct ReaderParts {
    std::vector<Placement> approach;  // W_out-excl .. A incl
    std::optional<Placement> R, t1, t0, t0c;
    std::vector<Placement> path1, path0;  // site-excl .. P_out incl
    int s = -1, app = -1, set1 = -1, set0 = -1;
};

struct DirTmpl {
    int dx = 1;
    std::optional<Placement> P_in, W_in, W_out, P_out;
    WriterParts w;
    ReaderParts r;
    std::vector<Placement> p_in_leg;  // P_in-excl .. W_in incl
    std::vector<Placement> w_skip;    // W_in-excl .. W_out incl
    std::vector<Placement> r_skip;    // W_out-excl .. P_out incl
    std::vector<Placement> turn;      // P_out-excl .. next sweep P_in incl
};

struct Templates {
    int n = 0;
    int krow[2] = {-1, -1};  // cluster rotation for rows written rightward/leftward
    std::vector<DirTmpl> vis;  // [0]: dx=+1, [1]: dx=-1
    std::optional<CycloNum> colstep, rowstep;
    std::optional<CycloNum> b0rel[2], b1rel[2];  // blocker centers relative to visit origin
};

// Known-good search parameters, recorded from offline searches so that
// template construction stays fast.  parity 0 = rows written rightward
// (writer dx=+1, reader dx=-1), parity 1 = the opposite.
struct TmplPins {
    int n, parity, k;
    int wm[2], worient[2];   // writer anchor side/orientation per bit
    int rs, rapp;            // reader approach side and ladder index
    int rset1, rset0;        // branch waypoint-set indices
};

static const std::vector<TmplPins>& pin_table() {
    static const std::vector<TmplPins> pins = {};
    return pins;
}

const TmplPins* find_pin(int n, int parity) {
    for (const auto& p : pin_table())
        if (p.n == n && p.parity == parity) return &p;
    return nullptr;
}

struct WriterOpt {
    std::vector<Placement> head, tail;  // W_in-excl..anchor; anchor-excl..W_out incl
    std::optional<Placement> blocker;
    int m = -1, orient = -1;
    size_t len = 0;
};

// Writer detour options for one bit: W_in -> ... -> anchor (abutting the
// blocker) -> ... -> W_out, the blocker a dead-end branch off the anchor.
// Several distinct anchor choices are returned so the joint search can pick
// a combination that leaves room for the reader one row below.
std::vector<WriterOpt> writer_options(const Geo& G, int dx, int k, int bit, const TmplPins* pin,
                                      size_t limit) {
    int n = G.n;
    auto px = [&](int r, int h) { return G.pix(r, dx * h); };
    Cluster cl = make_cluster(G, k, G.copyc(-4, 0));
    std::vector<Placement> obst = cl.all();
    for (auto& p : {px(-1, -3), px(-1, 3), px(-1, -1), px(-1, 1)}) obst.push_back(p);
    {
        // stay below the corridor, and above the row under the cluster so
        // the reader keeps a clear downward escape from the read sites
        auto wall = wall_rows(G, {1, 2}, 8);
        auto floor_w = wall_rows(G, {-5, -6}, 8);
        obst.insert(obst.end(), wall.begin(), wall.end());
        obst.insert(obst.end(), floor_w.begin(), floor_w.end());
    }
    Placement W_in = px(-1, -1), W_out = px(-1, 1);
    const Placement& bl = bit ? cl.b1 : cl.b0;

    std::vector<WriterOpt> out;
    std::vector<std::pair<int, int>> cand;  // (m, orient)
    if (pin) cand.push_back({pin->wm[bit], pin->worient[bit]});
    for (int m = 0; m < n; ++m)
        for (int o = 0; o < 2; ++o)
            if (!pin || m != pin->wm[bit] || o != pin->worient[bit]) cand.push_back({m, o});
    for (int maxd : {9, 13}) {
        for (auto [m, o] : cand) {
            if (out.size() >= limit) return out;
            bool seen = false;
            for (const auto& w : out)
                if (w.m == m && w.orient == o) seen = true;
            if (seen) continue;
            Placement a = Placement::exact(
                bl.shape, o ? Orientation::negated : Orientation::standard,
                o ? *bl.exact_center + CycloNum::root_power(n, m)
                  : *bl.exact_center - CycloNum::root_power(n, m));
            if (a.orient == bl.orient) continue;
            if (!clear_of(a, obst)) continue;
            // tail first, then head around it; fall back to head first
            std::optional<std::vector<Placement>> h, t;
            for (int d = 2; d <= maxd && !t; ++d) t = route_path(a, {}, W_out, obst, d, 400000);
            if (t) {
                auto o3 = obst;
                o3.insert(o3.end(), t->begin(), t->end());
                for (int d = 2; d <= maxd && !h; ++d) h = route_path(W_in, {}, a, o3, d, 400000);
            }
            if (!h) {
                std::optional<std::vector<Placement>> h1;
                for (int d = 2; d <= maxd && !h1; ++d)
                    h1 = route_path(W_in, {}, a, obst, d, 400000);
                if (h1) {
                    auto o4 = obst;
                    o4.insert(o4.end(), h1->begin(), h1->end());
                    std::optional<std::vector<Placement>> t2;
                    for (int d = 2; d <= maxd && !t2; ++d)
                        t2 = route_path(a, {}, W_out, o4, d, 400000);
                    if (t2) {
                        h = h1;
                        t = t2;
                    }
                }
            }
            if (h && t) {
                WriterOpt w;
                w.head = *h;
                w.tail = *t;
                w.blocker = bl;
                w.m = m;
                w.orient = o;
                w.len = h->size() + t->size();
                out.push_back(std::move(w));
            }
        }
        if (out.size() >= limit) break;
    }
    return out;
}

std::vector<std::vector<std::pair<int, int>>> reader_waypoint_sets() {
    return {
        {{5, 3}, {3, 3}, {1, 3}},
        {{7, 3}, {5, 3}, {3, 3}, {1, 3}},
        {{6, 2}, {4, 2}, {2, 2}, {0, 2}},
        {{3, 3}, {1, 3}},
        {{8, 2}, {6, 2}, {4, 2}, {2, 2}},
        {{8, 0}, {7, 3}, {5, 3}, {3, 3}, {1, 3}},
        {{7, 1}, {5, 1}, {3, 1}, {1, 1}},
        {{8, -2}, {8, 0}, {7, 3}, {5, 3}, {3, 3}, {1, 3}},
        {{6, 4}, {4, 4}, {2, 4}, {0, 4}},
        {{7, 5}, {5, 5}, {3, 5}, {1, 5}, {1, 3}},
        {{4, 0}, {3, 3}, {1, 3}},
        {{4, 2}, {2, 2}, {0, 2}},
        {{4, 0}, {2, 0}, {1, 3}},
        {{4, 2}, {3, 3}, {1, 3}},
        {{4, -2}, {2, 0}, {1, 3}},
        {{4, 0}, {2, 2}, {0, 2}},
    };
}

std::vector<std::vector<std::pair<int, int>>> reader_approach_sets() {
    return {
        {{1, 1}, {3, 1}, {5, 1}},
        {{1, 3}, {3, 3}, {5, 3}},
        {{1, 1}, {3, 1}},
        {{1, 3}, {3, 1}, {5, 1}},
        {{2, 2}, {4, 2}},
        {{1, 1}, {3, 3}, {5, 3}},
        {{1, -1}, {3, -1}, {5, -1}},
        {{2, -2}, {4, -2}},
        {{1, 1}, {3, 1}, {5, 3}},
        {{1, 3}, {3, 3}, {5, 1}},
    };
}

// Reader detour: W_out -> ladder -> approach tile A abutting R, then R and
// the branch reads; path1 continues from the 1-read, path0 from the 0-read
// continuation, both ending at P_out.  Branch paths only avoid the cluster
// tiles present in their own branch: the 1-branch never coexists with the
// 0-blocker and vice versa.
std::optional<ReaderParts> find_reader(const Geo& G, int dx, int k, const TmplPins* pin,
                                       const std::vector<Placement> writer_bit[2],
                                       const std::vector<Placement>& writer_both) {
    int n = G.n;
    auto px = [&](int r, int h) { return G.pix(r, dx * h); };
    Cluster cl = make_cluster(G, k, G.copyc(kRowDrop - 4, 0));
    Placement P_in = px(-1, -3), W_in = px(-1, -1), W_out = px(-1, 1), P_out = px(-1, 3);
    const bool no_wobst = std::getenv("PTAM_NO_WOBST") != nullptr;   // diagnostics only
    const bool no_walls = std::getenv("PTAM_NO_WALLS") != nullptr;   // diagnostics only
    std::vector<Placement> shared = {P_in, W_in, P_out};
    if (!no_wobst) shared.insert(shared.end(), writer_both.begin(), writer_both.end());
    // Branch obstacle sets: each read branch coexists only with the blocker
    // configuration (and hence the writer-chain variant above) of its own
    // bit, so the other variant's tiles are not obstacles for it.
    std::vector<Placement> br1 = {cl.R, cl.s1, cl.b1};
    std::vector<Placement> br0 = {cl.R, cl.s0, cl.ct, cl.b0};
    std::vector<Placement> app_extra;
    if (!no_wobst) {
        br1.insert(br1.end(), writer_bit[1].begin(), writer_bit[1].end());
        br0.insert(br0.end(), writer_bit[0].begin(), writer_bit[0].end());
        // The shared approach serves both bits and must clear both variants.
        app_extra.insert(app_extra.end(), writer_bit[0].begin(), writer_bit[0].end());
        app_extra.insert(app_extra.end(), writer_bit[1].begin(), writer_bit[1].end());
    }
    if (!no_walls) {
        // keep reader legs out of the writer band below and the next
        // corridor above
        auto floor_w = wall_rows(G, {-2, -3}, 9);
        auto ceil_w = wall_rows(G, {kRowDrop - 1, kRowDrop}, 9);
        shared.insert(shared.end(), floor_w.begin(), floor_w.end());
        shared.insert(shared.end(), ceil_w.begin(), ceil_w.end());
    }
    if (std::getenv("PTAM_TMPL_GEOM")) {   // diagnostics only
        auto dump = [&](const char* tag, const Placement& p) {
            auto c = p.exact_center->to_complex();
            std::fprintf(stderr, "  [geom] %-4s (%7.3f, %7.3f) %s\n", tag, c.real(), c.imag(),
                         p.orient == Orientation::negated ? "neg" : "std");
        };
        dump("R", cl.R); dump("s1", cl.s1); dump("s0", cl.s0); dump("ct", cl.ct);
        dump("b1", cl.b1); dump("b0", cl.b0);
        dump("Pin", P_in); dump("Win", W_in); dump("Wout", W_out); dump("Pout", P_out);
        for (auto& p : writer_bit[1]) dump("w1", p);
        for (auto& p : writer_bit[0]) dump("w0", p);
    }
    auto sets = reader_waypoint_sets();
    auto apps = reader_approach_sets();

    std::vector<int> sorder;
    if (pin) sorder.push_back(pin->rs);
    for (int s = 0; s < n; ++s)
        if (!pin || s != pin->rs) sorder.push_back(s);

    for (int s : sorder) {
        const bool dbg = std::getenv("PTAM_TMPL_DEBUG") != nullptr;
        Placement A = Placement::exact(cl.R.shape, Orientation::standard,
                                       *cl.R.exact_center - CycloNum::root_power(n, s));
        auto oA = cl.all();
        oA.insert(oA.end(), shared.begin(), shared.end());
        oA.insert(oA.end(), app_extra.begin(), app_extra.end());
        if (!clear_of(A, oA)) {
            if (dbg) std::fprintf(stderr, "  [rdr] s=%d anchor blocked\n", s);
            continue;
        }
        std::vector<int> aorder;
        if (pin) aorder.push_back(pin->rapp);
        for (int i = 0; i < (int)apps.size(); ++i)
            if (!pin || i != pin->rapp) aorder.push_back(i);
        for (int ai : aorder) {
            std::vector<Placement> wps;
            for (auto [r, h] : apps[ai]) wps.push_back(px(r, h));
            wps.push_back(A);
            auto ap = via(W_out, wps, oA);
            if (dbg) std::fprintf(stderr, "  [rdr] s=%d app=%d ap=%d\n", s, ai, (int)ap.has_value());
            if (!ap) continue;
            auto mkobs = [&](const std::vector<Placement>& br) {
                auto o = br;
                o.insert(o.end(), shared.begin(), shared.end());
                o.insert(o.end(), ap->begin(), ap->end());
                o.push_back(W_out);
                return o;
            };
            auto expand = [&](int si) {
                std::vector<Placement> w;
                for (auto [r, h] : sets[si]) w.push_back(px(r, h));
                w.push_back(P_out);
                return w;
            };
            std::vector<int> order1, order0;
            if (pin) order1.push_back(pin->rset1), order0.push_back(pin->rset0);
            for (int i = 0; i < (int)sets.size(); ++i) {
                if (!pin || i != pin->rset1) order1.push_back(i);
                if (!pin || i != pin->rset0) order0.push_back(i);
            }
            std::optional<std::vector<Placement>> p1, p0;
            int u1 = -1, u0 = -1;
            auto o1 = mkobs(br1);
            for (int i : order1) {
                p1 = via(cl.s1, expand(i), o1);
                if (p1) {
                    u1 = i;
                    break;
                }
            }
            if (dbg) std::fprintf(stderr, "  [rdr] s=%d app=%d p1=%d\n", s, ai, u1);
            if (!p1 && dbg && std::getenv("PTAM_TMPL_GEOM")) {
                auto probe = [&](Placement a, const char* an, Placement b, const char* bn,
                                 const std::vector<Placement>& extra) {
                    auto o = o1;
                    o.insert(o.end(), extra.begin(), extra.end());
                    auto e = leg(a, b, o);
                    std::fprintf(stderr, "    [rdr] %s->%s: %d\n", an, bn,
                                 e ? (int)e->size() : -1);
                    return e;
                };
                auto e1 = probe(cl.s1, "s1", px(4, 0), "(4,0)", {});
                if (e1) {
                    probe(px(4, 0), "(4,0)", px(3, 3), "(3,3)", *e1);
                    probe(px(4, 0), "(4,0)", px(2, 0), "(2,0)", *e1);
                    probe(px(4, 0), "(4,0)", px(2, 2), "(2,2)", *e1);
                }
                probe(px(2, 0), "(2,0)", px(1, 3), "(1,3)", {});
                probe(px(1, 3), "(1,3)", P_out, "Pout", {});
            }
            if (!p1) continue;
            auto o0 = mkobs(br0);
            for (int i : order0) {
                p0 = via(cl.ct, expand(i), o0);
                if (p0) {
                    u0 = i;
                    break;
                }
            }
            if (dbg) std::fprintf(stderr, "  [rdr] s=%d app=%d p0=%d\n", s, ai, u0);
            if (!p0) continue;
            ReaderParts out;
            out.approach = *ap;
            out.R = cl.R;
            out.t1 = cl.s1;
            out.t0 = cl.s0;
            out.t0c = cl.ct;
            out.path1 = *p1;
            out.path0 = *p0;
            out.s = s;
            out.app = ai;
            out.set1 = u1;
            out.set0 = u0;
            return out;
        }
    }
    return std::nullopt;
}

std::vector<Placement> all_tiles(const DirTmpl& t) {
    std::vector<Placement> v = {*t.P_in, *t.W_in, *t.W_out, *t.P_out};
    for (int b = 0; b < 2; ++b) {
        v.insert(v.end(), t.w.head[b].begin(), t.w.head[b].end());
        v.insert(v.end(), t.w.tail[b].begin(), t.w.tail[b].end());
        if (t.w.blocker[b]) v.push_back(*t.w.blocker[b]);
    }
    v.insert(v.end(), t.r.approach.begin(), t.r.approach.end());
    if (t.r.R) v.push_back(*t.r.R);
    if (t.r.t1) v.push_back(*t.r.t1);
    if (t.r.t0) v.push_back(*t.r.t0);
    if (t.r.t0c) v.push_back(*t.r.t0c);
    v.insert(v.end(), t.r.path1.begin(), t.r.path1.end());
    v.insert(v.end(), t.r.path0.begin(), t.r.path0.end());
    v.insert(v.end(), t.p_in_leg.begin(), t.p_in_leg.end());
    v.insert(v.end(), t.w_skip.begin(), t.w_skip.end());
    v.insert(v.end(), t.r_skip.begin(), t.r_skip.end());
    v.insert(v.end(), t.turn.begin(), t.turn.end());
    return v;
}

Templates build_templates(int n) {
    Geo G(n);
    Templates T;
    T.n = n;
    T.colstep = (G.basis.v + G.basis.w).scaled(3);
    T.rowstep = G.basis.w.scaled(kRowDrop / 2) - G.basis.v.scaled(kRowDrop / 2);
    T.vis.resize(2);

    WriterParts wpar[2];
    ReaderParts rpar[2];  // indexed by parity (the row's writing direction)
    for (int parity = 0; parity < 2; ++parity) {
        int dw = parity == 0 ? 1 : -1;
        const TmplPins* pin = find_pin(n, parity);
        bool done = false;
        std::vector<int> korder;
        if (pin) korder.push_back(pin->k);
        for (int k = 0; k < n; ++k)
            if (!pin || k != pin->k) korder.push_back(k);
        const bool dbg = std::getenv("PTAM_TMPL_DEBUG") != nullptr;
        for (int k : korder) {
            const TmplPins* kp = pin && pin->k == k ? pin : nullptr;
            std::vector<WriterOpt> opts[2];
            for (int b = 0; b < 2; ++b) opts[b] = writer_options(G, dw, k, b, kp, 5);
            if (dbg)
                std::fprintf(stderr, "[tmpl] n=%d parity=%d k=%d writer opts=%zu/%zu\n", n,
                             parity, k, opts[0].size(), opts[1].size());
            if (opts[0].empty() || opts[1].empty()) continue;
            // Writer-option pairs ordered by combined chain length: shorter
            // chains block less of the reader's space one row below.
            std::vector<std::pair<int, int>> pairs;
            for (int i0 = 0; i0 < (int)opts[0].size(); ++i0)
                for (int i1 = 0; i1 < (int)opts[1].size(); ++i1) pairs.push_back({i0, i1});
            std::stable_sort(pairs.begin(), pairs.end(), [&](auto a, auto b) {
                return opts[0][a.first].len + opts[1][a.second].len <
                       opts[0][b.first].len + opts[1][b.second].len;
            });
            if (pairs.size() > 12) pairs.resize(12);
            for (auto [i0, i1] : pairs) {
                WriterParts w;
                const WriterOpt* wo[2] = {&opts[0][i0], &opts[1][i1]};
                for (int b = 0; b < 2; ++b) {
                    w.head[b] = wo[b]->head;
                    w.tail[b] = wo[b]->tail;
                    w.blocker[b] = wo[b]->blocker;
                    w.m[b] = wo[b]->m;
                    w.orient[b] = wo[b]->orient;
                }
                // In the reader's frame one row below, the writer chain sits
                // around the cluster at copyc(4,0), i.e. translated by
                // copyc(8,0) from the writer's corridor frame.
                std::vector<Placement> wbit[2], wboth;
                CycloNum up = G.copyc(kRowDrop, 0);
                for (int b = 0; b < 2; ++b) {
                    for (const auto& p : w.head[b]) wbit[b].push_back(shifted(p, up));
                    for (const auto& p : w.tail[b]) wbit[b].push_back(shifted(p, up));
                    // the blockers are already in the reader's cluster set
                }
                // The writer's corridor pixels also sit in the reader's sky.
                for (int h : {-3, -1, 1, 3}) wboth.push_back(shifted(G.pix(-1, dw * h), up));
                auto r = find_reader(G, -dw, k, kp, wbit, wboth);
                if (dbg)
                    std::fprintf(stderr,
                                 "[tmpl] n=%d parity=%d k=%d pair(m%d/o%d, m%d/o%d) reader=%d\n",
                                 n, parity, k, w.m[0], w.orient[0], w.m[1], w.orient[1],
                                 (int)r.has_value());
                if (!r) continue;
                if (dbg)
                    std::fprintf(stderr,
                                 "[tmpl] PIN {%d, %d, %d, {%d, %d}, {%d, %d}, %d, %d, %d, %d}\n",
                                 n, parity, k, w.m[0], w.m[1], w.orient[0], w.orient[1], r->s,
                                 r->app, r->set1, r->set0);
                wpar[parity] = w;
                rpar[parity] = *r;
                T.krow[parity] = k;
                done = true;
                break;
            }
            if (done) break;
        }
        if (!done)
            throw std::runtime_error("no joint writer/reader template for n=" +
                                     std::to_string(n) + " parity " + std::to_string(parity));
    }

    for (int di = 0; di < 2; ++di) {
        int dx = di == 0 ? 1 : -1;
        DirTmpl& t = T.vis[di];
        t.dx = dx;
        auto px = [&](int r, int h) { return G.pix(r, dx * h); };
        t.P_in = px(-1, -3);
        t.W_in = px(-1, -1);
        t.W_out = px(-1, 1);
        t.P_out = px(-1, 3);
        t.w = wpar[di];          // this sweep writes rows of its own parity
        t.r = rpar[1 - di];      // and reads rows written by the other one
        // connector legs avoid every tile of both detours and both clusters
        Cluster below = make_cluster(G, T.krow[di], G.copyc(-4, 0));
        Cluster above = make_cluster(G, T.krow[1 - di], G.copyc(kRowDrop - 4, 0));
        std::vector<Placement> fixed = below.all();
        {
            auto ab = above.all();
            fixed.insert(fixed.end(), ab.begin(), ab.end());
        }
        for (int b = 0; b < 2; ++b) {
            fixed.insert(fixed.end(), t.w.head[b].begin(), t.w.head[b].end());
            fixed.insert(fixed.end(), t.w.tail[b].begin(), t.w.tail[b].end());
            fixed.push_back(*t.w.blocker[b]);
        }
        fixed.insert(fixed.end(), t.r.approach.begin(), t.r.approach.end());
        fixed.push_back(*t.r.R);
        fixed.push_back(*t.r.t1);
        fixed.push_back(*t.r.t0);
        fixed.push_back(*t.r.t0c);
        fixed.insert(fixed.end(), t.r.path1.begin(), t.r.path1.end());
        fixed.insert(fixed.end(), t.r.path0.begin(), t.r.path0.end());

        auto with = [&](std::initializer_list<Placement> extra) {
            auto o = fixed;
            for (const auto& p : extra) o.push_back(p);
            return o;
        };
        auto pin_leg = leg(*t.P_in, *t.W_in, with({*t.W_out, *t.P_out}));
        if (!pin_leg) throw std::runtime_error("no P_in leg (n=" + std::to_string(n) + ")");
        t.p_in_leg = *pin_leg;
        auto wskip = leg(*t.W_in, *t.W_out, with({*t.P_in, *t.P_out}));
        if (!wskip) throw std::runtime_error("no write-skip leg");
        t.w_skip = *wskip;
        auto rskip = via(*t.W_out, {px(1, 1), px(1, 3), *t.P_out}, with({*t.P_in, *t.W_in}));
        if (!rskip) rskip = leg(*t.W_out, *t.P_out, with({*t.P_in, *t.W_in}));
        if (!rskip) throw std::runtime_error("no read-skip leg");
        t.r_skip = *rskip;
    }

    // Turnarounds drop one corridor pitch at the far side of the final
    // visit and land on the next sweep's first P_in: same column, one row
    // step down, opposite direction, so the target is the pixel at
    // (-kRowDrop-1, +3) in this frame (h mirrored for leftward sweeps).
    for (int di = 0; di < 2; ++di) {
        int dx = di == 0 ? 1 : -1;
        DirTmpl& t = T.vis[di];
        const DirTmpl& nt = T.vis[1 - di];
        auto px = [&](int r, int h) { return G.pix(r, dx * h); };
        std::vector<Placement> obst = all_tiles(t);
        // next sweep's tiles, one row down (same absolute column)
        {
            std::vector<Placement> ntiles = all_tiles(nt);
            for (const auto& p : ntiles) obst.push_back(shifted(p, *T.rowstep));
        }
        // both clusters bracketing the drop
        {
            Cluster c1 = make_cluster(G, T.krow[di], G.copyc(-4, 0));
            Cluster c2 = make_cluster(G, T.krow[1 - di], G.copyc(-4 - kRowDrop, 0));
            for (const auto& p : c1.all()) obst.push_back(p);
            for (const auto& p : c2.all()) obst.push_back(p);
        }
        Placement target = px(-kRowDrop - 1, 3);  // == next sweep's P_in
        std::vector<std::vector<std::pair<int, int>>> drops = {
            {{-3, 3}, {-5, 3}, {-7, 3}, {-9, 3}},
            {{-3, 5}, {-5, 5}, {-7, 5}, {-9, 5}},
            {{-2, 4}, {-4, 4}, {-6, 4}, {-8, 4}, {-10, 4}},
            {{-3, 5}, {-5, 3}, {-7, 5}, {-9, 3}},
            {{-2, 4}, {-4, 6}, {-6, 4}, {-8, 4}, {-10, 4}},
        };
        std::optional<std::vector<Placement>> tr;
        for (const auto& d : drops) {
            std::vector<Placement> wps;
            for (auto [r, h] : d) wps.push_back(px(r, h));
            wps.push_back(target);
            tr = via(*t.P_out, wps, obst);
            if (tr) break;
        }
        if (!tr) throw std::runtime_error("no turnaround route (n=" + std::to_string(n) + ")");
        t.turn = *tr;
    }

    for (int parity = 0; parity < 2; ++parity) {
        Cluster cl = make_cluster(G, T.krow[parity], G.copyc(-4, 0));
        T.b0rel[parity] = *cl.b0.exact_center;
        T.b1rel[parity] = *cl.b1.exact_center;
    }
    return T;
}

const Templates& tm_templates(int n) {
    static std::map<int, Templates> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_templates(n)).first;
    return it->second;
}

// ===================================================================
// Register machine
// ===================================================================

// One register step per visit: read field A[S-1-v] of the current cell,
// emit field A[v] of the previous cell, with block bookkeeping at v = S-1.

enum class Field { First, Pad, Sym, State, Flag, Last };

struct FieldRef {
    Field f;
    int bit;
};

struct Meta {
    const TMSpec* m = nullptr;
    int Bs = 0, Bq = 0, S = 0, vdec = 0;
    int nq = 0, ns = 0;

    FieldRef slot_field(int s) const {
        if (s == 0) return {Field::First, 0};
        if (s <= Bq) return {Field::Pad, 0};
        if (s == 1 + Bq) return {Field::Pad, 0};
        if (s < 2 + Bq + Bs) return {Field::Sym, s - (2 + Bq)};
        if (s == 2 + Bq + Bs) return {Field::Pad, 0};
        if (s < 3 + Bq + Bs + Bq) return {Field::State, s - (3 + Bq + Bs)};
        if (s == 3 + 2 * Bq + Bs) return {Field::Flag, 0};
        return {Field::Last, 0};
    }
};

struct MReg {
    int8_t dir = 1;       // +1 rightward sweep, -1 leftward
    uint8_t v = 0;        // slot within the current block
    uint8_t blk = 0;      // saturating block counter (0, 1, 2)
    uint8_t tail = 0;     // 0 reading; 1 dead-cell read (rightward);
                          // 2 write-only; 3 final write-only (rightward)
    uint8_t curE1 = 0, curFlag = 0;
    uint16_t curState = 0, curSym = 0;
    int8_t decMv = -3;    // -3 none, 0 stay, 2 leftward-unresolved
    int16_t decQ = -1, decSym = -1;
    uint8_t prevValid = 0, prevFirst = 0, prevLast = 0;
    uint16_t prevSym = 0;
    int16_t prevHead = -1;
    int16_t carry = -1;     // head state landing on the current block's cell
    int16_t carryArm = -1;  // set at a decision, shifts into carry at block end
    uint8_t halted = 0;

    auto tie() const {
        return std::tie(dir, v, blk, tail, curE1, curFlag, curState, curSym, decMv, decQ,
                        decSym, prevValid, prevFirst, prevLast, prevSym, prevHead, carry,
                        carryArm, halted);
    }
    bool operator<(const MReg& o) const { return tie() < o.tie(); }
    std::string key() const {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%d.%d.%d.%d.%d%d.%x.%x.%d.%d.%d.%d%d%d.%x.%d.%d.%d.%d",
                      (int)dir, (int)v, (int)blk, (int)tail, (int)curE1, (int)curFlag,
                      (unsigned)curState, (unsigned)curSym, (int)decMv, (int)decQ, (int)decSym,
                      (int)prevValid, (int)prevFirst, (int)prevLast, (unsigned)prevSym,
                      (int)prevHead, (int)carry, (int)carryArm, (int)halted);
        return buf;
    }
};

MReg start_reg(int dir) {
    MReg r;
    r.dir = (int8_t)dir;
    if (dir < 0) r.prevValid = 1;  // leftward sweeps open by emitting the new dead cell
    return r;
}

// Zeroes register fields that can no longer influence anything at slot v,
// so equivalent visits share tile types.
void normalize_reg(MReg& r, const Meta& mt) {
    if (r.v >= 1) r.prevFirst = 0;
    // prev sym bit i is emitted at v = 2+Bq+i
    uint16_t mask = 0;
    for (int i = 0; i < mt.Bs; ++i)
        if ((int)r.v <= 2 + mt.Bq + i) mask |= (uint16_t)(1u << i);
    r.prevSym &= mask;
    if ((int)r.v > 3 + 2 * mt.Bq + mt.Bs) r.prevHead = -1;  // state+flag already emitted
    if (r.decMv == -3 && r.v > (uint8_t)mt.vdec) {
        // after the decision window with no pending move, the accumulated
        // state bits are dead (the symbol feeds the emission buffer later)
        r.curState = 0;
    }
    if (r.dir < 0) r.curE1 = 0;  // leftward sweeps navigate structurally
}

struct StepRes {
    MReg next;
    int kind = 0;  // 0 ok, 1 sweep end, 2 terminal (halted), 3 dead branch
};

bool reg_is_reading(const MReg& r) { return r.tail <= 1; }

// Fields that are structurally zero: pads always, and every field of the
// dead cell (the first block read by leftward sweeps, the post-last block
// read by rightward ones).
bool reg_forced_zero(const MReg& r, const Meta& mt) {
    if (!reg_is_reading(r)) return true;
    FieldRef f = mt.slot_field(mt.S - 1 - r.v);
    if (f.f == Field::Pad) return true;
    if (r.dir > 0 && r.tail == 1) return true;
    if (r.dir < 0 && r.blk == 0) return true;
    return false;
}

int reg_emit_value(const MReg& r, const Meta& mt) {
    FieldRef f = mt.slot_field(r.v);
    switch (f.f) {
        case Field::First: return r.prevFirst;
        case Field::Pad: return 0;
        case Field::Sym: return (r.prevSym >> f.bit) & 1;
        case Field::State: return r.prevHead >= 0 ? (r.prevHead >> f.bit) & 1 : 0;
        case Field::Flag: return r.prevHead >= 0 ? 1 : 0;
        case Field::Last: return r.prevLast;
    }
    return 0;
}

StepRes reg_step(const MReg& in, int x, const Meta& mt) {
    MReg r = in;
    int xFirst = -1;
    if (reg_is_reading(r)) {
        FieldRef f = mt.slot_field(mt.S - 1 - r.v);
        switch (f.f) {
            case Field::Last: r.curE1 = (uint8_t)x; break;
            case Field::Flag: r.curFlag = (uint8_t)x; break;
            case Field::State: r.curState |= (uint16_t)(x << f.bit); break;
            case Field::Sym: r.curSym |= (uint16_t)(x << f.bit); break;
            case Field::First: xFirst = x; break;
            case Field::Pad:
                if (x) return {r, 3};
                break;
        }
        if ((int)r.v == mt.vdec && r.curFlag) {
            int q = r.curState, s = r.curSym;
            if (q >= mt.nq || s >= mt.ns || mt.m->halting.count(q)) return {r, 3};
            const TMTransition& tr = mt.m->rules.at({q, s});
            r.decQ = (int16_t)tr.next_state;
            r.decSym = (int16_t)tr.write_symbol;
            if (tr.next_state >= 0 && mt.m->halting.count(tr.next_state)) r.halted = 1;
            int mv = tr.move;
            if (mv == 0) {
                r.decMv = 0;  // stay
            } else if ((r.dir > 0 && mv > 0) || (r.dir < 0 && mv < 0)) {
                // ahead: the head lands on the next block's cell
                if (r.dir > 0) {
                    r.carryArm = r.decQ;
                    r.decMv = -3;
                } else {
                    r.decMv = 2;  // resolved when the `first` field is read
                }
            } else {
                // behind: the head lands on the cell being emitted right now
                if (r.dir > 0 && r.blk == 0) {
                    r.decMv = 0;  // no cell behind the row start: stay
                } else {
                    if (!r.prevValid) return {r, 3};
                    r.prevHead = r.decQ;
                    r.decMv = -3;
                }
            }
        }
        if ((int)r.v == mt.S - 1 && r.decMv == 2) {
            if (xFirst == 1) {
                r.decMv = 0;  // moving left at the physical first cell stays
            } else {
                r.carryArm = r.decQ;
                r.decMv = -3;
            }
        }
    }

    if ((int)r.v < mt.S - 1) {
        r.v++;
        normalize_reg(r, mt);
        return {r, 0};
    }

    // block end
    MReg nx = r;
    nx.v = 0;
    nx.blk = (uint8_t)std::min<int>(r.blk + 1, 2);
    nx.curE1 = nx.curFlag = 0;
    nx.curState = nx.curSym = 0;
    nx.decMv = -3;
    nx.decQ = nx.decSym = -1;
    if (reg_is_reading(r)) {
        nx.prevValid = 1;
        nx.prevFirst = (uint8_t)(xFirst == 1 ? 1 : 0);
        nx.prevLast = (uint8_t)((r.dir > 0) ? (r.tail == 1 ? 1 : 0) : (r.blk == 0 ? 1 : 0));
        nx.prevSym = r.curFlag ? (uint16_t)r.decSym : r.curSym;
        int head = -1;
        if (r.decMv == 0) head = r.decQ;
        if (r.carry >= 0) {
            if (head >= 0) return {nx, 3};  // speculative double landing
            head = r.carry;
        }
        nx.prevHead = (int16_t)head;
        nx.carry = r.carryArm;
        nx.carryArm = -1;
        if (r.dir > 0) {
            if (r.tail == 1) {
                nx.tail = 2;
            } else if (r.curE1 == 1) {
                nx.tail = 1;  // the next block reads the dead cell
            }
        } else {
            if (xFirst == 1) nx.tail = 2;  // just read the physical first cell
        }
        normalize_reg(nx, mt);
        return {nx, 0};
    }
    // write-only block end
    if (r.dir > 0) {
        if (r.tail == 2) {
            nx.tail = 3;
            nx.prevValid = 1;
            nx.prevFirst = nx.prevLast = 0;
            nx.prevSym = 0;
            nx.prevHead = -1;
            nx.carry = nx.carryArm = -1;
            normalize_reg(nx, mt);
            return {nx, 0};
        }
        return {start_reg(-1), r.halted ? 2 : 1};
    }
    return {start_reg(1), r.halted ? 2 : 1};
}

// ===================================================================
// Tile emission
// ===================================================================

int bond_side(const Placement& a, const Placement& b) {
    int n = a.exact_center->order();
    CycloNum d = *b.exact_center - *a.exact_center;
    bool a_std = a.orient == Orientation::standard;
    for (int m = 0; m < n; ++m) {
        CycloNum rp = CycloNum::root_power(n, m);
        if (a_std ? (d == rp) : (d == -rp)) return m;
    }
    return -1;
}

struct VisitNode {
    Placement place;
    int parent;  // index into the node list; -1 = the entry tile (previous P_out)
};

// Assembles the node tree for one visit.  variant: 0 full (write+read),
// 1 no-write (read only), 2 no-read (write only).  wbit selects the writer
// chain; want1/want0 select which read branches exist.  leaf1/leaf0 are the
// P_out node indices of the surviving branches (leaf0 doubles as the single
// leaf for no-read visits).
void build_visit_nodes(const DirTmpl& T, int variant, int wbit, bool want1, bool want0,
                       std::vector<VisitNode>& nodes, int& leaf1, int& leaf0, int& blocker_idx) {
    nodes.clear();
    leaf1 = leaf0 = blocker_idx = -1;
    int last = -1;
    auto push_chain = [&](const std::vector<Placement>& chain) {
        for (const auto& p : chain) {
            nodes.push_back({p, last});
            last = (int)nodes.size() - 1;
        }
    };
    push_chain(T.p_in_leg);  // ends at W_in
    if (variant == 1) {
        push_chain(T.w_skip);
    } else {
        push_chain(T.w.head[wbit]);  // ends at the anchor
        int anchor = last;
        nodes.push_back({*T.w.blocker[wbit], anchor});
        blocker_idx = (int)nodes.size() - 1;
        last = anchor;
        push_chain(T.w.tail[wbit]);  // ends at W_out
    }
    if (variant == 2) {
        push_chain(T.r_skip);
        leaf0 = last;
        return;
    }
    push_chain(T.r.approach);  // ends at A
    nodes.push_back({*T.r.R, last});
    int rIdx = (int)nodes.size() - 1;
    if (want1) {
        nodes.push_back({*T.r.t1, rIdx});
        last = (int)nodes.size() - 1;
        push_chain(T.r.path1);
        leaf1 = last;
    }
    if (want0) {
        nodes.push_back({*T.r.t0, rIdx});
        last = (int)nodes.size() - 1;
        nodes.push_back({*T.r.t0c, last});
        last = (int)nodes.size() - 1;
        push_chain(T.r.path0);
        leaf0 = last;
    }
}

struct SuccRef {
    bool valid = false;
    bool through_turn = false;
    bool terminal = false;
    MReg reg;
};

struct PendingLink {
    int leaf_type;
    SuccRef succ;
};

struct Emitter {
    const Templates& T;
    Meta mt;
    TileSystem sys;
    size_t max_types;
    std::map<std::string, int> visit_first;  // register key -> first tile type
    int turn_first[2] = {-1, -1};
    std::deque<PendingLink> links;
    std::vector<std::string> in_label;  // per type: its inbound glue label

    Emitter(const Templates& t, const Meta& m, size_t maxt) : T(t), mt(m), max_types(maxt) {
        sys.n = t.n;
        sys.temperature = 1;
    }

    int add_tile(const std::string& name, const Placement& p, int parent_type,
                 const Placement& parent_place) {
        if (sys.types.size() >= max_types)
            throw std::runtime_error("tile type budget exceeded");
        int side = bond_side(parent_place, p);
        if (side < 0) throw std::logic_error("chain tiles do not abut: " + name);
        TileType tt;
        tt.name = name;
        tt.shape_sides = sys.n;
        tt.orientation = p.orient;
        std::string label = "b" + std::to_string(sys.types.size());
        tt.glues[side] = Glue{label, 1};
        int idx = sys.add_type(std::move(tt));
        in_label.push_back(label);
        if (parent_type >= 0) sys.types[parent_type].glues[side] = Glue{label, 1};
        return idx;
    }

    // Builds all tile types of one visit (memoized) and queues its leaf
    // links; returns the first tile type index.
    int ensure_visit(const MReg& reg) {
        std::string k = reg.key();
        auto it = visit_first.find(k);
        if (it != visit_first.end()) return it->second;

        const DirTmpl& tpl = T.vis[reg.dir > 0 ? 0 : 1];
        bool reading = reg_is_reading(reg);
        int wbit = reg.prevValid ? reg_emit_value(reg, mt) : -1;
        int variant = !reading ? 2 : (wbit < 0 ? 1 : 0);
        if (variant == 2 && wbit < 0) throw std::logic_error("write-only visit with no buffer");

        SuccRef s1r, s0r;
        bool want1 = false, want0 = false;
        if (reading) {
            bool forced0 = reg_forced_zero(reg, mt);
            StepRes r0 = reg_step(reg, 0, mt);
            if (r0.kind != 3) {
                want0 = true;
                s0r = {true, r0.kind == 1, r0.kind == 2, r0.next};
            }
            if (!forced0) {
                StepRes r1 = reg_step(reg, 1, mt);
                if (r1.kind != 3) {
                    want1 = true;
                    s1r = {true, r1.kind == 1, r1.kind == 2, r1.next};
                }
            }
            if (!want0 && !want1) throw std::logic_error("visit with no live branch");
        } else {
            StepRes rn = reg_step(reg, -1, mt);
            if (rn.kind == 3) throw std::logic_error("dead write-only visit");
            s0r = {true, rn.kind == 1, rn.kind == 2, rn.next};
        }

        std::vector<VisitNode> nodes;
        int leaf1, leaf0, blocker_idx;
        build_visit_nodes(tpl, variant, std::max(wbit, 0), want1, want0 || !reading, nodes,
                          leaf1, leaf0, blocker_idx);

        std::vector<int> type_of(nodes.size(), -1);
        for (size_t i = 0; i < nodes.size(); ++i) {
            std::string name = "V" + k + "." + std::to_string(i);
            if (nodes[i].parent < 0) {
                // entry node: no parent type yet; the caller links it
                TileType tt;
                tt.name = name;
                tt.shape_sides = sys.n;
                tt.orientation = nodes[i].place.orient;
                int side = bond_side(*tpl.P_in, nodes[i].place);
                if (side < 0) throw std::logic_error("entry tile does not abut P_in");
                std::string label = "b" + std::to_string(sys.types.size());
                tt.glues[side] = Glue{label, 1};
                if (sys.types.size() >= max_types)
                    throw std::runtime_error("tile type budget exceeded");
                type_of[i] = sys.add_type(std::move(tt));
                in_label.push_back(label);
            } else {
                type_of[i] = add_tile(name, nodes[i].place, type_of[nodes[i].parent],
                                      nodes[nodes[i].parent].place);
            }
        }
        int first = type_of[0];
        visit_first[k] = first;
        if (leaf1 >= 0 && s1r.valid) links.push_back({type_of[leaf1], s1r});
        if (leaf0 >= 0 && s0r.valid) links.push_back({type_of[leaf0], s0r});
        return first;
    }

    int ensure_turn(int dir) {
        int di = dir > 0 ? 0 : 1;
        if (turn_first[di] >= 0) return turn_first[di];
        const DirTmpl& tpl = T.vis[di];
        int last_type = -1;
        for (size_t i = 0; i < tpl.turn.size(); ++i) {
            std::string name = "U" + std::to_string(di) + "." + std::to_string(i);
            if (i == 0) {
                TileType tt;
                tt.name = name;
                tt.shape_sides = sys.n;
                tt.orientation = tpl.turn[0].orient;
                int side = bond_side(*tpl.P_out, tpl.turn[0]);
                if (side < 0) throw std::logic_error("turnaround does not abut P_out");
                std::string label = "b" + std::to_string(sys.types.size());
                tt.glues[side] = Glue{label, 1};
                last_type = sys.add_type(std::move(tt));
                in_label.push_back(label);
                turn_first[di] = last_type;
            } else {
                last_type = add_tile(name, tpl.turn[i], last_type, tpl.turn[i - 1]);
            }
        }
        // the final turn tile is the next sweep's P_in; link it to the
        // opposite direction's start visit
        links.push_back({last_type, {true, false, false, start_reg(-dir)}});
        return turn_first[di];
    }

    void link(int leaf_type, int succ_first, const Placement& succ_P_anchor,
              const Placement& succ_first_place) {
        int side = bond_side(succ_P_anchor, succ_first_place);
        sys.types[leaf_type].glues[side] = Glue{in_label[succ_first], 1};
    }

    void drain() {
        while (!links.empty()) {
            PendingLink pl = links.front();
            links.pop_front();
            if (pl.succ.terminal) continue;
            if (pl.succ.through_turn) {
                // the sweep that just ended ran opposite to succ.reg.dir
                int end_dir = -pl.succ.reg.dir;
                int di = end_dir > 0 ? 0 : 1;
                int tf = ensure_turn(end_dir);
                link(pl.leaf_type, tf, *T.vis[di].P_out, T.vis[di].turn[0]);
            } else {
                int vf = ensure_visit(pl.succ.reg);
                const DirTmpl& tpl = T.vis[pl.succ.reg.dir > 0 ? 0 : 1];
                link(pl.leaf_type, vf, *tpl.P_in, tpl.p_in_leg[0]);
            }
        }
    }
};

}  // namespace

// ===================================================================
// Compilation
// ===================================================================

static int bits_for(int count) {
    int b = 1;
    while ((1 << b) < count) ++b;
    return b;
}

CompiledTM compile_tm(const TMSpec& m, const std::vector<int>& input, int n, int max_steps,
                      size_t max_types) {
    if (n < 7) throw std::invalid_argument("compilation requires n >= 7");
    validate_machine(m);
    std::vector<TMConfig> trace = reference_interpret(m, input, max_steps);

    const Templates& T = tm_templates(n);
    Geo G(n);

    CompiledTM out;
    out.machine = m;
    out.input = input;
    out.n = n;
    out.Bs = bits_for((int)m.symbols.size());
    out.Bq = bits_for((int)m.states.size());
    out.S = 5 + out.Bs + 2 * out.Bq;
    int L0 = std::max<int>((int)input.size(), 1);
    out.cells0 = L0 + 1;
    out.rows = (int)trace.size();
    out.col_step = *T.colstep;
    out.row_step = *T.rowstep;
    for (int r = 0; r < out.rows; ++r) out.row_origin.push_back(r % 2 == 0 ? 0 : -out.S);
    for (int p = 0; p < 2; ++p) {
        out.blocker0[p] = *T.b0rel[p];
        out.blocker1[p] = *T.b1rel[p];
    }

    Meta mt;
    mt.m = &out.machine;
    mt.Bs = out.Bs;
    mt.Bq = out.Bq;
    mt.S = out.S;
    mt.vdec = 2 + out.Bq + out.Bs;
    mt.nq = (int)m.states.size();
    mt.ns = (int)m.symbols.size();

    Emitter em(T, mt, max_types);

    // Row-0 field values (A layout).
    auto row0_bit = [&](int cell, int slot) -> int {
        FieldRef f = mt.slot_field(slot);
        bool live = cell < L0;
        int sym = !live ? 0 : (cell < (int)input.size() ? input[cell] : 0);
        switch (f.f) {
            case Field::First: return cell == 0 ? 1 : 0;
            case Field::Pad: return 0;
            case Field::Sym: return (sym >> f.bit) & 1;
            case Field::State: return cell == 0 ? (m.start_state >> f.bit) & 1 : 0;
            case Field::Flag: return cell == 0 ? 1 : 0;
            case Field::Last: return cell == L0 - 1 ? 1 : 0;
        }
        return 0;
    };

    // Seed tile at the first visit's P_in, then the write-only init chain
    // that lays out row 0.
    const DirTmpl& tr0 = T.vis[0];
    {
        TileType seed;
        seed.name = "seed";
        seed.shape_sides = n;
        seed.orientation = tr0.P_in->orient;
        em.sys.add_type(std::move(seed));
        em.in_label.push_back("");
        em.sys.seed.push_back(PlacedTile{0, *tr0.P_in});
    }
    int prev_leaf = 0;
    for (int t = 0; t < out.cells0 * out.S; ++t) {
        int wbit = row0_bit(t / out.S, t % out.S);
        std::vector<VisitNode> nodes;
        int leaf1, leaf0, blocker_idx;
        build_visit_nodes(tr0, 2, wbit, false, false, nodes, leaf1, leaf0, blocker_idx);
        std::vector<int> type_of(nodes.size(), -1);
        for (size_t i = 0; i < nodes.size(); ++i) {
            std::string name = "I" + std::to_string(t) + "." + std::to_string(i);
            if (nodes[i].parent < 0)
                type_of[i] = em.add_tile(name, nodes[i].place, prev_leaf, *tr0.P_in);
            else
                type_of[i] = em.add_tile(name, nodes[i].place, type_of[nodes[i].parent],
                                         nodes[nodes[i].parent].place);
        }
        prev_leaf = type_of[leaf0];
    }

    if (out.rows > 1) {
        em.links.push_back({prev_leaf, {true, true, false, start_reg(-1)}});
        em.drain();
    }
    out.system = std::move(em.sys);
    return out;
}

// ===================================================================
// Decoding and verification
// ===================================================================

static TMConfig trim_config(TMConfig c) {
    while ((int)c.tape.size() > std::max(c.head + 1, 1) && c.tape.back() == 0)
        c.tape.pop_back();
    return c;
}

std::vector<TMConfig> decode_rows(const Assembly& a, const CompiledTM& c) {
    int n = c.n, S = c.S;
    RegularPolygonShape shape(n);
    std::vector<TMConfig> rows;
    for (int r = 0;; ++r) {
        int parity = r % 2;
        int C = c.cells0 + r;
        long long off = (parity == 0) ? 0 : -S;
        bool any = false;
        std::vector<std::vector<int>> bits(C, std::vector<int>(S, 0));
        bool ok = true;
        for (int cell = 0; cell < C && ok; ++cell) {
            for (int slot = 0; slot < S; ++slot) {
                int col_in_cell = parity == 0 ? slot : S - 1 - slot;
                long long u = off + (long long)cell * S + col_in_cell;
                CycloNum base = c.col_step.scaled(u) + c.row_step.scaled(r);
                Placement p1 = Placement::exact(
                    shape, Orientation::negated, base + c.blocker1[parity]);
                Placement p0 = Placement::exact(
                    shape, Orientation::negated, base + c.blocker0[parity]);
                if (a.occupied(position_key(p1))) {
                    bits[cell][slot] = 1;
                    any = true;
                } else if (a.occupied(position_key(p0))) {
                    bits[cell][slot] = 0;
                    any = true;
                } else {
                    if (cell == 0 && slot == 0) return rows;  // no further rows
                    ok = false;
                    break;
                }
            }
        }
        if (!ok || !any) {
            if (!rows.empty() && !ok) throw std::runtime_error("partially written row " +
                                                               std::to_string(r));
            return rows;
        }
        // fields -> configuration
        Meta mt;
        mt.Bs = c.Bs;
        mt.Bq = c.Bq;
        mt.S = S;
        TMConfig cfg;
        cfg.head = -1;
        int last_live = -1;
        for (int cell = 0; cell < C; ++cell) {
            int sym = 0, q = 0, flag = 0, first = 0, last = 0;
            for (int slot = 0; slot < S; ++slot) {
                FieldRef f = mt.slot_field(slot);
                int b = bits[cell][slot];
                switch (f.f) {
                    case Field::First: first = b; break;
                    case Field::Pad:
                        if (b) throw std::runtime_error("nonzero pad in row " + std::to_string(r));
                        break;
                    case Field::Sym: sym |= b << f.bit; break;
                    case Field::State: q |= b << f.bit; break;
                    case Field::Flag: flag = b; break;
                    case Field::Last: last = b; break;
                }
            }
            if ((first == 1) != (cell == 0))
                throw std::runtime_error("bad first flag in row " + std::to_string(r));
            if (last == 1) {
                if (last_live >= 0) throw std::runtime_error("two last flags in row " +
                                                             std::to_string(r));
                last_live = cell;
            }
            cfg.tape.push_back(sym);
            if (flag) {
                if (cfg.head >= 0) throw std::runtime_error("two head flags in row " +
                                                            std::to_string(r));
                cfg.head = cell;
                cfg.state = q;
            }
        }
        if (last_live != C - 2)
            throw std::runtime_error("bad row extent in row " + std::to_string(r));
        if (cfg.head < 0 || cfg.head > last_live)
            throw std::runtime_error("missing head in row " + std::to_string(r));
        cfg.tape.resize(last_live + 1);
        rows.push_back(cfg);
    }
}

TMSimReport simulate_and_verify(const TMSpec& m, const std::vector<int>& input, int n,
                                int max_steps, size_t max_tiles, uint64_t rng_seed) {
    TMSimReport rep;
    std::vector<TMConfig> trace;
    try {
        trace = reference_interpret(m, input, max_steps);
    } catch (const std::exception& e) {
        rep.message = std::string("reference interpreter: ") + e.what();
        return rep;
    }
    CompiledTM c;
    try {
        c = compile_tm(m, input, n, max_steps);
    } catch (const std::exception& e) {
        rep.message = std::string("compilation failed: ") + e.what();
        return rep;
    }
    rep.type_count = c.system.types.size();
    Assembly a(&c.system);
    std::mt19937_64 rng(rng_seed);
    while (a.size() < max_tiles && a.step(rng)) {
    }
    rep.tile_count = a.size();
    rep.terminal = a.is_terminal();
    if (!rep.terminal) {
        rep.message = "assembly did not terminate within the tile budget";
        return rep;
    }
    std::vector<TMConfig> decoded;
    try {
        decoded = decode_rows(a, c);
    } catch (const std::exception& e) {
        rep.message = std::string("decode failed: ") + e.what();
        return rep;
    }
    rep.steps = (int)decoded.size() - 1;
    if (decoded.size() != trace.size()) {
        rep.message = "row count " + std::to_string(decoded.size()) + " != trace length " +
                      std::to_string(trace.size());
        return rep;
    }
    for (size_t i = 0; i < trace.size(); ++i) {
        if (!(trim_config(decoded[i]) == trim_config(trace[i]))) {
            rep.message = "row " + std::to_string(i) + " differs from the reference trace";
            return rep;
        }
    }
    rep.ok = true;
    rep.message = "ok";
    return rep;
}

}  // namespace ptam
