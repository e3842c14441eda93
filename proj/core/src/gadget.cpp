// gadget.cpp — bit-reading gadget generation, certification, conformance.

#include "ptam/gadget.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "ptam/serialize.hpp"

namespace ptam {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string interval_witness(const IntervalReal& a) {
    return "[" + fmt_double(a.lo_double()) + ", " + fmt_double(a.hi_double()) + "]";
}

// m with d == omega^m, if any.
std::optional<int> root_exponent(const CycloNum& d) {
    for (int m = 0; m < d.order(); ++m)
        if ((d - CycloNum::root_power(d.order(), m)).is_zero()) return m;
    return std::nullopt;
}

// Index of the blocker within the writer chain: the placement matching the
// blocker landmark, or the last one when no landmark is recorded.
size_t blocker_index(const GadgetSpec& g, int bit) {
    const std::vector<Placement>& w = bit ? g.writer1 : g.writer0;
    auto it = g.landmarks.find(bit ? "blocker1" : "blocker0");
    if (it != g.landmarks.end())
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i].is_exact() && (*w[i].exact_center - it->second).is_zero()) return i;
    return w.empty() ? 0 : w.size() - 1;
}

IntervalReal sec_squared(int n, int prec) {
    IntervalReal c = cos_pi_frac(1, n, prec);
    return IntervalReal::from_int(1, prec) / (c * c);
}

Placement exact_tile(int n, Orientation o, const CycloNum& c) {
    return Placement::exact(RegularPolygonShape(n), o, c);
}

// Gadget index: n = 2k+1 or n = 2k.  (Not the polyform constant.)
int half_index(int n) { return n / 2; }

// Exponent of the 0-continuation site offset: cont = site0 + omega^j.
int continuation_exponent(int n) {
    int k = half_index(n);
    if (n >= 7 && n <= 11) return n - 2;
    if (n >= 12 && n <= 14) return n - 3;
    if (n % 2 == 1) return (k - 1 + 1) / 2;  // ceil((k-1)/2)
    return (k - 2 + 1) / 2;                  // ceil((k-2)/2)
}

}  // namespace

bool Certificate::ok() const {
    if (claims.empty()) return false;
    for (const Claim& c : claims)
        if (c.verdict != Verdict::proved) return false;
    return true;
}

std::vector<std::string> Certificate::failures() const {
    std::vector<std::string> out;
    for (const Claim& c : claims)
        if (c.verdict != Verdict::proved) out.push_back(c.id);
    return out;
}

std::string Certificate::to_text() const {
    static const char* kind_names[] = {"exact", "abut", "interval", "closed-form", "sat"};
    static const char* verdict_names[] = {"proved", "FAILED", "UNDECIDED"};
    std::ostringstream os;
    os << "ptam-certificate 1\n";
    os << "n " << n << "\n";
    for (const Claim& c : claims)
        os << "claim " << c.id << " | " << kind_names[static_cast<int>(c.kind)] << " | "
           << verdict_names[static_cast<int>(c.verdict)] << " | " << c.witness << "\n";
    os << "result " << (ok() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

GadgetSpec::GadgetSpec(int n_)
    : n(n_),
      reader(Placement::exact(RegularPolygonShape(n_), Orientation::negated, CycloNum(n_))),
      site1(reader),
      site0(reader),
      cont(reader) {}

std::optional<std::vector<Placement>> route_path(const Placement& from,
                                                 const std::vector<int>& banned_sides,
                                                 const Placement& target,
                                                 const std::vector<Placement>& obstacles,
                                                 int max_depth, size_t node_budget) {
    if (!from.is_exact() || !target.is_exact())
        throw std::invalid_argument("route_path: exact placements required");
    int n = from.shape.sides;
    std::string target_key = position_key(target);
    size_t nodes = 0;
    std::vector<Placement> path;

    std::function<bool(const Placement&, int)> dfs = [&](const Placement& cur,
                                                         int depth) -> bool {
        if (position_key(cur) == target_key) return true;
        if (depth >= max_depth || ++nodes > node_budget) return false;
        // candidate next steps, nearest-to-target first
        std::vector<std::pair<double, Placement>> cands;
        for (int m = 0; m < n; ++m) {
            if (depth == 0 &&
                std::find(banned_sides.begin(), banned_sides.end(), m) != banned_sides.end())
                continue;
            CycloNum delta = CycloNum::root_power(n, m);
            CycloNum c = (cur.orient == Orientation::standard) ? (*cur.exact_center + delta)
                                                               : (*cur.exact_center - delta);
            Orientation o = cur.orient == Orientation::standard ? Orientation::negated
                                                                : Orientation::standard;
            Placement next = exact_tile(n, o, c);
            double dist = std::hypot(next.center.x - target.center.x,
                                     next.center.y - target.center.y);
            // Each step covers at most distance 1; prune unreachable branches.
            if (depth + 1 + static_cast<int>(std::ceil(dist - 1e-9)) > max_depth &&
                position_key(next) != target_key)
                continue;
            cands.emplace_back(dist, next);
        }
        std::stable_sort(cands.begin(), cands.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [dist, next] : cands) {
            bool is_target = position_key(next) == target_key;
            if (!is_target && next.orient != target.orient && dist < 1e-9) continue;
            bool bad = false;
            if (!is_target) {
                if (placements_overlap(next, target)) bad = true;
                for (const Placement& ob : obstacles)
                    if (bad || placements_overlap(next, ob)) { bad = true; break; }
            }
            if (!bad && placements_overlap(next, from)) bad = true;
            if (!bad)
                for (const Placement& pl : path)
                    if (placements_overlap(next, pl)) { bad = true; break; }
            if (bad) continue;
            path.push_back(next);
            if (dfs(next, depth + 1)) return true;
            path.pop_back();
        }
        return false;
    };

    if (dfs(from, 0)) return path;
    return std::nullopt;
}

GadgetSpec gen_gadget(int n) {
    if (n < 7)
        throw std::invalid_argument(
            "gen_gadget: no single-shape temperature-1 bit-reading gadget exists for n <= 6");
    int k = half_index(n);
    GadgetSpec g(n);
    auto root = [&](long long j) { return CycloNum::root_power(n, j); };
    CycloNum R(n);
    CycloNum a1 = -root(n - 1);
    CycloNum a0 = CycloNum::integer(n, -1);
    CycloNum w1 = -root(n - 1) + root(k + 1);
    CycloNum w0 = n % 2 ? a0 + root(k - 1) : a0 + root(k - 2);
    CycloNum c2 = a0 + root(continuation_exponent(n));

    g.reader = exact_tile(n, Orientation::negated, R);
    g.site1 = exact_tile(n, Orientation::standard, a1);
    g.site0 = exact_tile(n, Orientation::standard, a0);
    g.cont = exact_tile(n, Orientation::negated, c2);
    g.landmarks.emplace("R", R);
    g.landmarks.emplace("site1", a1);
    g.landmarks.emplace("site0", a0);
    g.landmarks.emplace("blocker1", w1);
    g.landmarks.emplace("blocker0", w0);
    g.landmarks.emplace("cont", c2);

    // Connector chains: R's read sides (0 and n-1) stay free.
    std::vector<int> banned = {0, n - 1};
    for (int bit = 0; bit < 2; ++bit) {
        Placement blocker = exact_tile(n, Orientation::negated, bit ? w1 : w0);
        std::vector<Placement> keep = {g.site1, g.site0, g.cont};
        auto path = route_path(g.reader, banned, blocker, keep);
        if (!path)
            throw std::runtime_error("gen_gadget: no connector route for n=" +
                                     std::to_string(n) + " bit " + std::to_string(bit));
        (bit ? g.writer1 : g.writer0) = *path;
    }
    return g;
}

namespace {

struct NamedPlacement {
    std::string name;
    const Placement* p;
};

// Proof that two placements do not overlap: exact-abut, interval clearance,
// or the SAT fallback.
Claim disjoint_claim(int n, const NamedPlacement& a, const NamedPlacement& b) {
    Claim c;
    c.id = a.name + " disjoint " + b.name;
    if (a.p->is_exact() && b.p->is_exact()) {
        CycloNum d = *a.p->exact_center - *b.p->exact_center;
        if (auto m = root_exponent(d)) {
            bool opposite = a.p->orient != b.p->orient;
            if (opposite || n % 2 == 0) {
                c.kind = ClaimKind::abut_exact;
                c.verdict = Verdict::proved;
                c.witness = "difference = w^" + std::to_string(*m);
                return c;
            }
        }
        CycloNum md = -d;
        if (auto m = root_exponent(md)) {
            bool opposite = a.p->orient != b.p->orient;
            if (opposite || n % 2 == 0) {
                c.kind = ClaimKind::abut_exact;
                c.verdict = Verdict::proved;
                c.witness = "difference = -w^" + std::to_string(*m);
                return c;
            }
        }
        Ordering o = adaptive_compare([&](int p) { return d.abs_squared(p); },
                                      [&](int p) { return sec_squared(n, p); });
        if (o == Ordering::greater) {
            c.kind = ClaimKind::strict_inequality;
            c.verdict = Verdict::proved;
            c.witness = "|d|^2 " + interval_witness(d.abs_squared(256)) + " > sec^2(pi/n)";
            return c;
        }
    }
    // SAT fallback.
    c.kind = ClaimKind::sat_check;
    bool ovl = interiors_overlap(realize(*a.p), realize(*b.p));
    c.verdict = ovl ? Verdict::failed : Verdict::proved;
    c.witness = ovl ? "separating axis not found" : "separating axis found";
    return c;
}

Claim overlap_claim(int n, const NamedPlacement& a, const NamedPlacement& b) {
    Claim c;
    c.id = a.name + " overlaps " + b.name;
    if (a.p->is_exact() && b.p->is_exact()) {
        CycloNum d = *a.p->exact_center - *b.p->exact_center;
        Ordering o = adaptive_compare([&](int p) { return d.abs_squared(p); },
                                      [&](int p) { return IntervalReal::from_int(1, p); });
        if (o == Ordering::less) {
            c.kind = ClaimKind::strict_inequality;
            c.verdict = Verdict::proved;
            c.witness = "|d|^2 " + interval_witness(d.abs_squared(256)) + " < 1";
            return c;
        }
    }
    c.kind = ClaimKind::sat_check;
    double pen = penetration_depth(realize(*a.p), realize(*b.p));
    c.verdict = pen > 1e-9 ? Verdict::proved : Verdict::failed;
    c.witness = "penetration depth " + fmt_double(pen);
    return c;
}

// d matches `form` to 1e-12 — both evaluated as rigorous enclosures.
Claim closed_form_claim(const std::string& id, const IntervalReal& d,
                        const IntervalReal& form) {
    Claim c;
    c.id = id;
    c.kind = ClaimKind::closed_form;
    IntervalReal diff = d - form;
    bool match = diff.lo_double() >= -1e-12 && diff.hi_double() <= 1e-12;
    c.verdict = match ? Verdict::proved : Verdict::failed;
    c.witness = "value " + interval_witness(d) + " vs form " + interval_witness(form);
    return c;
}

void add_config_claims(Certificate& cert, const GadgetSpec& g, int bit) {
    const std::vector<Placement>& writer = bit ? g.writer1 : g.writer0;
    if (writer.empty()) {
        cert.claims.push_back({"writer" + std::to_string(bit) + " nonempty",
                               ClaimKind::sat_check, Verdict::failed, "empty writer"});
        return;
    }
    std::string wb = "writer" + std::to_string(bit);
    size_t bi = blocker_index(g, bit);
    std::vector<NamedPlacement> cfg;
    cfg.push_back({"R", &g.reader});
    for (size_t i = 0; i < writer.size(); ++i)
        cfg.push_back({wb + (i == bi ? ".blocker" : ".c" + std::to_string(i)), &writer[i]});
    // Tiles that attach during the read in this configuration.
    cfg.push_back({bit ? "read1" : "read0", bit ? &g.site1 : &g.site0});
    if (!bit) cfg.push_back({"read0c", &g.cont});
    for (size_t i = 0; i < cfg.size(); ++i)
        for (size_t j = i + 1; j < cfg.size(); ++j)
            cert.claims.push_back(disjoint_claim(g.n, cfg[i], cfg[j]));
    // The blocker must exclude the opposite site.
    NamedPlacement blocker{wb + ".blocker", &writer[bi]};
    NamedPlacement other{bit ? "site0" : "site1", bit ? &g.site0 : &g.site1};
    cert.claims.push_back(overlap_claim(g.n, blocker, other));
}

CycloNum from_terms(int n, std::initializer_list<std::pair<long long, long long>> terms) {
    CycloNum a(n);
    for (auto [coeff, power] : terms)
        a = a + CycloNum::root_power(n, power).scaled(coeff);
    return a;
}

void claim_exact(Certificate& cert, const std::string& id, bool proved,
                 const std::string& witness) {
    cert.claims.push_back(
        {id, ClaimKind::exact_equality, proved ? Verdict::proved : Verdict::failed, witness});
}

void claim_interval(Certificate& cert, const std::string& id, Ordering got, Ordering want,
                    const std::string& witness) {
    Verdict v = got == want ? Verdict::proved
                            : (got == Ordering::undecided ? Verdict::undecided : Verdict::failed);
    cert.claims.push_back({id, ClaimKind::strict_inequality, v, witness});
}

void claim_abs_less(Certificate& cert, const std::string& id, const CycloNum& a,
                    double bound) {
    Ordering o = adaptive_compare(
        [&](int p) { return a.abs_squared(p); },
        [&](int p) { return IntervalReal::from_double(bound, p) *
                            IntervalReal::from_double(bound, p); },
        128, 256);
    claim_interval(cert, id, o, Ordering::less,
                   "|.|^2 " + interval_witness(a.abs_squared(256)));
}

void claim_abs_greater(Certificate& cert, const std::string& id, const CycloNum& a,
                       double bound) {
    Ordering o = adaptive_compare(
        [&](int p) { return a.abs_squared(p); },
        [&](int p) { return IntervalReal::from_double(bound, p) *
                            IntervalReal::from_double(bound, p); },
        128, 256);
    claim_interval(cert, id, o, Ordering::greater,
                   "|.|^2 " + interval_witness(a.abs_squared(256)));
}

void small_n_landmarks(Certificate& cert, int n) {
    switch (n) {
        case 7: {
            CycloNum loop = from_terms(7, {{1, 6}, {-1, 3}, {1, 5}, {-1, 0}, {1, 4},
                                           {-1, 6}, {1, 3}, {-1, 5}, {1, 0}, {-1, 4}});
            claim_exact(cert, "loop polynomial = 0", loop.is_zero(), loop.str());
            CycloNum c1 = from_terms(
                7, {{1, 0}, {1, 1}, {-1, 2}, {-1, 3}, {2, 4}, {1, 5}, {-2, 6}});
            claim_exact(cert, "Re(w^2 c1) = 1", c1.mul_by_root(2).is_real_equal(1, 1),
                        c1.str());
            CycloNum c2 = c1 - CycloNum::root_power(7, 6);
            claim_abs_greater(cert, "|c2| > 1.11", c2, 1.11);
            CycloNum b = from_terms(7, {{1, 1}, {-1, 2}, {-1, 3}, {2, 4}, {-1, 6}});
            claim_abs_less(cert, "|b| < 1", b, 1.0);
            break;
        }
        case 8: {
            CycloNum c1 = from_terms(8, {{8, 2}, {2, 3}, {8, 4}, {1, 5}, {13, 7}});
            claim_exact(cert, "Im(w c1) = -1", c1.mul_by_root(1).is_imag_equal(-1, 1),
                        c1.str());
            CycloNum b1 = from_terms(
                8, {{1, 0}, {1, 1}, {7, 2}, {3, 3}, {2, 4}, {8, 6}, {2, 7}});
            claim_exact(cert, "Re(b1) = -1", b1.is_real_equal(-1, 1), b1.str());
            CycloNum wc2 = (c1 + CycloNum::root_power(8, 2)).mul_by_root(1);
            Ordering o = adaptive_compare([&](int p) { return wc2.real_part(p); },
                                          [&](int p) { return IntervalReal::from_int(-1, p); },
                                          128, 256);
            claim_interval(cert, "Re(w c2) < -1", o, Ordering::less,
                           interval_witness(wc2.real_part(256)));
            CycloNum b = from_terms(
                8, {{2, 0}, {1, 1}, {7, 2}, {3, 3}, {10, 4}, {1, 5}, {13, 7}});
            claim_abs_less(cert, "|b| < 1", b, 1.0);
            break;
        }
        case 9: {
            CycloNum c1 = from_terms(9, {{-1, 0}, {1, 8}, {1, 6}, {-1, 7}});
            CycloNum a = c1.mul_by_root(-1);
            CycloNum t = (a + a.conj() + CycloNum::integer(9, 1)).lift(18);
            CycloNum z = CycloNum::root_power(18, 1) + CycloNum::root_power(18, 17);
            claim_exact(cert, "Re(w^-1 c1) = -1/2 - 1/(2cos(pi/9))",
                        (t * z + CycloNum::integer(18, 2)).is_zero(), c1.str());
            CycloNum b2 = from_terms(9, {{-1, 3}, {1, 6}, {-1, 0}, {1, 2}, {-1, 7}});
            claim_exact(cert, "Re(b2) = -1", b2.is_real_equal(-1, 1), b2.str());
            CycloNum b = from_terms(9, {{-1, 0}, {1, 2}, {-1, 3}, {2, 6}, {-2, 7}, {1, 8}});
            claim_abs_less(cert, "|b| < 1", b, 1.0);
            break;
        }
        case 10: {
            CycloNum t = from_terms(10, {{-1, 0}, {-1, 4}, {-1, 6}});
            claim_abs_less(cert, "top blocking distance < 0.62", t, 0.62);
            CycloNum bc = from_terms(10, {{-2, 0}, {1, 2}, {1, 9}});
            Ordering o = adaptive_compare(
                [&](int p) { return bc.abs_squared(p); },
                [&](int p) { return IntervalReal::from_double(0.91, p); }, 128, 256);
            claim_interval(cert, "bottom distance^2 < 0.91", o, Ordering::less,
                           interval_witness(bc.abs_squared(256)));
            break;
        }
        case 11: {
            CycloNum top = from_terms(11, {{1, 0}, {-1, 10}, {1, 6}});
            Ordering o1 = adaptive_compare(
                [&](int p) { return top.abs_squared(p); },
                [&](int p) { return IntervalReal::from_double(0.71, p); }, 128, 256);
            claim_interval(cert, "top distance^2 < 0.71", o1, Ordering::less,
                           interval_witness(top.abs_squared(256)));
            CycloNum bot = from_terms(11, {{-1, 0}, {1, 2}});
            Ordering o2 = adaptive_compare([&](int p) { return bot.abs_squared(p); },
                                           [&](int p) { return sec_squared(11, p); }, 128, 256);
            claim_interval(cert, "bottom clearance > sec^2(pi/11)", o2, Ordering::greater,
                           interval_witness(bot.abs_squared(256)));
            break;
        }
        case 12: {
            CycloNum c2 = from_terms(12, {{-1, 0}, {1, 2}});
            claim_exact(cert, "w^2 c2 = -1",
                        (c2.mul_by_root(2) + CycloNum::integer(12, 1)).is_zero(), c2.str());
            CycloNum top = from_terms(12, {{1, 0}, {1, 5}, {1, 7}});
            Ordering o = adaptive_compare(
                [&](int p) { return top.abs_squared(p); },
                [&](int p) { return IntervalReal::from_double(0.54, p); }, 128, 256);
            claim_interval(cert, "top distance^2 < 0.54", o, Ordering::less,
                           interval_witness(top.abs_squared(256)));
            break;
        }
        case 13: {
            CycloNum c1 = from_terms(
                13, {{-2, 12}, {2, 11}, {-1, 9}, {1, 6}, {-1, 1}, {1, 0}});
            claim_abs_greater(cert, "|c1| > 1.13", c1, 1.13);
            CycloNum c2 = c1 - CycloNum::root_power(13, 9);
            claim_abs_greater(cert, "|c2| > 1.21", c2, 1.21);
            CycloNum a = from_terms(13, {{-1, 0}, {2, 1}, {-2, 2}, {1, 3}, {1, 5}, {-2, 6},
                                         {2, 10}, {-2, 11}, {1, 12}});
            claim_abs_less(cert, "|a| < 1", a, 1.0);
            break;
        }
        case 14: {
            CycloNum c1 = from_terms(14, {{3, 12}, {1, 10}, {1, 8}, {1, 6}, {2, 5}, {1, 2}});
            claim_abs_greater(cert, "|c1| > 1.2", c1, 1.2);
            CycloNum c2 = c1 + CycloNum::root_power(14, 4);
            claim_exact(cert, "c2 = -1", (c2 + CycloNum::integer(14, 1)).is_zero(), c2.str());
            CycloNum a = from_terms(
                14, {{-1, 0}, {3, 1}, {1, 3}, {1, 5}, {1, 8}, {2, 9}, {2, 13}});
            claim_abs_less(cert, "|a| < 1", a, 1.0);
            break;
        }
        default:
            break;
    }
}

// Closed-form clearance/overlap claims for the generic n >= 15 scheme.
void large_n_landmarks(Certificate& cert, int n) {
    int k = half_index(n);
    int prec = 256;
    auto root = [&](long long j) { return CycloNum::root_power(n, j); };
    CycloNum a1 = -root(n - 1);
    CycloNum a0 = CycloNum::integer(n, -1);
    CycloNum w0 = n % 2 ? a0 + root(k - 1) : a0 + root(k - 2);
    CycloNum c2 = a0 + root(continuation_exponent(n));

    // clearance: |cont - blocker0|^2 = 2 - 2 sin(theta_n)
    CycloNum dc = c2 - w0;
    long long num, den = 2LL * n;
    switch (n % 4) {
        case 3: num = 3; break;
        case 1: num = 5; break;
        case 0: num = 4; break;   // 2 sin(2pi/n) = 2 sin(4pi/2n)
        default: num = 6; break;  // 2 sin(3pi/n)
    }
    IntervalReal form = IntervalReal::from_int(2, prec) -
                        sin_pi_frac(num, den, prec).scaled(2);
    cert.claims.push_back(
        closed_form_claim("clearance^2 = 2 - 2sin(" + std::to_string(num) + "pi/" +
                              std::to_string(den) + ")",
                          dc.abs_squared(prec), form));
    // dichotomy: clearance >= sec^2 or exact unit abutment
    bool abut = root_exponent(dc).has_value() || root_exponent(-dc).has_value();
    if (abut) {
        cert.claims.push_back({"clearance dichotomy (exact abutment)", ClaimKind::abut_exact,
                               Verdict::proved, "difference is a unit root"});
    } else {
        Ordering o = adaptive_compare([&](int p) { return dc.abs_squared(p); },
                                      [&](int p) { return sec_squared(n, p); });
        claim_interval(cert, "clearance dichotomy > sec^2(pi/n)", o, Ordering::greater,
                       interval_witness(dc.abs_squared(prec)));
    }

    // overlap: |blocker0 - site1|^2 closed form, and < 1
    CycloNum dv = w0 - a1;
    IntervalReal s1 = sin_pi_frac(1, n, prec);
    IntervalReal oform(prec);
    if (n % 2) {
        // 1 + 2(2 sin^2(pi/n) (1 - 2cos(pi/n)))
        IntervalReal c1 = cos_pi_frac(1, n, prec);
        oform = IntervalReal::from_int(1, prec) +
                (s1 * s1).scaled(4) * (IntervalReal::from_int(1, prec) - c1.scaled(2));
    } else {
        // 1 - 8 sin^2(pi/n) cos(2pi/n)
        oform = IntervalReal::from_int(1, prec) -
                (s1 * s1).scaled(8) * cos_pi_frac(2, n, prec);
    }
    cert.claims.push_back(closed_form_claim("overlap^2 closed form", dv.abs_squared(prec),
                                            oform));
    Ordering o = adaptive_compare([&](int p) { return dv.abs_squared(p); },
                                  [&](int p) { return IntervalReal::from_int(1, p); });
    claim_interval(cert, "overlap dichotomy < 1", o, Ordering::less,
                   interval_witness(dv.abs_squared(prec)));
}

}  // namespace

Certificate landmark_certificate(int n) {
    Certificate cert;
    cert.n = n;
    if (n >= 7 && n <= 14) small_n_landmarks(cert, n);
    else if (n >= 15) large_n_landmarks(cert, n);
    return cert;
}

Certificate certify(const GadgetSpec& g) {
    Certificate cert;
    cert.n = g.n;
    add_config_claims(cert, g, 1);
    add_config_claims(cert, g, 0);
    if (g.exact) {
        Certificate lm = landmark_certificate(g.n);
        cert.claims.insert(cert.claims.end(), lm.claims.begin(), lm.claims.end());
    }
    return cert;
}

TileSystem gadget_system(const GadgetSpec& g, int bit, bool delete_blocker) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("gadget_system: bit must be 0/1");
    int n = g.n;
    TileSystem sys;
    sys.n = n;
    sys.temperature = 1;

    const std::vector<Placement>& writer = bit ? g.writer1 : g.writer0;
    size_t chain_len = writer.size();
    if (chain_len == 0) throw std::invalid_argument("gadget_system: empty writer");
    size_t bi = blocker_index(g, bit);
    auto kept = [&](size_t i) { return !(delete_blocker && i == bi); };

    // Reader type with read glues plus links to chain tiles that abut it.
    TileType reader;
    reader.name = "R";
    reader.shape_sides = n;
    reader.orientation = g.reader.orient;
    reader.glues[0] = {"r0", 1};
    reader.glues[n - 1] = {"r1", 1};

    // Chain types with sequential glues; a chain tile additionally links to
    // the reader when it abuts it on a free side.  Deleting the blocker
    // removes its type and the link glues that would re-attach it.
    std::vector<TileType> chain_types(chain_len);
    for (size_t i = 0; i < chain_len; ++i) {
        if (!kept(i)) continue;
        TileType& t = chain_types[i];
        t.name = (bit ? "w1" : "w0") +
                 std::string(i == bi ? "x" : "c" + std::to_string(i));
        t.shape_sides = n;
        t.orientation = writer[i].orient;
    }
    auto link = [&](TileType& a, const Placement& pa, TileType& b, const Placement& pb,
                    const std::string& label) {
        // pa and pb abut: pb = pa +/- omega^m per pa's orientation.
        CycloNum d = pa.orient == Orientation::standard
                         ? *pb.exact_center - *pa.exact_center
                         : *pa.exact_center - *pb.exact_center;
        auto m = root_exponent(d);
        if (!m) throw std::runtime_error("gadget_system: chain tiles do not abut");
        a.glues[*m] = {label, 1};
        b.glues[*m] = {label, 1};
    };
    // Glue every abutting pair of chain tiles (the chain may branch: a
    // blocker can hang off the main path as a dead end).
    std::string prefix = bit ? "k1." : "k0.";
    for (size_t i = 0; i < chain_len; ++i) {
        if (!kept(i)) continue;
        for (size_t j = i + 1; j < chain_len; ++j) {
            if (!kept(j) || writer[i].orient == writer[j].orient) continue;
            CycloNum d = writer[i].orient == Orientation::standard
                             ? *writer[j].exact_center - *writer[i].exact_center
                             : *writer[i].exact_center - *writer[j].exact_center;
            if (root_exponent(d))
                link(chain_types[i], writer[i], chain_types[j], writer[j],
                     prefix + std::to_string(i) + "." + std::to_string(j));
        }
    }
    // Any chain tile abutting the reader on a non-read side shares a link
    // glue with it (the chain need not start adjacent to the reader).
    for (size_t i = 0; i < chain_len; ++i) {
        if (!kept(i) || writer[i].orient == g.reader.orient) continue;
        CycloNum d = *g.reader.exact_center - *writer[i].exact_center;
        auto m = root_exponent(d);
        if (m && *m != 0 && *m != n - 1) {
            reader.glues[*m] = {"rl" + std::to_string(*m), 1};
            chain_types[i].glues[*m] = {"rl" + std::to_string(*m), 1};
        }
    }

    // Read tiles.
    int jc = 0;
    {
        CycloNum d = *g.cont.exact_center - *g.site0.exact_center;
        auto m = root_exponent(d);
        if (!m) throw std::runtime_error("gadget_system: continuation site does not abut site0");
        jc = *m;
    }
    TileType read1, read0, read0c;
    read1.name = "read1";
    read1.shape_sides = n;
    read1.orientation = g.site1.orient;
    read1.glues[n - 1] = {"r1", 1};
    read0.name = "read0";
    read0.shape_sides = n;
    read0.orientation = g.site0.orient;
    read0.glues[0] = {"r0", 1};
    read0.glues[jc] = {"rc", 1};
    read0c.name = "read0c";
    read0c.shape_sides = n;
    read0c.orientation = g.cont.orient;
    read0c.glues[jc] = {"rc", 1};

    int reader_idx = sys.add_type(reader);
    std::vector<int> chain_idx(chain_len, -1);
    for (size_t i = 0; i < chain_len; ++i)
        if (kept(i)) chain_idx[i] = sys.add_type(std::move(chain_types[i]));
    sys.add_type(read1);
    sys.add_type(read0);
    sys.add_type(read0c);

    sys.seed.push_back({reader_idx, g.reader});
    for (size_t i = 0; i < chain_len; ++i)
        if (kept(i)) sys.seed.push_back({chain_idx[i], writer[i]});
    return sys;
}

Tristate definition1_check_bit(const GadgetSpec& g, int bit, bool delete_blocker,
                               size_t max_tiles, size_t max_states) {
    TileSystem sys = gadget_system(g, bit, delete_blocker);
    ExploreResult res = explore_producibles(sys, max_tiles, max_states);
    if (!res.complete) return Tristate::undecided;

    auto has_type = [&](const Assembly& a, const std::string& name) {
        for (const PlacedTile& t : a.tiles())
            if (sys.types[t.type_index].name == name) return true;
        return false;
    };
    std::vector<std::string> forbidden =
        bit ? std::vector<std::string>{"read0", "read0c"} : std::vector<std::string>{"read1"};
    for (const Assembly& a : res.producibles)
        for (const std::string& f : forbidden)
            if (has_type(a, f)) return Tristate::no;
    if (res.terminals.empty()) return Tristate::no;
    for (const Assembly& a : res.terminals) {
        if (!has_type(a, bit ? "read1" : "read0")) return Tristate::no;
        if (!bit && !has_type(a, "read0c")) return Tristate::no;
    }
    return Tristate::yes;
}

Tristate definition1_check(const GadgetSpec& g) {
    Tristate a = definition1_check_bit(g, 0);
    Tristate b = definition1_check_bit(g, 1);
    if (a == Tristate::undecided || b == Tristate::undecided) return Tristate::undecided;
    return (a == Tristate::yes && b == Tristate::yes) ? Tristate::yes : Tristate::no;
}

namespace {

// Candidate on-grid anchor pixels around the origin copy, deterministic order.
std::vector<Placement> anchor_candidates(const GridBasis& basis,
                                         const std::vector<std::pair<int, int>>& copies) {
    std::vector<Placement> out;
    for (auto [i, j] : copies)
        for (int m = 0; m < 6; ++m) {
            const Placement& base = basis.polyform.pixels[m];
            CycloNum c = *base.exact_center + basis.v.scaled(i) + basis.w.scaled(j);
            out.push_back(Placement::exact(base.shape, base.orient, c));
        }
    return out;
}

bool clear_of(const Placement& p, const std::vector<Placement>& obs) {
    for (const Placement& o : obs)
        if (placements_overlap(p, o)) return false;
    return true;
}

}  // namespace

GadgetSpec normalize(const GadgetSpec& g, const GridBasis& basis) {
    if (!g.exact) throw std::invalid_argument("normalize: exact gadget required");
    if (basis.n != g.n) throw std::invalid_argument("normalize: basis order mismatch");
    int n = g.n;

    // Re-anchor R on the on-grid negated pixel at 1 (pixel 4 of copy (0,0)).
    CycloNum shift = CycloNum::integer(n, 1) - *g.reader.exact_center;
    auto shifted = [&](const Placement& p) {
        return Placement::exact(p.shape, p.orient, *p.exact_center + shift);
    };
    GadgetSpec out(n);
    out.reader = shifted(g.reader);
    out.site1 = shifted(g.site1);
    out.site0 = shifted(g.site0);
    out.cont = shifted(g.cont);
    for (auto& [name, c] : g.landmarks) out.landmarks.emplace(name, c + shift);
    Placement blocker1 = shifted((g.writer1.empty() ? g.reader : g.writer1.back()));
    Placement blocker0 = shifted((g.writer0.empty() ? g.reader : g.writer0.back()));

    // Fixed scenery both writers must avoid (cont/site keep-outs, reader,
    // and both blockers so entry/exit/link tiles work for either bit).
    std::vector<Placement> scenery = {out.reader, out.site1, out.site0,
                                      out.cont,   blocker1,  blocker0};

    // Shared on-grid entry (south-west side) and exit (north-east side).
    std::vector<Placement> west =
        anchor_candidates(basis, {{-1, 0}, {0, -1}, {-1, -1}, {-2, 0}, {0, -2}});
    std::vector<Placement> east =
        anchor_candidates(basis, {{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}});
    std::optional<Placement> entry, exit_;
    for (const Placement& p : west)
        if (clear_of(p, scenery)) { entry = p; break; }
    for (const Placement& p : east)
        if (clear_of(p, scenery)) { exit_ = p; break; }
    if (!entry || !exit_) throw std::runtime_error("normalize: no on-grid anchors found");

    // Iterative deepening keeps routes tight: a depth-capped greedy search
    // tends to sprawl and wall in the later, more constrained segment.
    auto route = [](const Placement& from, const Placement& target,
                    const std::vector<Placement>& obs) {
        std::optional<std::vector<Placement>> best;
        for (int depth = 2; depth <= 18 && !best; ++depth)
            best = route_path(from, {}, target, obs, depth, 2000000);
        return best;
    };

    for (int bit = 0; bit < 2; ++bit) {
        const Placement& blocker = bit ? blocker1 : blocker0;
        std::vector<Placement>& writer = bit ? out.writer1 : out.writer0;
        writer.clear();

        // The blocker hangs off the main chain as a dead-end branch: its
        // clear neighbor cells can mutually overlap, so a through-chain at
        // the blocker may be impossible.  The main chain runs entry ->
        // anchor -> exit where the anchor abuts the blocker.
        std::vector<Placement> obs = {out.reader, out.site1, out.site0, out.cont,
                                      *entry,     *exit_,    blocker1,  blocker0};
        bool done = false;
        for (int m = 0; m < n && !done; ++m) {
            Placement anchor =
                Placement::exact(RegularPolygonShape(n), Orientation::standard,
                                 *blocker.exact_center - CycloNum::root_power(n, m));
            if (!clear_of(anchor, obs)) continue;
            // Exit leg first: it starts in the tightest spot.
            auto tail = route(anchor, *exit_, obs);
            if (!tail) continue;
            std::vector<Placement> obs2 = obs;
            obs2.insert(obs2.end(), tail->begin(), tail->end());
            auto head = route(*entry, anchor, obs2);
            if (!head) continue;
            writer.push_back(*entry);
            writer.insert(writer.end(), head->begin(), head->end());
            writer.insert(writer.end(), tail->begin(), tail->end());
            writer.push_back(blocker);
            done = true;
        }
        if (!done)
            throw std::runtime_error("normalize: no routed configuration for bit " +
                                     std::to_string(bit));
    }
    return out;
}

std::string save_gadget(const GadgetSpec& g) {
    std::ostringstream os;
    os << "ptam-gadget 1\n";
    os << "n " << g.n << "\n";
    os << "mode " << (g.exact ? "exact" : "float") << "\n";
    os << "reader " << placement_to_text(g.reader) << "\n";
    os << "site1 " << placement_to_text(g.site1) << "\n";
    os << "site0 " << placement_to_text(g.site0) << "\n";
    os << "cont " << placement_to_text(g.cont) << "\n";
    for (const Placement& p : g.writer1) os << "w1 " << placement_to_text(p) << "\n";
    for (const Placement& p : g.writer0) os << "w0 " << placement_to_text(p) << "\n";
    for (const auto& [name, c] : g.landmarks) {
        os << "lm " << name;
        for (long long v : c.reduced_coeffs()) os << " " << v;
        os << "\n";
    }
    return os.str();
}

GadgetSpec load_gadget(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "ptam-gadget 1")
        throw std::runtime_error("parse error: expected header 'ptam-gadget 1'");
    if (!std::getline(is, line) || line.rfind("n ", 0) != 0)
        throw std::runtime_error("parse error: expected n line");
    int n = std::stoi(line.substr(2));
    GadgetSpec g(n);
    bool saw[4] = {false, false, false, false};
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        std::string body;
        std::getline(ls, body);
        if (head == "mode") {
            std::string m = body.substr(body.find_first_not_of(' '));
            if (m == "exact") g.exact = true;
            else if (m == "float") g.exact = false;
            else throw std::runtime_error("parse error: bad mode " + m);
        } else if (head == "reader") { g.reader = placement_from_text(n, body); saw[0] = true; }
        else if (head == "site1") { g.site1 = placement_from_text(n, body); saw[1] = true; }
        else if (head == "site0") { g.site0 = placement_from_text(n, body); saw[2] = true; }
        else if (head == "cont") { g.cont = placement_from_text(n, body); saw[3] = true; }
        else if (head == "w1") g.writer1.push_back(placement_from_text(n, body));
        else if (head == "w0") g.writer0.push_back(placement_from_text(n, body));
        else if (head == "lm") {
            std::istringstream bs(body);
            std::string name;
            bs >> name;
            std::vector<long long> coeffs;
            long long v;
            while (bs >> v) coeffs.push_back(v);
            if (name.empty() || coeffs.size() > static_cast<size_t>(n))
                throw std::runtime_error("parse error: bad landmark line");
            coeffs.resize(n, 0);
            g.landmarks.emplace(name, CycloNum(n, std::move(coeffs)));
        } else throw std::runtime_error("parse error: unknown directive " + head);
    }
    for (bool s : saw)
        if (!s) throw std::runtime_error("parse error: gadget missing a required placement");
    if (g.writer0.empty() || g.writer1.empty())
        throw std::runtime_error("parse error: gadget missing writer placements");
    // Reject self-overlapping configurations outright.
    for (int bit = 0; bit < 2; ++bit) {
        const std::vector<Placement>& w = bit ? g.writer1 : g.writer0;
        std::vector<const Placement*> all = {&g.reader};
        for (const Placement& p : w) all.push_back(&p);
        for (size_t i = 0; i < all.size(); ++i)
            for (size_t j = i + 1; j < all.size(); ++j)
                if (interiors_overlap(realize(*all[i]), realize(*all[j])))
                    throw std::runtime_error("validation error: overlapping tiles in writer" +
                                              std::to_string(bit));
    }
    return g;
}

}  // namespace ptam
