#include "twc/plan.hpp"

#include <algorithm>
#include <sstream>

#include "symbolic.hpp"

namespace twc {

std::string pairing_kind_name(PairingKind k) {
    switch (k) {
    case PairingKind::NonFeedback: return "nf";
    case PairingKind::Example1: return "l4iv";
    case PairingKind::Example2: return "l4ii";
    case PairingKind::Example2Sym: return "l4ii-sym";
    case PairingKind::Lemma4i: return "l4i";
    case PairingKind::Lemma4iii: return "l4iii";
    case PairingKind::Lemma4iv: return "l4iv";
    case PairingKind::Lemma4v: return "l4v";
    case PairingKind::Lemma4iiiSym: return "l4iii-sym";
    case PairingKind::Lemma4vSym: return "l4v-sym";
    case PairingKind::Lemma3i: return "l3i";
    case PairingKind::Lemma3ii: return "l3ii";
    case PairingKind::RateOnly: return "rate-only";
    }
    return "?";
}

std::string plan_target_name(PlanTarget t) {
    switch (t) {
    case PlanTarget::FavorForward: return "favor-forward";
    case PlanTarget::FavorBackward: return "favor-backward";
    case PlanTarget::PerfectBoth: return "perfect-both";
    }
    return "?";
}

PlanTarget parse_plan_target(const std::string& s) {
    if (s == "favor-forward") return PlanTarget::FavorForward;
    if (s == "favor-backward") return PlanTarget::FavorBackward;
    if (s == "perfect-both") return PlanTarget::PerfectBoth;
    throw ParseError("unknown plan target: '" + s + "'");
}

namespace {

std::string slice_str(const std::vector<std::pair<Part, Rat>>& slice) {
    if (slice.empty()) return "-";
    std::string out;
    for (auto& [p, k] : slice) {
        if (!out.empty()) out += "+";
        out += p.str() + "^" + k.str();
    }
    return out;
}

} // namespace

std::string Pairing::str() const {
    std::string k = pairing_kind_name(kind);
    if (mirror) k += "~";
    return "PAIR " + slice_str(fwd) + " " + slice_str(bwd) + " " + k + " " + rate.fwd.str() +
           " " + rate.bwd.str() + " " + (note.empty() ? "-" : note);
}

std::string SchemePlan::str() const {
    std::ostringstream os;
    os << "PLAN cfg=" << config.str() << " target=" << plan_target_name(target)
       << " regime=" << regime.name() << " corner=" << target_corner.str()
       << " predicted=" << predicted.str() << " executable=" << (executable ? 1 : 0) << "\n";
    for (const Pairing& p : pairings) os << p.str() << "\n";
    return os.str();
}

RatePair predicted_rates(const SchemePlan& p) {
    RatePair sum{Rat(0), Rat(0)};
    for (const Pairing& q : p.pairings) {
        sum.fwd += q.rate.fwd;
        sum.bwd += q.rate.bwd;
    }
    return sum;
}

namespace {

struct Caps {
    Rat cno, cpf, cnot, cpft;
    Rat dF, dB; // feedback demands per direction
};

Caps caps_of(const ChannelConfig& c) {
    Caps k;
    k.cno = c_no(c.m, c.n);
    k.cpf = c_pf(c.m, c.n);
    k.cnot = c_no(c.mt, c.nt);
    k.cpft = c_pf(c.mt, c.nt);
    k.dF = k.cpf - k.cno;
    k.dB = k.cpft - k.cnot;
    return k;
}

bool integral(const Rat& r) { return r.den() == 1; }

Pairing make_pairing(PairingKind kind, std::vector<std::pair<Part, Rat>> fwd,
                     std::vector<std::pair<Part, Rat>> bwd, RatePair rate, std::string note,
                     bool executable) {
    Pairing p;
    p.kind = kind;
    p.fwd = std::move(fwd);
    p.bwd = std::move(bwd);
    p.rate = rate;
    p.note = std::move(note);
    p.executable = executable;
    for (auto& [part, k] : p.fwd)
        if (!integral(k)) p.executable = false;
    for (auto& [part, k] : p.bwd)
        if (!integral(k)) p.executable = false;
    return p;
}

void add_nf_fwd(std::vector<Pairing>& out, Part part, Rat mult, const std::string& note) {
    if (mult == Rat(0)) return;
    bool exec = part.me == part.ne ||
                (Part{0, 1} == part || Part{1, 0} == part || Part{1, 2} == part ||
                 Part{2, 1} == part || Part{2, 3} == part || Part{3, 2} == part);
    out.push_back(make_pairing(PairingKind::NonFeedback, {{part, mult}}, {},
                               {c_no(part.me, part.ne) * mult, Rat(0)}, note, exec));
}

void add_nf_bwd(std::vector<Pairing>& out, Part part, Rat mult, const std::string& note) {
    if (mult == Rat(0)) return;
    bool exec = part.me == part.ne ||
                (Part{0, 1} == part || Part{1, 0} == part || Part{1, 2} == part ||
                 Part{2, 1} == part || Part{2, 3} == part || Part{3, 2} == part);
    out.push_back(make_pairing(PairingKind::NonFeedback, {}, {{part, mult}},
                               {Rat(0), c_no(part.me, part.ne) * mult}, note, exec));
}

// A single rate-level allocation consuming everything; used where the
// construction is only planned, never silently invented.
std::vector<Pairing> rate_only_all(const ChannelConfig& cfg, RatePair corner,
                                   const std::string& note) {
    Decomposition f = decompose(cfg.m, cfg.n), b = decompose(cfg.mt, cfg.nt);
    Pairing p;
    p.kind = PairingKind::RateOnly;
    for (auto& [part, k] : f.parts) p.fwd.push_back({part, Rat(k)});
    for (auto& [part, k] : b.parts) p.bwd.push_back({part, Rat(k)});
    p.rate = corner;
    p.note = note;
    p.executable = false;
    return {p};
}

RatePair pick_corner(PlanTarget target, const CapacityRegion& region,
                     const std::vector<RatePair>& candidates) {
    std::vector<RatePair> cs = candidates;
    cs.erase(std::remove_if(cs.begin(), cs.end(),
                            [&](const RatePair& p) { return !contains(region, p); }),
             cs.end());
    if (cs.empty()) throw DomainError("plan: no feasible corner candidate");
    auto best = cs.front();
    for (const RatePair& p : cs) {
        switch (target) {
        case PlanTarget::FavorForward:
            if (p.fwd > best.fwd || (p.fwd == best.fwd && p.bwd > best.bwd)) best = p;
            break;
        case PlanTarget::FavorBackward:
            if (p.bwd > best.bwd || (p.bwd == best.bwd && p.fwd > best.fwd)) best = p;
            break;
        case PlanTarget::PerfectBoth: {
            Rat sb = best.fwd + best.bwd, sp = p.fwd + p.bwd;
            auto spread = [](const RatePair& r) {
                return r.fwd > r.bwd ? r.fwd - r.bwd : r.bwd - r.fwd;
            };
            if (sp > sb || (sp == sb && spread(p) < spread(best))) best = p;
            break;
        }
        }
    }
    return best;
}

struct PartCount {
    long long x01 = 0, x12 = 0, x23 = 0; // forward shapes
    long long y10 = 0, y21 = 0, y32 = 0; // backward shapes
};

PartCount part_counts(const ChannelConfig& cfg) {
    PartCount pc;
    Decomposition f = decompose(cfg.m, cfg.n), b = decompose(cfg.mt, cfg.nt);
    pc.x01 = f.count({0, 1});
    pc.x12 = f.count({1, 2});
    pc.x23 = f.count({2, 3});
    pc.y10 = b.count({1, 0});
    pc.y21 = b.count({2, 1});
    pc.y32 = b.count({3, 2});
    return pc;
}

// Regime R4, case in which both perfect-feedback capacities fit: assemble
// both-perfect pairings over the decomposed parts. Returns false when no
// recipe with valid side conditions covers the parts.
bool r4_perfect_pairings(const ChannelConfig& cfg, std::vector<Pairing>& out) {
    Caps k = caps_of(cfg);
    PartCount pc = part_counts(cfg);
    std::vector<Pairing> ps;
    long long x01 = pc.x01, x12 = pc.x12, x23 = pc.x23;
    long long y10 = pc.y10, y21 = pc.y21, y32 = pc.y32;

    // Serve the (1,0) parts by (1,2) partners, one to one.
    long long p2 = std::min(x12, y10);
    if (p2 > 0)
        ps.push_back(make_pairing(PairingKind::Example2, {{{1, 2}, Rat(p2)}},
                                  {{{1, 0}, Rat(p2)}}, {Rat(4 * p2, 3), Rat(2 * p2, 3)},
                                  "both-perfect", true));
    x12 -= p2;
    y10 -= p2;
    if (y10 > 0) {
        // Leftover (1,0) parts fall to (2,3) partners.
        if (3 * x23 < 2 * y10) return false;
        ps.push_back(make_pairing(PairingKind::Lemma4iii, {{{2, 3}, Rat(x23)}},
                                  {{{1, 0}, Rat(y10)}},
                                  {Rat(2 * x23), Rat(2 * y10, 3)}, "both-perfect", true));
        x23 = 0;
        y10 = 0;
    }
    // Serve the (0,1) parts by (2,1) partners, one to one.
    long long es = std::min(x01, y21);
    if (es > 0)
        ps.push_back(make_pairing(PairingKind::Example2Sym, {{{0, 1}, Rat(es)}},
                                  {{{2, 1}, Rat(es)}}, {Rat(2 * es, 3), Rat(4 * es, 3)},
                                  "both-perfect", true));
    x01 -= es;
    y21 -= es;
    if (x01 > 0) {
        // Leftover (0,1) parts ride the (3,2) spare levels.
        Rat need = Rat(2 * x01, 3);
        if (Rat(y32) < need) return false;
        ps.push_back(make_pairing(PairingKind::Lemma4iiiSym, {{{0, 1}, Rat(x01)}},
                                  {{{3, 2}, need}}, {Rat(2 * x01, 3), Rat(2) * need},
                                  "both-perfect", integral(need)));
        y32 = 0; // consumed below via remainder bookkeeping
        Rat rest = Rat(pc.y32) - need;
        if (rest > Rat(0)) add_nf_bwd(ps, {3, 2}, rest, "fill");
        x01 = 0;
    } else if (y32 > 0) {
        // (3,2) parts run at capacity with or without riders.
        long long host_for_12 = 0;
        if (y21 > 2 * x12) return false; // cannot happen under the case split
        // Pair (1,2)s with (2,1)s within the 1:2..2:1 window, spill the rest
        // onto (3,2) hosts.
        long long iv_i = std::min(x12, 2 * y21);
        long long iv_j = y21;
        if (iv_j > 0 && (2 * iv_i < iv_j)) return false;
        if (iv_j > 0 && iv_i > 0)
            ps.push_back(make_pairing(PairingKind::Lemma4iv, {{{1, 2}, Rat(iv_i)}},
                                      {{{2, 1}, Rat(iv_j)}},
                                      {Rat(4 * iv_i, 3), Rat(4 * iv_j, 3)}, "both-perfect",
                                      iv_i == iv_j));
        x12 -= iv_i;
        y21 = 0;
        host_for_12 = x12;
        if (host_for_12 > 0) {
            if (3 * y32 < host_for_12) return false;
            ps.push_back(make_pairing(PairingKind::Lemma4vSym, {{{1, 2}, Rat(host_for_12)}},
                                      {{{3, 2}, Rat(y32)}},
                                      {Rat(4 * host_for_12, 3), Rat(2 * y32)}, "both-perfect",
                                      true));
            x12 = 0;
            y32 = 0;
        } else {
            add_nf_bwd(ps, {3, 2}, Rat(y32), "fill");
            y32 = 0;
        }
    }
    if (y21 > 0) {
        // Remaining (2,1) parts pair with (1,2) or (2,3) forward parts.
        long long iv_i = std::min(x12, 2 * y21);
        long long iv_j = std::min(y21, 2 * iv_i);
        if (iv_i > 0 && iv_j > 0) {
            ps.push_back(make_pairing(PairingKind::Lemma4iv, {{{1, 2}, Rat(iv_i)}},
                                      {{{2, 1}, Rat(iv_j)}},
                                      {Rat(4 * iv_i, 3), Rat(4 * iv_j, 3)}, "both-perfect",
                                      iv_i == iv_j));
            x12 -= iv_i;
            y21 -= iv_j;
        }
        if (y21 > 0) {
            if (3 * x23 < y21) return false;
            ps.push_back(make_pairing(PairingKind::Lemma4v, {{{2, 3}, Rat(x23)}},
                                      {{{2, 1}, Rat(y21)}}, {Rat(2 * x23), Rat(4 * y21, 3)},
                                      "both-perfect", true));
            x23 = 0;
            y21 = 0;
        }
    }
    if (x12 > 0) add_nf_fwd(ps, {1, 2}, Rat(x12), "fill");
    if (x23 > 0) add_nf_fwd(ps, {2, 3}, Rat(x23), "fill");
    if (x01 > 0) add_nf_fwd(ps, {0, 1}, Rat(x01), "fill");

    RatePair sum{Rat(0), Rat(0)};
    for (const Pairing& p : ps) {
        sum.fwd += p.rate.fwd;
        sum.bwd += p.rate.bwd;
    }
    if (!(sum.fwd == k.cpf && sum.bwd == k.cpft)) return false;
    out = std::move(ps);
    return true;
}

SchemePlan mirror_plan(SchemePlan p, const ChannelConfig& original, RegimeLabel regime,
                       PlanTarget target) {
    SchemePlan out;
    out.config = original;
    out.regime = regime;
    out.target = target;
    out.target_corner = {p.target_corner.bwd, p.target_corner.fwd};
    out.predicted = {p.predicted.bwd, p.predicted.fwd};
    out.executable = p.executable;
    for (Pairing q : p.pairings) {
        std::swap(q.fwd, q.bwd);
        q.rate = {q.rate.bwd, q.rate.fwd};
        q.mirror = !q.mirror;
        out.pairings.push_back(std::move(q));
    }
    return out;
}

PlanTarget flip_target(PlanTarget t) {
    if (t == PlanTarget::FavorForward) return PlanTarget::FavorBackward;
    if (t == PlanTarget::FavorBackward) return PlanTarget::FavorForward;
    return t;
}

} // namespace

SchemePlan plan(const ChannelConfig& cfg, PlanTarget target) {
    RegimeLabel regime = classify_regime(cfg);
    // The one-sided primed regimes are exact direction mirrors; plan the
    // mirror and swap. The both-high regime is its own mirror image and is
    // handled below alongside the both-low one.
    if (regime.kind == RegimeKind::R2p || regime.kind == RegimeKind::R3p ||
        regime.kind == RegimeKind::R4p)
        return mirror_plan(plan(cfg.mirrored(), flip_target(target)), cfg, regime, target);

    Caps k = caps_of(cfg);
    CapacityRegion region = two_way_region(cfg);
    SchemePlan out;
    out.config = cfg;
    out.regime = regime;
    out.target = target;

    switch (regime.kind) {
    case RegimeKind::Middle: {
        out.target_corner = {k.cno, k.cnot};
        Decomposition f = decompose(cfg.m, cfg.n);
        add_nf_fwd(out.pairings, f.parts[0].first, Rat(f.parts[0].second), "no-gain");
        Decomposition b = decompose(cfg.mt, cfg.nt);
        add_nf_bwd(out.pairings, b.parts[0].first, Rat(b.parts[0].second), "no-gain");
        break;
    }
    case RegimeKind::R1:
    case RegimeKind::R1p: {
        RatePair a{k.cpf, k.cnot - k.dF}, b{k.cno - k.dB, k.cpft};
        RatePair sat_f{k.cno + k.cnot, Rat(0)}, sat_b{Rat(0), k.cno + k.cnot};
        std::vector<RatePair> cands;
        cands.push_back(k.dF <= k.cnot ? a : sat_f);
        cands.push_back(k.dB <= k.cno ? b : sat_b);
        out.target_corner = pick_corner(target, region, cands);
        PartCount pc = part_counts(cfg);
        std::string note = "R1 one-to-one tradeoff";
        if (regime.kind == RegimeKind::R1 && out.target_corner == a && pc.x01 == 0) {
            // the paper's two explicit sub-recipes; the (0,1)-bearing
            // sub-regimes fall to the combined rate-level form
            Rat fb = k.dF; // backward rate ceded to feedback
            if (Rat(pc.x12, 3) <= Rat(pc.y21 /*(1,2) backward parts*/) && pc.y21 > 0) {
                out.pairings.push_back(make_pairing(
                    PairingKind::Lemma3i, {{{1, 2}, Rat(pc.x12)}}, {{{1, 2}, Rat(pc.y21)}},
                    {Rat(4 * pc.x12, 3), Rat(pc.y21) - Rat(pc.x12, 3)}, "R1 l3(i)", false));
                add_nf_fwd(out.pairings, {2, 3}, Rat(pc.x23), "fill");
                add_nf_bwd(out.pairings, {2, 3}, Rat(pc.y32), "fill");
                add_nf_bwd(out.pairings, {0, 1}, Rat(pc.y10), "fill");
            } else if (Rat(pc.x12, 3) <= Rat(2 * pc.y32) && pc.y32 > 0) {
                out.pairings.push_back(make_pairing(
                    PairingKind::Lemma3ii, {{{1, 2}, Rat(pc.x12)}}, {{{2, 3}, Rat(pc.y32)}},
                    {Rat(4 * pc.x12, 3), Rat(2 * pc.y32) - Rat(pc.x12, 3)}, "R1 l3(ii)",
                    false));
                add_nf_fwd(out.pairings, {2, 3}, Rat(pc.x23), "fill");
                add_nf_bwd(out.pairings, {1, 2}, Rat(pc.y21), "fill");
                add_nf_bwd(out.pairings, {0, 1}, Rat(pc.y10), "fill");
            } else {
                out.pairings = rate_only_all(cfg, out.target_corner, note);
            }
            (void)fb;
        } else {
            out.pairings = rate_only_all(
                cfg, out.target_corner,
                note + (pc.x01 > 0 ? " (low-band sub-regime, mirror-derived)" : ""));
        }
        break;
    }
    case RegimeKind::R2: {
        // no forward feedback gain; backward rides the spare direct levels
        RatePair c1{k.cno, k.cpft};
        RatePair c2{k.cno, k.cnot + Rat(cfg.n) - k.cno};
        RatePair c3{Rat(cfg.n) - k.dB, k.cpft};
        RatePair c4{Rat(0), k.cnot + Rat(cfg.n)};
        std::vector<RatePair> cands;
        if (k.dB <= Rat(cfg.n) - k.cno)
            cands.push_back(c1);
        else if (k.dB > Rat(cfg.n)) {
            cands.push_back(c2);
            cands.push_back(c4);
        } else {
            cands.push_back(c2);
            cands.push_back(c3);
        }
        out.target_corner = pick_corner(target, region, cands);
        if (cfg.m == cfg.n && out.target_corner == c1 && k.dB == Rat(0)) {
            add_nf_fwd(out.pairings, {cfg.m, cfg.n}, Rat(1), "no spare needed");
            Decomposition b = decompose(cfg.mt, cfg.nt);
            for (auto& [part, kk] : b.parts)
                add_nf_bwd(out.pairings, part, Rat(kk), "fill");
        } else {
            out.pairings = rate_only_all(cfg, out.target_corner,
                                         "R2 feedback through spare direct levels");
        }
        break;
    }
    case RegimeKind::R3: {
        RatePair c1{k.cpf, k.cnot};
        RatePair c2{k.cpf, Rat(cfg.mt) - k.dF}; // hmm placeholder replaced below
        c2 = {k.cno + Rat(cfg.mt) - k.cnot - k.dF, k.cnot};
        RatePair c3{k.cpf, k.cnot - (k.dF - (Rat(cfg.mt) - k.cnot))};
        RatePair c4{k.cno + Rat(cfg.mt), Rat(0)};
        std::vector<RatePair> cands;
        if (k.dF <= Rat(cfg.mt) - k.cnot)
            cands.push_back(c1);
        else if (k.dF > Rat(cfg.mt)) {
            cands.push_back({k.cno + Rat(cfg.mt) - k.cnot, k.cnot});
            cands.push_back(c4);
        } else {
            cands.push_back({k.cno + Rat(cfg.mt) - k.cnot, k.cnot});
            cands.push_back(c3);
        }
        out.target_corner = pick_corner(target, region, cands);
        out.pairings =
            rate_only_all(cfg, out.target_corner, "R3 feedback through spare cross levels");
        break;
    }
    case RegimeKind::R4: {
        bool case_fwd = k.dF <= Rat(cfg.mt) - k.cpft; // room for forward feedback
        bool case_bwd = k.dB <= Rat(cfg.n) - k.cpf;   // room for backward feedback
        if (case_fwd && case_bwd) {
            out.target_corner = {k.cpf, k.cpft};
            if (!r4_perfect_pairings(cfg, out.pairings))
                out.pairings = rate_only_all(cfg, out.target_corner, "R4(I) recipe fallback");
        } else {
            RatePair cA{k.cno + Rat(cfg.mt) - k.cpft, k.cpft}; // backward-favoring
            RatePair cB{k.cpf, k.cnot + Rat(cfg.n) - k.cpf};   // forward-favoring
            RatePair cA2{k.cpf, Rat(cfg.mt) - k.dF};
            RatePair cA3{k.cno + Rat(cfg.mt), Rat(0)};
            RatePair cB2{Rat(cfg.n) - k.dB, k.cpft};
            RatePair cB3{Rat(0), k.cnot + Rat(cfg.n)};
            std::vector<RatePair> cands;
            if (!case_fwd && case_bwd) {
                cands.push_back(cA);
                cands.push_back(k.dF <= Rat(cfg.mt) ? cA2 : cA3);
            } else if (case_fwd && !case_bwd) {
                cands.push_back(cB);
                cands.push_back(k.dB <= Rat(cfg.n) ? cB2 : cB3);
            } else {
                cands.push_back(cA);
                cands.push_back(cB);
            }
            out.target_corner = pick_corner(target, region, cands);
            out.pairings = rate_only_all(cfg, out.target_corner,
                                         "R4 corner with one-to-one tradeoff padding");
        }
        break;
    }
    default: throw DomainError("plan: unhandled regime");
    }

    out.predicted = predicted_rates(out);
    out.executable = !out.pairings.empty();
    for (const Pairing& p : out.pairings) out.executable = out.executable && p.executable;
    if (!contains(region, out.predicted))
        throw DomainError("plan: predicted rates escape the capacity region");
    return out;
}

namespace {

std::vector<std::vector<int>> take_chains(std::vector<std::vector<int>>& pool, Part shape,
                                          long long count) {
    std::vector<std::vector<int>> out;
    // a square shape owns one single-level chain per level
    size_t len = shape.me == shape.ne ? 1 : (size_t)std::max(shape.me, shape.ne);
    long long want = shape.me == shape.ne ? count * shape.ne : count;
    for (auto it = pool.begin(); it != pool.end() && (long long)out.size() < want;) {
        if (it->size() == len) {
            out.push_back(*it);
            it = pool.erase(it);
        } else {
            ++it;
        }
    }
    if ((long long)out.size() != want)
        throw DomainError("compose: chain pool exhausted for " + shape.str());
    return out;
}

// Maps a block's internal levels onto its allocated chains of the composite.
std::vector<int> chain_level_map(int m_b, int n_b,
                                 const std::vector<std::vector<int>>& chains) {
    auto internal = decomposition_chains(m_b, n_b);
    if (internal.size() != chains.size())
        throw DomainError("compose: chain count mismatch in embedding");
    std::vector<int> map(std::max(m_b, n_b) + 1, 0);
    for (size_t c = 0; c < internal.size(); ++c) {
        if (internal[c].size() != chains[c].size())
            throw DomainError("compose: chain shape mismatch in embedding");
        for (size_t e = 0; e < internal[c].size(); ++e) map[internal[c][e]] = chains[c][e];
    }
    return std::vector<int>(map.begin() + 1, map.end());
}

long long part_count(const std::vector<std::pair<Part, Rat>>& slice, Part p) {
    for (auto& [part, k] : slice)
        if (part == p) {
            if (!integral(k)) throw UnsupportedError("compose: fractional multiplicity");
            return k.num();
        }
    return 0;
}

} // namespace

Scheme compose(const SchemePlan& plan, const ComposeParams& params) {
    if (!plan.executable)
        throw UnsupportedError("compose: plan for " + plan.config.str() + " is not executable");
    auto fwd_pool = decomposition_chains(plan.config.m, plan.config.n);
    auto bwd_pool = decomposition_chains(plan.config.mt, plan.config.nt);
    std::vector<EmbeddedBlock> blocks;
    auto flatten = [](const std::vector<std::vector<int>>& chains, int m_b, int n_b) {
        return chain_level_map(m_b, n_b, chains);
    };
    for (const Pairing& p : plan.pairings) {
        // gather this pairing's chains
        ChannelConfig sub{0, 0, 0, 0};
        std::vector<std::vector<int>> fc, bc;
        for (auto& [part, mult] : p.fwd) {
            if (!integral(mult)) throw UnsupportedError("compose: fractional multiplicity");
            auto got = take_chains(fwd_pool, part, mult.num());
            fc.insert(fc.end(), got.begin(), got.end());
            sub.m += part.me * (int)mult.num();
            sub.n += part.ne * (int)mult.num();
        }
        for (auto& [part, mult] : p.bwd) {
            if (!integral(mult)) throw UnsupportedError("compose: fractional multiplicity");
            auto got = take_chains(bwd_pool, part, mult.num());
            bc.insert(bc.end(), got.begin(), got.end());
            sub.mt += part.me * (int)mult.num();
            sub.nt += part.ne * (int)mult.num();
        }
        // a mirrored pairing names its parts with the directions exchanged;
        // the block is built in its native orientation and mirrored after
        const auto& fsl = p.mirror ? p.bwd : p.fwd;
        const auto& bsl = p.mirror ? p.fwd : p.bwd;
        Scheme s;
        switch (p.kind) {
        case PairingKind::NonFeedback: {
            Part part = p.fwd.empty() ? p.bwd[0].first : p.fwd[0].first;
            long long mult = p.fwd.empty() ? p.bwd[0].second.num() : p.fwd[0].second.num();
            // one nf block per copy keeps the chain mapping elementary; a
            // square channel is one block over its single-level chains
            Scheme unit = non_feedback_elementary(part, params.reps * 3);
            if (p.fwd.empty()) unit = mirrored(unit, unit.id + "~");
            long long copies = part.me == part.ne ? 1 : mult;
            int per = part.me == part.ne ? part.ne : 1;
            auto& pool = p.fwd.empty() ? bc : fc;
            for (long long c = 0; c < copies; ++c) {
                EmbeddedBlock eb;
                eb.scheme = unit;
                std::vector<std::vector<int>> chains(pool.begin() + c * per,
                                                     pool.begin() + (c + 1) * per);
                if (p.fwd.empty()) {
                    eb.bwd_levels = flatten(chains, part.me, part.ne);
                } else {
                    eb.fwd_levels = flatten(chains, part.me, part.ne);
                }
                blocks.push_back(std::move(eb));
            }
            continue;
        }
        case PairingKind::Example1:
        case PairingKind::Lemma4iv:
            s = lemma4_block(BlockKind::iv, (int)part_count(fsl, {1, 2}),
                             (int)part_count(bsl, {2, 1}), params.reps, params.ex1_L);
            break;
        case PairingKind::Example2: s = two_way_12_10(params.ex2_L, params.ex2_M); break;
        case PairingKind::Example2Sym:
            s = mirrored(cross_swapped(two_way_12_10(params.ex2_L, params.ex2_M), "l4ii-sym"),
                         "l4ii-sym");
            break;
        case PairingKind::Lemma4i: s = lemma4_i(params.l4i_L, Orientation::ForwardHeavy); break;
        case PairingKind::Lemma4iii:
            s = lemma4_block(BlockKind::iii, (int)part_count(fsl, {2, 3}),
                             (int)part_count(bsl, {1, 0}), params.reps);
            break;
        case PairingKind::Lemma4v:
            s = lemma4_block(BlockKind::v, (int)part_count(fsl, {2, 3}),
                             (int)part_count(bsl, {2, 1}), params.reps);
            break;
        case PairingKind::Lemma4iiiSym:
            s = mirrored(cross_swapped(
                             lemma4_block(BlockKind::iii, (int)part_count(bsl, {3, 2}),
                                          (int)part_count(fsl, {0, 1}), params.reps),
                             "l4iii-sym"),
                         "l4iii-sym");
            break;
        case PairingKind::Lemma4vSym:
            s = mirrored(cross_swapped(
                             lemma4_block(BlockKind::v, (int)part_count(bsl, {3, 2}),
                                          (int)part_count(fsl, {1, 2}), params.reps),
                             "l4v-sym"),
                         "l4v-sym");
            break;
        default:
            throw UnsupportedError("compose: pairing kind " + pairing_kind_name(p.kind) +
                                   " has no executable construction");
        }
        if (p.mirror) s = mirrored(s, s.id + "~");
        EmbeddedBlock eb;
        eb.scheme = std::move(s);
        eb.fwd_levels = flatten(fc, sub.m, sub.n);
        eb.bwd_levels = flatten(bc, sub.mt, sub.nt);
        blocks.push_back(std::move(eb));
    }
    std::string id = "compose:" + plan.config.str() + ":" + plan_target_name(plan.target);
    return embed_blocks(id, plan.config, std::move(blocks));
}

} // namespace twc
