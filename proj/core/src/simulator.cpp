#include "twc/simulator.hpp"

#include <ostream>
#include <random>
#include <sstream>

namespace twc {

namespace {

struct RunState {
    const Scheme& s;
    const SourceAssignment& src;
    const std::optional<Injection>& inject;
    // receptions[node][slot-1] as recorded (post-injection)
    std::array<std::vector<BitVector>, 4> rx;
    // genie views: stream -> per-slot reception of that receiver
    std::array<std::vector<BitVector>, 4> genie;

    bool eval_tap(const Tap& t, Node n, int slot, bool backward_phase) const {
        switch (t.kind) {
        case Tap::Kind::Source: {
            if (s.sources.owner(t.bit) != n)
                throw DomainError(s.id + ": tap on foreign source bit");
            return src.bits[t.bit];
        }
        case Tap::Kind::Rx: {
            // Forward transmissions may only tap receptions of earlier
            // slots; anything evaluated after this slot's relevant phase
            // may tap the current slot too.
            int limit = backward_phase ? slot : slot - 1;
            if (t.slot < 1 || t.slot > limit)
                throw DomainError(s.id + ": acausal reception tap at slot " +
                                  std::to_string(slot));
            return rx[(int)n][t.slot - 1].get(t.level);
        }
        case Tap::Kind::Genie: {
            if (s.feedback != FeedbackMode::Genie)
                throw DomainError(s.id + ": genie tap without genie feedback");
            if (t.slot < 1 || t.slot > slot - 1)
                throw DomainError(s.id + ": acausal genie tap");
            return genie[t.stream][t.slot - 1].get(t.level);
        }
        }
        return false;
    }

    BitVector eval_levels(Node n, int slot, const std::vector<std::vector<Tap>>& levels,
                          bool backward_phase) const {
        BitVector out((int)levels.size());
        for (int lvl = 1; lvl <= (int)levels.size(); ++lvl) {
            bool v = false;
            for (const Tap& t : levels[lvl - 1]) v ^= eval_tap(t, n, slot, backward_phase);
            out.set(lvl, v);
        }
        return out;
    }
};

} // namespace

Transcript run(const Scheme& s, const SourceAssignment& sources,
               const std::optional<Injection>& inject) {
    if ((long long)sources.bits.size() != s.sources.dim())
        throw DimensionError(s.id + ": source assignment size mismatch");
    RunState st{s, sources, inject, {}, {}};
    Transcript t;
    t.config = s.config;
    t.slots = s.slots;
    t.fwd_functions = s.fwd_functions;
    t.bwd_functions = s.bwd_functions;
    t.sources = sources;

    auto maybe_inject = [&](Node n, int slot, BitVector v) {
        if (inject && inject->node == n && inject->slot == slot && inject->level >= 1 &&
            inject->level <= v.size())
            v.flip(inject->level);
        return v;
    };

    for (int slot = 1; slot <= s.slots; ++slot) {
        SlotRecord rec;
        // forward use
        rec.x1 = st.eval_levels(Node::N1, slot, s.tx[slot - 1][0], false);
        rec.x2 = st.eval_levels(Node::N2, slot, s.tx[slot - 1][1], false);
        auto [y1t, y2t] = forward_outputs(rec.x1, rec.x2, s.config.m, s.config.n);
        rec.y1t = maybe_inject(Node::N1t, slot, y1t);
        rec.y2t = maybe_inject(Node::N2t, slot, y2t);
        st.rx[(int)Node::N1t].push_back(rec.y1t);
        st.rx[(int)Node::N2t].push_back(rec.y2t);
        st.genie[0].push_back(rec.y1t);
        st.genie[1].push_back(rec.y2t);
        // backward use
        rec.x1t = st.eval_levels(Node::N1t, slot, s.tx[slot - 1][2], true);
        rec.x2t = st.eval_levels(Node::N2t, slot, s.tx[slot - 1][3], true);
        auto [y1, y2] = backward_outputs(rec.x1t, rec.x2t, s.config.mt, s.config.nt);
        rec.y1 = maybe_inject(Node::N1, slot, y1);
        rec.y2 = maybe_inject(Node::N2, slot, y2);
        st.rx[(int)Node::N1].push_back(rec.y1);
        st.rx[(int)Node::N2].push_back(rec.y2);
        st.genie[2].push_back(rec.y1);
        st.genie[3].push_back(rec.y2);
        t.slot_records.push_back(std::move(rec));
    }
    for (const DecodeEvent& d : s.decodes) {
        bool v = false;
        for (const Tap& tap : d.taps) v ^= st.eval_tap(tap, d.node, d.slot, true);
        t.decodes.push_back({d.node, d.backward_fn, d.index, v ? 1 : 0, d.slot});
    }
    return t;
}

RatePair achieved_rates(const Transcript& t) {
    auto count_both = [&](bool backward, int demanded, Node r1, Node r2) {
        std::vector<int> seen((size_t)demanded + 1, 0);
        for (const DecodeRecord& d : t.decodes) {
            if (d.backward_fn != backward || d.index < 1 || d.index > demanded) continue;
            if (d.node == r1) seen[d.index] |= 1;
            if (d.node == r2) seen[d.index] |= 2;
        }
        long long k = 0;
        for (int i = 1; i <= demanded; ++i)
            if (seen[i] == 3) ++k;
        return k;
    };
    long long k = count_both(false, t.fwd_functions, Node::N1t, Node::N2t);
    long long kt = count_both(true, t.bwd_functions, Node::N1, Node::N2);
    if (t.slots == 0) return {Rat(0), Rat(0)};
    return {Rat(k, t.slots), Rat(kt, t.slots)};
}

std::string VerificationReport::summary() const {
    std::ostringstream os;
    os << "achieved " << achieved.fwd.str() << " " << achieved.bwd.str() << " "
       << (passed ? "PASS" : "FAIL");
    os << " basis_failures=" << basis_failures.size()
       << " coverage_failures=" << coverage_failures.size()
       << " linearity_failures=" << linearity_failures
       << " causality_failures=" << causality_failures
       << " region_member=" << (region_member ? 1 : 0) << " vacant_slots=" << vacant_slots
       << " seed=" << seed;
    return os.str();
}

VerificationReport verify(const Scheme& s, uint64_t seed) {
    VerificationReport rep;
    rep.seed = seed;
    rep.vacant_slots = s.vacant_forward_slots();

    // Demand coverage: every demanded function must have decode events at
    // both of its receivers within the horizon.
    {
        std::vector<int> fwd_seen(s.fwd_functions + 1, 0), bwd_seen(s.bwd_functions + 1, 0);
        for (const DecodeEvent& d : s.decodes) {
            if (d.slot < 1 || d.slot > s.slots) {
                rep.coverage_failures.push_back("decode event outside horizon");
                continue;
            }
            if (!d.backward_fn && d.index >= 1 && d.index <= s.fwd_functions)
                fwd_seen[d.index] |= d.node == Node::N1t ? 1 : d.node == Node::N2t ? 2 : 0;
            if (d.backward_fn && d.index >= 1 && d.index <= s.bwd_functions)
                bwd_seen[d.index] |= d.node == Node::N1 ? 1 : d.node == Node::N2 ? 2 : 0;
        }
        for (int i = 1; i <= s.fwd_functions; ++i)
            if (fwd_seen[i] != 3)
                rep.coverage_failures.push_back("forward function " + std::to_string(i) +
                                                " not decoded at both receivers");
        for (int i = 1; i <= s.bwd_functions; ++i)
            if (bwd_seen[i] != 3)
                rep.coverage_failures.push_back("backward function " + std::to_string(i) +
                                                " not decoded at both receivers");
    }

    // Ground truth on the standard basis (plus the all-zero run): exact
    // correctness of every decode event, independent of the encoder path.
    auto check_run = [&](long long basis_bit, const SourceAssignment& src) {
        Transcript t = run(s, src);
        for (const DecodeRecord& d : t.decodes) {
            long long i = d.index;
            int expected;
            if (!d.backward_fn)
                expected = (src.bits[s.sources.a(i)] ^ src.bits[s.sources.b(i)]) & 1;
            else
                expected = (src.bits[s.sources.at(i)] ^ src.bits[s.sources.bt(i)]) & 1;
            if (expected != d.value)
                rep.basis_failures.push_back(
                    {basis_bit, d.node, d.backward_fn, d.index, expected, d.value});
        }
    };
    check_run(-1, SourceAssignment::zeros(s.sources));
    for (long long bit = 0; bit < s.sources.dim(); ++bit)
        check_run(bit, SourceAssignment::basis(s.sources, bit));

    // Linearity identity on random pairs.
    std::mt19937_64 rng(seed);
    auto random_src = [&]() {
        SourceAssignment a = SourceAssignment::zeros(s.sources);
        for (auto& b : a.bits) b = rng() & 1;
        return a;
    };
    auto transcripts_xor_equal = [&](const Transcript& x, const Transcript& y,
                                     const Transcript& z) {
        for (int t = 0; t < s.slots; ++t) {
            const SlotRecord &rx = x.slot_records[t], &ry = y.slot_records[t],
                             &rz = z.slot_records[t];
            if ((rx.x1 ^ ry.x1) != rz.x1 || (rx.x2 ^ ry.x2) != rz.x2 ||
                (rx.x1t ^ ry.x1t) != rz.x1t || (rx.x2t ^ ry.x2t) != rz.x2t ||
                (rx.y1 ^ ry.y1) != rz.y1 || (rx.y2 ^ ry.y2) != rz.y2 ||
                (rx.y1t ^ ry.y1t) != rz.y1t || (rx.y2t ^ ry.y2t) != rz.y2t)
                return false;
        }
        for (size_t i = 0; i < x.decodes.size(); ++i)
            if ((x.decodes[i].value ^ y.decodes[i].value) != z.decodes[i].value) return false;
        return true;
    };
    for (int trial = 0; trial < 50; ++trial) {
        SourceAssignment u = random_src(), v = random_src(), w = u;
        for (size_t i = 0; i < w.bits.size(); ++i) w.bits[i] ^= v.bits[i];
        if (!transcripts_xor_equal(run(s, u), run(s, v), run(s, w))) ++rep.linearity_failures;
    }

    // Causality probes: flipping a reception bit must not change any
    // transmission at or before the phase in which it was received.
    {
        SourceAssignment base_src = random_src();
        Transcript base = run(s, base_src);
        int probes = 0;
        for (int attempt = 0; attempt < 200 && probes < 20; ++attempt) {
            Node node = (Node)(rng() % 4);
            int slot = (int)(rng() % (uint64_t)std::max(1, s.slots)) + 1;
            int q = tilde_side(node) ? s.config.q() : s.config.qt();
            if (q == 0) continue;
            int level = (int)(rng() % (uint64_t)q) + 1;
            ++probes;
            Transcript probed = run(s, base_src, Injection{node, slot, level});
            // Injection hits the forward use of `slot` for tilde nodes and
            // the backward use for plain nodes; nothing at or before that
            // point in the slot/use order may move.
            bool injected_backward_use = !tilde_side(node);
            for (int t = 1; t <= s.slots; ++t) {
                const SlotRecord &rb = base.slot_records[t - 1],
                                 &rp = probed.slot_records[t - 1];
                bool fwd_must_match = t <= slot;
                bool bwd_must_match = t < slot || (t == slot && injected_backward_use);
                if (fwd_must_match && (rb.x1 != rp.x1 || rb.x2 != rp.x2))
                    ++rep.causality_failures;
                if (bwd_must_match && (rb.x1t != rp.x1t || rb.x2t != rp.x2t))
                    ++rep.causality_failures;
            }
        }
    }

    Transcript zero_run = run(s, SourceAssignment::zeros(s.sources));
    rep.achieved = achieved_rates(zero_run);
    // Genie schemes are measured against the perfect-feedback box they
    // realize; everything in-band answers to the two-way region.
    CapacityRegion bound = s.feedback == FeedbackMode::Genie
                               ? baseline_region(s.config, BaselineKind::PerfectFeedback)
                               : two_way_region(s.config);
    rep.region_member = contains(bound, rep.achieved);
    rep.passed = rep.basis_failures.empty() && rep.coverage_failures.empty() &&
                 rep.linearity_failures == 0 && rep.causality_failures == 0 && rep.region_member;
    return rep;
}

void dump_transcript(std::ostream& os, const Transcript& t) {
    for (int i = 1; i <= t.slots; ++i) {
        const SlotRecord& r = t.slot_records[i - 1];
        os << "t=" << i << " X1=" << r.x1.str() << " X2=" << r.x2.str() << " Y1=" << r.y1t.str()
           << " Y2=" << r.y2t.str() << " X~1=" << r.x1t.str() << " X~2=" << r.x2t.str()
           << " Y~1=" << r.y1.str() << " Y~2=" << r.y2.str() << "\n";
    }
    for (const DecodeRecord& d : t.decodes)
        os << "dec node=" << node_name(d.node) << " l=" << d.index << " v=" << d.value
           << " t=" << d.slot << "\n";
}

} // namespace twc
