#include "twc/schemes.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "symbolic.hpp"

namespace twc {

namespace {

long long pow2ll(int e) { return e >= 63 ? 0x7fffffffffffffffLL : (1LL << e); }

void require(bool cond, const std::string& msg) {
    if (!cond) throw DomainError(msg);
}

} // namespace

Scheme non_feedback_elementary(Part kind, int slots) {
    require(slots >= 1, "non_feedback_elementary: slots >= 1");
    int m = kind.me, n = kind.ne;
    std::string id = "nf:" + std::to_string(m) + "," + std::to_string(n);
    ChannelConfig cfg{m, n, 0, 0};

    if ((m == 0 && n == 1) || (m == 1 && n == 0)) {
        SymbolicNet net(id, cfg, SourceLayout{0, 0, 0, 0}, FeedbackMode::None);
        for (int t = 0; t < slots; ++t) {
            net.begin_slot();
            net.commit_fwd();
            net.commit_bwd();
        }
        return net.finish(0, 0);
    }
    if (m == n && m >= 1) {
        // every level carries one clean modulo-2 sum per use
        SymbolicNet net(id, cfg, SourceLayout{(long long)m * slots, (long long)m * slots, 0, 0},
                        FeedbackMode::None);
        for (int t = 1; t <= slots; ++t) {
            net.begin_slot();
            std::vector<LinearForm> x1, x2;
            for (int l = 1; l <= m; ++l) {
                x1.push_back(net.a((long long)m * (t - 1) + l));
                x2.push_back(net.b((long long)m * (t - 1) + l));
            }
            net.set_fwd(Node::N1, x1);
            net.set_fwd(Node::N2, x2);
            net.commit_fwd();
            for (int l = 1; l <= m; ++l) {
                net.decode_fwd(Node::N1t, (long long)m * (t - 1) + l);
                net.decode_fwd(Node::N2t, (long long)m * (t - 1) + l);
            }
            net.commit_bwd();
        }
        return net.finish(m * slots, 0);
    }
    if ((m == 1 && n == 2) || (m == 2 && n == 1)) {
        // repetition across both levels; the cross mix lands one function
        SymbolicNet net(id, cfg, SourceLayout{slots, slots, 0, 0}, FeedbackMode::None);
        for (int t = 1; t <= slots; ++t) {
            net.begin_slot();
            net.set_fwd(Node::N1, {net.a(t), net.a(t)});
            net.set_fwd(Node::N2, {net.b(t), net.b(t)});
            net.commit_fwd();
            net.decode_fwd(Node::N1t, t);
            net.decode_fwd(Node::N2t, t);
            net.commit_bwd();
        }
        return net.finish(slots, 0);
    }
    if (m == 2 && n == 3) {
        SymbolicNet net(id, cfg, SourceLayout{2LL * slots, 2LL * slots, 0, 0},
                        FeedbackMode::None);
        for (int t = 1; t <= slots; ++t) {
            net.begin_slot();
            net.set_fwd(Node::N1, {net.a(2 * t - 1), net.a(2 * t), net.zero()});
            net.set_fwd(Node::N2, {net.b(2 * t), net.b(2 * t - 1), net.zero()});
            net.commit_fwd();
            for (Node r : {Node::N1t, Node::N2t}) {
                net.decode_fwd(r, 2 * t - 1);
                net.decode_fwd(r, 2 * t);
            }
            net.commit_bwd();
        }
        return net.finish(2 * slots, 0);
    }
    if (m == 3 && n == 2) {
        // bottom level repeats the top so both mixes resolve cleanly
        SymbolicNet net(id, cfg, SourceLayout{2LL * slots, 2LL * slots, 0, 0},
                        FeedbackMode::None);
        for (int t = 1; t <= slots; ++t) {
            net.begin_slot();
            net.set_fwd(Node::N1, {net.a(2 * t - 1), net.a(2 * t), net.a(2 * t - 1)});
            net.set_fwd(Node::N2, {net.b(2 * t), net.b(2 * t - 1), net.b(2 * t)});
            net.commit_fwd();
            for (Node r : {Node::N1t, Node::N2t}) {
                net.decode_fwd(r, 2 * t - 1);
                net.decode_fwd(r, 2 * t);
            }
            net.commit_bwd();
        }
        return net.finish(2 * slots, 0);
    }
    throw UnsupportedError("non_feedback_elementary: no scheme for " + kind.str());
}

Scheme perfect_feedback_12() {
    SymbolicNet net("pf:1,2", ChannelConfig{1, 2, 0, 0}, SourceLayout{4, 4, 0, 0},
                    FeedbackMode::Genie);
    // two fresh slots, then the genie-returned functions are forwarded
    for (int t = 1; t <= 2; ++t) {
        net.begin_slot();
        net.set_fwd(Node::N1, {net.a(2 * t - 1), net.a(2 * t)});
        net.set_fwd(Node::N2, {net.b(2 * t), net.b(2 * t - 1)});
        net.commit_fwd();
        net.decode_fwd(Node::N1t, 2 * t);
        net.decode_fwd(Node::N2t, 2 * t - 1);
        net.commit_bwd();
    }
    net.begin_slot();
    net.set_fwd(Node::N1, {net.F(1), net.F(3)});
    net.set_fwd(Node::N2, {net.F(2), net.F(4)});
    net.commit_fwd();
    net.decode_fwd(Node::N1t, 1);
    net.decode_fwd(Node::N1t, 3);
    net.decode_fwd(Node::N2t, 2);
    net.decode_fwd(Node::N2t, 4);
    net.commit_bwd();
    return net.finish(4, 0);
}

Scheme perfect_feedback_10() {
    SymbolicNet net("pf:1,0", ChannelConfig{0, 0, 1, 0}, SourceLayout{0, 0, 2, 2},
                    FeedbackMode::Genie);
    net.begin_slot(); // fresh symbols cross over
    net.commit_fwd();
    net.set_bwd(Node::N1t, {net.at(1)});
    net.set_bwd(Node::N2t, {net.bt(2)});
    net.commit_bwd();
    net.begin_slot(); // functions built from the genie returns
    net.commit_fwd();
    net.set_bwd(Node::N1t, {net.Ft(2)});
    net.set_bwd(Node::N2t, {net.Ft(1)});
    net.commit_bwd();
    net.decode_bwd(Node::N1, 1);
    net.decode_bwd(Node::N2, 2);
    net.begin_slot(); // relay of the function each side still misses
    net.commit_fwd();
    net.set_bwd(Node::N1t, {net.Ft(1)});
    net.set_bwd(Node::N2t, {net.Ft(2)});
    net.commit_bwd();
    net.decode_bwd(Node::N1, 2);
    net.decode_bwd(Node::N2, 1);
    return net.finish(0, 2);
}

Scheme two_way_12_21(int L) {
    require(L >= 1, "two_way_12_21: L >= 1");
    long long K = 4LL * L, Kt = 4LL * (L - 1);
    SymbolicNet net("ex1:L=" + std::to_string(L), ChannelConfig{1, 2, 2, 1},
                    SourceLayout{K, K, Kt, Kt}, FeedbackMode::InBand);

    // Stage 1: fresh symbols superposed with relayed feedback; the bottom
    // levels neutralize so each receiver sees one clean function per slot.
    for (int t = 1; t <= 2 * L; ++t) {
        net.begin_slot();
        if (t <= 2) {
            net.set_fwd(Node::N1, {net.a(2 * t - 1), net.a(2 * t)});
            net.set_fwd(Node::N2, {net.b(2 * t), net.b(2 * t - 1)});
        } else {
            net.set_fwd(Node::N1,
                        {net.a(2 * t - 1) ^ net.Ft(2 * (t - 2)) ^ net.a(2 * (t - 2)),
                         net.a(2 * t) ^ net.bt(2 * (t - 2) - 1) ^ net.F(2 * (t - 2) - 1) ^
                             net.a(2 * (t - 2) - 1) ^ net.at(2 * (t - 4))});
            net.set_fwd(Node::N2,
                        {net.b(2 * t) ^ net.Ft(2 * (t - 2) - 1) ^ net.b(2 * (t - 2) - 1),
                         net.b(2 * t - 1) ^ net.at(2 * (t - 2)) ^ net.F(2 * (t - 2)) ^
                             net.b(2 * (t - 2)) ^ net.bt(2 * (t - 4) - 1)});
        }
        net.commit_fwd();
        net.decode_fwd(Node::N1t, 2 * t);
        net.decode_fwd(Node::N2t, 2 * t - 1);
        if (t <= 2 * (L - 1)) {
            net.set_bwd(Node::N1t,
                        {net.at(2 * t) ^ net.F(2 * t) ^ net.at(2 * (t - 2) - 1),
                         net.at(2 * t - 1) ^ net.a(2 * t - 1) ^ net.Ft(2 * (t - 2)) ^
                             net.a(2 * (t - 2)) ^ net.at(2 * (t - 2)) ^ net.F(2 * (t - 2))});
            net.set_bwd(Node::N2t,
                        {net.bt(2 * t - 1) ^ net.F(2 * t - 1) ^ net.bt(2 * (t - 2)),
                         net.bt(2 * t) ^ net.b(2 * t) ^ net.Ft(2 * (t - 2) - 1) ^
                             net.b(2 * (t - 2) - 1) ^ net.bt(2 * (t - 2) - 1) ^
                             net.F(2 * (t - 2) - 1)});
        } else {
            net.set_bwd(Node::N1t, {net.F(2 * t), net.zero()});
            net.set_bwd(Node::N2t, {net.F(2 * t - 1), net.zero()});
        }
        net.commit_bwd();
        if (t <= 2 * (L - 1)) {
            net.decode_bwd(Node::N1, 2 * t);
            net.decode_bwd(Node::N2, 2 * t - 1);
        }
    }

    // Stage 2: retrospective refinement; newly decoded functions unlock the
    // deferred ones two slots back per round.
    for (int l = 1; l <= L; ++l) {
        net.begin_slot();
        int h = L - (l - 1), g = L - l, e = L - l - 1;
        if (l == 1) {
            net.set_fwd(Node::N1, {net.F(4 * L - 3), net.F(4 * L - 1)});
            net.set_fwd(Node::N2, {net.F(4 * L - 2), net.F(4 * L)});
        } else {
            net.set_fwd(Node::N1, {net.Ft(4 * h - 3) ^ net.bt(4 * h - 3) ^ net.F(4 * h - 3) ^
                                       net.bt(4 * g - 2) ^ net.Ft(4 * g - 2),
                                   net.Ft(4 * h - 1) ^ net.Ft(4 * g - 3) ^ net.bt(4 * h - 1) ^
                                       net.F(4 * h - 1) ^ net.bt(4 * g) ^ net.Ft(4 * g) ^
                                       net.Ft(4 * h - 2)});
            net.set_fwd(Node::N2, {net.Ft(4 * h - 2) ^ net.at(4 * h - 2) ^ net.F(4 * h - 2) ^
                                       net.at(4 * g - 3) ^ net.Ft(4 * g - 3),
                                   net.Ft(4 * h) ^ net.Ft(4 * g - 2) ^ net.at(4 * h) ^
                                       net.F(4 * h) ^ net.at(4 * g - 1) ^ net.Ft(4 * g - 1) ^
                                       net.Ft(4 * h - 3)});
        }
        net.commit_fwd();
        net.decode_fwd(Node::N1t, 4 * h - 3);
        net.decode_fwd(Node::N1t, 4 * h - 1);
        net.decode_fwd(Node::N2t, 4 * h - 2);
        net.decode_fwd(Node::N2t, 4 * h);

        net.set_bwd(Node::N1t,
                    {net.F(4 * h - 3) ^ net.a(4 * h - 3) ^ net.Ft(4 * g - 2) ^
                         net.a(4 * g - 2) ^ net.F(4 * g - 2),
                     net.F(4 * h - 1) ^ net.a(4 * h - 1) ^ net.Ft(4 * g) ^ net.a(4 * g) ^
                         net.F(4 * g) ^ net.F(4 * h - 2) ^ net.a(4 * g - 3) ^
                         net.Ft(4 * e - 2) ^ net.a(4 * e - 2) ^ net.F(4 * e - 2)});
        net.set_bwd(Node::N2t,
                    {net.F(4 * h - 2) ^ net.b(4 * h - 2) ^ net.Ft(4 * g - 3) ^
                         net.b(4 * g - 3) ^ net.F(4 * g - 3),
                     net.F(4 * h) ^ net.b(4 * h) ^ net.Ft(4 * g - 1) ^ net.b(4 * g - 1) ^
                         net.F(4 * g - 1) ^ net.F(4 * h - 3) ^ net.b(4 * g - 2) ^
                         net.Ft(4 * e - 3) ^ net.b(4 * e - 3) ^ net.F(4 * e - 3)});
        net.commit_bwd();
        auto try_bwd = [&](Node n, long long idx) {
            if (idx >= 1 && idx <= Kt) net.decode_bwd(n, idx);
        };
        try_bwd(Node::N1, 4LL * g - 3);
        try_bwd(Node::N2, 4LL * g - 2);
        if (l >= 2) {
            try_bwd(Node::N1, 4LL * h - 1);
            try_bwd(Node::N2, 4LL * h);
        }
        if (l == L - 1) {
            try_bwd(Node::N1, 4LL * g - 1);
            try_bwd(Node::N2, 4LL * g);
        }
    }
    return net.finish((int)K, (int)Kt);
}

Scheme two_way_12_10(int L, int M) {
    require(L >= 1 && L <= 16, "two_way_12_10: 1 <= L <= 16");
    require(M >= 1, "two_way_12_10: M >= 1");
    long long backlog = pow2ll(L + 1) - 2 * L - 2; // layers needed to drain one column fully
    long long done = std::max(0LL, (long long)M - backlog);
    SymbolicNet net("ex2:L=" + std::to_string(L) + ",M=" + std::to_string(M),
                    ChannelConfig{1, 2, 1, 0},
                    SourceLayout{4LL * L * M, 4LL * L * M, 2LL * L * M, 2LL * L * M},
                    FeedbackMode::InBand);
    auto A = [&](long long i) { return net.a(i); };
    auto B = [&](long long i) { return net.b(i); };
    auto At = [&](long long i) { return net.at(i); };
    auto Bt = [&](long long i) { return net.bt(i); };
    // receiver coverage of every function index, to derive the completed prefix
    std::vector<int> fcov(4LL * L * M + 1, 0), bcov(2LL * L * M + 1, 0);
    std::set<long long> relayed;      // columns whose late-stage refinement went out
    std::set<long long> relayed_full; // the full-stage columns (always refined)
    auto dec_f = [&](Node n, long long idx) {
        net.decode_fwd(n, idx);
        fcov[idx] |= n == Node::N1t ? 1 : 2;
    };
    auto dec_b = [&](Node n, long long idx) {
        net.decode_bwd(n, idx);
        bcov[idx] |= n == Node::N1 ? 1 : 2;
    };

    for (long long i = 1; i <= M; ++i) {
        for (long long l = 1; l <= L; ++l) {
            long long T = (i - 1) * L + l;
            // odd slot: fresh symbols plus relays of the previous layer's
            // late-stage signals, re-pointed at one older unresolved column
            net.begin_slot();
            long long P = (i - 1) - (pow2ll(L - (int)l + 1) - 2);
            long long u = P * L - (L - l + 1), v = u + 1, w = u - 1;
            LinearForm top1 = A(4 * T - 3) ^ A(4 * v) ^ A(4 * u - 2) ^ net.Ft(2 * u - 1);
            LinearForm top2 = B(4 * T - 2) ^ B(4 * v - 1) ^ B(4 * u - 3) ^ net.Ft(2 * u);
            // relays fire only once their source refinement actually went out;
            // the full-stage-sourced wrap-around only closes for short stages
            bool source_ok = relayed.count(u) || (L <= 2 && relayed_full.count(u));
            bool relay = u >= 1 && source_ok && net.constructible(Node::N1, top1) &&
                         net.constructible(Node::N2, top2);
            if (relay) {
                net.set_fwd(Node::N1, {top1, A(4 * T - 2) ^ A(4 * u) ^ A(4 * w - 2)});
                net.set_fwd(Node::N2, {top2, B(4 * T - 3) ^ B(4 * u - 1) ^ B(4 * w - 3)});
            } else {
                net.set_fwd(Node::N1, {A(4 * T - 3), A(4 * T - 2)});
                net.set_fwd(Node::N2, {B(4 * T - 2), B(4 * T - 3)});
            }
            net.commit_fwd();
            dec_f(Node::N1t, 4 * T - 2);
            dec_f(Node::N2t, 4 * T - 3);
            long long W = ((i - 1) - (pow2ll((int)l) - 2)) * L - (l - 1);
            long long V = (i - (pow2ll((int)l + 1) - 2)) * L - (l - 1), U = V - 1;
            bool fired = false;
            if (U >= 1) {
                LinearForm b1 = B(4 * W - 3) ^ B(4 * V) ^ B(4 * U - 2) ^ net.Ft(2 * U - 1);
                LinearForm b2 = A(4 * W - 2) ^ A(4 * V - 1) ^ A(4 * U - 3) ^ net.Ft(2 * U);
                fired = net.constructible(Node::N1t, b1) && net.constructible(Node::N2t, b2);
                if (fired) {
                    net.set_bwd(Node::N1t, {b1});
                    net.set_bwd(Node::N2t, {b2});
                }
            }
            net.commit_bwd();
            if (fired) {
                dec_b(Node::N1, 2 * U);
                dec_b(Node::N2, 2 * U - 1);
            }
            // even slot: fresh symbols plus the neutralizing echo of the
            // previous slots of the same layer
            net.begin_slot();
            net.set_fwd(Node::N1,
                        {A(4 * T - 1) ^ B(4 * (T - 1) - 3) ^ B(4 * (T - 1)) ^
                             A(4 * (T - 2) - 2) ^ Bt(2 * (T - 1)) ^ At(2 * (T - 2) - 1),
                         A(4 * T) ^ A(4 * (T - 1) - 2) ^ A(4 * (T - 2)) ^ A(4 * (T - 3) - 2)});
            net.set_fwd(Node::N2,
                        {B(4 * T) ^ A(4 * (T - 1) - 2) ^ A(4 * (T - 1) - 1) ^
                             B(4 * (T - 2) - 3) ^ At(2 * (T - 1) - 1) ^ Bt(2 * (T - 2)),
                         B(4 * T - 1) ^ B(4 * (T - 1) - 3) ^ B(4 * (T - 2) - 1) ^
                             B(4 * (T - 3) - 3)});
            net.commit_fwd();
            dec_f(Node::N1t, 4 * T);
            dec_f(Node::N2t, 4 * T - 1);
            net.set_bwd(Node::N1t, {At(2 * T - 1) ^ net.F(4 * T - 2) ^ A(4 * T - 1) ^
                                    B(4 * (T - 1) - 3) ^ B(4 * (T - 1)) ^ B(4 * (T - 2) - 2) ^
                                    Bt(2 * (T - 1))});
            net.set_bwd(Node::N2t, {Bt(2 * T) ^ net.F(4 * T - 3) ^ B(4 * T) ^
                                    A(4 * (T - 1) - 2) ^ A(4 * (T - 1) - 1) ^
                                    A(4 * (T - 2) - 3) ^ At(2 * (T - 1) - 1)});
            net.commit_bwd();
        }
        long long iL = i * L;
        // first refinement slot
        net.begin_slot();
        net.set_fwd(Node::N1, {net.F(4 * iL) ^ B(4 * iL - 3) ^ A(4 * (iL - 1) - 2) ^
                                   Bt(2 * iL) ^ At(2 * (iL - 1) - 1),
                               A(4 * iL - 1) ^ A(4 * iL - 2) ^ A(4 * (iL - 1)) ^
                                   A(4 * (iL - 2) - 2)});
        net.set_fwd(Node::N2, {net.F(4 * iL - 1) ^ A(4 * iL - 2) ^ B(4 * (iL - 1) - 3) ^
                                   At(2 * iL - 1) ^ Bt(2 * (iL - 1)),
                               B(4 * iL) ^ B(4 * iL - 3) ^ B(4 * (iL - 1) - 1) ^
                                   B(4 * (iL - 2) - 3)});
        net.commit_fwd();
        dec_f(Node::N1t, 4 * iL - 1);
        dec_f(Node::N2t, 4 * iL);
        net.set_bwd(Node::N1t, {B(4 * iL - 3) ^ B(4 * (iL - 1) - 2) ^ net.Ft(2 * iL)});
        net.set_bwd(Node::N2t, {A(4 * iL - 2) ^ A(4 * (iL - 1) - 3) ^ net.Ft(2 * iL - 1)});
        net.commit_bwd();
        relayed_full.insert(iL);
        dec_b(Node::N1, 2 * iL - 1);
        dec_b(Node::N2, 2 * iL);
        // second refinement slot
        net.begin_slot();
        net.set_fwd(Node::N1, {net.Ft(2 * iL - 1), A(4 * iL - 3) ^ A(4 * (iL - 1) - 2)});
        net.set_fwd(Node::N2, {net.Ft(2 * iL), B(4 * iL - 2) ^ B(4 * (iL - 1) - 3)});
        net.commit_fwd();
        dec_f(Node::N1t, 4 * iL - 3);
        dec_f(Node::N2t, 4 * iL - 2);
        net.set_bwd(Node::N1t, {net.Ft(2 * iL - 1)});
        net.set_bwd(Node::N2t, {net.Ft(2 * iL)});
        net.commit_bwd();
        dec_b(Node::N1, 2 * iL);
        dec_b(Node::N2, 2 * iL - 1);
        // catch-up slots: two columns of an older layer finish per slot once
        // the pipeline has warmed up; empty indices keep the slot silent
        for (long long l = 3; l <= L + 1; ++l) {
            net.begin_slot();
            long long Q = (i - (pow2ll((int)l - 1) - 2)) * L - (l - 2), Q2 = Q - 1;
            bool caught = false, paired = false;
            if (Q >= 1) {
                // the bottom levels pair the fresh column's function with the
                // previous column's whenever the senders already hold it, so
                // both stray backward symbols neutralize at once
                paired = Q2 == 0 || (net.already_decoded(Node::N1, true, 2 * Q2) &&
                                     net.already_decoded(Node::N2, true, 2 * Q2 - 1));
                LinearForm t1 = net.F(4 * Q - 3) ^ net.F(4 * Q) ^ At(2 * Q) ^ At(2 * Q2 - 1);
                LinearForm t2 =
                    net.F(4 * Q - 2) ^ net.F(4 * Q - 1) ^ Bt(2 * Q - 1) ^ Bt(2 * Q2);
                LinearForm m1 = net.Ft(2 * Q - 1) ^ (paired ? net.Ft(2 * Q2) : net.zero());
                LinearForm m2 = net.Ft(2 * Q) ^ (paired ? net.Ft(2 * Q2 - 1) : net.zero());
                caught = net.constructible(Node::N1, t1) && net.constructible(Node::N1, m1) &&
                         net.constructible(Node::N2, t2) && net.constructible(Node::N2, m2);
                if (caught) {
                    net.set_fwd(Node::N1, {t1, m1});
                    net.set_fwd(Node::N2, {t2, m2});
                }
            }
            net.commit_fwd();
            if (caught) {
                dec_f(Node::N1t, 4 * Q - 3);
                dec_f(Node::N2t, 4 * Q - 2);
                if (paired) {
                    dec_f(Node::N1t, 4 * Q - 1);
                    dec_f(Node::N2t, 4 * Q);
                }
            }
            long long X = (i - (pow2ll((int)l - 2) - 2)) * L - (l - 3), Y = X - 1, Z = X - 2;
            bool fired = false;
            if (Y >= 1) {
                LinearForm b1 =
                    B(4 * X - 1) ^ B(4 * Y - 3) ^ B(4 * Y) ^ B(4 * Z - 2) ^ net.Ft(2 * Y);
                LinearForm b2 =
                    A(4 * X) ^ A(4 * Y - 2) ^ A(4 * Y - 1) ^ A(4 * Z - 3) ^ net.Ft(2 * Y - 1);
                fired = net.constructible(Node::N1t, b1) && net.constructible(Node::N2t, b2);
                if (fired) {
                    net.set_bwd(Node::N1t, {b1});
                    net.set_bwd(Node::N2t, {b2});
                }
            }
            net.commit_bwd();
            if (fired) {
                relayed.insert(Y);
                dec_b(Node::N1, 2 * Y - 1);
                dec_b(Node::N2, 2 * Y);
            }
        }
    }
    // demanded sets: the claimed completed prefix, never past the coverage
    // the schedule actually establishes
    long long fprefix = 0, bprefix = 0;
    while (fprefix + 1 < (long long)fcov.size() && fcov[fprefix + 1] == 3) ++fprefix;
    while (bprefix + 1 < (long long)bcov.size() && bcov[bprefix + 1] == 3) ++bprefix;
    return net.finish((int)std::min(4 * L * done, fprefix),
                      (int)std::min(2 * L * done, bprefix));
}

Scheme lemma4_i(int L, Orientation orient) {
    require(L >= 1, "lemma4_i: L >= 1");
    std::string id = "l4i:L=" + std::to_string(L) +
                     (orient == Orientation::BackwardHeavy ? ",bwd" : ",fwd");
    SymbolicNet net(id, ChannelConfig{0, 1, 1, 0}, SourceLayout{2LL * L, 2LL * L, L, L},
                    FeedbackMode::InBand);
    auto rxz1 = [&](int slot) { return net.rx_level_or_zero(Node::N1, slot, 1); };
    auto rxz2 = [&](int slot) { return net.rx_level_or_zero(Node::N2, slot, 1); };
    auto txz1 = [&](int slot) { return net.tx_level_or_zero(Node::N1, slot, 1); };
    auto txz2 = [&](int slot) { return net.tx_level_or_zero(Node::N2, slot, 1); };

    // Stage 1: each side relays what it last heard and superposes two fresh
    // symbols; the responders echo with one fresh symbol of their own.
    for (int t = 1; t <= L; ++t) {
        net.begin_slot();
        net.set_fwd(Node::N1, {rxz1(t - 1) ^ net.a(2 * t - 2) ^ net.a(2 * t - 1)});
        net.set_fwd(Node::N2, {rxz2(t - 1) ^ net.b(2 * t - 3) ^ net.b(2 * t)});
        net.commit_fwd();
        net.set_bwd(Node::N1t, {net.rx_form(Node::N1t, t, 1) ^ net.at(t)});
        net.set_bwd(Node::N2t, {net.rx_form(Node::N2t, t, 1) ^ net.bt(t)});
        net.commit_bwd();
    }
    // Stage 2: unwind the columns in reverse; each round resolves one
    // backward function and converts stored mixtures into function sums.
    net.begin_slot();
    net.set_fwd(Node::N1, {rxz1(L) ^ txz1(L - 1)});
    net.set_fwd(Node::N2, {rxz2(L) ^ txz2(L - 1)});
    net.commit_fwd();
    net.set_bwd(Node::N1t, {net.rx_form(Node::N1t, L + 1, 1) ^ net.at(L - 1) ^ net.at(L)});
    net.set_bwd(Node::N2t, {net.rx_form(Node::N2t, L + 1, 1) ^ net.bt(L - 1) ^ net.bt(L)});
    net.commit_bwd();
    net.decode_bwd(Node::N1, L);
    net.decode_bwd(Node::N2, L);
    for (int j = 0; j < L; ++j) {
        int t = L - j;
        int s2 = L + 2 + 2 * j;
        net.begin_slot();
        net.set_fwd(Node::N1,
                    {rxz1(t) ^ net.Ft(t) ^ net.a(2 * t) ^ net.a(2 * t - 3) ^ txz1(t - 1)});
        net.set_fwd(Node::N2,
                    {rxz2(t) ^ net.Ft(t) ^ net.b(2 * t - 1) ^ net.b(2 * t - 2) ^ txz2(t - 1)});
        net.commit_fwd();
        if (s2 == 3 * L) { // the chains rooted at the two final relays close here
            for (int k = 1; k <= 2 * L; ++k) {
                if (k % 4 == 2 || k % 4 == 3) net.decode_fwd(Node::N1t, k);
                if (k % 4 == 0 || k % 4 == 1) net.decode_fwd(Node::N2t, k);
            }
        }
        net.set_bwd(Node::N1t, {net.rx_form(Node::N1t, s2, 1) ^ net.at(t - 1) ^ net.at(t)});
        net.set_bwd(Node::N2t, {net.rx_form(Node::N2t, s2, 1) ^ net.bt(t - 1) ^ net.bt(t)});
        net.commit_bwd();
        if (t >= 2) {
            int s1 = s2 + 1, tp = t - 1;
            net.begin_slot();
            net.set_fwd(Node::N1, {net.rx_form(Node::N1, s2, 1)});
            net.set_fwd(Node::N2, {net.rx_form(Node::N2, s2, 1)});
            net.commit_fwd();
            net.set_bwd(Node::N1t, {net.rx_level_or_zero(Node::N1t, tp + 1, 1) ^ net.at(tp) ^
                                    net.rx_form(Node::N1t, s1, 1)});
            net.set_bwd(Node::N2t, {net.rx_level_or_zero(Node::N2t, tp + 1, 1) ^ net.bt(tp) ^
                                    net.rx_form(Node::N2t, s1, 1)});
            net.commit_bwd();
            net.decode_bwd(Node::N1, tp);
            net.decode_bwd(Node::N2, tp);
        }
    }
    net.begin_slot();
    net.set_fwd(Node::N1, {net.rx_form(Node::N1, 3 * L, 1)});
    net.set_fwd(Node::N2, {net.rx_form(Node::N2, 3 * L, 1)});
    net.commit_fwd();
    for (int k = 1; k <= 2 * L; ++k) {
        if (k % 4 == 0 || k % 4 == 1) net.decode_fwd(Node::N1t, k);
        if (k % 4 == 2 || k % 4 == 3) net.decode_fwd(Node::N2t, k);
    }
    net.commit_bwd();
    Scheme s = net.finish(2 * L, L);
    if (orient == Orientation::BackwardHeavy) s = cross_swapped(mirrored(s, id), id);
    return s;
}

namespace {

// Shared scaffolding for the riding-block schemes: `hosts` forward copies of
// a 3-level channel carry per-slot fresh pairs; backward copies run their
// 3-slot cycles phase-staggered, their feedback riding the hosts' upper
// levels with neutralizing duplicates on the bottom.
struct RideSchedule {
    int t1 = 0, t2 = 0, t3 = 0;
};

Scheme build_v_block(int i, int j, int reps) {
    require(i >= 1 && j >= 1 && reps >= 1, "lemma4_block(v): positive parameters");
    if (3 * i < j) throw UnsupportedError("lemma4_block(v): needs 3i >= j");
    std::string id = "l4:v:i=" + std::to_string(i) + ",j=" + std::to_string(j) +
                     ",R=" + std::to_string(reps);
    int slots = 3 * reps;
    auto phase = [&](int k) { return k / i; };
    auto host = [&](int k) { return k % i; };
    auto patterns = [&](int k) { return reps - (phase(k) > 0 ? 1 : 0); };
    std::vector<long long> at_off(j + 1, 0);
    for (int k = 0; k < j; ++k) at_off[k + 1] = at_off[k] + 4LL * patterns(k);
    long long Kt = at_off[j];
    long long K = 6LL * reps * i;
    SymbolicNet net(id, ChannelConfig{2 * i, 3 * i, 2 * j, j}, SourceLayout{K, K, Kt, Kt},
                    FeedbackMode::InBand);
    auto fidx = [&](int c, int sigma, int pos) { return 6LL * reps * c + 2 * (sigma - 1) + pos; };
    auto gidx = [&](int k, int r, int s) { return at_off[k] + 4LL * r + s; };
    auto sched = [&](int k, int r) {
        return RideSchedule{3 * r + phase(k) + 1, 3 * r + phase(k) + 2, 3 * r + phase(k) + 3};
    };
    auto rider_of = [&](int c, int sigma) -> std::pair<int, int> {
        for (int ph = 0; ph <= 2; ++ph) {
            int k = ph * i + c;
            if (k >= j) continue;
            int r = (sigma - 3 - ph);
            if (r % 3 != 0 || r < 0) continue;
            r /= 3;
            if (r < patterns(k)) return {k, r};
        }
        return {-1, -1};
    };
    int top = 0; // chain level offsets: chain c of the host uses c+1, c+1+i, c+1+2i
    (void)top;
    for (int sigma = 1; sigma <= slots; ++sigma) {
        net.begin_slot();
        std::vector<LinearForm> x1(3 * i, net.zero()), x2(3 * i, net.zero());
        for (int c = 0; c < i; ++c) {
            auto [k, r] = rider_of(c, sigma);
            LinearForm r11 = net.zero(), r21 = net.zero(), r12 = net.zero(), r22 = net.zero();
            if (k >= 0) {
                RideSchedule rs = sched(k, r);
                int ktop = k + 1, kbot = k + 1 + j;
                r11 = net.rx_form(Node::N1, rs.t1, kbot) ^ net.rx_form(Node::N1, rs.t2, ktop);
                r21 = net.rx_form(Node::N1, rs.t1, ktop);
                r12 = net.rx_form(Node::N2, rs.t1, kbot) ^ net.rx_form(Node::N2, rs.t2, ktop);
                r22 = net.rx_form(Node::N2, rs.t1, ktop);
            }
            x1[c] = net.a(fidx(c, sigma, 1)) ^ r11;
            x1[c + i] = net.a(fidx(c, sigma, 2)) ^ r21;
            x1[c + 2 * i] = k >= 0 ? net.a(fidx(c, sigma, 1)) : net.zero();
            x2[c] = net.b(fidx(c, sigma, 2)) ^ r12;
            x2[c + i] = net.b(fidx(c, sigma, 1)) ^ r22;
            x2[c + 2 * i] = k >= 0 ? net.b(fidx(c, sigma, 2)) : net.zero();
        }
        net.set_fwd(Node::N1, x1);
        net.set_fwd(Node::N2, x2);
        net.commit_fwd();
        for (int c = 0; c < i; ++c)
            for (int pos = 1; pos <= 2; ++pos) {
                net.decode_fwd(Node::N1t, fidx(c, sigma, pos));
                net.decode_fwd(Node::N2t, fidx(c, sigma, pos));
            }
        std::vector<LinearForm> b1(2 * j, net.zero()), b2(2 * j, net.zero());
        struct Dec {
            Node n;
            long long idx;
        };
        std::vector<Dec> decs;
        for (int k = 0; k < j; ++k) {
            for (int r = 0; r < patterns(k); ++r) {
                RideSchedule rs = sched(k, r);
                int ktop = k, kbot = k + j; // 0-based level indices in x vectors
                if (sigma == rs.t1) {
                    b1[ktop] = net.at(gidx(k, r, 1));
                    b1[kbot] = net.at(gidx(k, r, 2));
                    b2[ktop] = net.bt(gidx(k, r, 2));
                    b2[kbot] = net.bt(gidx(k, r, 1));
                    decs.push_back({Node::N1, gidx(k, r, 1)});
                    decs.push_back({Node::N2, gidx(k, r, 2)});
                } else if (sigma == rs.t2) {
                    b1[ktop] = net.at(gidx(k, r, 3));
                    b1[kbot] = net.at(gidx(k, r, 4));
                    b2[ktop] = net.bt(gidx(k, r, 4));
                    b2[kbot] = net.bt(gidx(k, r, 3));
                    decs.push_back({Node::N1, gidx(k, r, 3)});
                    decs.push_back({Node::N2, gidx(k, r, 4)});
                } else if (sigma == rs.t3) {
                    int c = host(k);
                    b1[ktop] = net.b(fidx(c, sigma, 1)) ^ net.Ft(gidx(k, r, 1)) ^
                               net.Ft(gidx(k, r, 4));
                    b1[kbot] = net.F(fidx(c, sigma, 2));
                    b2[ktop] = net.a(fidx(c, sigma, 2)) ^ net.Ft(gidx(k, r, 2)) ^
                               net.Ft(gidx(k, r, 3));
                    b2[kbot] = net.F(fidx(c, sigma, 1));
                    decs.push_back({Node::N1, gidx(k, r, 2)});
                    decs.push_back({Node::N1, gidx(k, r, 4)});
                    decs.push_back({Node::N2, gidx(k, r, 1)});
                    decs.push_back({Node::N2, gidx(k, r, 3)});
                }
            }
        }
        net.set_bwd(Node::N1t, b1);
        net.set_bwd(Node::N2t, b2);
        net.commit_bwd();
        for (const Dec& d : decs) net.decode_bwd(d.n, d.idx);
    }
    return net.finish((int)K, (int)Kt);
}

Scheme build_iii_block(int i, int j, int reps) {
    require(i >= 1 && j >= 1 && reps >= 1, "lemma4_block(iii): positive parameters");
    if (3 * i < 2 * j) throw UnsupportedError("lemma4_block(iii): needs 3i >= 2j");
    std::string id = "l4:iii:i=" + std::to_string(i) + ",j=" + std::to_string(j) +
                     ",R=" + std::to_string(reps);
    int slots = 3 * reps;
    auto phase = [&](int k) { return k % 3; };
    auto patterns = [&](int k) { return reps - (phase(k) > 0 ? 1 : 0); };
    std::vector<long long> at_off(j + 1, 0);
    for (int k = 0; k < j; ++k) at_off[k + 1] = at_off[k] + 2LL * patterns(k);
    long long Kt = at_off[j];
    long long K = 6LL * reps * i;
    SymbolicNet net(id, ChannelConfig{2 * i, 3 * i, j, 0}, SourceLayout{K, K, Kt, Kt},
                    FeedbackMode::InBand);
    auto fidx = [&](int c, int sigma, int pos) { return 6LL * reps * c + 2 * (sigma - 1) + pos; };
    auto gidx = [&](int k, int r, int s) { return at_off[k] + 2LL * r + s; };
    auto sched = [&](int k, int r) {
        return RideSchedule{3 * r + phase(k) + 1, 3 * r + phase(k) + 2, 3 * r + phase(k) + 3};
    };
    // ride host assignment per slot: riders in copy order take hosts 0,1,...
    struct Ride {
        int k, r, type; // type: 0 = first ride, 1 = second ride
    };
    std::vector<std::vector<Ride>> rides(slots + 1);
    for (int k = 0; k < j; ++k)
        for (int r = 0; r < patterns(k); ++r) {
            RideSchedule rs = sched(k, r);
            rides[rs.t2].push_back({k, r, 0});
            rides[rs.t3].push_back({k, r, 1});
        }
    std::vector<std::vector<int>> host_of(slots + 1, std::vector<int>(j, -1));
    for (int sigma = 1; sigma <= slots; ++sigma) {
        if ((int)rides[sigma].size() > i)
            throw UnsupportedError(id + ": ride schedule overflows hosts");
        for (size_t p = 0; p < rides[sigma].size(); ++p)
            host_of[sigma][rides[sigma][p].k] = (int)p;
    }
    for (int sigma = 1; sigma <= slots; ++sigma) {
        net.begin_slot();
        std::vector<LinearForm> x1(3 * i, net.zero()), x2(3 * i, net.zero());
        std::vector<bool> hosted(i, false);
        for (const Ride& rd : rides[sigma]) {
            int c = host_of[sigma][rd.k];
            hosted[c] = true;
            RideSchedule rs = sched(rd.k, rd.r);
            LinearForm r1 = net.zero(), r2 = net.zero();
            if (rd.type == 0) { // relay of the fresh cross-over
                r1 = net.rx_form(Node::N1, rs.t1, rd.k + 1);
                r2 = net.rx_form(Node::N2, rs.t1, rd.k + 1);
            } else { // relay of the first completion mix
                r1 = net.rx_form(Node::N1, rs.t2, rd.k + 1);
                r2 = net.rx_form(Node::N2, rs.t2, rd.k + 1);
            }
            x1[c] = r1;
            x2[c] = r2;
        }
        for (int c = 0; c < i; ++c) {
            x1[c] ^= net.a(fidx(c, sigma, 1));
            x1[c + i] = net.a(fidx(c, sigma, 2));
            x2[c] ^= net.b(fidx(c, sigma, 2));
            x2[c + i] = net.b(fidx(c, sigma, 1));
            if (hosted[c]) {
                x1[c + 2 * i] = net.a(fidx(c, sigma, 1));
                x2[c + 2 * i] = net.b(fidx(c, sigma, 2));
            }
        }
        net.set_fwd(Node::N1, x1);
        net.set_fwd(Node::N2, x2);
        net.commit_fwd();
        for (int c = 0; c < i; ++c)
            for (int pos = 1; pos <= 2; ++pos) {
                net.decode_fwd(Node::N1t, fidx(c, sigma, pos));
                net.decode_fwd(Node::N2t, fidx(c, sigma, pos));
            }
        std::vector<LinearForm> b1(j, net.zero()), b2(j, net.zero());
        struct Dec {
            Node n;
            long long idx;
        };
        std::vector<Dec> decs;
        for (int k = 0; k < j; ++k) {
            for (int r = 0; r < patterns(k); ++r) {
                RideSchedule rs = sched(k, r);
                if (sigma == rs.t1) {
                    b1[k] = net.at(gidx(k, r, 1));
                    b2[k] = net.bt(gidx(k, r, 2));
                } else if (sigma == rs.t2) {
                    int cA = host_of[sigma][k];
                    b1[k] = net.b(fidx(cA, sigma, 1)) ^ net.Ft(gidx(k, r, 2));
                    b2[k] = net.a(fidx(cA, sigma, 2)) ^ net.Ft(gidx(k, r, 1));
                    decs.push_back({Node::N1, gidx(k, r, 1)});
                    decs.push_back({Node::N2, gidx(k, r, 2)});
                } else if (sigma == rs.t3) {
                    int cB = host_of[sigma][k];
                    int cA = host_of[rs.t2][k];
                    b1[k] = net.b(fidx(cB, sigma, 1)) ^ net.b(fidx(cA, rs.t2, 2)) ^
                            net.Ft(gidx(k, r, 1));
                    b2[k] = net.a(fidx(cB, sigma, 2)) ^ net.a(fidx(cA, rs.t2, 1)) ^
                            net.Ft(gidx(k, r, 2));
                    decs.push_back({Node::N1, gidx(k, r, 2)});
                    decs.push_back({Node::N2, gidx(k, r, 1)});
                }
            }
        }
        net.set_bwd(Node::N1t, b1);
        net.set_bwd(Node::N2t, b2);
        net.commit_bwd();
        for (const Dec& d : decs) net.decode_bwd(d.n, d.idx);
    }
    return net.finish((int)K, (int)Kt);
}

} // namespace

Scheme lemma4_block(BlockKind kind, int i, int j, int reps, int L) {
    switch (kind) {
    case BlockKind::iii: return build_iii_block(i, j, reps);
    case BlockKind::v: return build_v_block(i, j, reps);
    case BlockKind::iv: {
        require(i >= 1 && j >= 1, "lemma4_block(iv): positive multiplicities");
        if (2 * i < j || 2 * j < i) throw UnsupportedError("lemma4_block(iv): needs 2i >= j, 2j >= i");
        if (i != j)
            throw UnsupportedError(
                "lemma4_block(iv): executable construction covers i == j only");
        std::string id = "l4:iv:i=" + std::to_string(i) + ",j=" + std::to_string(j) +
                         ",L=" + std::to_string(L);
        if (i == 1) {
            Scheme s = two_way_12_21(L);
            s.id = id;
            return s;
        }
        ChannelConfig composite{i, 2 * i, 2 * i, i};
        auto fwd_chains = decomposition_chains(i, 2 * i);
        auto bwd_chains = decomposition_chains(2 * i, i);
        std::vector<EmbeddedBlock> blocks;
        for (int c = 0; c < i; ++c)
            blocks.push_back({two_way_12_21(L), fwd_chains[c], bwd_chains[c]});
        return embed_blocks(id, composite, std::move(blocks));
    }
    }
    throw UnsupportedError("lemma4_block: unknown kind");
}

Scheme embed_blocks(const std::string& id, const ChannelConfig& composite,
                    std::vector<EmbeddedBlock> blocks) {
    require(!blocks.empty(), "embed_blocks: no blocks");
    long long period = 1;
    for (const EmbeddedBlock& b : blocks) {
        require(b.scheme.feedback != FeedbackMode::Genie, "embed_blocks: genie block");
        require(b.scheme.sources.na == b.scheme.sources.nb &&
                    b.scheme.sources.nat == b.scheme.sources.nbt,
                "embed_blocks: asymmetric block sources");
        require((int)b.fwd_levels.size() == b.scheme.config.q() &&
                    (int)b.bwd_levels.size() == b.scheme.config.qt(),
                "embed_blocks: level map size");
        period = std::lcm(period, (long long)std::max(1, b.scheme.slots));
    }
    std::vector<bool> fwd_used(composite.q() + 1, false), bwd_used(composite.qt() + 1, false);
    for (const EmbeddedBlock& b : blocks) {
        for (int g : b.fwd_levels) {
            require(g >= 1 && g <= composite.q() && !fwd_used[g], "embed_blocks: level clash");
            fwd_used[g] = true;
        }
        for (int g : b.bwd_levels) {
            require(g >= 1 && g <= composite.qt() && !bwd_used[g], "embed_blocks: level clash");
            bwd_used[g] = true;
        }
    }
    struct Inst { // one repetition of one block
        int block;
        int rep;
        long long a_dem, a_tail, at_dem, at_tail; // family offsets (within-family)
    };
    std::vector<std::vector<Inst>> inst(blocks.size());
    long long K = 0, Kt = 0, a_total = 0, at_total = 0;
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        const Scheme& s = blocks[bi].scheme;
        long long reps = period / std::max(1, s.slots);
        for (long long r = 0; r < reps; ++r) {
            inst[bi].push_back({(int)bi, (int)r, 0, 0, 0, 0});
            K += s.fwd_functions;
            Kt += s.bwd_functions;
            a_total += s.sources.na;
            at_total += s.sources.nat;
        }
    }
    // demanded indices first, per-block tails after, so the composite demand
    // is the contiguous prefix 1..K (1..Kt backward)
    long long a_dem = 0, a_tail = K, at_dem = 0, at_tail = Kt;
    for (auto& v : inst)
        for (Inst& in : v) {
            const Scheme& s = blocks[in.block].scheme;
            in.a_dem = a_dem;
            a_dem += s.fwd_functions;
            in.a_tail = a_tail;
            a_tail += s.sources.na - s.fwd_functions;
            in.at_dem = at_dem;
            at_dem += s.bwd_functions;
            in.at_tail = at_tail;
            at_tail += s.sources.nat - s.bwd_functions;
        }
    SourceLayout layout{a_total, a_total, at_total, at_total};
    Scheme out;
    out.id = id;
    out.config = composite;
    out.sources = layout;
    out.slots = (int)period;
    out.fwd_functions = (int)K;
    out.bwd_functions = (int)Kt;
    out.feedback = FeedbackMode::InBand;
    out.tx.resize(period);
    out.tx_form.resize(period);
    for (long long t = 0; t < period; ++t)
        for (int n = 0; n < 4; ++n) {
            int q = n < 2 ? composite.q() : composite.qt();
            out.tx[t][n].assign(q, {});
            out.tx_form[t][n].assign(q, LinearForm(layout.dim()));
        }

    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        const Scheme& s = blocks[bi].scheme;
        const auto& fmap = blocks[bi].fwd_levels;
        const auto& bmap = blocks[bi].bwd_levels;
        for (const Inst& in : inst[bi]) {
            long long base_slot = (long long)in.rep * s.slots;
            auto map_index = [&](long long local, bool backward) {
                long long dem = backward ? s.bwd_functions : s.fwd_functions;
                if (local <= dem) return (backward ? in.at_dem : in.a_dem) + local;
                return (backward ? in.at_tail : in.a_tail) + (local - dem);
            };
            auto map_bit = [&](long long bit) {
                const SourceLayout& l = s.sources;
                if (bit < l.na) return layout.a(map_index(bit + 1, false));
                if (bit < l.na + l.nb) return layout.b(map_index(bit - l.na + 1, false));
                if (bit < l.na + l.nb + l.nat)
                    return layout.at(map_index(bit - l.na - l.nb + 1, true));
                return layout.bt(map_index(bit - l.na - l.nb - l.nat + 1, true));
            };
            auto map_form = [&](const LinearForm& f) {
                LinearForm g(layout.dim());
                for (long long bit = 0; bit < f.dim(); ++bit)
                    if (f.test(bit)) g.flip(map_bit(bit));
                return g;
            };
            auto map_taps = [&](const std::vector<Tap>& taps, Node n) {
                std::vector<Tap> outp = taps;
                for (Tap& t : outp) {
                    if (t.kind == Tap::Kind::Source) t.bit = map_bit(t.bit);
                    if (t.kind == Tap::Kind::Rx) {
                        t.slot += (int)base_slot;
                        t.level = tilde_side(n) ? fmap[t.level - 1] : bmap[t.level - 1];
                    }
                }
                return outp;
            };
            for (int t = 1; t <= s.slots; ++t) {
                long long gt = base_slot + t;
                for (int n = 0; n < 4; ++n) {
                    const auto& lmap = n < 2 ? fmap : bmap;
                    for (size_t lvl = 0; lvl < s.tx[t - 1][n].size(); ++lvl) {
                        int g = lmap[lvl];
                        out.tx[gt - 1][n][g - 1] = map_taps(s.tx[t - 1][n][lvl], (Node)n);
                        out.tx_form[gt - 1][n][g - 1] = map_form(s.tx_form[t - 1][n][lvl]);
                    }
                }
            }
            for (const DecodeEvent& d : s.decodes) {
                DecodeEvent nd;
                nd.node = d.node;
                nd.backward_fn = d.backward_fn;
                nd.index = (int)map_index(d.index, d.backward_fn);
                nd.slot = d.slot + (int)base_slot;
                nd.taps = map_taps(d.taps, d.node);
                out.decodes.push_back(std::move(nd));
            }
        }
    }
    std::stable_sort(out.decodes.begin(), out.decodes.end(),
                     [](const DecodeEvent& x, const DecodeEvent& y) { return x.slot < y.slot; });
    return out;
}

namespace {

long long parse_ll(const std::string& s, size_t& pos) {
    size_t used = 0;
    long long v;
    try {
        v = std::stoll(s.substr(pos), &used);
    } catch (const std::exception&) {
        throw ParseError("bad scheme id near '" + s.substr(pos) + "'");
    }
    pos += used;
    return v;
}

bool eat(const std::string& s, size_t& pos, const std::string& tok) {
    if (s.compare(pos, tok.size(), tok) == 0) {
        pos += tok.size();
        return true;
    }
    return false;
}

} // namespace

Scheme make_scheme(const std::string& id) {
    size_t pos = 0;
    if (eat(id, pos, "nf:")) {
        long long m = parse_ll(id, pos);
        if (!eat(id, pos, ",")) throw ParseError("bad nf id: " + id);
        long long n = parse_ll(id, pos);
        return non_feedback_elementary({(int)m, (int)n});
    }
    if (id == "pf:1,2") return perfect_feedback_12();
    if (id == "pf:1,0") return perfect_feedback_10();
    if (eat(id, pos, "ex1:L=")) return two_way_12_21((int)parse_ll(id, pos));
    if (eat(id, pos, "ex2:L=")) {
        long long L = parse_ll(id, pos);
        if (!eat(id, pos, ",M=")) throw ParseError("bad ex2 id: " + id);
        return two_way_12_10((int)L, (int)parse_ll(id, pos));
    }
    if (eat(id, pos, "l4i:L=")) {
        long long L = parse_ll(id, pos);
        Orientation o = Orientation::ForwardHeavy;
        if (eat(id, pos, ",bwd"))
            o = Orientation::BackwardHeavy;
        else
            eat(id, pos, ",fwd");
        return lemma4_i((int)L, o);
    }
    if (eat(id, pos, "l4:")) {
        BlockKind kind;
        if (eat(id, pos, "iii:"))
            kind = BlockKind::iii;
        else if (eat(id, pos, "iv:"))
            kind = BlockKind::iv;
        else if (eat(id, pos, "v:"))
            kind = BlockKind::v;
        else
            throw ParseError("bad block kind: " + id);
        if (!eat(id, pos, "i=")) throw ParseError("bad block id: " + id);
        long long i = parse_ll(id, pos);
        if (!eat(id, pos, ",j=")) throw ParseError("bad block id: " + id);
        long long j = parse_ll(id, pos);
        long long reps = 1, L = 2;
        while (pos < id.size()) {
            if (eat(id, pos, ",R="))
                reps = parse_ll(id, pos);
            else if (eat(id, pos, ",L="))
                L = parse_ll(id, pos);
            else
                throw ParseError("bad block id: " + id);
        }
        return lemma4_block(kind, (int)i, (int)j, (int)reps, (int)L);
    }
    throw ParseError("unknown scheme id: '" + id + "'");
}

std::vector<std::string> default_catalog() {
    return {
        "nf:0,1",  "nf:1,0",    "nf:1,2",     "nf:2,1",         "nf:2,3",
        "nf:3,2",  "nf:3,3",    "pf:1,2",     "pf:1,0",         "ex1:L=1",
        "ex1:L=2", "ex1:L=3",   "ex2:L=1,M=3", "ex2:L=2,M=4",   "l4i:L=1",
        "l4i:L=2", "l4i:L=2,bwd", "l4:iii:i=1,j=1", "l4:iv:i=1,j=1,L=2",
        "l4:v:i=1,j=1", "l4:iii:i=2,j=3,R=3", "l4:v:i=1,j=2,R=3", "l4:iv:i=2,j=2,L=2",
    };
}

} // namespace twc
