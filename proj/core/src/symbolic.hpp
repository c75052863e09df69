#pragma once

// Construction-time machinery: runs the network symbolically, one slot at a
// time, and realizes every requested transmission value and decode as a tap
// combination over the sending node's causally available atoms (own sources,
// past receptions, genie deliveries). Unsolvable requests throw — a scheme
// that builds is causal and algebraically consistent by construction.

#include <optional>
#include <vector>

#include "twc/scheme.hpp"

namespace twc {

// Incremental GF(2) row reduction with tap tracking.
class TapSolver {
  public:
    void add_atom(LinearForm form, Tap tap);
    std::optional<std::vector<Tap>> solve(LinearForm target) const;

  private:
    struct Row {
        LinearForm form;
        std::vector<Tap> taps;
        long long pivot;
    };
    std::vector<Row> rows_;
};

class SymbolicNet {
  public:
    SymbolicNet(std::string id, ChannelConfig cfg, SourceLayout layout, FeedbackMode mode);

    const SourceLayout& layout() const { return layout_; }
    int slot() const { return slot_; }

    // Null-guarded value forms: an index below 1 is the null symbol.
    LinearForm zero() const { return LinearForm(layout_.dim()); }
    LinearForm a(long long i) const;
    LinearForm b(long long i) const;
    LinearForm at(long long i) const;
    LinearForm bt(long long i) const;
    LinearForm F(long long l) const { return a(l) ^ b(l); }
    LinearForm Ft(long long l) const { return at(l) ^ bt(l); }

    // Recorded symbolic signals of past phases (and, for tx, the current one).
    const LinearForm& tx_form(Node n, int slot, int level) const;
    const LinearForm& rx_form(Node n, int slot, int level) const;
    LinearForm tx_level_or_zero(Node n, int slot, int level) const;
    LinearForm rx_level_or_zero(Node n, int slot, int level) const;

    // Slot protocol: begin_slot, set/commit forward, forward decodes,
    // set/commit backward, backward decodes.
    void begin_slot();
    void set_fwd(Node n, std::vector<LinearForm> levels);
    void commit_fwd();
    void set_bwd(Node n, std::vector<LinearForm> levels);
    void commit_bwd();
    void decode_fwd(Node tilde, long long index);
    void decode_bwd(Node plain, long long index);
    bool already_decoded(Node n, bool backward_fn, long long index) const;
    // Whether `value` lies in the node's current causal span.
    bool constructible(Node n, const LinearForm& value) const;

    Scheme finish(int demanded_fwd, int demanded_bwd);

  private:
    std::vector<Tap> realize(Node n, const LinearForm& value, const char* what);
    void commit_phase(bool backward);

    std::string id_;
    ChannelConfig cfg_;
    SourceLayout layout_;
    FeedbackMode mode_;
    int slot_ = 0;
    std::array<TapSolver, 4> solvers_;
    std::array<std::vector<std::vector<LinearForm>>, 4> tx_forms_; // [node][slot-1][level-1]
    std::array<std::vector<std::vector<LinearForm>>, 4> rx_forms_;
    std::array<std::vector<LinearForm>, 2> pending_; // staged fwd/bwd tx of current slot
    std::array<bool, 4> pending_set_{};
    std::vector<std::array<std::vector<std::vector<Tap>>, 4>> tx_taps_;
    std::vector<DecodeEvent> decodes_;
    std::vector<std::vector<bool>> decoded_; // [node] -> flags over 2*dim namespace
};

// Node-relabeling that exchanges the roles of direct and cross links in both
// directions: config (m,n)/(mt,nt) becomes (n,m)/(nt,mt), sources a<->b and
// at<->bt, nodes 1<->2 and 1t<->2t.
Scheme cross_swapped(const Scheme& s, const std::string& new_id);

// Direction-reversal: the backward channel of `s` becomes the forward
// channel of the result (with a one-slot shift preserving the intra-slot
// forward-then-backward order), sources a<->at and b<->bt, K and K-tilde
// swap. Only valid for in-band schemes.
Scheme mirrored(const Scheme& s, const std::string& new_id);

} // namespace twc
