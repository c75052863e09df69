#include "symbolic.hpp"

#include <algorithm>
#include <map>

namespace twc {

std::string node_name(Node n) {
    switch (n) {
    case Node::N1: return "1";
    case Node::N2: return "2";
    case Node::N1t: return "1~";
    case Node::N2t: return "2~";
    }
    return "?";
}

namespace {

void canonicalize(std::vector<Tap>& taps) {
    std::sort(taps.begin(), taps.end());
    std::vector<Tap> out;
    for (size_t i = 0; i < taps.size();) {
        size_t j = i;
        while (j < taps.size() && taps[j] == taps[i]) ++j;
        if ((j - i) & 1) out.push_back(taps[i]);
        i = j;
    }
    taps = std::move(out);
}

std::vector<LinearForm> shift_forms(const std::vector<LinearForm>& x, int s, long long dim) {
    std::vector<LinearForm> out(x.size(), LinearForm(dim));
    for (size_t i = s; i < x.size(); ++i) out[i] = x[i - s];
    return out;
}

} // namespace

void TapSolver::add_atom(LinearForm form, Tap tap) {
    std::vector<Tap> taps{tap};
    for (const Row& row : rows_) {
        if (form.test(row.pivot)) {
            form ^= row.form;
            taps.insert(taps.end(), row.taps.begin(), row.taps.end());
        }
    }
    long long pivot = form.lowest_set();
    if (pivot < 0) return; // dependent atom, nothing new
    canonicalize(taps);
    rows_.push_back({std::move(form), std::move(taps), pivot});
}

std::optional<std::vector<Tap>> TapSolver::solve(LinearForm target) const {
    std::vector<Tap> taps;
    bool progress = true;
    while (!target.zero() && progress) {
        progress = false;
        for (const Row& row : rows_) {
            if (target.test(row.pivot)) {
                target ^= row.form;
                taps.insert(taps.end(), row.taps.begin(), row.taps.end());
                progress = true;
            }
        }
    }
    if (!target.zero()) return std::nullopt;
    canonicalize(taps);
    return taps;
}

SymbolicNet::SymbolicNet(std::string id, ChannelConfig cfg, SourceLayout layout,
                         FeedbackMode mode)
    : id_(std::move(id)), cfg_(cfg), layout_(layout), mode_(mode) {
    long long d = layout_.dim();
    auto seed = [&](Node n, long long from, long long count) {
        for (long long i = 0; i < count; ++i)
            solvers_[(int)n].add_atom(LinearForm::unit(d, from + i),
                                      Tap{Tap::Kind::Source, from + i, 0, 0, 0});
    };
    seed(Node::N1, 0, layout_.na);
    seed(Node::N2, layout_.na, layout_.nb);
    seed(Node::N1t, layout_.na + layout_.nb, layout_.nat);
    seed(Node::N2t, layout_.na + layout_.nb + layout_.nat, layout_.nbt);
    decoded_.assign(4, std::vector<bool>(2 * (layout_.dim() + 1), false));
}

LinearForm SymbolicNet::a(long long i) const {
    if (i < 1) return zero();
    if (i > layout_.na) throw DomainError(id_ + ": source a index " + std::to_string(i));
    return LinearForm::unit(layout_.dim(), layout_.a(i));
}
LinearForm SymbolicNet::b(long long i) const {
    if (i < 1) return zero();
    if (i > layout_.nb) throw DomainError(id_ + ": source b index " + std::to_string(i));
    return LinearForm::unit(layout_.dim(), layout_.b(i));
}
LinearForm SymbolicNet::at(long long i) const {
    if (i < 1) return zero();
    if (i > layout_.nat) throw DomainError(id_ + ": source at index " + std::to_string(i));
    return LinearForm::unit(layout_.dim(), layout_.at(i));
}
LinearForm SymbolicNet::bt(long long i) const {
    if (i < 1) return zero();
    if (i > layout_.nbt) throw DomainError(id_ + ": source bt index " + std::to_string(i));
    return LinearForm::unit(layout_.dim(), layout_.bt(i));
}

const LinearForm& SymbolicNet::tx_form(Node n, int slot, int level) const {
    return tx_forms_[(int)n].at(slot - 1).at(level - 1);
}
const LinearForm& SymbolicNet::rx_form(Node n, int slot, int level) const {
    return rx_forms_[(int)n].at(slot - 1).at(level - 1);
}
LinearForm SymbolicNet::tx_level_or_zero(Node n, int slot, int level) const {
    if (slot < 1 || slot > (int)tx_forms_[(int)n].size()) return zero();
    const auto& v = tx_forms_[(int)n][slot - 1];
    if (level < 1 || level > (int)v.size()) return zero();
    return v[level - 1];
}
LinearForm SymbolicNet::rx_level_or_zero(Node n, int slot, int level) const {
    if (slot < 1 || slot > (int)rx_forms_[(int)n].size()) return zero();
    const auto& v = rx_forms_[(int)n][slot - 1];
    if (level < 1 || level > (int)v.size()) return zero();
    return v[level - 1];
}

void SymbolicNet::begin_slot() {
    ++slot_;
    int q = cfg_.q(), qt = cfg_.qt();
    for (int n = 0; n < 4; ++n) {
        bool fwd_sender = n < 2;
        tx_forms_[n].push_back(
            std::vector<LinearForm>(fwd_sender ? q : qt, LinearForm(layout_.dim())));
        rx_forms_[n].push_back(
            std::vector<LinearForm>(fwd_sender ? qt : q, LinearForm(layout_.dim())));
    }
    tx_taps_.push_back({});
    for (int n = 0; n < 4; ++n) {
        bool fwd_sender = n < 2;
        tx_taps_.back()[n].assign(fwd_sender ? q : qt, {});
    }
    pending_set_.fill(false);
    // Genie deliveries: receptions of the previous slot become visible to the
    // same-direction transmitters one slot later.
    if (mode_ == FeedbackMode::Genie && slot_ >= 2) {
        int prev = slot_ - 2; // index into per-slot arrays
        for (int stream = 0; stream < 2; ++stream) {
            const auto& yf = rx_forms_[2 + stream][prev]; // tilde receivers, forward channel
            for (int lvl = 1; lvl <= (int)yf.size(); ++lvl) {
                Tap t{Tap::Kind::Genie, 0, slot_ - 1, lvl, stream};
                solvers_[0].add_atom(yf[lvl - 1], t);
                solvers_[1].add_atom(yf[lvl - 1], t);
            }
            const auto& yb = rx_forms_[stream][prev]; // plain receivers, backward channel
            for (int lvl = 1; lvl <= (int)yb.size(); ++lvl) {
                Tap t{Tap::Kind::Genie, 0, slot_ - 1, lvl, stream + 2};
                solvers_[2].add_atom(yb[lvl - 1], t);
                solvers_[3].add_atom(yb[lvl - 1], t);
            }
        }
    }
}

void SymbolicNet::set_fwd(Node n, std::vector<LinearForm> levels) {
    if (tilde_side(n)) throw DomainError(id_ + ": set_fwd on tilde node");
    if ((int)levels.size() != cfg_.q()) throw DimensionError(id_ + ": set_fwd level count");
    tx_forms_[(int)n][slot_ - 1] = std::move(levels);
    pending_set_[(int)n] = true;
}

void SymbolicNet::set_bwd(Node n, std::vector<LinearForm> levels) {
    if (!tilde_side(n)) throw DomainError(id_ + ": set_bwd on plain node");
    if ((int)levels.size() != cfg_.qt()) throw DimensionError(id_ + ": set_bwd level count");
    tx_forms_[(int)n][slot_ - 1] = std::move(levels);
    pending_set_[(int)n] = true;
}

std::vector<Tap> SymbolicNet::realize(Node n, const LinearForm& value, const char* what) {
    auto taps = solvers_[(int)n].solve(value);
    if (!taps)
        throw DomainError(id_ + ": node " + node_name(n) + " cannot construct " + what +
                          " at slot " + std::to_string(slot_));
    return *taps;
}

void SymbolicNet::commit_phase(bool backward) {
    int lo = backward ? 2 : 0;
    int q = backward ? cfg_.qt() : cfg_.q();
    for (int n = lo; n < lo + 2; ++n) {
        auto& forms = tx_forms_[n][slot_ - 1];
        for (int lvl = 1; lvl <= q; ++lvl)
            tx_taps_[slot_ - 1][n][lvl - 1] = realize((Node)n, forms[lvl - 1], "transmission");
    }
    int m = backward ? cfg_.mt : cfg_.m;
    int nn = backward ? cfg_.nt : cfg_.n;
    const auto& x1 = tx_forms_[lo][slot_ - 1];
    const auto& x2 = tx_forms_[lo + 1][slot_ - 1];
    long long d = layout_.dim();
    auto mix = [&](const std::vector<LinearForm>& u, int su, const std::vector<LinearForm>& v,
                   int sv) {
        auto r = shift_forms(u, su, d);
        auto w = shift_forms(v, sv, d);
        for (size_t i = 0; i < r.size(); ++i) r[i] ^= w[i];
        return r;
    };
    // receiver 1 hears sender 1 on direct links, sender 2 on cross links
    auto y1 = mix(x1, q - nn, x2, q - m);
    auto y2 = mix(x1, q - m, x2, q - nn);
    int r1 = backward ? 0 : 2, r2 = backward ? 1 : 3;
    rx_forms_[r1][slot_ - 1] = y1;
    rx_forms_[r2][slot_ - 1] = y2;
    for (int lvl = 1; lvl <= q; ++lvl) {
        solvers_[r1].add_atom(y1[lvl - 1], Tap{Tap::Kind::Rx, 0, slot_, lvl, 0});
        solvers_[r2].add_atom(y2[lvl - 1], Tap{Tap::Kind::Rx, 0, slot_, lvl, 0});
    }
}

void SymbolicNet::commit_fwd() { commit_phase(false); }
void SymbolicNet::commit_bwd() { commit_phase(true); }

bool SymbolicNet::already_decoded(Node n, bool backward_fn, long long index) const {
    return decoded_[(int)n][2 * index + (backward_fn ? 1 : 0)];
}

bool SymbolicNet::constructible(Node n, const LinearForm& value) const {
    return solvers_[(int)n].solve(value).has_value();
}

void SymbolicNet::decode_fwd(Node tilde, long long index) {
    if (!tilde_side(tilde)) throw DomainError(id_ + ": forward functions decode at tilde nodes");
    if (index < 1 || index > std::min(layout_.na, layout_.nb))
        throw DomainError(id_ + ": decode_fwd index " + std::to_string(index));
    if (already_decoded(tilde, false, index)) return;
    auto taps = realize(tilde, F(index), ("forward function F_" + std::to_string(index)).c_str());
    decodes_.push_back({tilde, false, (int)index, slot_, std::move(taps)});
    decoded_[(int)tilde][2 * index] = true;
}

void SymbolicNet::decode_bwd(Node plain, long long index) {
    if (tilde_side(plain)) throw DomainError(id_ + ": backward functions decode at plain nodes");
    if (index < 1 || index > std::min(layout_.nat, layout_.nbt))
        throw DomainError(id_ + ": decode_bwd index " + std::to_string(index));
    if (already_decoded(plain, true, index)) return;
    auto taps = realize(plain, Ft(index), ("backward function Ft_" + std::to_string(index)).c_str());
    decodes_.push_back({plain, true, (int)index, slot_, std::move(taps)});
    decoded_[(int)plain][2 * index + 1] = true;
}

Scheme SymbolicNet::finish(int demanded_fwd, int demanded_bwd) {
    Scheme s;
    s.id = id_;
    s.config = cfg_;
    s.sources = layout_;
    s.slots = slot_;
    s.fwd_functions = demanded_fwd;
    s.bwd_functions = demanded_bwd;
    s.feedback = mode_;
    s.tx.resize(slot_);
    s.tx_form.resize(slot_);
    for (int t = 0; t < slot_; ++t) {
        for (int n = 0; n < 4; ++n) {
            s.tx[t][n] = std::move(tx_taps_[t][n]);
            s.tx_form[t][n] = std::move(tx_forms_[n][t]);
        }
    }
    std::stable_sort(decodes_.begin(), decodes_.end(),
                     [](const DecodeEvent& x, const DecodeEvent& y) { return x.slot < y.slot; });
    s.decodes = std::move(decodes_);
    return s;
}

int Scheme::vacant_forward_slots() const {
    if (config.q() == 0) return 0;
    int count = 0;
    for (int t = 0; t < slots; ++t) {
        bool silent = true;
        for (int n = 0; n < 2 && silent; ++n)
            for (const LinearForm& f : tx_form[t][n])
                if (!f.zero()) {
                    silent = false;
                    break;
                }
        if (silent) ++count;
    }
    return count;
}

namespace {

// Applies a node permutation and a source-bit permutation to a scheme.
Scheme relabeled(const Scheme& s, const std::string& new_id, ChannelConfig new_cfg,
                 SourceLayout new_layout, const std::array<int, 4>& node_map,
                 const std::vector<long long>& bit_map, const std::array<int, 4>& genie_map) {
    Scheme out;
    out.id = new_id;
    out.config = new_cfg;
    out.sources = new_layout;
    out.slots = s.slots;
    out.fwd_functions = s.fwd_functions;
    out.bwd_functions = s.bwd_functions;
    out.feedback = s.feedback;
    auto map_form = [&](const LinearForm& f) {
        LinearForm g(new_layout.dim());
        for (long long bit = 0; bit < f.dim(); ++bit)
            if (f.test(bit)) g.flip(bit_map[bit]);
        return g;
    };
    auto map_taps = [&](std::vector<Tap> taps) {
        for (Tap& t : taps) {
            if (t.kind == Tap::Kind::Source) t.bit = bit_map[t.bit];
            if (t.kind == Tap::Kind::Genie) t.stream = genie_map[t.stream];
        }
        canonicalize(taps);
        return taps;
    };
    out.tx.resize(s.slots);
    out.tx_form.resize(s.slots);
    for (int t = 0; t < s.slots; ++t) {
        for (int n = 0; n < 4; ++n) {
            int nn = node_map[n];
            out.tx[t][nn].resize(s.tx[t][n].size());
            out.tx_form[t][nn].resize(s.tx_form[t][n].size(), LinearForm(new_layout.dim()));
            for (size_t lvl = 0; lvl < s.tx[t][n].size(); ++lvl) {
                out.tx[t][nn][lvl] = map_taps(s.tx[t][n][lvl]);
                out.tx_form[t][nn][lvl] = map_form(s.tx_form[t][n][lvl]);
            }
        }
    }
    out.decodes = s.decodes;
    for (DecodeEvent& d : out.decodes) {
        d.node = (Node)node_map[(int)d.node];
        d.taps = map_taps(std::move(d.taps));
    }
    return out;
}

} // namespace

Scheme cross_swapped(const Scheme& s, const std::string& new_id) {
    const SourceLayout& l = s.sources;
    SourceLayout nl{l.na, l.nb, l.nbt, l.nat};
    std::vector<long long> bit_map(l.dim());
    for (long long i = 1; i <= l.na; ++i) bit_map[l.a(i)] = nl.a(i);
    for (long long i = 1; i <= l.nb; ++i) bit_map[l.b(i)] = nl.b(i);
    for (long long i = 1; i <= l.nat; ++i) bit_map[l.at(i)] = nl.bt(i);
    for (long long i = 1; i <= l.nbt; ++i) bit_map[l.bt(i)] = nl.at(i);
    ChannelConfig nc{s.config.n, s.config.m, s.config.nt, s.config.mt};
    // Tilde nodes trade places; plain nodes and the backward genie streams
    // stay, the forward genie streams swap.
    return relabeled(s, new_id, nc, nl, {0, 1, 3, 2}, bit_map, {1, 0, 2, 3});
}

Scheme mirrored(const Scheme& s, const std::string& new_id) {
    if (s.feedback == FeedbackMode::Genie)
        throw UnsupportedError("mirrored: genie schemes are built directly per direction");
    const SourceLayout& l = s.sources;
    SourceLayout nl{l.nat, l.nbt, l.na, l.nb};
    std::vector<long long> bit_map(l.dim());
    for (long long i = 1; i <= l.na; ++i) bit_map[l.a(i)] = nl.at(i);
    for (long long i = 1; i <= l.nb; ++i) bit_map[l.b(i)] = nl.bt(i);
    for (long long i = 1; i <= l.nat; ++i) bit_map[l.at(i)] = nl.a(i);
    for (long long i = 1; i <= l.nbt; ++i) bit_map[l.bt(i)] = nl.b(i);
    ChannelConfig nc{s.config.mt, s.config.nt, s.config.m, s.config.n};

    // Old backward phases become forward phases one slot later; check if the
    // last slot's backward phase carries anything that must survive.
    bool tail = false;
    for (int n = 2; n < 4; ++n)
        for (const LinearForm& f : s.tx_form[s.slots - 1][n])
            if (!f.zero()) tail = true;
    for (const DecodeEvent& d : s.decodes)
        if (!tilde_side(d.node) && d.slot == s.slots) tail = true;
    int new_slots = s.slots + (tail ? 1 : 0);

    Scheme out;
    out.id = new_id;
    out.config = nc;
    out.sources = nl;
    out.slots = new_slots;
    out.fwd_functions = s.bwd_functions;
    out.bwd_functions = s.fwd_functions;
    out.feedback = s.feedback;
    auto map_form = [&](const LinearForm& f) {
        LinearForm g(nl.dim());
        for (long long bit = 0; bit < f.dim(); ++bit)
            if (f.test(bit)) g.flip(bit_map[bit]);
        return g;
    };
    out.tx.resize(new_slots);
    out.tx_form.resize(new_slots);
    for (int t = 0; t < new_slots; ++t) {
        for (int n = 0; n < 2; ++n) {
            out.tx[t][n].assign(nc.q(), {});
            out.tx_form[t][n].assign(nc.q(), LinearForm(nl.dim()));
            out.tx[t][n + 2].assign(nc.qt(), {});
            out.tx_form[t][n + 2].assign(nc.qt(), LinearForm(nl.dim()));
        }
    }
    // An old plain node becomes a tilde node whose receptions (old backward,
    // slot t) now arrive on the new forward channel one slot later; an old
    // tilde node's receptions keep their slot numbers.
    auto map_taps = [&](std::vector<Tap> taps, bool shift_rx) {
        for (Tap& t : taps) {
            if (t.kind == Tap::Kind::Source) t.bit = bit_map[t.bit];
            if (t.kind == Tap::Kind::Rx && shift_rx) t.slot += 1;
        }
        canonicalize(taps);
        return taps;
    };
    for (int t = 1; t <= s.slots; ++t) {
        for (int n = 0; n < 2; ++n) {
            // old backward tx at t -> new forward tx at t+1 (old tilde node)
            if (t + 1 <= new_slots)
                for (size_t lvl = 0; lvl < s.tx[t - 1][n + 2].size(); ++lvl) {
                    out.tx[t][n][lvl] = map_taps(s.tx[t - 1][n + 2][lvl], false);
                    out.tx_form[t][n][lvl] = map_form(s.tx_form[t - 1][n + 2][lvl]);
                }
            // old forward tx at t -> new backward tx at t (old plain node)
            for (size_t lvl = 0; lvl < s.tx[t - 1][n].size(); ++lvl) {
                out.tx[t - 1][n + 2][lvl] = map_taps(s.tx[t - 1][n][lvl], true);
                out.tx_form[t - 1][n + 2][lvl] = map_form(s.tx_form[t - 1][n][lvl]);
            }
        }
    }
    for (const DecodeEvent& d : s.decodes) {
        DecodeEvent nd;
        nd.backward_fn = !d.backward_fn;
        nd.index = d.index;
        if (tilde_side(d.node)) {
            // old forward decode at a tilde node -> new backward decode
            nd.node = d.node == Node::N1t ? Node::N1 : Node::N2;
            nd.slot = d.slot;
            nd.taps = map_taps(d.taps, false);
        } else {
            nd.node = d.node == Node::N1 ? Node::N1t : Node::N2t;
            nd.slot = d.slot + 1;
            nd.taps = map_taps(d.taps, true);
        }
        out.decodes.push_back(std::move(nd));
    }
    std::stable_sort(out.decodes.begin(), out.decodes.end(),
                     [](const DecodeEvent& x, const DecodeEvent& y) { return x.slot < y.slot; });
    return out;
}

} // namespace twc
