#include "twc/capacity.hpp"

#include <algorithm>

namespace twc {

Rat c_no(int m, int n) {
    if (m < 0 || n < 0) throw DomainError("c_no: negative level count");
    if (m == 0 && n == 0) return Rat(0);
    if (m < n) return std::min(Rat(m), Rat(2 * n, 3));
    if (m > n) return std::min(Rat(n), Rat(2 * m, 3));
    return Rat(n);
}

Rat c_pf(int m, int n) {
    if (m < 0 || n < 0) throw DomainError("c_pf: negative level count");
    if (m == 0 && n == 0) return Rat(0);
    if (m < n) return Rat(2 * n, 3);
    if (m > n) return Rat(2 * m, 3);
    return Rat(n);
}

CapacityRegion two_way_region(const ChannelConfig& cfg) {
    CapacityRegion r;
    r.inequalities.push_back({Rat(1), Rat(0), c_pf(cfg.m, cfg.n)});
    r.inequalities.push_back({Rat(0), Rat(1), c_pf(cfg.mt, cfg.nt)});
    r.inequalities.push_back({Rat(1), Rat(1), Rat(cfg.m + cfg.mt)});
    r.inequalities.push_back({Rat(1), Rat(1), Rat(cfg.n + cfg.nt)});
    r.inequalities.push_back({Rat(-1), Rat(0), Rat(0)});
    r.inequalities.push_back({Rat(0), Rat(-1), Rat(0)});
    return r;
}

CapacityRegion baseline_region(const ChannelConfig& cfg, BaselineKind which) {
    auto cap = which == BaselineKind::NoFeedback ? c_no : c_pf;
    CapacityRegion r;
    r.inequalities.push_back({Rat(1), Rat(0), cap(cfg.m, cfg.n)});
    r.inequalities.push_back({Rat(0), Rat(1), cap(cfg.mt, cfg.nt)});
    r.inequalities.push_back({Rat(-1), Rat(0), Rat(0)});
    r.inequalities.push_back({Rat(0), Rat(-1), Rat(0)});
    return r;
}

bool contains(const CapacityRegion& region, const RatePair& p) {
    for (const Ineq& q : region.inequalities)
        if (!q.satisfied_by(p)) return false;
    return true;
}

std::vector<RatePair> corner_points(const CapacityRegion& region) {
    std::vector<RatePair> corners;
    const auto& qs = region.inequalities;
    for (size_t i = 0; i < qs.size(); ++i) {
        for (size_t j = i + 1; j < qs.size(); ++j) {
            Rat det = qs[i].a * qs[j].b - qs[j].a * qs[i].b;
            if (det == Rat(0)) continue;
            RatePair p{(qs[i].c * qs[j].b - qs[j].c * qs[i].b) / det,
                       (qs[i].a * qs[j].c - qs[j].a * qs[i].c) / det};
            if (contains(region, p)) corners.push_back(p);
        }
    }
    auto less = [](const RatePair& x, const RatePair& y) {
        return x.fwd != y.fwd ? x.fwd < y.fwd : x.bwd < y.bwd;
    };
    std::sort(corners.begin(), corners.end(), less);
    corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
    return corners;
}

std::string gain_class_name(GainClass g) {
    switch (g) {
    case GainClass::NoFeedbackGain: return "NO_FEEDBACK_GAIN";
    case GainClass::FeedbackGainNoInteractionGain: return "FEEDBACK_GAIN_NO_INTERACTION_GAIN";
    case GainClass::NetInteractionGain: return "NET_INTERACTION_GAIN";
    case GainClass::PerfectFeedbackAchievable: return "PERFECT_FEEDBACK_ACHIEVABLE";
    }
    return "?";
}

GainClass interaction_gain(const ChannelConfig& cfg) {
    Rat cno = c_no(cfg.m, cfg.n), cno_t = c_no(cfg.mt, cfg.nt);
    Rat cpf = c_pf(cfg.m, cfg.n), cpf_t = c_pf(cfg.mt, cfg.nt);
    CapacityRegion region = two_way_region(cfg);

    bool any_feedback_gain = cpf > cno || cpf_t > cno_t;
    if (contains(region, {cpf, cpf_t}) && any_feedback_gain)
        return GainClass::PerfectFeedbackAchievable;

    // The region is down-closed, the baseline point always lies inside it,
    // and a strict enlargement needs both slack in some sum cut and a
    // per-direction feedback gain to spend it on.
    Rat sum_cap = std::min(Rat(cfg.m + cfg.mt), Rat(cfg.n + cfg.nt));
    if (cno + cno_t < sum_cap && any_feedback_gain) return GainClass::NetInteractionGain;

    if (any_feedback_gain) return GainClass::FeedbackGainNoInteractionGain;
    return GainClass::NoFeedbackGain;
}

bool corollary1_holds(const ChannelConfig& cfg) {
    Rat cno = c_no(cfg.m, cfg.n), cno_t = c_no(cfg.mt, cfg.nt);
    Rat cpf = c_pf(cfg.m, cfg.n), cpf_t = c_pf(cfg.mt, cfg.nt);
    Ratio a = cfg.alpha(), at = cfg.alpha_t();
    if (a.lt(Rat(2, 3)) && at.gt(Rat(3, 2)))
        return cpf - cno <= Rat(cfg.mt) - cpf_t && cpf_t - cno_t <= Rat(cfg.n) - cpf;
    if (a.gt(Rat(3, 2)) && at.lt(Rat(2, 3)))
        return cpf - cno <= Rat(cfg.nt) - cpf_t && cpf_t - cno_t <= Rat(cfg.m) - cpf;
    return false;
}

} // namespace twc
