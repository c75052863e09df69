#include "twc/decompose.hpp"

#include <algorithm>

namespace twc {

std::string Decomposition::str() const {
    if (undecomposed)
        return "(" + std::to_string(m) + "," + std::to_string(n) + ") undecomposed";
    if (parts.empty()) return "empty";
    std::string out;
    for (auto& [part, k] : parts) {
        if (!out.empty()) out += "\xc3\x97"; // multiplication sign
        out += part.str();
        if (k != 1) out += "^" + std::to_string(k);
    }
    return out;
}

namespace {

Decomposition with_parts(int m, int n, std::vector<std::pair<Part, int>> parts) {
    Decomposition d;
    d.m = m;
    d.n = n;
    for (auto& [part, k] : parts)
        if (k > 0) d.parts.push_back({part, k});
    return d;
}

} // namespace

Decomposition decompose(int m, int n) {
    if (m < 0 || n < 0) throw DomainError("decompose: negative level count");
    if (m == 0 && n == 0) return with_parts(0, 0, {});
    Ratio a = Ratio::of(m, n);
    if (a.le(Rat(1, 2))) return with_parts(m, n, {{{0, 1}, n - 2 * m}, {{1, 2}, m}});
    if (a.le(Rat(2, 3))) return with_parts(m, n, {{{1, 2}, 2 * n - 3 * m}, {{2, 3}, 2 * m - n}});
    if (a.ge(Rat(2))) return with_parts(m, n, {{{1, 0}, m - 2 * n}, {{2, 1}, n}});
    if (a.ge(Rat(3, 2))) return with_parts(m, n, {{{2, 1}, 2 * m - 3 * n}, {{3, 2}, 2 * n - m}});
    Decomposition d;
    d.m = m;
    d.n = n;
    d.undecomposed = true;
    d.parts.push_back({{m, n}, 1});
    return d;
}

bool validate(const Decomposition& d, int m, int n) {
    if (d.undecomposed) {
        return d.parts.size() == 1 && d.parts[0].first == Part{m, n} && d.parts[0].second == 1;
    }
    static const Part elementary[] = {{0, 1}, {1, 2}, {2, 3}, {1, 0}, {2, 1}, {3, 2}};
    long long sm = 0, sn = 0;
    for (auto& [part, k] : d.parts) {
        if (k <= 0) return false;
        bool known = false;
        for (const Part& e : elementary) known = known || part == e;
        if (!known) return false;
        sm += (long long)part.me * k;
        sn += (long long)part.ne * k;
    }
    return sm == m && sn == n;
}

std::vector<std::vector<int>> decomposition_chains(int m, int n) {
    std::vector<std::vector<int>> chains;
    int q = std::max(m, n);
    int s = m < n ? n - m : m - n;
    if (s == 0) {
        for (int l = 1; l <= q; ++l) chains.push_back({l});
        return chains;
    }
    for (int r = 1; r <= s; ++r) {
        std::vector<int> chain;
        for (int l = r; l <= q; l += s) chain.push_back(l);
        chains.push_back(std::move(chain));
    }
    std::sort(chains.begin(), chains.end(), [](const auto& x, const auto& y) {
        return x.size() != y.size() ? x.size() < y.size() : x.front() < y.front();
    });
    return chains;
}

} // namespace twc
