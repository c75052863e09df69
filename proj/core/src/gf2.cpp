#include "twc/gf2.hpp"

namespace twc {

namespace {

// Solves (I + G^d) x = r by forward substitution: level i of the product is
// x[i] + x[i-d], so x[i] = r[i] + x[i-d] with x vanishing above the top.
BitVector solve_banded(const BitVector& r, int d) {
    BitVector x(r.size());
    for (int i = 1; i <= r.size(); ++i) {
        bool v = r.get(i);
        if (i - d >= 1) v = v != x.get(i - d);
        x.set(i, v);
    }
    return x;
}

} // namespace

std::pair<BitVector, BitVector> reconstruct_inputs(const BitVector& y1, const BitVector& y2,
                                                   int m, int n) {
    if (m == n) throw DomainError("reconstruct_inputs: not invertible when m == n");
    if (m < 0 || n < 0) throw DomainError("reconstruct_inputs: negative level count");
    int q = std::max(m, n);
    if (y1.size() != q || y2.size() != q)
        throw DimensionError("reconstruct_inputs: outputs must have length max(m,n)");
    int d = m < n ? n - m : m - n;
    if (m < n) {
        // y1 = x1 + G^d x2,  y2 = G^d x1 + x2
        BitVector x1 = solve_banded(y1 ^ shift_down(y2, d), 2 * d);
        BitVector x2 = y2 ^ shift_down(x1, d);
        return {x1, x2};
    }
    // y1 = G^d x1 + x2,  y2 = x1 + G^d x2
    BitVector x1 = solve_banded(y2 ^ shift_down(y1, d), 2 * d);
    BitVector x2 = y1 ^ shift_down(x1, d);
    return {x1, x2};
}

} // namespace twc
