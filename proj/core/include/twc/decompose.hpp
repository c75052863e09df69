#pragma once

#include <string>
#include <vector>

#include "twc/channel.hpp"

namespace twc {

// An elementary one-direction subchannel shape (cross, direct).
struct Part {
    int me = 0;
    int ne = 0;

    friend bool operator==(const Part&, const Part&) = default;
    std::string str() const { return "(" + std::to_string(me) + "," + std::to_string(ne) + ")"; }
};

// Multiset of parts summing to the original direction. A middle-band
// direction stays whole and is flagged undecomposed.
struct Decomposition {
    int m = 0;
    int n = 0;
    std::vector<std::pair<Part, int>> parts; // (shape, multiplicity), emission order
    bool undecomposed = false;

    int count(Part p) const {
        for (auto& [part, k] : parts)
            if (part == p) return k;
        return 0;
    }
    std::string str() const;
};

// Splits one direction into orthogonal elementary subchannels. The outer
// bands decompose exactly; alpha in (2/3, 3/2) is returned whole.
Decomposition decompose(int m, int n);

// True iff the part sums reproduce (m, n) and every part is elementary or
// the flagged original.
bool validate(const Decomposition& d, int m, int n);

// The level sets realizing a decomposition: the interference graph of a
// direction with shift s = |n - m| splits into s independent chains
// (residue classes of levels), and a chain of length c is exactly a
// (c-1, c) or (c, c-1) subchannel. Chains are returned grouped to match
// decompose() emission order.
std::vector<std::vector<int>> decomposition_chains(int m, int n);

} // namespace twc
