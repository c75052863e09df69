#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "twc/capacity.hpp"
#include "twc/scheme.hpp"

namespace twc {

// Concrete values for every source bit of a scheme, flat in layout order.
struct SourceAssignment {
    std::vector<uint8_t> bits;

    static SourceAssignment zeros(const SourceLayout& l) {
        return {std::vector<uint8_t>(l.dim(), 0)};
    }
    static SourceAssignment basis(const SourceLayout& l, long long bit) {
        SourceAssignment s = zeros(l);
        s.bits[bit] = 1;
        return s;
    }
};

struct SlotRecord {
    BitVector x1, x2, y1t, y2t; // forward use
    BitVector x1t, x2t, y1, y2; // backward use
};

struct DecodeRecord {
    Node node;
    bool backward_fn = false;
    int index = 0;
    int value = 0;
    int slot = 0;
};

// Full per-slot record of one execution: transmissions, receptions,
// timestamped decode events, and the demanded function counts.
struct Transcript {
    ChannelConfig config;
    int slots = 0;
    int fwd_functions = 0;
    int bwd_functions = 0;
    SourceAssignment sources;
    std::vector<SlotRecord> slot_records;
    std::vector<DecodeRecord> decodes;
};

// Flips one bit of a node's reception as it is recorded; a test hook for
// causality probing.
struct Injection {
    Node node;
    int slot = 0;  // 1-based
    int level = 0; // 1-based
};

// Executes the scheme over the given sources: per slot, the forward use
// first, then the backward use, each encoder evaluated on strictly earlier
// history. Tap availability is re-checked at run time.
Transcript run(const Scheme& s, const SourceAssignment& sources,
               const std::optional<Injection>& inject = std::nullopt);

// Exact (K/N, K~/N) where K counts demanded forward function indices whose
// decode events appear at both forward receivers (K~ at both plain nodes).
RatePair achieved_rates(const Transcript& t);

struct BasisFailure {
    long long basis_bit = -1; // -1 for the all-zero run
    Node node;
    bool backward_fn = false;
    int index = 0;
    int expected = 0;
    int got = 0;
};

struct VerificationReport {
    bool passed = false;
    std::vector<BasisFailure> basis_failures;
    std::vector<std::string> coverage_failures;
    int linearity_failures = 0;
    int causality_failures = 0;
    RatePair achieved;
    bool region_member = false;
    int vacant_slots = 0;
    uint64_t seed = 0;

    std::string summary() const;
};

// Ground-truth verification of a scheme: every decode event checked against
// the function values recomputed from the drawn sources on all standard
// basis assignments, a seeded linearity identity over random pairs,
// causality bit-injection probes, exact achieved rates with region
// membership, and the vacant-slot count.
VerificationReport verify(const Scheme& s, uint64_t seed = 0x5eed);

// Line-oriented transcript dump: one slot per line followed by the decode
// events, bit strings printed top to bottom.
void dump_transcript(std::ostream& os, const Transcript& t);

} // namespace twc
