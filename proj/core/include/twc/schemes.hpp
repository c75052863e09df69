#pragma once

#include "twc/decompose.hpp"
#include "twc/scheme.hpp"

namespace twc {

// Non-feedback scheme for one elementary forward channel (or an alpha = 1
// channel), run for `slots` uses at exactly its non-feedback capacity per
// slot. Unsupported shapes throw.
Scheme non_feedback_elementary(Part kind, int slots = 3);

// Genie-aided two-stage scheme on a (1,2) forward channel: four functions in
// three slots.
Scheme perfect_feedback_12();

// Genie-aided scheme on a (1,0) backward channel: two functions in three
// slots, with one extra relay slot relative to the (2,1) pattern.
Scheme perfect_feedback_10();

// In-band scheme for (1,2)/(2,1): 2L-slot superposition stage plus L-slot
// retrospective refinement stage, rates (4/3, (4L-4)/(3L)).
Scheme two_way_12_21(int L);

// In-band nested-retrospective scheme for (1,2)/(1,0) over M layers of
// 3L+1 slots; completed prefixes follow the vacant-slot accounting.
Scheme two_way_12_10(int L, int M);

enum class Orientation { ForwardHeavy, BackwardHeavy };

// In-band scheme for the (0,1)/(1,0) pair: rates (2L/(3L+1), L/(3L+1)),
// or the swapped pair under the backward-heavy orientation.
Scheme lemma4_i(int L, Orientation orient = Orientation::ForwardHeavy);

enum class BlockKind { iii, iv, v };

// Composite block schemes on stacked elementary pairs:
//   iii: (2,3)^i with (1,0)^j, 3i >= 2j, asymptotic rates (2i, 2j/3)
//   iv:  (1,2)^i with (2,1)^j, 2i >= j and 2j >= i, rates (4i/3, 4j/3)
//   v:   (2,3)^i with (2,1)^j, 3i >= j, asymptotic rates (2i, 4j/3)
// `reps` repeats the riding schedule; excess backward copies phase in one
// period late, so finite-rep rates approach the asymptotic pair from below.
// Kind iv is executable for i == j only (parallel (1,2)/(2,1) blocks).
Scheme lemma4_block(BlockKind kind, int i, int j, int reps = 1, int L = 2);

// Builds a scheme from its stable catalog identifier, e.g. "ex1:L=2",
// "nf:2,3", "l4:v:i=1,j=1". "compose:<plan-file>" is handled by the CLI.
Scheme make_scheme(const std::string& id);

// The identifiers exercised by simulate --all / verify-all.
std::vector<std::string> default_catalog();

// Embedding support for composition: a unit scheme placed on disjoint level
// sets of a larger configuration, repeated to fill the composite horizon
// with fresh sources per repetition.
struct EmbeddedBlock {
    Scheme scheme;
    std::vector<int> fwd_levels; // block forward level l -> composite level fwd_levels[l-1]
    std::vector<int> bwd_levels;
};

Scheme embed_blocks(const std::string& id, const ChannelConfig& composite,
                    std::vector<EmbeddedBlock> blocks);

} // namespace twc
