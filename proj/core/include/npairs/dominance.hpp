#pragma once

#include <optional>
#include <string>
#include <vector>

#include "npairs/paths.hpp"
#include "npairs/structure.hpp"

namespace npairs {

// Indirect i-walk: alternating forward/reverse path legs from sigma_i to
// tau_i. Legs at even positions (0-based) run forward in the walk; legs at
// odd positions are reverse-oriented but stored source-to-junction. Leg
// 2k and leg 2k+1 share their end vertex (the junction); leg 2k+1 and leg
// 2k+2 share their start vertex, which is a source.
struct IndirectWalk {
    int pair = 0;  // 1-based
    std::vector<Path> legs;
    std::vector<int> junctions;  // junction vertex after each forward leg but the last

    // Checks the walk shape, leg simplicity, junction reachability of the
    // sink (full arc set) and, when given, that no leg arc lies in `bypass`.
    bool validate(const NetworkStructure& s, const Bitset* bypass = nullptr,
                  std::string* why = nullptr) const;
    Bitset arc_set(const NetworkStructure& s) const;
};

// True iff every path from a source vertex to tail(arc) meets `blockers`;
// vacuously true when no source reaches the tail at all.
bool is_downstream(const NetworkStructure& s, int arc, const Bitset& blockers);

// Witness search: an indirect i-walk none of whose arcs lie in `blockers`,
// or nullopt when every such walk is blocked.
std::optional<IndirectWalk> find_bypassing_ii_walk(const NetworkStructure& s, int pair,
                                                   const Bitset& blockers);
// Decision-only variant (no witness reconstruction).
bool all_ii_walks_blocked(const NetworkStructure& s, int pair, const Bitset& blockers);

// Structural-dominance closure of `base`: the least superset closed under
// the source/sink pairing rule, the downstream rule, and the blocked-walk
// rule. `scan_order`, when given, only changes the order candidate arcs are
// examined in; the result is order-independent.
Bitset sdom(const NetworkStructure& s, const Bitset& base,
            const std::vector<int>* scan_order = nullptr);

enum class DominanceCertificate {
    BaseMember,     // target already in base
    Downstream,     // quick test: target downstream from base
    WalksBlocked,   // quick test: all walks of the target's pair blocked by base
    Closure,        // full closure membership
    NotContained,
};

struct ContainmentResult {
    bool contained = false;
    DominanceCertificate certificate = DominanceCertificate::NotContained;
};

// Membership of `target_arc` in sdom(base), fast certificates first.
ContainmentResult sdom_contains(const NetworkStructure& s, const Bitset& base, int target_arc);

const char* certificate_name(DominanceCertificate c);

}  // namespace npairs
