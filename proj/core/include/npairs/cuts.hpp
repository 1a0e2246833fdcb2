#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "npairs/dominance.hpp"
#include "npairs/structure.hpp"

namespace npairs {

// True iff no j-path with j in `pair_indices` passes through two or more
// arcs of `arcs`. Decided by exhaustive j-path enumeration (exponential in
// general; fine at desk scale).
bool is_J_disjoint(const NetworkStructure& s, const Bitset& arcs,
                   std::span<const int> pair_indices);

// `arcs` plus the source arcs of every pair above `h` and of every pair
// below `h` whose bundle does not meet `arcs`.
Bitset source_augmented(const NetworkStructure& s, const Bitset& arcs, int h);

struct FamilyMembership {
    bool member = false;
    bool disjoint = false;
    struct PerPair {
        int pair = 0;
        bool untouched = false;  // bundle does not meet the set
        bool dominated = false;  // source arc in the closure of the augmented set
        DominanceCertificate certificate = DominanceCertificate::NotContained;
    };
    std::vector<PerPair> detail;
};

// Membership of `arcs` in the i-th downward-dominated family: the set must
// be [1:i]-disjoint, and each touched lower bundle's source arc must be
// structurally dominated by the source-augmented set.
FamilyMembership downward_dominated_family(const NetworkStructure& s, const Bitset& arcs, int i);

struct ViableCut {
    int pair = 0;
    std::vector<int> cut_vertices;  // sorted vertex indices, sigma included
    std::vector<int> outgoing;      // sorted arc indices: OUT(U) within the bundle
};

struct ViabilityReport {
    bool is_cut = false;  // preconditions: sigma in U, tau not in U, U within the bundle
    std::string not_cut_reason;
    bool viable = false;
    std::vector<int> failed_conditions;  // of 1..4, in order
    std::vector<int> outgoing;
};

// Evaluates the four viability conditions for the vertex set `U` (over the
// full vertex universe) as a candidate i-cut.
ViabilityReport check_viable_cut(const NetworkStructure& s, const Bitset& U, int pair);

struct OutgoingView {
    std::vector<int> outgoing;     // sorted arc indices
    int representative = -1;       // index into cuts (first cut with this outgoing set)
};

struct ViableCutList {
    std::vector<ViableCut> cuts;          // deduplicated by vertex set, canonical order
    std::vector<OutgoingView> outgoing_views;  // deduplicated by outgoing set
};

// Exhaustive enumeration over subsets of the i-bundle's vertices containing
// the source and excluding the sink. Throws when the bundle is too large to
// enumerate (more than 30 free vertices).
ViableCutList enumerate_viable_cuts(const NetworkStructure& s, int pair);

namespace detail {
// Condition-4 reachability with an explicit set of backward-traversable
// arcs; exposed for monotonicity tests.
bool mixed_reachability_covers(const NetworkStructure& s, const Bitset& U, int pair,
                               const Bitset& backward_arcs);
}  // namespace detail

}  // namespace npairs
