#pragma once

#include <optional>
#include <string>
#include <vector>

#include "npairs/cuts.hpp"
#include "npairs/structure.hpp"

namespace npairs {

// Certification levels, cheapest first. Each level is sufficient for the
// one after it; "full" is the defining check.
enum class CertLevel {
    UniqueExit,    // every viable cut exits through one arc, all-or-nothing paths
    Separation,    // disjointness plus all cross paths meet the outgoing set
    BlockedWalks,  // disjointness plus all indirect walks blocked
    Full,          // the defining downward-dominance conditions
};
const char* level_token(CertLevel level);  // "l43" | "l42" | "l41" | "full"
std::optional<CertLevel> level_from_token(const std::string& token);

struct CutWitness {
    int pair = 0;                    // the i whose cut failed
    std::vector<int> cut_vertices;   // representative U
    std::vector<int> outgoing;       // its outgoing bundle arcs
    std::string detail;              // which clause failed, human-readable
};

struct LevelOutcome {
    CertLevel level = CertLevel::Full;
    bool holds = false;
    std::optional<CutWitness> witness;
};

LevelOutcome check_unique_exit(const NetworkStructure& s);
LevelOutcome check_separation(const NetworkStructure& s);
LevelOutcome check_blocked_walks(const NetworkStructure& s);
LevelOutcome check_downward_dominance(const NetworkStructure& s);

struct AnalysisReport {
    bool downward_dominated = false;
    std::optional<CertLevel> certified_by;  // set when dominated
    std::vector<LevelOutcome> levels;       // levels actually evaluated
    std::optional<CutWitness> witness;      // set when not dominated
    std::vector<int> order;                 // 1-based pair order analyzed
};

// Runs the cascade cheapest-first and stops at the first level that
// certifies; falls through to the full check otherwise. `only`, when set,
// evaluates just that level.
AnalysisReport analyze(const NetworkStructure& s, std::optional<CertLevel> only = std::nullopt);

struct OrderingSearch {
    std::optional<std::vector<int>> ordering;  // first certified order, 1-based
    std::optional<AnalysisReport> report;      // report under that order
    bool searched = false;
    std::string error;  // set when the search was refused (too many pairs)
};

// Tries pair permutations in lexicographic order; refuses when the pair
// count exceeds `max_pairs`.
OrderingSearch find_dd_ordering(const NetworkStructure& s, int max_pairs = 8);

}  // namespace npairs
