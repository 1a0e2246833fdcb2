#pragma once

#include <optional>
#include <string>
#include <vector>

#include "npairs/paths.hpp"
#include "npairs/structure.hpp"

namespace npairs {

// Per-pair demanded rates (stand-ins for the source entropy rates).
struct DemandVector {
    std::vector<Rat> values;  // size = pair count, all positive

    const Rat& of(int pair) const { return values.at(pair - 1); }
    int pairs() const { return static_cast<int>(values.size()); }
};

// Per-arc, per-commodity nonnegative rates.
struct MultiFlow {
    std::vector<std::vector<Rat>> per_pair;  // [pair-1][arc]

    static MultiFlow zeros(int pairs, int arcs);
    const Rat& at(int pair, int arc) const { return per_pair[pair - 1][arc]; }
    Rat& at(int pair, int arc) { return per_pair[pair - 1][arc]; }
    int pairs() const { return static_cast<int>(per_pair.size()); }
    Rat arc_total(int arc) const;
};

// Exact check of the capacity, supply-equals-demand and conservation
// constraints; returns human-readable violations (empty means valid).
std::vector<std::string> verify_multiflow(const NetworkStructure& s, const MultiFlow& f,
                                          const DemandVector& h,
                                          const std::vector<Capacity>* caps = nullptr);

// Residual capacities after subtracting commodities 1..upto_pair: finite
// arcs carry capacity minus prior flow, infinite arcs stay infinite.
std::vector<ExtRat> residuals_after(const NetworkStructure& s, const MultiFlow& f,
                                    int upto_pair, const std::vector<Capacity>* caps = nullptr);

struct MaxFlowResult {
    bool infinite = false;                // an all-infinite-residual path exists
    std::optional<Path> infinite_witness;
    std::vector<Rat> flow;                // per arc; zero outside the bundle
    Rat value;
    Bitset min_cut_vertices;              // residual-reachable set U
    std::vector<int> outgoing;            // OUT(U) within the bundle, sorted
};

// Acyclic maximal single-commodity flow on the pair's bundle under the
// residual bounds, plus the residual-reachability min-cut. Arcs with zero
// residual are allowed. Throws on negative residuals.
MaxFlowResult max_flow(const NetworkStructure& s, const std::vector<ExtRat>& residual,
                       int pair);

// The saturated/empty crossing-arc conditions of the returned cut; empty
// result means they hold exactly.
std::vector<std::string> verify_min_cut(const NetworkStructure& s,
                                        const std::vector<ExtRat>& residual, int pair,
                                        const MaxFlowResult& r);

struct PathFlow {
    Path path;
    Rat rate;
};
struct CycleFlow {
    std::vector<int> arcs;  // closed chain, smallest arc index first
    Rat rate;
};
struct PathDecomposition {
    int pair = 0;
    std::vector<PathFlow> paths;
    std::vector<CycleFlow> cycles;
};

// Splits a conserved single-commodity flow into source-to-sink path flows
// and cycle flows. Paths are peeled largest-bottleneck first with a
// lexicographic tie-break; cycles afterwards. Reconstruction is exact.
PathDecomposition decompose_flow(const NetworkStructure& s, const std::vector<Rat>& q,
                                 int pair);
std::vector<Rat> recompose(const NetworkStructure& s, const PathDecomposition& d);

struct McfResult {
    bool feasible = false;
    std::optional<MultiFlow> flow;
    // strict mode: the maximized uniform slack under the capacity rows
    bool strict_requested = false;
    std::optional<Rat> slack;
    bool slack_unbounded = false;  // no finite-capacity arcs at all
    bool strictly_feasible = false;
};

// Exact multicommodity feasibility via the node-arc LP; with `strict` the
// uniform slack is maximized and reported.
McfResult solve_mcf(const NetworkStructure& s, const DemandVector& h,
                    const std::vector<Capacity>* caps = nullptr, bool strict = false);

struct StepTrace {
    int pair = 0;
    int case_taken = 0;  // 1: all-infinite path, 2: bundle max-flow
    Rat max_flow_value;  // case 2
    Rat scale;           // demand / max-flow value
    Bitset min_cut_vertices;
    std::vector<int> outgoing;
};

struct SequentialResult {
    bool success = false;
    int failed_at = 0;  // pair index when !success
    std::optional<MultiFlow> flow;
    std::vector<StepTrace> steps;
};

// Greedy commodity-by-commodity construction over residual capacities, in
// the structure's pair order. Fails hard at the first pair whose bundle
// max-flow is short of the demand, reporting the residual min-cut.
SequentialResult sequential_construct(const NetworkStructure& s, const DemandVector& h,
                                      const std::vector<Capacity>* caps = nullptr);

}  // namespace npairs
