#include <doctest.h>

#include <algorithm>

#include "npairs/cuts.hpp"
#include "npairs/flows.hpp"
#include "npairs/routability.hpp"
#include "support/test_support.hpp"

using namespace npairs;
using namespace npairs::testing;

namespace {

std::vector<ExtRat> unit_residuals(const NetworkStructure& s) {
    std::vector<ExtRat> r(s.arc_count());
    for (int a = 0; a < s.arc_count(); ++a)
        r[a] = s.capacity(a).is_infinite() ? ExtRat::inf() : ExtRat::finite(Rat(1));
    return r;
}

DemandVector demands(std::initializer_list<Rat> hs) { return DemandVector{hs}; }

}  // namespace

TEST_CASE("max flow over the butterfly's second bundle") {
    NetworkStructure s = butterfly();
    auto r = unit_residuals(s);
    MaxFlowResult mf = max_flow(s, r, 2);
    CHECK_FALSE(mf.infinite);
    CHECK(mf.value == Rat(1));
    CHECK(verify_min_cut(s, r, 2, mf).empty());
    CHECK(mf.min_cut_vertices.test(s.vertex_index("sigma2")));
    CHECK_FALSE(mf.min_cut_vertices.test(s.vertex_index("tau2")));
}

TEST_CASE("zero residuals give a zero flow") {
    NetworkStructure s = butterfly();
    std::vector<ExtRat> r(s.arc_count(), ExtRat::finite(Rat(0)));
    for (int a = 0; a < s.arc_count(); ++a)
        if (s.capacity(a).is_infinite()) r[a] = ExtRat::inf();
    MaxFlowResult mf = max_flow(s, r, 2);
    CHECK(mf.value == Rat(0));
    for (int a = 0; a < s.arc_count(); ++a) CHECK(mf.flow[a] == Rat(0));
    CHECK(verify_min_cut(s, r, 2, mf).empty());
}

TEST_CASE("two disjoint routes add up") {
    NetworkStructure s = fig5();
    auto r = unit_residuals(s);
    MaxFlowResult mf = max_flow(s, r, 2);
    CHECK(mf.value == Rat(2));
    CHECK(verify_min_cut(s, r, 2, mf).empty());
}

TEST_CASE("an all-infinite route is a distinguished outcome") {
    NetworkStructure s = from_text(
        "arc out1 sigma1 x inf\n"
        "arc mid x y inf\n"
        "arc in1 y tau1 inf\n"
        "pair sigma1 tau1 1\n");
    auto r = unit_residuals(s);
    MaxFlowResult mf = max_flow(s, r, 1);
    CHECK(mf.infinite);
    REQUIRE(mf.infinite_witness.has_value());
    CHECK(path_is_valid(s, *mf.infinite_witness));
}

TEST_CASE("negative residuals are rejected") {
    NetworkStructure s = butterfly();
    auto r = unit_residuals(s);
    r[s.arc_index("alpha")] = ExtRat::finite(Rat(-1));
    CHECK_THROWS(max_flow(s, r, 2));
}

TEST_CASE("decomposition splits paths and cycles exactly") {
    NetworkStructure s = fig5();
    std::vector<Rat> q(s.arc_count(), Rat(0));
    q[s.arc_index("out2")] = Rat(2);
    q[s.arc_index("alpha")] = Rat(1);
    q[s.arc_index("beta")] = Rat(1);
    q[s.arc_index("gamma")] = Rat(1);
    q[s.arc_index("in2")] = Rat(2);
    PathDecomposition d = decompose_flow(s, q, 2);
    REQUIRE(d.paths.size() == 2);
    CHECK(d.cycles.empty());
    CHECK(recompose(s, d) == q);

    // Zero flow decomposes to nothing.
    PathDecomposition z = decompose_flow(s, std::vector<Rat>(s.arc_count(), Rat(0)), 2);
    CHECK(z.paths.empty());
    CHECK(z.cycles.empty());
}

TEST_CASE("a pure circulation peels into one cycle") {
    NetworkStructure s = fig6();
    std::vector<Rat> q(s.arc_count(), Rat(0));
    q[s.arc_index("beta")] = Rat(1);
    q[s.arc_index("rho")] = Rat(1);
    PathDecomposition d = decompose_flow(s, q, 1);
    CHECK(d.paths.empty());
    REQUIRE(d.cycles.size() == 1);
    CHECK(d.cycles[0].rate == Rat(1));
    CHECK(names_of(s, indices_to_bitset(s.arc_count(), d.cycles[0].arcs)) ==
          std::vector<std::string>{"beta", "rho"});
    CHECK(recompose(s, d) == q);
}

TEST_CASE("conservation violations are rejected") {
    NetworkStructure s = fig5();
    std::vector<Rat> q(s.arc_count(), Rat(0));
    q[s.arc_index("alpha")] = Rat(1);
    CHECK_THROWS(decompose_flow(s, q, 2));
}

TEST_CASE("largest bottleneck peels first") {
    NetworkStructure s = fig5();
    std::vector<Rat> q(s.arc_count(), Rat(0));
    q[s.arc_index("out2")] = Rat(5);
    q[s.arc_index("alpha")] = Rat(2);
    q[s.arc_index("beta")] = Rat(2);
    q[s.arc_index("gamma")] = Rat(3);
    q[s.arc_index("in2")] = Rat(5);
    PathDecomposition d = decompose_flow(s, q, 2);
    REQUIRE(d.paths.size() == 2);
    CHECK(d.paths[0].rate == Rat(3));
    CHECK(path_contains_arc(d.paths[0].path, s.arc_index("gamma")));
    CHECK(d.paths[1].rate == Rat(2));
    CHECK(recompose(s, d) == q);
}

TEST_CASE("the butterfly at unit demands is infeasible, at halves feasible") {
    NetworkStructure s = butterfly();
    McfResult full = solve_mcf(s, demands({Rat(1), Rat(1)}));
    CHECK_FALSE(full.feasible);

    McfResult half = solve_mcf(s, demands({Rat(1, 2), Rat(1, 2)}));
    REQUIRE(half.feasible);
    CHECK(half.flow->at(1, s.arc_index("alpha")) == Rat(1, 2));
    CHECK(half.flow->at(2, s.arc_index("alpha")) == Rat(1, 2));
    CHECK(verify_multiflow(s, *half.flow, demands({Rat(1, 2), Rat(1, 2)})).empty());

    // The shared arc is tight, so no uniform slack exists.
    McfResult strict = solve_mcf(s, demands({Rat(1, 2), Rat(1, 2)}), nullptr, true);
    REQUIRE(strict.feasible);
    CHECK(*strict.slack == Rat(0));
    CHECK_FALSE(strict.strictly_feasible);

    McfResult loose = solve_mcf(s, demands({Rat(1, 4), Rat(1, 4)}), nullptr, true);
    REQUIRE(loose.feasible);
    CHECK(*loose.slack == Rat(1, 2));
    CHECK(loose.strictly_feasible);
}

TEST_CASE("all-infinite networks are feasible at any demand") {
    NetworkStructure s = from_text(
        "arc out1 sigma1 x inf\n"
        "arc mid x y inf\n"
        "arc in1 y tau1 inf\n"
        "pair sigma1 tau1 1\n");
    McfResult r = solve_mcf(s, demands({Rat(1000)}), nullptr, true);
    CHECK(r.feasible);
    CHECK(r.slack_unbounded);
    CHECK(r.strictly_feasible);

    SequentialResult seq = sequential_construct(s, demands({Rat(1000)}));
    CHECK(seq.success);
    CHECK(seq.steps[0].case_taken == 1);
    CHECK(verify_multiflow(s, *seq.flow, demands({Rat(1000)})).empty());
}

TEST_CASE("sequential construction fails on the butterfly at unit demands") {
    NetworkStructure s = butterfly();
    SequentialResult r = sequential_construct(s, demands({Rat(1), Rat(1)}));
    CHECK_FALSE(r.success);
    CHECK(r.failed_at == 2);
    const auto& step = r.steps.back();
    CHECK(names_of(s, indices_to_bitset(s.arc_count(), step.outgoing)) ==
          std::vector<std::string>{"alpha"});

    SequentialResult half = sequential_construct(s, demands({Rat(1, 2), Rat(1, 2)}));
    REQUIRE(half.success);
    CHECK(half.flow->at(1, s.arc_index("alpha")) == Rat(1, 2));
    CHECK(half.flow->at(2, s.arc_index("alpha")) == Rat(1, 2));
    CHECK(verify_multiflow(s, *half.flow, demands({Rat(1, 2), Rat(1, 2)})).empty());
    for (const auto& step2 : half.steps) {
        CHECK(step2.scale > 0);
        CHECK(step2.scale <= 1);
    }
}

TEST_CASE("max flow equals the exhaustive minimum cut on random instances") {
    for (std::uint64_t seed = 2000; seed < 2040; ++seed) {
        NetworkStructure s = random_structure(seed, {.pairs = 1, .percent_infinite = 20});
        SplitMix64 rng(seed ^ 0x5eed);
        std::vector<ExtRat> r(s.arc_count());
        for (int a = 0; a < s.arc_count(); ++a) {
            if (s.capacity(a).is_infinite()) r[a] = ExtRat::inf();
            else if (rng.below(8) == 0) r[a] = ExtRat::finite(Rat(0));
            else r[a] = ExtRat::finite(random_small_rat(rng));
        }
        MaxFlowResult mf = max_flow(s, r, 1);
        ExtRat cut = brute_force_min_cut(s, r, 1);
        if (mf.infinite) {
            CHECK(cut.is_infinite());
            continue;
        }
        REQUIRE(cut.is_finite());
        CHECK(mf.value == cut.value);
        CHECK(verify_min_cut(s, r, 1, mf).empty());
        // The flow is acyclic: its decomposition has no cycle components.
        std::vector<Rat> q(mf.flow.begin(), mf.flow.end());
        PathDecomposition d = decompose_flow(s, q, 1);
        CHECK(d.cycles.empty());
        CHECK(recompose(s, d) == q);
    }
}

TEST_CASE("construction succeeds on certified structures with strict feasibility") {
    NetworkStructure s = fig5();
    REQUIRE(analyze(s).downward_dominated);
    SplitMix64 rng(777);
    for (int trial = 0; trial < 15; ++trial) {
        // Random capacities, demands scaled onto random routes to keep
        // strict feasibility certain.
        std::vector<Capacity> caps;
        for (int a = 0; a < s.arc_count(); ++a)
            caps.push_back(s.capacity(a).is_infinite()
                               ? Capacity::inf()
                               : Capacity::finite(Rat(1) + random_small_rat(rng)));
        DemandVector h{{Rat(1, 1 + static_cast<int>(rng.below(6))),
                        Rat(1, 1 + static_cast<int>(rng.below(6)))}};
        McfResult strict = solve_mcf(s, h, &caps, true);
        if (!strict.feasible || !strict.strictly_feasible) continue;
        SequentialResult seq = sequential_construct(s, h, &caps);
        REQUIRE(seq.success);
        CHECK(verify_multiflow(s, *seq.flow, h, &caps).empty());
    }
}

TEST_CASE("case-2 cuts on the construction path are viable cuts") {
    NetworkStructure s = fig5();
    DemandVector h{{Rat(1, 2), Rat(1, 2)}};
    SequentialResult seq = sequential_construct(s, h);
    REQUIRE(seq.success);
    Bitset finite = s.finite_arcs();
    for (const auto& step : seq.steps) {
        if (step.case_taken != 2) continue;
        Bitset O = indices_to_bitset(s.arc_count(), step.outgoing);
        if (!O.is_subset_of(finite)) continue;
        CHECK(check_viable_cut(s, step.min_cut_vertices, step.pair).viable);
    }
}
