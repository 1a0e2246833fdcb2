#include <doctest.h>

#include <algorithm>

#include "npairs/cuts.hpp"
#include "support/test_support.hpp"

using namespace npairs;
using namespace npairs::testing;

namespace {

std::vector<std::vector<std::string>> outgoing_view_names(const NetworkStructure& s,
                                                          const ViableCutList& list) {
    std::vector<std::vector<std::string>> out;
    for (const auto& view : list.outgoing_views) {
        std::vector<std::string> names;
        for (int a : view.outgoing) names.push_back(s.arc(a).name);
        out.push_back(names);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("disjointness over bundles") {
    NetworkStructure s = fig5();
    std::vector<int> j1{1}, j2{2};
    CHECK(is_J_disjoint(s, s.empty_arc_set(), j2));
    CHECK(is_J_disjoint(s, arcs_of(s, {"beta"}), j2));
    CHECK(is_J_disjoint(s, arcs_of(s, {"beta", "gamma"}), j1));
    CHECK_FALSE(is_J_disjoint(s, arcs_of(s, {"alpha", "beta"}), j2));
}

TEST_CASE("source augmentation adds the right terminals") {
    NetworkStructure s = butterfly();
    CHECK(names_of(s, source_augmented(s, arcs_of(s, {"alpha"}), 2)) ==
          std::vector<std::string>{"alpha"});
    CHECK(names_of(s, source_augmented(s, arcs_of(s, {"phi"}), 2)) ==
          std::vector<std::string>{"out1", "phi"});
    // Everything above the first pair is always added.
    CHECK(names_of(s, source_augmented(s, arcs_of(s, {"beta"}), 1)) ==
          std::vector<std::string>{"beta", "out2"});
}

TEST_CASE("downward-dominated family membership") {
    NetworkStructure f5 = fig5();
    CHECK(downward_dominated_family(f5, f5.empty_arc_set(), 2).member);
    CHECK(downward_dominated_family(f5, arcs_of(f5, {"alpha", "gamma"}), 1).member);

    // The butterfly's middle arc is in the first family but its source
    // augmentation fails the defining condition at the second pair.
    NetworkStructure bf = butterfly();
    CHECK(downward_dominated_family(bf, arcs_of(bf, {"alpha"}), 1).member);
}

TEST_CASE("family membership nests downward") {
    for (std::uint64_t seed = 600; seed < 615; ++seed) {
        NetworkStructure s = random_structure(seed, {.pairs = 3});
        SplitMix64 rng(seed ^ 0xf00d);
        for (int t = 0; t < 4; ++t) {
            Bitset e = random_arc_set(s, rng, 20);
            for (int i = s.pair_count(); i >= 2; --i)
                if (downward_dominated_family(s, e, i).member)
                    CHECK(downward_dominated_family(s, e, i - 1).member);
        }
    }
}

TEST_CASE("subsets inherit disjointness") {
    for (std::uint64_t seed = 700; seed < 710; ++seed) {
        NetworkStructure s = random_structure(seed);
        SplitMix64 rng(seed * 13);
        std::vector<int> all;
        for (int i = 1; i <= s.pair_count(); ++i) all.push_back(i);
        for (int t = 0; t < 6; ++t) {
            Bitset b = random_arc_set(s, rng, 25);
            if (!is_J_disjoint(s, b, all)) continue;
            Bitset sub = b;
            for (int a = 0; a < s.arc_count(); ++a)
                if (sub.test(a) && rng.below(2)) sub.reset(a);
            CHECK(is_J_disjoint(s, sub, all));
        }
    }
}

TEST_CASE("viable cuts of the butterfly") {
    NetworkStructure s = butterfly();
    auto r = check_viable_cut(s, vertices_of(s, {"sigma2", "s2", "a"}), 2);
    CHECK(r.is_cut);
    CHECK(r.viable);
    CHECK(names_of(s, indices_to_bitset(s.arc_count(), r.outgoing)) ==
          std::vector<std::string>{"alpha"});

    // A bare source fails the finite-capacity condition: its own arc is
    // the outgoing set.
    auto r2 = check_viable_cut(s, vertices_of(s, {"sigma2"}), 2);
    CHECK(r2.is_cut);
    CHECK_FALSE(r2.viable);
    CHECK(std::find(r2.failed_conditions.begin(), r2.failed_conditions.end(), 1) !=
          r2.failed_conditions.end());

    auto list = enumerate_viable_cuts(s, 2);
    CHECK(outgoing_view_names(s, list) ==
          std::vector<std::vector<std::string>>{{"alpha"}, {"gamma"}, {"phi"}});
}

TEST_CASE("viable cuts match the published outgoing sets") {
    NetworkStructure f5 = fig5();
    CHECK(outgoing_view_names(f5, enumerate_viable_cuts(f5, 2)) ==
          std::vector<std::vector<std::string>>{{"alpha", "gamma"}, {"beta", "gamma"}});

    NetworkStructure f6 = fig6();
    CHECK(outgoing_view_names(f6, enumerate_viable_cuts(f6, 2)) ==
          std::vector<std::vector<std::string>>{{"beta", "phi"}, {"gamma", "phi"}});

    auto r = check_viable_cut(f6, vertices_of(f6, {"sigma2", "u"}), 2);
    CHECK(r.viable);
    CHECK(names_of(f6, indices_to_bitset(f6.arc_count(), r.outgoing)) ==
          std::vector<std::string>{"beta", "phi"});
}

TEST_CASE("cut preconditions are reported") {
    NetworkStructure s = butterfly();
    auto r = check_viable_cut(s, vertices_of(s, {"s2"}), 2);
    CHECK_FALSE(r.is_cut);
    CHECK(r.not_cut_reason == "source not in the set");

    auto r2 = check_viable_cut(s, vertices_of(s, {"sigma2", "tau2"}), 2);
    CHECK_FALSE(r2.is_cut);

    // s1 lies outside the second pair's bundle.
    auto r3 = check_viable_cut(s, vertices_of(s, {"sigma2", "s1"}), 2);
    CHECK_FALSE(r3.is_cut);
}

TEST_CASE("enumeration agrees with the single-set check") {
    for (std::uint64_t seed = 800; seed < 812; ++seed) {
        NetworkStructure s = random_structure(seed, {.max_internal = 6});
        for (int i = 1; i <= s.pair_count(); ++i) {
            auto list = enumerate_viable_cuts(s, i);
            std::set<std::vector<int>> found;
            for (const auto& cut : list.cuts) {
                found.insert(cut.cut_vertices);
                Bitset U = indices_to_bitset(s.vertex_count(), cut.cut_vertices);
                auto r = check_viable_cut(s, U, i);
                CHECK(r.viable);
                CHECK(r.outgoing == cut.outgoing);
            }
            // Exhaustive complement: absent sets must fail something.
            const Bundle& b = s.bundle(i);
            std::vector<int> free;
            for (int v : bitset_to_indices(b.vertices))
                if (v != s.pair(i).source && v != s.pair(i).sink) free.push_back(v);
            REQUIRE(free.size() <= 16);
            for (std::uint64_t mask = 0; mask < (1ull << free.size()); ++mask) {
                std::vector<int> verts{s.pair(i).source};
                for (std::size_t k = 0; k < free.size(); ++k)
                    if (mask & (1ull << k)) verts.push_back(free[k]);
                std::sort(verts.begin(), verts.end());
                if (found.count(verts)) continue;
                Bitset U = indices_to_bitset(s.vertex_count(), verts);
                CHECK_FALSE(check_viable_cut(s, U, i).viable);
            }
        }
    }
}

TEST_CASE("enlarging the backward arc set never breaks cut reachability") {
    for (std::uint64_t seed = 900; seed < 910; ++seed) {
        NetworkStructure s = random_structure(seed, {.max_internal = 6});
        for (int i = 1; i <= s.pair_count(); ++i) {
            for (const auto& cut : enumerate_viable_cuts(s, i).cuts) {
                Bitset U = indices_to_bitset(s.vertex_count(), cut.cut_vertices);
                // Viability used the leave-once paths' arcs; the full
                // bundle is a superset of any such arc set.
                CHECK(detail::mixed_reachability_covers(s, U, i, s.bundle(i).arcs));
            }
        }
    }
}
