#include <doctest.h>

#include <algorithm>

#include "npairs/corpus.hpp"
#include "npairs/dot_export.hpp"
#include "npairs/network_io.hpp"
#include "npairs/routability.hpp"
#include "support/test_support.hpp"

using namespace npairs;
using namespace npairs::testing;

TEST_CASE("the butterfly file parses to the expected shape") {
    ParsedNetwork p = parsed_from_text(butterfly_text());
    CHECK(p.structure.vertex_count() == 10);
    CHECK(p.structure.arc_count() == 11);
    CHECK(p.structure.pair_count() == 2);
    CHECK(p.demands.of(1) == Rat(1));
    CHECK(p.structure.vertex_name(p.structure.pair(1).source) == "sigma1");
    CHECK(p.structure.vertex_name(p.structure.pair(2).source) == "sigma2");
}

TEST_CASE("emission round-trips byte-identically") {
    for (const auto& text : {butterfly_text(), fig5_text(), fig6_text(),
                             line_text(5, {{1, 4}, {2, 5}}, {"1/3", "5/2"})}) {
        ParsedNetwork p1 = parsed_from_text(text);
        std::string canon = emit_network(p1.structure, p1.demands);
        ParsedNetwork p2 = parsed_from_text(canon);
        CHECK(emit_network(p2.structure, p2.demands) == canon);
    }
}

TEST_CASE("bad capacities and demands are line-diagnosed") {
    auto r = parse_network("arc a x y 0\n");
    REQUIRE(std::holds_alternative<std::vector<ParseDiagnostic>>(r));
    auto ds = std::get<std::vector<ParseDiagnostic>>(r);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].line == 1);
    CHECK(ds[0].message == "capacity must be positive");

    auto r2 = parse_network("pair s t -1\n");
    REQUIRE(std::holds_alternative<std::vector<ParseDiagnostic>>(r2));

    auto r3 = parse_network("frob x\n");
    REQUIRE(std::holds_alternative<std::vector<ParseDiagnostic>>(r3));
}

TEST_CASE("pair line order is the pair order") {
    std::string text = butterfly_text();
    // Swap the two pair lines.
    auto pos1 = text.find("pair sigma1");
    auto pos2 = text.find("pair sigma2");
    REQUIRE(pos1 < pos2);
    std::string swapped = text.substr(0, pos1) + "pair sigma2 tau2 1\npair sigma1 tau1 1\n";
    ParsedNetwork p = parsed_from_text(swapped);
    CHECK(p.structure.vertex_name(p.structure.pair(1).source) == "sigma2");
}

TEST_CASE("comments and blank lines are ignored") {
    ParsedNetwork p = parsed_from_text(
        "# a comment\n"
        "\n"
        "arc out1 sigma1 x inf  # trailing comment\n"
        "arc in1 x tau1 inf\n"
        "pair sigma1 tau1 2/3\n");
    CHECK(p.structure.arc_count() == 2);
    CHECK(p.demands.of(1) == Rat(2, 3));
}

TEST_CASE("every corpus instance validates and certifies as published") {
    CHECK_FALSE(analyze(from_text(butterfly_text())).downward_dominated);
    CHECK(analyze(from_text(fig5_text())).certified_by == CertLevel::Separation);
    CHECK(analyze(from_text(fig6_text())).certified_by == CertLevel::Separation);
    CHECK(analyze(from_text(line_text(6, {{1, 3}, {2, 6}}))).certified_by ==
          CertLevel::UniqueExit);
    CHECK(analyze(from_text(cycle_text(5, {{1, 4}, {3, 2}}))).certified_by ==
          CertLevel::UniqueExit);
    CHECK(analyze(from_text(tree_text({{1, 2}, {1, 3}, {3, 4}}, {{1, 4}, {3, 4}})))
              .certified_by == CertLevel::UniqueExit);
    CHECK(analyze(from_text(tree_of_cycles_text({3, 4}, {{1, 2}},
                                                {{"c1_0", "c2_2"}, {"c2_1", "c1_1"}})))
              .certified_by == CertLevel::UniqueExit);
}

TEST_CASE("corpus parameter dispatch") {
    CHECK(corpus_text("butterfly", {}) == butterfly_text());
    CHECK(corpus_text("line", {{"k", "4"}, {"pairs", "1:3,2:4"}}) ==
          line_text(4, {{1, 3}, {2, 4}}));
    CHECK(corpus_text("tree_of_cycles",
                      {{"sizes", "3,3"}, {"attach", "1@1"}, {"pairs", "c1_0:c2_1"}}) ==
          tree_of_cycles_text({3, 3}, {{1, 1}}, {{"c1_0", "c2_1"}}));
    CHECK_THROWS(corpus_text("nope", {}));
    CHECK_THROWS(corpus_text("line", {{"k", "4"}}));                       // missing pairs
    CHECK_THROWS(corpus_text("line", {{"k", "4"}, {"pairs", "3:1"}}));     // backwards
    CHECK_THROWS(corpus_text("cycle", {{"k", "x"}, {"pairs", "1:1"}}));    // bad int
}

TEST_CASE("gateway vertices are shared between attached cycles") {
    NetworkStructure s = from_text(
        tree_of_cycles_text({3, 3, 3}, {{1, 1}, {1, 2}}, {{"c2_1", "c3_1"}}));
    // 3 + 2 + 2 core vertices plus one terminal pair.
    CHECK(s.vertex_count() == 7 + 2);
    CHECK(analyze(s).certified_by == CertLevel::UniqueExit);
}

TEST_CASE("graph export carries highlights deterministically") {
    NetworkStructure s = butterfly();
    Bitset arcs = arcs_of(s, {"alpha", "beta", "gamma"});
    Bitset verts = vertices_of(s, {"a", "b"});
    std::string dot = export_dot(s, &arcs, &verts);
    CHECK(std::count(dot.begin(), dot.end(), '\n') > 10);
    std::size_t reds = 0;
    for (std::size_t at = dot.find("color=red"); at != std::string::npos;
         at = dot.find("color=red", at + 1))
        ++reds;
    CHECK(reds == 3);
    CHECK(dot.find("fillcolor=lightblue") != std::string::npos);
    CHECK(export_dot(s) == export_dot(s));
    CHECK(export_dot(s).find("color=red") == std::string::npos);

    NetworkStructure f6 = fig6();
    CHECK(export_dot(f6).find("rho") != std::string::npos);
}
