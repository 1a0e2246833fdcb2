#include <doctest.h>

#include "npairs/structure.hpp"
#include "support/test_support.hpp"

using namespace npairs;
using namespace npairs::testing;

namespace {

bool has_rule(const std::vector<Violation>& vs, const std::string& rule) {
    for (const auto& v : vs)
        if (v.rule == rule) return true;
    return false;
}

std::vector<Violation> expect_invalid(const NetworkDescription& desc) {
    auto r = NetworkStructure::validate(desc);
    REQUIRE(std::holds_alternative<std::vector<Violation>>(r));
    return std::get<std::vector<Violation>>(r);
}

NetworkDescription tiny_valid() {
    NetworkDescription d;
    d.arcs = {
        {"out1", "sigma1", "x", Capacity::inf()},
        {"mid", "x", "y", Capacity::finite(Rat(1))},
        {"in1", "y", "tau1", Capacity::inf()},
    };
    d.pairs = {{"sigma1", "tau1"}};
    return d;
}

}  // namespace

TEST_CASE("butterfly validates with the expected counts") {
    NetworkStructure s = butterfly();
    CHECK(s.vertex_count() == 10);
    CHECK(s.arc_count() == 11);
    CHECK(s.pair_count() == 2);
    CHECK(s.vertex_name(s.pair(1).source) == "sigma1");
    CHECK(s.arc(s.pair(2).source_arc).name == "out2");
    CHECK(s.capacity(s.pair(1).source_arc).is_infinite());
}

TEST_CASE("an arc into a source is rejected") {
    NetworkDescription d = tiny_valid();
    d.arcs.push_back({"bad", "y", "sigma1", Capacity::finite(Rat(1))});
    auto vs = expect_invalid(d);
    CHECK(has_rule(vs, "source-has-in-arc"));
}

TEST_CASE("a disconnected network is rejected") {
    NetworkDescription d = tiny_valid();
    d.arcs.push_back({"lonely", "p", "q", Capacity::finite(Rat(1))});
    auto vs = expect_invalid(d);
    CHECK(has_rule(vs, "not-connected"));
}

TEST_CASE("self loops and duplicate directed arcs are rejected") {
    NetworkDescription d = tiny_valid();
    d.arcs.push_back({"loop", "x", "x", Capacity::finite(Rat(1))});
    CHECK(has_rule(expect_invalid(d), "self-loop"));

    d = tiny_valid();
    d.arcs.push_back({"mid2", "x", "y", Capacity::finite(Rat(2))});
    CHECK(has_rule(expect_invalid(d), "parallel-arc"));
}

TEST_CASE("antiparallel arcs are allowed") {
    NetworkDescription d = tiny_valid();
    d.arcs.push_back({"back", "y", "x", Capacity::finite(Rat(1))});
    CHECK(std::holds_alternative<NetworkStructure>(NetworkStructure::validate(d)));
}

TEST_CASE("source arcs must be infinite and capacities positive") {
    NetworkDescription d = tiny_valid();
    d.arcs[0].cap = Capacity::finite(Rat(1));
    CHECK(has_rule(expect_invalid(d), "source-arc-finite"));

    d = tiny_valid();
    d.arcs[1].cap = Capacity::finite(Rat(0));
    CHECK(has_rule(expect_invalid(d), "nonpositive-capacity"));
}

TEST_CASE("unreachable sink is rejected") {
    NetworkDescription d;
    d.arcs = {
        {"out1", "sigma1", "x", Capacity::inf()},
        {"mid", "y", "x", Capacity::finite(Rat(1))},
        {"in1", "y", "tau1", Capacity::inf()},
    };
    d.pairs = {{"sigma1", "tau1"}};
    CHECK(has_rule(expect_invalid(d), "sink-unreachable"));
}

TEST_CASE("source and sink degree rules") {
    NetworkDescription d = tiny_valid();
    d.arcs.push_back({"out1b", "sigma1", "y", Capacity::inf()});
    CHECK(has_rule(expect_invalid(d), "source-out-degree"));

    d = tiny_valid();
    d.arcs.push_back({"in1b", "x", "tau1", Capacity::inf()});
    CHECK(has_rule(expect_invalid(d), "sink-in-degree"));
}

TEST_CASE("pair reordering relabels roles consistently") {
    NetworkStructure s = butterfly();
    NetworkStructure r = s.with_pair_order({2, 1});
    CHECK(s.vertex_name(r.pair(1).source) == "sigma2");
    CHECK(s.vertex_name(r.pair(2).source) == "sigma1");
    CHECK(r.source_pair_of(r.pair(1).source) == 1);
    CHECK(r.source_arc_pair_of(r.pair(1).source_arc) == 1);
    CHECK_THROWS(s.with_pair_order({1, 1}));
    CHECK_THROWS(s.with_pair_order({1}));
}

TEST_CASE("capacity replacement must keep the partition") {
    NetworkStructure s = butterfly();
    std::vector<Capacity> caps;
    for (int a = 0; a < s.arc_count(); ++a) caps.push_back(s.capacity(a));
    caps[s.arc_index("alpha")] = Capacity::finite(Rat(7, 2));
    NetworkStructure t = s.with_capacities(caps);
    CHECK(t.capacity(t.arc_index("alpha")).value == Rat(7, 2));

    caps[s.arc_index("alpha")] = Capacity::inf();
    CHECK_THROWS(s.with_capacities(caps));
}

TEST_CASE("random structures validate across seeds") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RandomNetOptions opt;
        opt.pairs = 1 + static_cast<int>(seed % 3);
        NetworkStructure s = random_structure(seed, opt);
        CHECK(s.pair_count() == opt.pairs);
    }
}
