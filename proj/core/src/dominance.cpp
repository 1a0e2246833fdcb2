#include "npairs/dominance.hpp"

#include <algorithm>
#include <stdexcept>

namespace npairs {

namespace {

Bitset source_vertices(const NetworkStructure& s) {
    Bitset b(s.vertex_count());
    for (int i = 1; i <= s.pair_count(); ++i) b.set(s.pair(i).source);
    return b;
}

// Core of the bypass search. Walk legs may only use vertices that can reach
// the sink (every element of a valid walk reaches it via its leg suffix),
// and only arcs outside `blockers`. Sources join the walk chain when some
// junction vertex is reachable, avoiding blockers, both from an already
// reached source and from the joining one.
struct WalkSearch {
    const NetworkStructure& s;
    int pair;
    const Bitset& blockers;

    Bitset sink_reaching;          // vertices that reach tau_i in the full arc set
    std::vector<int> sources;      // source vertices inside the search subgraph
    std::vector<Bitset> reach;     // per source: forward reach avoiding blockers
    std::vector<int> parent;       // per source position: previous source position
    std::vector<int> junction;     // per source position: joint vertex with parent
    std::vector<char> reached;
    int start_pos = -1;

    WalkSearch(const NetworkStructure& s_, int pair_, const Bitset& blockers_)
        : s(s_), pair(pair_), blockers(blockers_) {
        const auto& pr = s.pair(pair);
        sink_reaching = coreachable_set(s, pr.sink);
        for (int i = 1; i <= s.pair_count(); ++i) {
            int sv = s.pair(i).source;
            if (!sink_reaching.test(sv)) continue;
            if (i == pair) start_pos = static_cast<int>(sources.size());
            sources.push_back(sv);
        }
        reach.resize(sources.size());
        parent.assign(sources.size(), -1);
        junction.assign(sources.size(), -1);
        reached.assign(sources.size(), 0);
    }

    const Bitset& reach_of(int pos) {
        if (reach[pos].empty()) {
            Bitset seed(s.vertex_count());
            seed.set(sources[pos]);
            // Restrict expansion to the sink-reaching subgraph.
            Bitset seen = seed;
            std::vector<int> queue{sources[pos]};
            while (!queue.empty()) {
                int v = queue.back();
                queue.pop_back();
                for (int a : s.out_arcs(v)) {
                    if (blockers.test(a)) continue;
                    int h = s.arc(a).head;
                    if (!sink_reaching.test(h) || seen.test(h)) continue;
                    seen.set(h);
                    queue.push_back(h);
                }
            }
            reach[pos] = std::move(seen);
        }
        return reach[pos];
    }

    // Returns the position of a reached source that reaches the sink, or -1.
    int run() {
        if (start_pos < 0) return -1;  // sigma_i cannot reach tau_i at all
        const int sink = s.pair(pair).sink;
        reached[start_pos] = 1;
        Bitset covered = reach_of(start_pos);
        bool grew = true;
        while (grew) {
            for (std::size_t p = 0; p < sources.size(); ++p)
                if (reached[p] && reach_of(static_cast<int>(p)).test(sink))
                    return static_cast<int>(p);
            grew = false;
            for (std::size_t p = 0; p < sources.size(); ++p) {
                if (reached[p]) continue;
                Bitset meet = reach_of(static_cast<int>(p)) & covered;
                if (!meet.any()) continue;
                // Deterministic parent: smallest reached position whose
                // reach intersects; junction: smallest common vertex.
                for (std::size_t q = 0; q < sources.size(); ++q) {
                    if (!reached[q]) continue;
                    Bitset both = reach_of(static_cast<int>(p)) & reach[q];
                    if (both.any()) {
                        parent[p] = static_cast<int>(q);
                        junction[p] = static_cast<int>(both.find_first());
                        break;
                    }
                }
                reached[p] = 1;
                covered |= reach[p];
                grew = true;
            }
        }
        return -1;
    }

    IndirectWalk build_witness(int final_pos) {
        // Chain of source positions from sigma_i to the finishing source.
        std::vector<int> chain;
        for (int p = final_pos; p != -1; p = parent[p]) chain.push_back(p);
        std::reverse(chain.begin(), chain.end());

        IndirectWalk w;
        w.pair = pair;
        auto leg = [&](int from_v, int to_v) {
            auto p = shortest_path(s, from_v, to_v, &blockers, &sink_reaching);
            if (!p) throw std::logic_error("walk leg reconstruction failed");
            return *p;
        };
        for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
            int mu = junction[chain[k + 1]];
            w.legs.push_back(leg(sources[chain[k]], mu));      // forward leg
            w.legs.push_back(leg(sources[chain[k + 1]], mu));  // reverse leg
            w.junctions.push_back(mu);
        }
        w.legs.push_back(leg(sources[chain.back()], s.pair(pair).sink));
        return w;
    }
};

}  // namespace

bool is_downstream(const NetworkStructure& s, int arc, const Bitset& blockers) {
    if (arc < 0 || arc >= s.arc_count()) throw std::invalid_argument("arc index out of range");
    Bitset reach = reachable_set(s, source_vertices(s), &blockers);
    return !reach.test(s.arc(arc).tail);
}

bool all_ii_walks_blocked(const NetworkStructure& s, int pair, const Bitset& blockers) {
    if (pair < 1 || pair > s.pair_count()) throw std::invalid_argument("pair index out of range");
    WalkSearch search(s, pair, blockers);
    return search.run() < 0;
}

std::optional<IndirectWalk> find_bypassing_ii_walk(const NetworkStructure& s, int pair,
                                                   const Bitset& blockers) {
    if (pair < 1 || pair > s.pair_count()) throw std::invalid_argument("pair index out of range");
    WalkSearch search(s, pair, blockers);
    int final_pos = search.run();
    if (final_pos < 0) return std::nullopt;
    return search.build_witness(final_pos);
}

Bitset sdom(const NetworkStructure& s, const Bitset& base, const std::vector<int>* scan_order) {
    if (base.size() != static_cast<std::size_t>(s.arc_count()))
        throw std::invalid_argument("arc set has wrong universe size");
    std::vector<int> order;
    if (scan_order) {
        order = *scan_order;
        if (order.size() != static_cast<std::size_t>(s.arc_count()))
            throw std::invalid_argument("scan order must list every arc");
    } else {
        order.resize(s.arc_count());
        for (int a = 0; a < s.arc_count(); ++a) order[a] = a;
    }

    Bitset closed = base;
    // Greedy closure: test candidate arcs one at a time; any addition
    // resets the test set to everything outside the current closure.
    bool added = true;
    while (added) {
        added = false;
        for (int a : order) {
            if (closed.test(a)) continue;
            bool take = false;
            // Pairing rule: a source arc joins iff its sink arc is in, and
            // vice versa.
            int sp = s.source_arc_pair_of(a);
            int tp = s.sink_arc_pair_of(a);
            if (sp != 0 && closed.test(s.pair(sp).sink_arc)) take = true;
            if (!take && tp != 0 && closed.test(s.pair(tp).source_arc)) take = true;
            // Downstream rule.
            if (!take && is_downstream(s, a, closed)) take = true;
            // Blocked-walk rule applies to source and sink arcs only.
            if (!take && sp != 0 && all_ii_walks_blocked(s, sp, closed)) take = true;
            if (!take && tp != 0 && all_ii_walks_blocked(s, tp, closed)) take = true;
            if (take) {
                closed.set(a);
                added = true;
                break;  // restart the scan over the shrunken complement
            }
        }
    }
    return closed;
}

ContainmentResult sdom_contains(const NetworkStructure& s, const Bitset& base, int target_arc) {
    if (target_arc < 0 || target_arc >= s.arc_count())
        throw std::invalid_argument("arc index out of range");
    if (base.test(target_arc)) return {true, DominanceCertificate::BaseMember};
    if (is_downstream(s, target_arc, base)) return {true, DominanceCertificate::Downstream};
    int sp = s.source_arc_pair_of(target_arc);
    int tp = s.sink_arc_pair_of(target_arc);
    int p = sp != 0 ? sp : tp;
    if (p != 0 && all_ii_walks_blocked(s, p, base))
        return {true, DominanceCertificate::WalksBlocked};
    if (sdom(s, base).test(target_arc)) return {true, DominanceCertificate::Closure};
    return {false, DominanceCertificate::NotContained};
}

bool IndirectWalk::validate(const NetworkStructure& s, const Bitset* bypass,
                            std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (pair < 1 || pair > s.pair_count()) return fail("bad pair index");
    if (legs.empty() || legs.size() % 2 == 0) return fail("leg count must be odd");
    if (junctions.size() * 2 + 1 != legs.size()) return fail("junction count mismatch");
    const auto& pr = s.pair(pair);
    for (const auto& leg : legs)
        if (!path_is_valid(s, leg)) return fail("leg is not a simple path");
    if (legs.front().first_vertex != pr.source) return fail("first leg must start at the source");
    if (path_last_vertex(s, legs.back()) != pr.sink) return fail("last leg must end at the sink");
    Bitset sink_reaching = coreachable_set(s, pr.sink);
    for (std::size_t k = 0; k < junctions.size(); ++k) {
        const Path& fwd = legs[2 * k];
        const Path& rev = legs[2 * k + 1];
        const Path& next = legs[2 * k + 2];
        if (path_last_vertex(s, fwd) != junctions[k] || path_last_vertex(s, rev) != junctions[k])
            return fail("legs do not meet at their junction");
        if (rev.first_vertex != next.first_vertex) return fail("reverse and next leg start apart");
        if (!s.is_source(rev.first_vertex)) return fail("intermediate leg must start at a source");
        if (!sink_reaching.test(junctions[k])) return fail("junction cannot reach the sink");
    }
    if (bypass) {
        for (const auto& leg : legs)
            for (int a : leg.arcs)
                if (bypass->test(a)) return fail("walk meets the bypassed arc set");
    }
    return true;
}

Bitset IndirectWalk::arc_set(const NetworkStructure& s) const {
    Bitset b(s.arc_count());
    for (const auto& leg : legs)
        for (int a : leg.arcs) b.set(a);
    return b;
}

const char* certificate_name(DominanceCertificate c) {
    switch (c) {
        case DominanceCertificate::BaseMember: return "base-member";
        case DominanceCertificate::Downstream: return "downstream";
        case DominanceCertificate::WalksBlocked: return "all-ii-walks-blocked";
        case DominanceCertificate::Closure: return "closure";
        case DominanceCertificate::NotContained: return "not-contained";
    }
    return "?";
}

}  // namespace npairs
