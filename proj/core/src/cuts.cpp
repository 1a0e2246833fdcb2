#include "npairs/cuts.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace npairs {

bool is_J_disjoint(const NetworkStructure& s, const Bitset& arcs,
                   std::span<const int> pair_indices) {
    if (arcs.size() != static_cast<std::size_t>(s.arc_count()))
        throw std::invalid_argument("arc set has wrong universe size");
    for (int j : pair_indices) {
        for (const Path& p : enumerate_i_paths(s, j)) {
            int hits = 0;
            for (int a : p.arcs)
                if (arcs.test(a) && ++hits >= 2) return false;
        }
    }
    return true;
}

Bitset source_augmented(const NetworkStructure& s, const Bitset& arcs, int h) {
    if (h < 1 || h > s.pair_count()) throw std::invalid_argument("pair index out of range");
    Bitset out = arcs;
    for (int j = 1; j <= s.pair_count(); ++j) {
        if (j == h) continue;
        if (j > h || !(arcs & s.bundle(j).arcs).any()) out.set(s.pair(j).source_arc);
    }
    return out;
}

FamilyMembership downward_dominated_family(const NetworkStructure& s, const Bitset& arcs,
                                           int i) {
    if (i < 0 || i > s.pair_count()) throw std::invalid_argument("family index out of range");
    FamilyMembership m;
    std::vector<int> pairs(i);
    for (int j = 0; j < i; ++j) pairs[j] = j + 1;
    m.disjoint = is_J_disjoint(s, arcs, pairs);
    bool all_ok = m.disjoint;
    for (int h = 1; h <= i; ++h) {
        FamilyMembership::PerPair d;
        d.pair = h;
        d.untouched = !(arcs & s.bundle(h).arcs).any();
        if (!d.untouched) {
            auto r = sdom_contains(s, source_augmented(s, arcs, h), s.pair(h).source_arc);
            d.dominated = r.contained;
            d.certificate = r.certificate;
            if (!r.contained) all_ok = false;
        }
        m.detail.push_back(d);
    }
    m.member = all_ok;
    return m;
}

namespace {

// Shared precomputation for viability checks over one bundle.
struct CutContext {
    const NetworkStructure& s;
    int pair;
    const Bundle& bundle;
    std::vector<int> verts;       // sorted vertex indices of the bundle
    std::vector<int> pos_of;      // vertex index -> position in verts, or -1
    int source_pos = -1, sink_pos = -1;

    struct BundleArc {
        int arc;
        int tail_pos, head_pos;
        bool finite;
        bool in_lower;  // member of the union of lower-pair bundles
    };
    std::vector<BundleArc> arcs;
    std::vector<std::vector<int>> paths_pos;     // per path: vertex positions
    std::vector<std::vector<int>> arc_paths;     // per bundle-arc slot: path ids
    std::vector<int> arc_slot;                   // arc index -> slot or -1

    CutContext(const NetworkStructure& s_, int pair_)
        : s(s_), pair(pair_), bundle(s_.bundle(pair_)) {
        verts = bitset_to_indices(bundle.vertices);
        pos_of.assign(s.vertex_count(), -1);
        for (std::size_t k = 0; k < verts.size(); ++k) pos_of[verts[k]] = static_cast<int>(k);
        source_pos = pos_of[s.pair(pair).source];
        sink_pos = pos_of[s.pair(pair).sink];

        const Bitset& lower = s.lower_bundle_arcs(pair - 1);
        arc_slot.assign(s.arc_count(), -1);
        for (int a : bitset_to_indices(bundle.arcs)) {
            arc_slot[a] = static_cast<int>(arcs.size());
            arcs.push_back({a, pos_of[s.arc(a).tail], pos_of[s.arc(a).head],
                            !s.capacity(a).is_infinite(), lower.test(a)});
        }
        arc_paths.resize(arcs.size());
        for (std::size_t pid = 0; pid < bundle.paths.size(); ++pid) {
            const Path& p = bundle.paths[pid];
            std::vector<int> pp{pos_of[p.first_vertex]};
            for (int a : p.arcs) {
                pp.push_back(pos_of[s.arc(a).head]);
                arc_paths[arc_slot[a]].push_back(static_cast<int>(pid));
            }
            paths_pos.push_back(std::move(pp));
        }
    }

    // Pattern "prefix inside, suffix outside": the path crosses out of U
    // exactly once and never returns.
    bool leaves_once(const std::vector<int>& path_pos, const Bitset& U_pos) const {
        bool inside = true;
        for (int pos : path_pos) {
            bool in = U_pos.test(pos);
            if (inside) {
                if (!in) inside = false;
            } else if (in) {
                return false;
            }
        }
        return !inside;  // must end outside (sink is never in U)
    }

    // Evaluates conditions 1-4 for U given as positions. good_flags gets
    // the per-path leaves-once classification.
    void evaluate(const Bitset& U_pos, std::vector<char>& good_flags,
                  std::vector<int>& outgoing_slots, std::vector<int>& failed) const {
        good_flags.assign(paths_pos.size(), 0);
        for (std::size_t pid = 0; pid < paths_pos.size(); ++pid)
            good_flags[pid] = leaves_once(paths_pos[pid], U_pos) ? 1 : 0;

        outgoing_slots.clear();
        bool all_finite = true;
        for (std::size_t slot = 0; slot < arcs.size(); ++slot) {
            const auto& ba = arcs[slot];
            if (U_pos.test(ba.tail_pos) && !U_pos.test(ba.head_pos)) {
                outgoing_slots.push_back(static_cast<int>(slot));
                if (!ba.finite) all_finite = false;
            }
        }
        failed.clear();
        if (!all_finite) failed.push_back(1);

        bool any_good = std::any_of(good_flags.begin(), good_flags.end(),
                                    [](char c) { return c != 0; });
        if (!any_good) failed.push_back(2);

        bool cond3 = true;
        for (int slot : outgoing_slots) {
            if (arcs[slot].in_lower) continue;
            bool on_good = false;
            for (int pid : arc_paths[slot])
                if (good_flags[pid]) {
                    on_good = true;
                    break;
                }
            if (!on_good) {
                cond3 = false;
                break;
            }
        }
        if (!cond3) failed.push_back(3);

        if (!mixed_reach(U_pos, good_flags)) failed.push_back(4);
    }

    // Condition 4: every vertex of U is reachable from the source inside U,
    // traversing bundle arcs forward freely and backward only along arcs of
    // paths that leave U once.
    bool mixed_reach(const Bitset& U_pos, const std::vector<char>& good_flags) const {
        Bitset backward(arcs.size());
        for (std::size_t slot = 0; slot < arcs.size(); ++slot)
            for (int pid : arc_paths[slot])
                if (good_flags[pid]) {
                    backward.set(slot);
                    break;
                }
        return mixed_reach_with(U_pos, backward);
    }

    bool mixed_reach_with(const Bitset& U_pos, const Bitset& backward_slots) const {
        Bitset seen(verts.size());
        seen.set(source_pos);
        std::vector<int> queue{source_pos};
        while (!queue.empty()) {
            int at = queue.back();
            queue.pop_back();
            for (std::size_t slot = 0; slot < arcs.size(); ++slot) {
                const auto& ba = arcs[slot];
                if (!U_pos.test(ba.tail_pos) || !U_pos.test(ba.head_pos)) continue;
                int next = -1;
                if (ba.tail_pos == at) next = ba.head_pos;
                else if (ba.head_pos == at && backward_slots.test(slot)) next = ba.tail_pos;
                if (next >= 0 && !seen.test(next)) {
                    seen.set(next);
                    queue.push_back(next);
                }
            }
        }
        return (seen & U_pos) == U_pos;
    }

    Bitset positions_of(const Bitset& U_full) const {
        Bitset U_pos(verts.size());
        for (std::size_t k = 0; k < verts.size(); ++k)
            if (U_full.test(verts[k])) U_pos.set(k);
        return U_pos;
    }
};

}  // namespace

ViabilityReport check_viable_cut(const NetworkStructure& s, const Bitset& U, int pair) {
    if (pair < 1 || pair > s.pair_count()) throw std::invalid_argument("pair index out of range");
    if (U.size() != static_cast<std::size_t>(s.vertex_count()))
        throw std::invalid_argument("vertex set has wrong universe size");
    ViabilityReport r;
    const Bundle& b = s.bundle(pair);
    if (!U.test(s.pair(pair).source)) {
        r.not_cut_reason = "source not in the set";
        return r;
    }
    if (U.test(s.pair(pair).sink)) {
        r.not_cut_reason = "sink is in the set";
        return r;
    }
    if (!U.is_subset_of(b.vertices)) {
        r.not_cut_reason = "set leaves the bundle's vertex set";
        return r;
    }
    r.is_cut = true;

    CutContext ctx(s, pair);
    Bitset U_pos = ctx.positions_of(U);
    std::vector<char> good;
    std::vector<int> out_slots;
    ctx.evaluate(U_pos, good, out_slots, r.failed_conditions);
    for (int slot : out_slots) r.outgoing.push_back(ctx.arcs[slot].arc);
    std::sort(r.outgoing.begin(), r.outgoing.end());
    r.viable = r.failed_conditions.empty();
    return r;
}

ViableCutList enumerate_viable_cuts(const NetworkStructure& s, int pair) {
    if (pair < 1 || pair > s.pair_count()) throw std::invalid_argument("pair index out of range");
    CutContext ctx(s, pair);

    std::vector<int> free_pos;
    for (std::size_t k = 0; k < ctx.verts.size(); ++k) {
        int p = static_cast<int>(k);
        if (p != ctx.source_pos && p != ctx.sink_pos) free_pos.push_back(p);
    }
    if (free_pos.size() > 30)
        throw std::runtime_error("cut enumeration too large: bundle has " +
                                 std::to_string(free_pos.size()) + " free vertices");

    ViableCutList list;
    std::vector<char> good;
    std::vector<int> out_slots, failed;
    Bitset U_pos(ctx.verts.size());
    const std::uint64_t limit = 1ull << free_pos.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        U_pos.reset();
        U_pos.set(ctx.source_pos);
        for (std::size_t b = 0; b < free_pos.size(); ++b)
            if (mask & (1ull << b)) U_pos.set(free_pos[b]);
        ctx.evaluate(U_pos, good, out_slots, failed);
        if (!failed.empty()) continue;
        ViableCut cut;
        cut.pair = pair;
        for (std::size_t k = 0; k < ctx.verts.size(); ++k)
            if (U_pos.test(k)) cut.cut_vertices.push_back(ctx.verts[k]);
        for (int slot : out_slots) cut.outgoing.push_back(ctx.arcs[slot].arc);
        std::sort(cut.outgoing.begin(), cut.outgoing.end());
        list.cuts.push_back(std::move(cut));
    }

    // Canonical order: by size, then by vertex sequence.
    std::sort(list.cuts.begin(), list.cuts.end(), [](const ViableCut& a, const ViableCut& b) {
        if (a.cut_vertices.size() != b.cut_vertices.size())
            return a.cut_vertices.size() < b.cut_vertices.size();
        return a.cut_vertices < b.cut_vertices;
    });

    std::map<std::vector<int>, int> first_with;
    for (std::size_t k = 0; k < list.cuts.size(); ++k)
        first_with.try_emplace(list.cuts[k].outgoing, static_cast<int>(k));
    for (const auto& [outgoing, rep] : first_with)
        list.outgoing_views.push_back({outgoing, rep});
    return list;
}

namespace detail {

bool mixed_reachability_covers(const NetworkStructure& s, const Bitset& U, int pair,
                               const Bitset& backward_arcs) {
    CutContext ctx(s, pair);
    Bitset U_pos = ctx.positions_of(U);
    if (!U_pos.test(ctx.source_pos)) return false;
    Bitset backward_slots(ctx.arcs.size());
    for (std::size_t slot = 0; slot < ctx.arcs.size(); ++slot)
        if (backward_arcs.test(ctx.arcs[slot].arc)) backward_slots.set(slot);
    return ctx.mixed_reach_with(U_pos, backward_slots);
}

}  // namespace detail

}  // namespace npairs
