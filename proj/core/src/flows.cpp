#include "npairs/flows.hpp"

#include <algorithm>
#include <stdexcept>

#include "npairs/simplex.hpp"

namespace npairs {

MultiFlow MultiFlow::zeros(int pairs, int arcs) {
    MultiFlow f;
    f.per_pair.assign(pairs, std::vector<Rat>(arcs, Rat(0)));
    return f;
}

Rat MultiFlow::arc_total(int arc) const {
    Rat t(0);
    for (const auto& row : per_pair) t += row[arc];
    return t;
}

std::vector<std::string> verify_multiflow(const NetworkStructure& s, const MultiFlow& f,
                                          const DemandVector& h,
                                          const std::vector<Capacity>* caps) {
    std::vector<std::string> bad;
    if (f.pairs() != s.pair_count() || h.pairs() != s.pair_count()) {
        bad.push_back("flow/demand dimensions do not match the structure");
        return bad;
    }
    auto cap_of = [&](int a) -> const Capacity& { return caps ? (*caps)[a] : s.capacity(a); };
    for (int j = 1; j <= s.pair_count(); ++j)
        for (int a = 0; a < s.arc_count(); ++a)
            if (f.at(j, a) < 0)
                bad.push_back("negative flow on arc '" + s.arc(a).name + "' commodity " +
                              std::to_string(j));
    for (int a = 0; a < s.arc_count(); ++a) {
        if (cap_of(a).is_infinite()) continue;
        if (f.arc_total(a) > cap_of(a).value)
            bad.push_back("capacity exceeded on arc '" + s.arc(a).name + "'");
    }
    for (int j = 1; j <= s.pair_count(); ++j) {
        const auto& pr = s.pair(j);
        if (f.at(j, pr.source_arc) != h.of(j))
            bad.push_back("supply mismatch at source of pair " + std::to_string(j));
        if (f.at(j, pr.sink_arc) != h.of(j))
            bad.push_back("demand mismatch at sink of pair " + std::to_string(j));
        for (int v = 0; v < s.vertex_count(); ++v) {
            if (v == pr.source || v == pr.sink) continue;
            Rat in(0), out(0);
            for (int a : s.in_arcs(v)) in += f.at(j, a);
            for (int a : s.out_arcs(v)) out += f.at(j, a);
            if (in != out)
                bad.push_back("conservation fails for commodity " + std::to_string(j) +
                              " at vertex '" + s.vertex_name(v) + "'");
        }
    }
    return bad;
}

std::vector<ExtRat> residuals_after(const NetworkStructure& s, const MultiFlow& f,
                                    int upto_pair, const std::vector<Capacity>* caps) {
    std::vector<ExtRat> r(s.arc_count());
    for (int a = 0; a < s.arc_count(); ++a) {
        const Capacity& c = caps ? (*caps)[a] : s.capacity(a);
        if (c.is_infinite()) {
            r[a] = ExtRat::inf();
            continue;
        }
        Rat used(0);
        for (int j = 1; j <= upto_pair; ++j) used += f.at(j, a);
        r[a] = ExtRat::finite(c.value - used);
        if (r[a].value < 0) throw std::invalid_argument("negative residual on arc '" +
                                                        s.arc(a).name + "'");
    }
    return r;
}

// ---------------------------------------------------------------------------
// Max flow
// ---------------------------------------------------------------------------

namespace {

struct ResidualGraph {
    const NetworkStructure& s;
    const Bundle& bundle;
    const std::vector<ExtRat>& r;
    std::vector<Rat>& q;

    bool forward_slack(int a) const {
        return r[a].is_infinite() || q[a] < r[a].value;
    }

    // BFS over the residual graph; deterministic by ascending arc index at
    // each vertex. Fills parent arc/direction; returns true if sink reached.
    bool bfs(int src, int snk, std::vector<int>& via_arc, std::vector<char>& via_back) const {
        via_arc.assign(s.vertex_count(), -1);
        via_back.assign(s.vertex_count(), 0);
        Bitset seen(s.vertex_count());
        seen.set(src);
        std::vector<int> queue{src};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            // Merge out-arcs (forward moves) and in-arcs (backward moves)
            // in ascending arc order.
            const auto& outs = s.out_arcs(v);
            const auto& ins = s.in_arcs(v);
            std::size_t io = 0, ii = 0;
            while (io < outs.size() || ii < ins.size()) {
                bool take_out = ii >= ins.size() || (io < outs.size() && outs[io] < ins[ii]);
                int a = take_out ? outs[io++] : ins[ii++];
                if (!bundle.arcs.test(a)) continue;
                int to;
                bool back;
                if (take_out) {
                    if (!forward_slack(a)) continue;
                    to = s.arc(a).head;
                    back = false;
                } else {
                    if (q[a] <= 0) continue;
                    to = s.arc(a).tail;
                    back = true;
                }
                if (seen.test(to)) continue;
                seen.set(to);
                via_arc[to] = a;
                via_back[to] = back;
                if (to == snk) return true;
                queue.push_back(to);
            }
        }
        return false;
    }

    Bitset reachable_from(int src) const {
        std::vector<int> via_arc;
        std::vector<char> via_back;
        Bitset seen(s.vertex_count());
        seen.set(src);
        std::vector<int> queue{src};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            for (int a : s.out_arcs(v)) {
                if (!bundle.arcs.test(a) || !forward_slack(a)) continue;
                int h = s.arc(a).head;
                if (!seen.test(h)) seen.set(h), queue.push_back(h);
            }
            for (int a : s.in_arcs(v)) {
                if (!bundle.arcs.test(a) || q[a] <= 0) continue;
                int t = s.arc(a).tail;
                if (!seen.test(t)) seen.set(t), queue.push_back(t);
            }
        }
        return seen;
    }
};

// Cancel circulation components so the flow becomes acyclic; the value and
// the crossing-arc equalities are unaffected.
void cancel_cycles(const NetworkStructure& s, std::vector<Rat>& q) {
    for (;;) {
        // Find a cycle in the support by following out-arcs with q > 0.
        int start = -1;
        for (int a = 0; a < s.arc_count() && start < 0; ++a)
            if (q[a] > 0) start = s.arc(a).tail;
        if (start < 0) return;

        std::vector<int> color(s.vertex_count(), 0);  // 0 new, 1 on stack, 2 done
        std::vector<int> stack_arcs;
        std::vector<int> stack_verts;
        bool found = false;
        std::vector<int> cycle;

        // DFS over the whole support, iterative.
        for (int root = 0; root < s.vertex_count() && !found; ++root) {
            bool has_support = false;
            for (int a : s.out_arcs(root))
                if (q[a] > 0) has_support = true;
            if (!has_support || color[root] != 0) continue;
            struct Frame { int v; std::size_t next; };
            std::vector<Frame> frames{{root, 0}};
            color[root] = 1;
            stack_verts = {root};
            stack_arcs.clear();
            while (!frames.empty() && !found) {
                Frame& f = frames.back();
                const auto& outs = s.out_arcs(f.v);
                bool advanced = false;
                while (f.next < outs.size()) {
                    int a = outs[f.next++];
                    if (q[a] <= 0) continue;
                    int h = s.arc(a).head;
                    if (color[h] == 1) {
                        // Cycle: unwind stack back to h.
                        cycle = {a};
                        for (std::size_t k = stack_verts.size(); k-- > 0;) {
                            if (stack_verts[k] == h) break;
                            cycle.push_back(stack_arcs[k - 1]);
                        }
                        std::reverse(cycle.begin(), cycle.end());
                        found = true;
                        break;
                    }
                    if (color[h] == 0) {
                        color[h] = 1;
                        stack_verts.push_back(h);
                        stack_arcs.push_back(a);
                        frames.push_back({h, 0});
                        advanced = true;
                        break;
                    }
                }
                if (found || advanced) continue;
                color[f.v] = 2;
                frames.pop_back();
                stack_verts.pop_back();
                if (!stack_arcs.empty()) stack_arcs.pop_back();
            }
        }
        if (!found) return;
        Rat cut = q[cycle[0]];
        for (int a : cycle) cut = std::min(cut, q[a], [](const Rat& x, const Rat& y) { return x < y; });
        for (int a : cycle) q[a] -= cut;
    }
}

}  // namespace

MaxFlowResult max_flow(const NetworkStructure& s, const std::vector<ExtRat>& residual,
                       int pair) {
    if (pair < 1 || pair > s.pair_count()) throw std::invalid_argument("pair index out of range");
    if (residual.size() != static_cast<std::size_t>(s.arc_count()))
        throw std::invalid_argument("residual vector has wrong length");
    const Bundle& b = s.bundle(pair);
    for (int a : bitset_to_indices(b.arcs))
        if (residual[a].is_finite() && residual[a].value < 0)
            throw std::invalid_argument("negative residual on arc '" + s.arc(a).name + "'");

    MaxFlowResult out;
    out.flow.assign(s.arc_count(), Rat(0));
    const int src = s.pair(pair).source, snk = s.pair(pair).sink;

    // Distinguished outcome: a source-to-sink path of all-infinite
    // residuals makes the value infinite.
    {
        Bitset finite_blockers(s.arc_count());
        for (int a = 0; a < s.arc_count(); ++a)
            if (!b.arcs.test(a) || residual[a].is_finite()) finite_blockers.set(a);
        if (auto p = shortest_path(s, src, snk, &finite_blockers)) {
            out.infinite = true;
            out.infinite_witness = std::move(p);
            return out;
        }
    }

    ResidualGraph rg{s, b, residual, out.flow};
    std::vector<int> via_arc;
    std::vector<char> via_back;
    while (rg.bfs(src, snk, via_arc, via_back)) {
        // Bottleneck along the augmenting path.
        std::optional<Rat> bottleneck;
        for (int v = snk; v != src;) {
            int a = via_arc[v];
            if (via_back[v]) {
                if (!bottleneck || out.flow[a] < *bottleneck) bottleneck = out.flow[a];
                v = s.arc(a).head;
            } else {
                if (residual[a].is_finite()) {
                    Rat slack = residual[a].value - out.flow[a];
                    if (!bottleneck || slack < *bottleneck) bottleneck = slack;
                }
                v = s.arc(a).tail;
            }
        }
        if (!bottleneck) throw std::logic_error("augmenting path with no finite bottleneck");
        for (int v = snk; v != src;) {
            int a = via_arc[v];
            if (via_back[v]) {
                out.flow[a] -= *bottleneck;
                v = s.arc(a).head;
            } else {
                out.flow[a] += *bottleneck;
                v = s.arc(a).tail;
            }
        }
    }

    cancel_cycles(s, out.flow);
    out.value = out.flow[s.pair(pair).sink_arc];
    out.min_cut_vertices = rg.reachable_from(src);
    out.min_cut_vertices &= b.vertices;
    Bitset crossing = boundary_arcs(s, out.min_cut_vertices, BoundaryDirection::Out) & b.arcs;
    out.outgoing = bitset_to_indices(crossing);
    return out;
}

std::vector<std::string> verify_min_cut(const NetworkStructure& s,
                                        const std::vector<ExtRat>& residual, int pair,
                                        const MaxFlowResult& r) {
    std::vector<std::string> bad;
    const Bundle& b = s.bundle(pair);
    if (!r.min_cut_vertices.test(s.pair(pair).source)) bad.push_back("source not in the cut");
    if (r.min_cut_vertices.test(s.pair(pair).sink)) bad.push_back("sink inside the cut");
    Bitset outgoing = boundary_arcs(s, r.min_cut_vertices, BoundaryDirection::Out) & b.arcs;
    Bitset incoming = boundary_arcs(s, r.min_cut_vertices, BoundaryDirection::In) & b.arcs;
    for (int a : bitset_to_indices(outgoing)) {
        if (residual[a].is_infinite())
            bad.push_back("infinite-residual arc '" + s.arc(a).name + "' crosses the cut");
        else if (r.flow[a] != residual[a].value)
            bad.push_back("outgoing arc '" + s.arc(a).name + "' is not saturated");
    }
    for (int a : bitset_to_indices(incoming))
        if (r.flow[a] != 0)
            bad.push_back("incoming arc '" + s.arc(a).name + "' carries flow");
    return bad;
}

// ---------------------------------------------------------------------------
// Decomposition
// ---------------------------------------------------------------------------

namespace {

// Vertices from which the sink is reachable over arcs with q >= threshold,
// avoiding `blocked_vertices`.
bool can_reach(const NetworkStructure& s, int from, int to, const std::vector<Rat>& q,
               const Rat& threshold, const Bitset& blocked_vertices) {
    if (blocked_vertices.test(from)) return false;
    Bitset seen(s.vertex_count());
    seen.set(from);
    std::vector<int> queue{from};
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        if (v == to) return true;
        for (int a : s.out_arcs(v)) {
            if (q[a] < threshold) continue;
            int h = s.arc(a).head;
            if (seen.test(h) || blocked_vertices.test(h)) continue;
            seen.set(h);
            queue.push_back(h);
        }
    }
    return false;
}

}  // namespace

PathDecomposition decompose_flow(const NetworkStructure& s, const std::vector<Rat>& q_in,
                                 int pair) {
    if (pair < 1 || pair > s.pair_count()) throw std::invalid_argument("pair index out of range");
    if (q_in.size() != static_cast<std::size_t>(s.arc_count()))
        throw std::invalid_argument("flow vector has wrong length");
    const auto& pr = s.pair(pair);
    for (int a = 0; a < s.arc_count(); ++a)
        if (q_in[a] < 0) throw std::invalid_argument("negative flow on arc '" + s.arc(a).name + "'");
    for (int v = 0; v < s.vertex_count(); ++v) {
        if (v == pr.source || v == pr.sink) continue;
        Rat in(0), out(0);
        for (int a : s.in_arcs(v)) in += q_in[a];
        for (int a : s.out_arcs(v)) out += q_in[a];
        if (in != out)
            throw std::invalid_argument("conservation fails at vertex '" + s.vertex_name(v) + "'");
    }

    PathDecomposition d;
    d.pair = pair;
    std::vector<Rat> q = q_in;

    // Paths: repeatedly peel the widest source-to-sink path; ties broken by
    // the lexicographically smallest arc sequence.
    for (;;) {
        // Distinct positive flow values, descending: the widest bottleneck
        // is the largest value for which the sink stays reachable over arcs
        // carrying at least that much.
        std::vector<Rat> levels;
        for (int a = 0; a < s.arc_count(); ++a)
            if (q[a] > 0) levels.push_back(q[a]);
        if (levels.empty()) break;
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        std::reverse(levels.begin(), levels.end());
        Bitset none(s.vertex_count());
        std::optional<Rat> bottleneck;
        for (const Rat& level : levels)
            if (can_reach(s, pr.source, pr.sink, q, level, none)) {
                bottleneck = level;
                break;
            }
        if (!bottleneck) break;  // no source-to-sink path left; cycles remain

        // Greedy lexicographic path among arcs with q >= bottleneck.
        Path path{pr.source, {}};
        Bitset visited(s.vertex_count());
        visited.set(pr.source);
        int at = pr.source;
        while (at != pr.sink) {
            bool advanced = false;
            for (int a : s.out_arcs(at)) {
                if (q[a] < *bottleneck) continue;
                int h = s.arc(a).head;
                if (visited.test(h)) continue;
                if (!can_reach(s, h, pr.sink, q, *bottleneck, visited)) continue;
                path.arcs.push_back(a);
                visited.set(h);
                at = h;
                advanced = true;
                break;
            }
            if (!advanced) throw std::logic_error("path peeling lost the sink");
        }
        for (int a : path.arcs) q[a] -= *bottleneck;
        d.paths.push_back({std::move(path), *bottleneck});
    }

    // Cycles: follow positive out-arcs from the smallest support arc until
    // a vertex repeats.
    for (;;) {
        int first = -1;
        for (int a = 0; a < s.arc_count(); ++a)
            if (q[a] > 0) {
                first = a;
                break;
            }
        if (first < 0) break;
        std::vector<int> order_of(s.vertex_count(), -1);
        std::vector<int> walk_arcs;
        int at = s.arc(first).tail;
        order_of[at] = 0;
        for (;;) {
            int next_arc = -1;
            for (int a : s.out_arcs(at))
                if (q[a] > 0) {
                    next_arc = a;
                    break;
                }
            if (next_arc < 0) throw std::logic_error("circulation support has a dead end");
            walk_arcs.push_back(next_arc);
            at = s.arc(next_arc).head;
            if (order_of[at] >= 0) break;
            order_of[at] = static_cast<int>(walk_arcs.size());
        }
        // The cycle is the walk suffix starting where `at` was first seen.
        std::vector<int> cycle(walk_arcs.begin() + order_of[at], walk_arcs.end());
        auto smallest = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), smallest, cycle.end());
        Rat cut = q[cycle[0]];
        for (int a : cycle) cut = std::min(cut, q[a], [](const Rat& x, const Rat& y) { return x < y; });
        for (int a : cycle) q[a] -= cut;
        d.cycles.push_back({std::move(cycle), cut});
    }
    return d;
}

std::vector<Rat> recompose(const NetworkStructure& s, const PathDecomposition& d) {
    std::vector<Rat> q(s.arc_count(), Rat(0));
    for (const auto& pf : d.paths)
        for (int a : pf.path.arcs) q[a] += pf.rate;
    for (const auto& cf : d.cycles)
        for (int a : cf.arcs) q[a] += cf.rate;
    return q;
}

// ---------------------------------------------------------------------------
// Multicommodity LP
// ---------------------------------------------------------------------------

McfResult solve_mcf(const NetworkStructure& s, const DemandVector& h,
                    const std::vector<Capacity>* caps, bool strict) {
    if (h.pairs() != s.pair_count())
        throw std::invalid_argument("demand vector does not match the pair count");
    for (int i = 1; i <= s.pair_count(); ++i)
        if (h.of(i) <= 0) throw std::invalid_argument("demands must be positive");

    auto cap_of = [&](int a) -> const Capacity& { return caps ? (*caps)[a] : s.capacity(a); };
    const int n = s.pair_count(), A = s.arc_count();

    LinearProgram lp;
    // Commodity-major flow variables.
    for (int j = 0; j < n * A; ++j) lp.add_var();
    std::vector<int> finite;
    for (int a = 0; a < A; ++a)
        if (!cap_of(a).is_infinite()) finite.push_back(a);
    int t_var = -1;
    if (strict && !finite.empty()) t_var = lp.add_var(Rat(-1));  // maximize t
    auto var = [&](int pair, int arc) { return (pair - 1) * A + arc; };

    for (int a : finite) {
        int row = lp.add_row(cap_of(a).value);
        for (int j = 1; j <= n; ++j) lp.set_coeff(row, var(j, a), Rat(1));
        if (t_var >= 0) lp.set_coeff(row, t_var, Rat(1));
        lp.set_coeff(row, lp.add_var(), Rat(1));  // slack
    }
    for (int j = 1; j <= n; ++j) {
        const auto& pr = s.pair(j);
        for (int v = 0; v < s.vertex_count(); ++v) {
            if (v == pr.source || v == pr.sink) continue;
            if (s.in_arcs(v).empty() && s.out_arcs(v).empty()) continue;
            int row = lp.add_row(Rat(0));
            for (int a : s.in_arcs(v)) lp.set_coeff(row, var(j, a), Rat(1));
            for (int a : s.out_arcs(v)) lp.set_coeff(row, var(j, a), Rat(-1));
        }
        int supply = lp.add_row(h.of(j));
        lp.set_coeff(supply, var(j, pr.source_arc), Rat(1));
        int demand = lp.add_row(h.of(j));
        lp.set_coeff(demand, var(j, pr.sink_arc), Rat(1));
    }

    LpResult sol = solve_lp(lp);
    McfResult out;
    out.strict_requested = strict;
    if (sol.status == LpStatus::Infeasible) return out;
    if (sol.status != LpStatus::Optimal) throw std::logic_error("flow LP cannot be unbounded");

    out.feasible = true;
    MultiFlow f = MultiFlow::zeros(n, A);
    for (int j = 1; j <= n; ++j)
        for (int a = 0; a < A; ++a) f.at(j, a) = sol.solution[var(j, a)];
    auto bad = verify_multiflow(s, f, h, caps);
    if (!bad.empty()) throw std::logic_error("LP flow failed verification: " + bad.front());
    out.flow = std::move(f);
    if (strict) {
        if (finite.empty()) {
            out.slack_unbounded = true;
            out.strictly_feasible = true;
        } else {
            out.slack = sol.solution[t_var];
            out.strictly_feasible = *out.slack > 0;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sequential construction
// ---------------------------------------------------------------------------

SequentialResult sequential_construct(const NetworkStructure& s, const DemandVector& h,
                                      const std::vector<Capacity>* caps) {
    if (h.pairs() != s.pair_count())
        throw std::invalid_argument("demand vector does not match the pair count");
    SequentialResult out;
    MultiFlow f = MultiFlow::zeros(s.pair_count(), s.arc_count());

    for (int i = 1; i <= s.pair_count(); ++i) {
        StepTrace step;
        step.pair = i;
        std::vector<ExtRat> r = residuals_after(s, f, i - 1, caps);

        // First case: an entire path of infinite-capacity arcs carries the
        // demand outright.
        const Path* free_path = nullptr;
        for (const Path& p : enumerate_i_paths(s, i)) {
            bool all_inf = true;
            for (int a : p.arcs)
                if (r[a].is_finite()) {
                    all_inf = false;
                    break;
                }
            if (all_inf) {
                free_path = &p;
                break;
            }
        }
        if (free_path) {
            step.case_taken = 1;
            step.scale = Rat(1);
            for (int a : free_path->arcs) f.at(i, a) = h.of(i);
            out.steps.push_back(std::move(step));
            continue;
        }

        step.case_taken = 2;
        MaxFlowResult mf = max_flow(s, r, i);
        if (mf.infinite) throw std::logic_error("max flow infinite without an all-infinite path");
        step.max_flow_value = mf.value;
        step.min_cut_vertices = mf.min_cut_vertices;
        step.outgoing = mf.outgoing;
        if (mf.value < h.of(i)) {
            out.steps.push_back(std::move(step));
            out.success = false;
            out.failed_at = i;
            return out;
        }
        Rat scale = h.of(i) / mf.value;
        step.scale = scale;
        for (int a = 0; a < s.arc_count(); ++a)
            if (mf.flow[a] != 0) f.at(i, a) = scale * mf.flow[a];
        out.steps.push_back(std::move(step));
    }
    out.success = true;
    out.flow = std::move(f);
    return out;
}

}  // namespace npairs
