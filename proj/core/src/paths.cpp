#include "npairs/paths.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace npairs {

namespace {

void check_arc(const NetworkStructure& s, int a) {
    if (a < 0 || a >= s.arc_count()) throw std::invalid_argument("arc index out of range");
}
void check_vertex(const NetworkStructure& s, int v) {
    if (v < 0 || v >= s.vertex_count()) throw std::invalid_argument("vertex index out of range");
}

}  // namespace

Bitset reachable_set(const NetworkStructure& s, const Bitset& seeds, const Bitset* avoiding) {
    Bitset seen = seeds;
    std::deque<int> queue;
    for (auto v = seeds.find_first(); v != Bitset::npos; v = seeds.find_next(v))
        queue.push_back(static_cast<int>(v));
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int a : s.out_arcs(v)) {
            if (avoiding && avoiding->test(a)) continue;
            int h = s.arc(a).head;
            if (!seen.test(h)) {
                seen.set(h);
                queue.push_back(h);
            }
        }
    }
    return seen;
}

Bitset coreachable_set(const NetworkStructure& s, int target_vertex) {
    check_vertex(s, target_vertex);
    Bitset seen(s.vertex_count());
    seen.set(target_vertex);
    std::deque<int> queue{target_vertex};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int a : s.in_arcs(v)) {
            int t = s.arc(a).tail;
            if (!seen.test(t)) {
                seen.set(t);
                queue.push_back(t);
            }
        }
    }
    return seen;
}

bool reachable(const NetworkStructure& s, GraphElement from, GraphElement to,
               const Bitset* avoiding) {
    int start, goal;
    if (from.kind == GraphElement::Vertex) {
        check_vertex(s, from.index);
        start = from.index;
    } else {
        check_arc(s, from.index);
        start = s.arc(from.index).head;
    }
    if (to.kind == GraphElement::Vertex) {
        check_vertex(s, to.index);
        goal = to.index;
    } else {
        check_arc(s, to.index);
        goal = s.arc(to.index).tail;
    }
    Bitset seeds(s.vertex_count());
    seeds.set(start);
    return reachable_set(s, seeds, avoiding).test(goal);
}

std::optional<Path> shortest_path(const NetworkStructure& s, int from, int to,
                                  const Bitset* avoiding, const Bitset* allowed_vertices) {
    check_vertex(s, from);
    check_vertex(s, to);
    if (allowed_vertices && (!allowed_vertices->test(from) || !allowed_vertices->test(to)))
        return std::nullopt;
    if (from == to) return Path{from, {}};
    std::vector<int> via_arc(s.vertex_count(), -1);
    Bitset seen(s.vertex_count());
    seen.set(from);
    std::deque<int> queue{from};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int a : s.out_arcs(v)) {
            if (avoiding && avoiding->test(a)) continue;
            int h = s.arc(a).head;
            if (allowed_vertices && !allowed_vertices->test(h)) continue;
            if (seen.test(h)) continue;
            seen.set(h);
            via_arc[h] = a;
            if (h == to) {
                std::vector<int> arcs;
                for (int u = to; u != from; u = s.arc(via_arc[u]).tail)
                    arcs.push_back(via_arc[u]);
                std::reverse(arcs.begin(), arcs.end());
                return Path{from, std::move(arcs)};
            }
            queue.push_back(h);
        }
    }
    return std::nullopt;
}

std::vector<Path> enumerate_paths_between(const NetworkStructure& s, int from, int to) {
    check_vertex(s, from);
    check_vertex(s, to);
    std::vector<Path> result;
    if (from == to) {
        result.push_back(Path{from, {}});
        return result;
    }
    // Iterative DFS taking out-arcs in ascending index order, which yields
    // paths in lexicographic order of their arc-index sequences.
    std::vector<int> arc_stack;
    Bitset on_path(s.vertex_count());
    on_path.set(from);

    struct Frame {
        int vertex;
        std::size_t next;  // position in out_arcs(vertex)
    };
    std::vector<Frame> frames{{from, 0}};
    while (!frames.empty()) {
        Frame& f = frames.back();
        const auto& outs = s.out_arcs(f.vertex);
        if (f.next >= outs.size()) {
            on_path.reset(f.vertex);
            frames.pop_back();
            if (!arc_stack.empty()) arc_stack.pop_back();
            continue;
        }
        int a = outs[f.next++];
        int h = s.arc(a).head;
        if (on_path.test(h)) continue;
        if (h == to) {
            arc_stack.push_back(a);
            result.push_back(Path{from, arc_stack});
            arc_stack.pop_back();
            continue;
        }
        arc_stack.push_back(a);
        on_path.set(h);
        frames.push_back({h, 0});
    }
    return result;
}

const std::vector<Path>& enumerate_i_paths(const NetworkStructure& s, int i) {
    return s.bundle(i).paths;
}

Bundle bundle_of(const NetworkStructure& s, std::span<const int> pair_indices) {
    Bundle b;
    b.vertices = Bitset(s.vertex_count());
    b.arcs = Bitset(s.arc_count());
    for (int i : pair_indices) {
        const Bundle& bi = s.bundle(i);
        b.vertices |= bi.vertices;
        b.arcs |= bi.arcs;
    }
    return b;
}

Bitset boundary_arcs(const NetworkStructure& s, const Bitset& vertex_set,
                     BoundaryDirection dir) {
    if (vertex_set.size() != static_cast<std::size_t>(s.vertex_count()))
        throw std::invalid_argument("vertex set has wrong universe size");
    Bitset out(s.arc_count());
    for (int a = 0; a < s.arc_count(); ++a) {
        bool tail_in = vertex_set.test(s.arc(a).tail);
        bool head_in = vertex_set.test(s.arc(a).head);
        if (dir == BoundaryDirection::Out ? (tail_in && !head_in) : (!tail_in && head_in))
            out.set(a);
    }
    return out;
}

std::vector<int> path_vertices(const NetworkStructure& s, const Path& p) {
    std::vector<int> vs{p.first_vertex};
    for (int a : p.arcs) vs.push_back(s.arc(a).head);
    return vs;
}

int path_last_vertex(const NetworkStructure& s, const Path& p) {
    return p.arcs.empty() ? p.first_vertex : s.arc(p.arcs.back()).head;
}

bool path_is_valid(const NetworkStructure& s, const Path& p) {
    if (p.first_vertex < 0 || p.first_vertex >= s.vertex_count()) return false;
    int at = p.first_vertex;
    Bitset seen(s.vertex_count());
    seen.set(at);
    for (int a : p.arcs) {
        if (a < 0 || a >= s.arc_count()) return false;
        if (s.arc(a).tail != at) return false;
        at = s.arc(a).head;
        if (seen.test(at)) return false;
        seen.set(at);
    }
    return true;
}

std::string path_to_string(const NetworkStructure& s, const Path& p) {
    std::ostringstream os;
    os << s.vertex_name(p.first_vertex);
    for (int a : p.arcs) os << " -" << s.arc(a).name << "-> " << s.vertex_name(s.arc(a).head);
    return os.str();
}

bool path_contains_arc(const Path& p, int arc) {
    return std::find(p.arcs.begin(), p.arcs.end(), arc) != p.arcs.end();
}

}  // namespace npairs
