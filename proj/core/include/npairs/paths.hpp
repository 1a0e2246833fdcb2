#pragma once

#include <span>
#include <vector>

#include "npairs/structure.hpp"

namespace npairs {

// Endpoint of a reachability query. An arc used as the target means "a path
// to its tail"; used as the origin it means "a path from its head".
struct GraphElement {
    enum Kind { Vertex, Arc } kind = Vertex;
    int index = -1;

    static GraphElement vertex(int v) { return {Vertex, v}; }
    static GraphElement arc(int a) { return {Arc, a}; }
};

// Directed reachability, optionally avoiding an arc set. Zero-length paths
// count: reachable(v, v) is always true.
bool reachable(const NetworkStructure& s, GraphElement from, GraphElement to,
               const Bitset* avoiding = nullptr);

// Vertices reachable from any seed vertex without using arcs in `avoiding`.
Bitset reachable_set(const NetworkStructure& s, const Bitset& seeds,
                     const Bitset* avoiding = nullptr);
// Vertices that can reach `target` (full arc set).
Bitset coreachable_set(const NetworkStructure& s, int target_vertex);

// BFS shortest path from `from` to `to` over arcs not in `avoiding`,
// restricted to vertices in `allowed` when given. Neighbors are expanded in
// ascending arc-index order, so the result is deterministic.
std::optional<Path> shortest_path(const NetworkStructure& s, int from, int to,
                                  const Bitset* avoiding = nullptr,
                                  const Bitset* allowed_vertices = nullptr);

// All simple directed paths from `from` to `to`, ordered lexicographically
// by arc-index sequence. Exhaustive DFS; exponential in general, intended
// for desk-scale networks. from == to yields the single trivial path.
std::vector<Path> enumerate_paths_between(const NetworkStructure& s, int from, int to);

// All simple source-to-sink paths of pair i (1-based), lexicographic.
const std::vector<Path>& enumerate_i_paths(const NetworkStructure& s, int i);

// Subgraph spanned by all i-paths with i in J. bundle_of({}) is empty.
Bundle bundle_of(const NetworkStructure& s, std::span<const int> pair_indices);

enum class BoundaryDirection { Out, In };

// Arcs crossing the vertex set U: tail inside and head outside (Out), or
// the reverse (In).
Bitset boundary_arcs(const NetworkStructure& s, const Bitset& vertex_set,
                     BoundaryDirection dir);

// Vertex sequence of a path (length + 1 entries).
std::vector<int> path_vertices(const NetworkStructure& s, const Path& p);
int path_last_vertex(const NetworkStructure& s, const Path& p);
// Chain consistency and vertex-simplicity.
bool path_is_valid(const NetworkStructure& s, const Path& p);
std::string path_to_string(const NetworkStructure& s, const Path& p);
bool path_contains_arc(const Path& p, int arc);

}  // namespace npairs
