#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace npairs {

// Built-in networks and generator families, emitted in the network file
// format. Internal arcs default to capacity 1, sink arcs to infinite;
// source arcs are always infinite. Pair demands default to 1.
//
// Greek arc names are spelled out: alpha beta gamma delta epsilon phi chi
// rho. Terminal arcs are out<i> / in<i>.

std::string butterfly_text();
std::string fig5_text();
std::string fig6_text();

// Directed line v1 -> v2 -> ... -> vk; pairs attach (source at, sink at)
// by vertex number, source position not after the sink position.
std::string line_text(int k, const std::vector<std::pair<int, int>>& pairs,
                      const std::vector<std::string>& demands = {});
// Directed cycle over k vertices; any attachment works.
std::string cycle_text(int k, const std::vector<std::pair<int, int>>& pairs,
                       const std::vector<std::string>& demands = {});
// Rooted tree given as parent>child vertex-number edges.
std::string tree_text(const std::vector<std::pair<int, int>>& edges,
                      const std::vector<std::pair<int, int>>& pairs,
                      const std::vector<std::string>& demands = {});

// Directed cycles glued into a tree through shared gateway vertices.
// Cycle 1 has vertices c1_0..c1_{s-1}; cycle j >= 2 attaches to a parent
// cycle at one of its vertices, reusing that vertex as its own position 0.
struct CycleAttachment {
    int parent_cycle = 1;      // 1-based
    int parent_vertex = 0;     // index within the parent cycle
};
std::string tree_of_cycles_text(const std::vector<int>& sizes,
                                const std::vector<CycleAttachment>& attachments,
                                const std::vector<std::pair<std::string, std::string>>& pairs,
                                const std::vector<std::string>& demands = {});

// CLI-facing dispatch: name plus key=value parameters. Throws
// std::invalid_argument on unknown names or malformed parameters.
std::string corpus_text(const std::string& name,
                        const std::map<std::string, std::string>& params);

std::vector<std::string> corpus_names();

}  // namespace npairs
