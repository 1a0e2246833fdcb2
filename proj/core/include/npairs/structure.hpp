#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "npairs/rational.hpp"

namespace npairs {

// Index set over arcs or vertices of one structure.
using Bitset = boost::dynamic_bitset<>;

std::vector<int> bitset_to_indices(const Bitset& b);
Bitset indices_to_bitset(std::size_t size, const std::vector<int>& idx);

// Arc capacity: finite positive rational or infinite.
struct Capacity {
    bool infinite = false;
    Rat value;

    static Capacity inf() { return Capacity{true, Rat(0)}; }
    static Capacity finite(Rat v) { return Capacity{false, std::move(v)}; }
    bool is_infinite() const { return infinite; }
    ExtRat as_ext() const { return infinite ? ExtRat::inf() : ExtRat::finite(value); }
};

struct ArcSpec {
    std::string name;
    std::string tail;
    std::string head;
    Capacity cap;
};

struct PairSpec {
    std::string source;
    std::string sink;
};

// Raw input to validation; vertices may also be introduced implicitly by arcs.
struct NetworkDescription {
    std::vector<std::string> vertices;
    std::vector<ArcSpec> arcs;
    std::vector<PairSpec> pairs;
};

struct Violation {
    std::string rule;     // stable identifier, e.g. "source-has-in-arc"
    std::string subject;  // offending vertex/arc/pair name
    std::string message;
};

struct Arc {
    std::string name;
    int tail = -1;
    int head = -1;
};

struct SourceSinkPair {
    int source = -1;
    int sink = -1;
    int source_arc = -1;  // the unique arc leaving the source
    int sink_arc = -1;    // the unique arc entering the sink
};

// A simple directed path: a start vertex plus a chain of arcs. Zero arcs
// means the single-vertex path.
struct Path {
    int first_vertex = -1;
    std::vector<int> arcs;

    int length() const { return static_cast<int>(arcs.size()); }
    bool trivial() const { return arcs.empty(); }
};

// Subgraph induced by the union of all i-paths, i in some index set.
struct Bundle {
    std::vector<Path> paths;  // only filled for single-pair bundles
    Bitset vertices;
    Bitset arcs;
};

// Validated, immutable n-pairs network structure. Vertices and arcs are
// addressed by dense indices; index order equals lexicographic name order,
// which is the tie-break order used everywhere. Pair indices are 1-based
// to match the file format and report conventions.
//
// Thread safety: all accessors are const and safe to call concurrently;
// the per-pair bundle cache is internally synchronized.
class NetworkStructure {
public:
    static std::variant<NetworkStructure, std::vector<Violation>> validate(
        const NetworkDescription& desc);

    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int arc_count() const { return static_cast<int>(arcs_.size()); }
    int pair_count() const { return static_cast<int>(pairs_.size()); }

    const std::string& vertex_name(int v) const { return vertex_names_[v]; }
    const Arc& arc(int a) const { return arcs_[a]; }
    const Capacity& capacity(int a) const { return caps_[a]; }
    const SourceSinkPair& pair(int i) const { return pairs_[i - 1]; }

    std::optional<int> find_vertex(std::string_view name) const;
    std::optional<int> find_arc(std::string_view name) const;
    int vertex_index(std::string_view name) const;  // throws on unknown name
    int arc_index(std::string_view name) const;

    const std::vector<int>& out_arcs(int v) const { return out_arcs_[v]; }
    const std::vector<int>& in_arcs(int v) const { return in_arcs_[v]; }

    bool is_source(int v) const { return source_pair_[v] != 0; }
    bool is_sink(int v) const { return sink_pair_[v] != 0; }
    bool is_internal(int v) const { return !is_source(v) && !is_sink(v); }
    // Pair index (1-based) the vertex or arc serves, 0 if none.
    int source_pair_of(int v) const { return source_pair_[v]; }
    int sink_pair_of(int v) const { return sink_pair_[v]; }
    int source_arc_pair_of(int a) const { return source_arc_pair_[a]; }
    int sink_arc_pair_of(int a) const { return sink_arc_pair_[a]; }

    Bitset finite_arcs() const;
    Bitset infinite_arcs() const;
    Bitset all_arcs() const { return Bitset(arc_count()).set(); }
    Bitset empty_arc_set() const { return Bitset(arc_count()); }
    Bitset empty_vertex_set() const { return Bitset(vertex_count()); }

    std::vector<std::string> arc_names(const Bitset& arcs) const;
    Bitset arc_set(const std::vector<std::string>& names) const;  // throws on unknown

    // All simple i-paths plus the induced subgraph; computed once per pair.
    const Bundle& bundle(int pair_index) const;
    // Union of the arc sets A^j over j in [1:upto]; empty when upto < 1.
    const Bitset& lower_bundle_arcs(int upto) const;

    // Same network, pairs permuted: perm[k] is the 1-based old index that
    // becomes pair k+1.
    NetworkStructure with_pair_order(const std::vector<int>& perm) const;
    // Same network with replaced capacities (indexed like arcs). The
    // finite/infinite partition must be preserved; throws otherwise.
    NetworkStructure with_capacities(const std::vector<Capacity>& caps) const;

    NetworkStructure(const NetworkStructure& other);
    NetworkStructure& operator=(const NetworkStructure& other);
    NetworkStructure(NetworkStructure&&) noexcept = default;
    NetworkStructure& operator=(NetworkStructure&&) noexcept = default;

private:
    NetworkStructure() = default;

    std::vector<std::string> vertex_names_;
    std::vector<Arc> arcs_;
    std::vector<Capacity> caps_;
    std::vector<SourceSinkPair> pairs_;
    std::vector<std::vector<int>> out_arcs_;
    std::vector<std::vector<int>> in_arcs_;
    std::map<std::string, int, std::less<>> vertex_index_;
    std::map<std::string, int, std::less<>> arc_index_;
    std::vector<int> source_pair_;      // per vertex
    std::vector<int> sink_pair_;        // per vertex
    std::vector<int> source_arc_pair_;  // per arc
    std::vector<int> sink_arc_pair_;    // per arc

    struct Cache {
        std::mutex mu;
        std::vector<std::unique_ptr<Bundle>> bundles;      // per pair
        std::vector<std::unique_ptr<Bitset>> lower_arcs;   // per prefix length
    };
    mutable std::unique_ptr<Cache> cache_;

    void build_indices();
};

std::string violations_to_string(const std::vector<Violation>& vs);

}  // namespace npairs
