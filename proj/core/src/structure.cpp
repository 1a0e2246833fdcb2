#include "npairs/structure.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "npairs/paths.hpp"

namespace npairs {

std::vector<int> bitset_to_indices(const Bitset& b) {
    std::vector<int> out;
    for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i))
        out.push_back(static_cast<int>(i));
    return out;
}

Bitset indices_to_bitset(std::size_t size, const std::vector<int>& idx) {
    Bitset b(size);
    for (int i : idx) b.set(i);
    return b;
}

namespace {

// Union-find over vertex indices, for the connectivity check.
struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::variant<NetworkStructure, std::vector<Violation>> NetworkStructure::validate(
    const NetworkDescription& desc) {
    std::vector<Violation> bad;
    auto flag = [&](std::string rule, std::string subject, std::string msg) {
        bad.push_back({std::move(rule), std::move(subject), std::move(msg)});
    };

    // Collect vertex names (explicit plus arc endpoints and pair terminals).
    std::set<std::string> vset(desc.vertices.begin(), desc.vertices.end());
    for (const auto& a : desc.arcs) {
        vset.insert(a.tail);
        vset.insert(a.head);
    }
    for (const auto& p : desc.pairs) {
        vset.insert(p.source);
        vset.insert(p.sink);
    }

    NetworkStructure s;
    s.vertex_names_.assign(vset.begin(), vset.end());
    for (int i = 0; i < s.vertex_count(); ++i) s.vertex_index_[s.vertex_names_[i]] = i;

    // Arcs sorted by name; duplicates by name or by ordered endpoint pair
    // are violations.
    std::vector<ArcSpec> arcs = desc.arcs;
    std::sort(arcs.begin(), arcs.end(),
              [](const ArcSpec& a, const ArcSpec& b) { return a.name < b.name; });
    std::set<std::pair<int, int>> endpoint_seen;
    for (const auto& a : arcs) {
        if (s.arc_index_.count(a.name)) {
            flag("duplicate-arc-id", a.name, "arc id '" + a.name + "' appears twice");
            continue;
        }
        int tail = s.vertex_index_.at(a.tail);
        int head = s.vertex_index_.at(a.head);
        if (tail == head)
            flag("self-loop", a.name, "arc '" + a.name + "' leaves and enters vertex '" + a.tail + "'");
        if (!endpoint_seen.insert({tail, head}).second)
            flag("parallel-arc", a.name,
                 "second arc from '" + a.tail + "' to '" + a.head + "' ('" + a.name + "')");
        if (!a.cap.is_infinite() && a.cap.value <= 0)
            flag("nonpositive-capacity", a.name,
                 "arc '" + a.name + "' must have positive capacity");
        s.arc_index_[a.name] = static_cast<int>(s.arcs_.size());
        s.arcs_.push_back({a.name, tail, head});
        s.caps_.push_back(a.cap);
    }

    s.build_indices();

    // Source/sink bookkeeping.
    s.source_pair_.assign(s.vertex_count(), 0);
    s.sink_pair_.assign(s.vertex_count(), 0);
    s.source_arc_pair_.assign(s.arc_count(), 0);
    s.sink_arc_pair_.assign(s.arc_count(), 0);
    std::set<int> terminal_seen;
    int pair_no = 0;
    for (const auto& p : desc.pairs) {
        ++pair_no;
        const std::string label = "pair " + std::to_string(pair_no);
        int src = s.vertex_index_.at(p.source);
        int snk = s.vertex_index_.at(p.sink);
        if (src == snk)
            flag("pair-endpoints-equal", label,
                 label + ": source and sink are the same vertex '" + p.source + "'");
        if (!terminal_seen.insert(src).second)
            flag("terminal-reused", p.source,
                 "vertex '" + p.source + "' serves more than one pair endpoint");
        if (!terminal_seen.insert(snk).second && src != snk)
            flag("terminal-reused", p.sink,
                 "vertex '" + p.sink + "' serves more than one pair endpoint");

        SourceSinkPair pr;
        pr.source = src;
        pr.sink = snk;
        if (!s.in_arcs_[src].empty())
            flag("source-has-in-arc", p.source,
                 "source '" + p.source + "' has in-arc '" + s.arcs_[s.in_arcs_[src][0]].name + "'");
        if (s.out_arcs_[src].size() != 1)
            flag("source-out-degree", p.source,
                 "source '" + p.source + "' must have exactly one out-arc, has " +
                     std::to_string(s.out_arcs_[src].size()));
        else {
            pr.source_arc = s.out_arcs_[src][0];
            if (!s.caps_[pr.source_arc].is_infinite())
                flag("source-arc-finite", s.arcs_[pr.source_arc].name,
                     "arc '" + s.arcs_[pr.source_arc].name + "' leaving source '" + p.source +
                         "' must have infinite capacity");
        }
        if (!s.out_arcs_[snk].empty())
            flag("sink-has-out-arc", p.sink,
                 "sink '" + p.sink + "' has out-arc '" + s.arcs_[s.out_arcs_[snk][0]].name + "'");
        if (s.in_arcs_[snk].size() != 1)
            flag("sink-in-degree", p.sink,
                 "sink '" + p.sink + "' must have exactly one in-arc, has " +
                     std::to_string(s.in_arcs_[snk].size()));
        else
            pr.sink_arc = s.in_arcs_[snk][0];

        s.pairs_.push_back(pr);
        if (s.source_pair_[src] == 0) s.source_pair_[src] = pair_no;
        if (s.sink_pair_[snk] == 0) s.sink_pair_[snk] = pair_no;
        if (pr.source_arc >= 0) s.source_arc_pair_[pr.source_arc] = pair_no;
        if (pr.sink_arc >= 0) s.sink_arc_pair_[pr.sink_arc] = pair_no;
    }

    // Sources and sinks must be disjoint vertex sets.
    for (int v = 0; v < s.vertex_count(); ++v)
        if (s.source_pair_[v] != 0 && s.sink_pair_[v] != 0)
            flag("source-is-sink", s.vertex_names_[v],
                 "vertex '" + s.vertex_names_[v] + "' is both a source and a sink");

    // Connectivity of the underlying undirected graph.
    if (s.vertex_count() > 0) {
        DisjointSets ds(s.vertex_count());
        for (const auto& a : s.arcs_) ds.unite(a.tail, a.head);
        int root = ds.find(0);
        for (int v = 1; v < s.vertex_count(); ++v)
            if (ds.find(v) != root) {
                flag("not-connected", s.vertex_names_[v],
                     "vertex '" + s.vertex_names_[v] + "' is disconnected from '" +
                         s.vertex_names_[0] + "'");
                break;
            }
    }
    if (desc.pairs.empty()) flag("no-pairs", "-", "at least one source-sink pair is required");

    if (!bad.empty()) return bad;

    // sigma_i must reach tau_i; needs the arc tables built above.
    for (int i = 1; i <= s.pair_count(); ++i) {
        const auto& pr = s.pair(i);
        if (!reachable(s, GraphElement::vertex(pr.source), GraphElement::vertex(pr.sink))) {
            flag("sink-unreachable", "pair " + std::to_string(i),
                 "sink '" + s.vertex_names_[pr.sink] + "' is unreachable from source '" +
                     s.vertex_names_[pr.source] + "'");
        }
    }
    if (!bad.empty()) return bad;

    s.cache_ = std::make_unique<Cache>();
    s.cache_->bundles.resize(s.pair_count() + 1);
    s.cache_->lower_arcs.resize(s.pair_count() + 1);
    return s;
}

void NetworkStructure::build_indices() {
    out_arcs_.assign(vertex_count(), {});
    in_arcs_.assign(vertex_count(), {});
    for (int a = 0; a < arc_count(); ++a) {
        out_arcs_[arcs_[a].tail].push_back(a);
        in_arcs_[arcs_[a].head].push_back(a);
    }
    // Arc indices are already in name order, so these lists are too.
}

std::optional<int> NetworkStructure::find_vertex(std::string_view name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> NetworkStructure::find_arc(std::string_view name) const {
    auto it = arc_index_.find(name);
    if (it == arc_index_.end()) return std::nullopt;
    return it->second;
}

int NetworkStructure::vertex_index(std::string_view name) const {
    auto v = find_vertex(name);
    if (!v) throw std::invalid_argument("unknown vertex '" + std::string(name) + "'");
    return *v;
}

int NetworkStructure::arc_index(std::string_view name) const {
    auto a = find_arc(name);
    if (!a) throw std::invalid_argument("unknown arc '" + std::string(name) + "'");
    return *a;
}

Bitset NetworkStructure::finite_arcs() const {
    Bitset b(arc_count());
    for (int a = 0; a < arc_count(); ++a)
        if (!caps_[a].is_infinite()) b.set(a);
    return b;
}

Bitset NetworkStructure::infinite_arcs() const { return ~finite_arcs(); }

std::vector<std::string> NetworkStructure::arc_names(const Bitset& arcs) const {
    std::vector<std::string> out;
    for (auto i = arcs.find_first(); i != Bitset::npos; i = arcs.find_next(i))
        out.push_back(arcs_[i].name);
    return out;
}

Bitset NetworkStructure::arc_set(const std::vector<std::string>& names) const {
    Bitset b(arc_count());
    for (const auto& n : names) b.set(arc_index(n));
    return b;
}

const Bundle& NetworkStructure::bundle(int pair_index) const {
    if (pair_index < 1 || pair_index > pair_count())
        throw std::invalid_argument("pair index out of range");
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto& slot = cache_->bundles[pair_index];
    if (!slot) {
        auto b = std::make_unique<Bundle>();
        const auto& pr = pair(pair_index);
        b->paths = enumerate_paths_between(*this, pr.source, pr.sink);
        b->vertices = Bitset(vertex_count());
        b->arcs = Bitset(arc_count());
        for (const auto& p : b->paths) {
            int v = p.first_vertex;
            b->vertices.set(v);
            for (int a : p.arcs) {
                b->arcs.set(a);
                b->vertices.set(arcs_[a].head);
            }
        }
        slot = std::move(b);
    }
    return *slot;
}

const Bitset& NetworkStructure::lower_bundle_arcs(int upto) const {
    if (upto < 0) upto = 0;
    if (upto > pair_count()) upto = pair_count();
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        if (cache_->lower_arcs[upto]) return *cache_->lower_arcs[upto];
    }
    // Build outside the lock; bundle() takes it internally.
    auto acc = std::make_unique<Bitset>(arc_count());
    for (int j = 1; j <= upto; ++j) *acc |= bundle(j).arcs;
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto& slot = cache_->lower_arcs[upto];
    if (!slot) slot = std::move(acc);
    return *slot;
}

NetworkStructure NetworkStructure::with_pair_order(const std::vector<int>& perm) const {
    if (perm.size() != static_cast<std::size_t>(pair_count()))
        throw std::invalid_argument("pair permutation has wrong length");
    std::vector<bool> seen(pair_count() + 1, false);
    NetworkStructure s(*this);
    s.pairs_.clear();
    for (int old_index : perm) {
        if (old_index < 1 || old_index > pair_count() || seen[old_index])
            throw std::invalid_argument("invalid pair permutation");
        seen[old_index] = true;
        s.pairs_.push_back(pair(old_index));
    }
    std::fill(s.source_pair_.begin(), s.source_pair_.end(), 0);
    std::fill(s.sink_pair_.begin(), s.sink_pair_.end(), 0);
    std::fill(s.source_arc_pair_.begin(), s.source_arc_pair_.end(), 0);
    std::fill(s.sink_arc_pair_.begin(), s.sink_arc_pair_.end(), 0);
    for (int i = 1; i <= s.pair_count(); ++i) {
        const auto& pr = s.pairs_[i - 1];
        s.source_pair_[pr.source] = i;
        s.sink_pair_[pr.sink] = i;
        s.source_arc_pair_[pr.source_arc] = i;
        s.sink_arc_pair_[pr.sink_arc] = i;
    }
    return s;
}

NetworkStructure NetworkStructure::with_capacities(const std::vector<Capacity>& caps) const {
    if (caps.size() != static_cast<std::size_t>(arc_count()))
        throw std::invalid_argument("capacity vector has wrong length");
    NetworkStructure s(*this);
    for (int a = 0; a < arc_count(); ++a) {
        if (caps[a].is_infinite() != caps_[a].is_infinite())
            throw std::invalid_argument("capacity replacement changes the finite/infinite "
                                        "partition at arc '" + arcs_[a].name + "'");
        if (!caps[a].is_infinite() && caps[a].value <= 0)
            throw std::invalid_argument("capacity must be positive at arc '" + arcs_[a].name + "'");
    }
    s.caps_ = caps;
    return s;
}

NetworkStructure::NetworkStructure(const NetworkStructure& other)
    : vertex_names_(other.vertex_names_),
      arcs_(other.arcs_),
      caps_(other.caps_),
      pairs_(other.pairs_),
      out_arcs_(other.out_arcs_),
      in_arcs_(other.in_arcs_),
      vertex_index_(other.vertex_index_),
      arc_index_(other.arc_index_),
      source_pair_(other.source_pair_),
      sink_pair_(other.sink_pair_),
      source_arc_pair_(other.source_arc_pair_),
      sink_arc_pair_(other.sink_arc_pair_),
      cache_(std::make_unique<Cache>()) {
    cache_->bundles.resize(pairs_.size() + 1);
    cache_->lower_arcs.resize(pairs_.size() + 1);
}

NetworkStructure& NetworkStructure::operator=(const NetworkStructure& other) {
    if (this != &other) {
        NetworkStructure tmp(other);
        *this = std::move(tmp);
    }
    return *this;
}

std::string violations_to_string(const std::vector<Violation>& vs) {
    std::ostringstream os;
    for (const auto& v : vs) os << v.rule << ": " << v.message << "\n";
    return os.str();
}

}  // namespace npairs
