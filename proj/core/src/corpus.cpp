#include "npairs/corpus.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "npairs/rational.hpp"

namespace npairs {

namespace {

struct FileBuilder {
    std::set<std::string> vertices;
    std::ostringstream arcs, pairs;
    int pair_no = 0;

    void vertex(const std::string& v) { vertices.insert(v); }
    void arc(const std::string& id, const std::string& tail, const std::string& head,
             const std::string& cap) {
        vertex(tail);
        vertex(head);
        arcs << "arc " << id << " " << tail << " " << head << " " << cap << "\n";
    }
    // Attaches auxiliary terminals around internal anchor vertices.
    void attach_pair(const std::string& src_anchor, const std::string& snk_anchor,
                     const std::string& demand) {
        ++pair_no;
        std::string sigma = "sigma" + std::to_string(pair_no);
        std::string tau = "tau" + std::to_string(pair_no);
        arc("out" + std::to_string(pair_no), sigma, src_anchor, "inf");
        arc("in" + std::to_string(pair_no), snk_anchor, tau, "inf");
        pairs << "pair " << sigma << " " << tau << " " << demand << "\n";
    }
    std::string text() const {
        std::ostringstream os;
        for (const auto& v : vertices) os << "vertex " << v << "\n";
        os << arcs.str() << pairs.str();
        return os.str();
    }
};

std::string demand_at(const std::vector<std::string>& demands, std::size_t i) {
    if (i < demands.size()) return demands[i];
    return "1";
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int to_int(const std::string& text) {
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (...) {
        throw std::invalid_argument("bad integer '" + text + "'");
    }
}

}  // namespace

std::string butterfly_text() {
    FileBuilder b;
    b.arc("delta", "s1", "a", "1");
    b.arc("phi", "s2", "a", "1");
    b.arc("alpha", "a", "b", "1");
    b.arc("beta", "b", "t1", "1");
    b.arc("gamma", "b", "t2", "1");
    b.arc("epsilon", "s1", "t2", "1");
    b.arc("chi", "s2", "t1", "1");
    b.attach_pair("s1", "t1", "1");
    b.attach_pair("s2", "t2", "1");
    return b.text();
}

std::string fig5_text() {
    FileBuilder b;
    b.arc("alpha", "b", "a", "1");
    b.arc("beta", "a", "d", "1");
    b.arc("gamma", "b", "d", "1");
    b.arc("epsilon", "d", "e", "1");
    b.attach_pair("a", "e", "1");
    b.attach_pair("b", "d", "1");
    return b.text();
}

std::string fig6_text() {
    FileBuilder b;
    b.arc("epsilon", "s", "u", "1");
    b.arc("beta", "u", "v", "1");
    b.arc("gamma", "v", "w", "1");
    b.arc("phi", "u", "w", "1");
    b.arc("rho", "v", "u", "1");
    b.attach_pair("s", "v", "1");
    b.attach_pair("u", "w", "1");
    return b.text();
}

std::string line_text(int k, const std::vector<std::pair<int, int>>& pairs,
                      const std::vector<std::string>& demands) {
    if (k < 1) throw std::invalid_argument("line needs k >= 1");
    FileBuilder b;
    b.vertex("v1");
    for (int i = 1; i < k; ++i)
        b.arc("e" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i + 1), "1");
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto [a, t] = pairs[p];
        if (a < 1 || a > k || t < 1 || t > k || a > t)
            throw std::invalid_argument("line pair attachments must satisfy 1 <= a <= b <= k");
        b.attach_pair("v" + std::to_string(a), "v" + std::to_string(t), demand_at(demands, p));
    }
    return b.text();
}

std::string cycle_text(int k, const std::vector<std::pair<int, int>>& pairs,
                       const std::vector<std::string>& demands) {
    if (k < 2) throw std::invalid_argument("cycle needs k >= 2");
    FileBuilder b;
    for (int i = 1; i <= k; ++i)
        b.arc("e" + std::to_string(i), "v" + std::to_string(i),
              "v" + std::to_string(i % k + 1), "1");
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto [a, t] = pairs[p];
        if (a < 1 || a > k || t < 1 || t > k)
            throw std::invalid_argument("cycle pair attachments out of range");
        b.attach_pair("v" + std::to_string(a), "v" + std::to_string(t), demand_at(demands, p));
    }
    return b.text();
}

std::string tree_text(const std::vector<std::pair<int, int>>& edges,
                      const std::vector<std::pair<int, int>>& pairs,
                      const std::vector<std::string>& demands) {
    if (edges.empty()) throw std::invalid_argument("tree needs at least one edge");
    FileBuilder b;
    int arc_no = 0;
    for (auto [p, c] : edges)
        b.arc("e" + std::to_string(++arc_no), "v" + std::to_string(p), "v" + std::to_string(c),
              "1");
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto [a, t] = pairs[p];
        b.attach_pair("v" + std::to_string(a), "v" + std::to_string(t), demand_at(demands, p));
    }
    return b.text();
}

std::string tree_of_cycles_text(const std::vector<int>& sizes,
                                const std::vector<CycleAttachment>& attachments,
                                const std::vector<std::pair<std::string, std::string>>& pairs,
                                const std::vector<std::string>& demands) {
    if (sizes.empty()) throw std::invalid_argument("need at least one cycle");
    if (attachments.size() + 1 != sizes.size())
        throw std::invalid_argument("need one attachment per cycle after the first");
    // Vertex names per cycle; shared gateways reuse the parent's name.
    std::vector<std::vector<std::string>> names(sizes.size());
    FileBuilder b;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        if (sizes[c] < 2) throw std::invalid_argument("cycles need >= 2 vertices");
        std::string cn = "c" + std::to_string(c + 1);
        names[c].resize(sizes[c]);
        int first = 0;
        if (c > 0) {
            const auto& at = attachments[c - 1];
            if (at.parent_cycle < 1 || at.parent_cycle > static_cast<int>(c))
                throw std::invalid_argument("attachment parent must be an earlier cycle");
            const auto& pnames = names[at.parent_cycle - 1];
            if (at.parent_vertex < 0 || at.parent_vertex >= static_cast<int>(pnames.size()))
                throw std::invalid_argument("attachment vertex out of range");
            names[c][0] = pnames[at.parent_vertex];
            first = 1;
        }
        for (int v = first; v < sizes[c]; ++v) names[c][v] = cn + "_" + std::to_string(v);
        for (int v = 0; v < sizes[c]; ++v)
            b.arc("a" + std::to_string(c + 1) + "_" + std::to_string(v), names[c][v],
                  names[c][(v + 1) % sizes[c]], "1");
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (!b.vertices.count(pairs[p].first) || !b.vertices.count(pairs[p].second))
            throw std::invalid_argument("pair attachment names an unknown vertex");
        b.attach_pair(pairs[p].first, pairs[p].second, demand_at(demands, p));
    }
    return b.text();
}

std::vector<std::string> corpus_names() {
    return {"butterfly", "fig5", "fig6", "line", "cycle", "tree", "tree_of_cycles"};
}

std::string corpus_text(const std::string& name,
                        const std::map<std::string, std::string>& params) {
    auto get = [&](const std::string& key) -> const std::string& {
        auto it = params.find(key);
        if (it == params.end()) throw std::invalid_argument("missing parameter '" + key + "'");
        return it->second;
    };
    auto demands = [&]() -> std::vector<std::string> {
        auto it = params.find("demands");
        if (it == params.end()) return {};
        auto ds = split(it->second, ',');
        for (const auto& d : ds) {
            auto r = parse_rational(d);
            if (!r || *r <= 0) throw std::invalid_argument("bad demand '" + d + "'");
        }
        return ds;
    };
    auto int_pairs = [&](const std::string& text) {
        std::vector<std::pair<int, int>> out;
        for (const auto& item : split(text, ',')) {
            auto ab = split(item, ':');
            if (ab.size() != 2) throw std::invalid_argument("bad pair spec '" + item + "'");
            out.push_back({to_int(ab[0]), to_int(ab[1])});
        }
        return out;
    };

    if (name == "butterfly") return butterfly_text();
    if (name == "fig5") return fig5_text();
    if (name == "fig6") return fig6_text();
    if (name == "line") return line_text(to_int(get("k")), int_pairs(get("pairs")), demands());
    if (name == "cycle") return cycle_text(to_int(get("k")), int_pairs(get("pairs")), demands());
    if (name == "tree") {
        std::vector<std::pair<int, int>> edges;
        for (const auto& item : split(get("edges"), ',')) {
            auto pc = split(item, '>');
            if (pc.size() != 2) throw std::invalid_argument("bad edge spec '" + item + "'");
            edges.push_back({to_int(pc[0]), to_int(pc[1])});
        }
        return tree_text(edges, int_pairs(get("pairs")), demands());
    }
    if (name == "tree_of_cycles") {
        std::vector<int> sizes;
        for (const auto& x : split(get("sizes"), ',')) sizes.push_back(to_int(x));
        std::vector<CycleAttachment> attach;
        if (auto it = params.find("attach"); it != params.end()) {
            for (const auto& item : split(it->second, ',')) {
                auto pv = split(item, '@');
                if (pv.size() != 2) throw std::invalid_argument("bad attach spec '" + item + "'");
                attach.push_back({to_int(pv[0]), to_int(pv[1])});
            }
        }
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& item : split(get("pairs"), ',')) {
            auto st = split(item, ':');
            if (st.size() != 2) throw std::invalid_argument("bad pair spec '" + item + "'");
            pairs.push_back({st[0], st[1]});
        }
        return tree_of_cycles_text(sizes, attach, pairs, demands());
    }
    throw std::invalid_argument("unknown corpus name '" + name + "'");
}

}  // namespace npairs
