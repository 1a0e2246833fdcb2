#include "npairs/network_io.hpp"

#include <algorithm>
#include <sstream>

namespace npairs {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

}  // namespace

std::variant<ParsedNetwork, std::vector<ParseDiagnostic>> parse_network(const std::string& text) {
    std::vector<ParseDiagnostic> diags;
    NetworkDescription desc;
    std::vector<Rat> demands;

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        const std::string& kind = toks[0];
        if (kind == "vertex") {
            if (toks.size() != 2)
                diags.push_back({lineno, "vertex takes exactly one id"});
            else
                desc.vertices.push_back(toks[1]);
        } else if (kind == "arc") {
            if (toks.size() != 5) {
                diags.push_back({lineno, "arc takes: id tail head capacity"});
                continue;
            }
            auto cap = parse_ext(toks[4]);
            if (!cap) {
                diags.push_back({lineno, "bad capacity '" + toks[4] + "'"});
                continue;
            }
            if (cap->is_finite() && cap->value <= 0) {
                diags.push_back({lineno, "capacity must be positive"});
                continue;
            }
            Capacity c = cap->is_infinite() ? Capacity::inf() : Capacity::finite(cap->value);
            desc.arcs.push_back({toks[1], toks[2], toks[3], c});
        } else if (kind == "pair") {
            if (toks.size() != 4) {
                diags.push_back({lineno, "pair takes: source sink demand"});
                continue;
            }
            auto d = parse_rational(toks[3]);
            if (!d || *d <= 0) {
                diags.push_back({lineno, "demand must be a positive rational"});
                continue;
            }
            desc.pairs.push_back({toks[1], toks[2]});
            demands.push_back(*d);
        } else {
            diags.push_back({lineno, "unknown directive '" + kind + "'"});
        }
    }
    if (!diags.empty()) return diags;

    auto validated = NetworkStructure::validate(desc);
    if (auto* bad = std::get_if<std::vector<Violation>>(&validated)) {
        for (const auto& v : *bad) diags.push_back({0, v.rule + ": " + v.message});
        return diags;
    }
    ParsedNetwork out{std::move(std::get<NetworkStructure>(validated)), DemandVector{demands}};
    return out;
}

std::string emit_network(const NetworkStructure& s, const DemandVector& demands) {
    std::ostringstream os;
    for (int v = 0; v < s.vertex_count(); ++v) os << "vertex " << s.vertex_name(v) << "\n";
    for (int a = 0; a < s.arc_count(); ++a) {
        const Arc& arc = s.arc(a);
        os << "arc " << arc.name << " " << s.vertex_name(arc.tail) << " "
           << s.vertex_name(arc.head) << " " << ext_to_string(s.capacity(a).as_ext()) << "\n";
    }
    for (int i = 1; i <= s.pair_count(); ++i) {
        const auto& p = s.pair(i);
        os << "pair " << s.vertex_name(p.source) << " " << s.vertex_name(p.sink) << " "
           << rat_to_string(demands.of(i)) << "\n";
    }
    return os.str();
}

std::string diagnostics_to_string(const std::vector<ParseDiagnostic>& ds) {
    std::ostringstream os;
    for (const auto& d : ds) {
        if (d.line > 0) os << "line " << d.line << ": ";
        os << d.message << "\n";
    }
    return os.str();
}

}  // namespace npairs
