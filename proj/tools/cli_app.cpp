#include "cli_app.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "npairs/codec.hpp"
#include "npairs/corpus.hpp"
#include "npairs/dot_export.hpp"
#include "npairs/network_io.hpp"
#include "npairs/routability.hpp"

namespace npairs {

namespace {

constexpr int kOk = 0, kNegative = 1, kUsage = 2;

std::optional<ParsedNetwork> load(const std::string& file, std::ostream& err) {
    std::ifstream in(file);
    if (!in) {
        err << "cannot open '" << file << "'\n";
        return std::nullopt;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    auto parsed = parse_network(buf.str());
    if (auto* ds = std::get_if<std::vector<ParseDiagnostic>>(&parsed)) {
        err << diagnostics_to_string(*ds);
        return std::nullopt;
    }
    return std::move(std::get<ParsedNetwork>(parsed));
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string name_set(const NetworkStructure& s, const std::vector<int>& arcs) {
    std::string out = "{";
    for (std::size_t i = 0; i < arcs.size(); ++i)
        out += (i ? "," : "") + s.arc(arcs[i]).name;
    return out + "}";
}

std::string vertex_set(const NetworkStructure& s, const std::vector<int>& verts) {
    std::string out = "{";
    for (std::size_t i = 0; i < verts.size(); ++i)
        out += (i ? "," : "") + s.vertex_name(verts[i]);
    return out + "}";
}

std::string order_str(const std::vector<int>& order) {
    std::string out;
    for (std::size_t i = 0; i < order.size(); ++i)
        out += (i ? "," : "") + std::to_string(order[i]);
    return out;
}

void print_witness(std::ostream& out, const NetworkStructure& s, const CutWitness& w) {
    out << "witness.pair " << w.pair << "\n";
    out << "witness.outgoing " << name_set(s, w.outgoing) << "\n";
    out << "witness.cut " << vertex_set(s, w.cut_vertices) << "\n";
    out << "witness.detail " << w.detail << "\n";
}

std::optional<NetworkStructure> apply_order(const NetworkStructure& s, const std::string& order,
                                            std::vector<int>& perm, std::ostream& err) {
    perm.clear();
    if (order.empty()) {
        for (int i = 1; i <= s.pair_count(); ++i) perm.push_back(i);
        return s;
    }
    for (const auto& tok : split_list(order)) {
        try {
            perm.push_back(std::stoi(tok));
        } catch (...) {
            err << "bad order entry '" << tok << "'\n";
            return std::nullopt;
        }
    }
    try {
        return s.with_pair_order(perm);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return std::nullopt;
    }
}

int cmd_validate(const std::string& file, std::ostream& out, std::ostream& err) {
    std::ifstream in(file);
    if (!in) {
        err << "cannot open '" << file << "'\n";
        return kUsage;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    auto parsed = parse_network(buf.str());
    if (auto* ds = std::get_if<std::vector<ParseDiagnostic>>(&parsed)) {
        bool syntax = false;
        for (const auto& d : *ds)
            if (d.line > 0) syntax = true;
        err << diagnostics_to_string(*ds);
        out << "valid no\n";
        return syntax ? kUsage : kNegative;
    }
    const auto& s = std::get<ParsedNetwork>(parsed).structure;
    out << "valid yes\n";
    out << "vertices " << s.vertex_count() << "\n";
    out << "arcs " << s.arc_count() << "\n";
    out << "pairs " << s.pair_count() << "\n";
    return kOk;
}

int cmd_analyze(const std::string& file, const std::string& order, bool search,
                const std::string& level_tok, int max_search, std::ostream& out,
                std::ostream& err) {
    auto parsed = load(file, err);
    if (!parsed) return kUsage;
    std::vector<int> perm;
    auto s = apply_order(parsed->structure, order, perm, err);
    if (!s) return kUsage;

    std::optional<CertLevel> only;
    if (level_tok != "auto") {
        only = level_from_token(level_tok);
        if (!only) {
            err << "unknown level '" << level_tok << "'\n";
            return kUsage;
        }
    }

    if (search) {
        OrderingSearch found = find_dd_ordering(*s, max_search);
        if (!found.error.empty()) {
            err << found.error << "\n";
            return kUsage;
        }
        if (found.ordering) {
            out << "verdict downward-dominated\n";
            out << "order " << order_str(*found.ordering) << "\n";
            out << "certified_by " << level_token(*found.report->certified_by) << "\n";
            return kOk;
        }
        out << "verdict not-downward-dominated\n";
        out << "orderings-tried all\n";
        return kNegative;
    }

    out << "order " << order_str(perm) << "\n";
    AnalysisReport rep = analyze(*s, only);
    for (const auto& lvl : rep.levels)
        out << "checked " << level_token(lvl.level) << " " << (lvl.holds ? "pass" : "fail")
            << "\n";
    if (rep.downward_dominated) {
        out << "verdict downward-dominated\n";
        out << "certified_by " << level_token(*rep.certified_by) << "\n";
        return kOk;
    }
    out << "verdict not-downward-dominated\n";
    if (rep.witness) print_witness(out, *s, *rep.witness);
    return kNegative;
}

int cmd_sdom(const std::string& file, const std::string& arcs_list, std::ostream& out,
             std::ostream& err) {
    auto parsed = load(file, err);
    if (!parsed) return kUsage;
    const auto& s = parsed->structure;
    Bitset base(s.arc_count());
    for (const auto& name : split_list(arcs_list)) {
        auto a = s.find_arc(name);
        if (!a) {
            err << "unknown arc '" << name << "'\n";
            return kUsage;
        }
        base.set(*a);
    }
    Bitset closed = sdom(s, base);
    out << "sdom " << name_set(s, bitset_to_indices(closed)) << "\n";
    return kOk;
}

int cmd_flow(const std::string& file, bool strict, std::ostream& out, std::ostream& err) {
    auto parsed = load(file, err);
    if (!parsed) return kUsage;
    const auto& s = parsed->structure;
    McfResult r = solve_mcf(s, parsed->demands, nullptr, strict);
    if (!r.feasible) {
        out << "feasible no\n";
        return kNegative;
    }
    out << "feasible yes\n";
    if (strict) {
        if (r.slack_unbounded) out << "slack unbounded\n";
        else out << "slack " << rat_to_string(*r.slack) << "\n";
        out << "strictly-feasible " << (r.strictly_feasible ? "yes" : "no") << "\n";
    }
    for (int a = 0; a < s.arc_count(); ++a)
        for (int j = 1; j <= s.pair_count(); ++j)
            if (r.flow->at(j, a) != 0)
                out << "flow " << s.arc(a).name << " " << j << " "
                    << rat_to_string(r.flow->at(j, a)) << "\n";
    return kOk;
}

int cmd_construct(const std::string& file, const std::string& order, std::ostream& out,
                  std::ostream& err) {
    auto parsed = load(file, err);
    if (!parsed) return kUsage;
    std::vector<int> perm;
    auto s = apply_order(parsed->structure, order, perm, err);
    if (!s) return kUsage;
    DemandVector h;
    for (int i : perm) h.values.push_back(parsed->demands.of(i));

    SequentialResult r = sequential_construct(*s, h);
    for (const auto& step : r.steps) {
        out << "step " << step.pair << " case " << step.case_taken;
        if (step.case_taken == 2)
            out << " value " << rat_to_string(step.max_flow_value);
        if (step.case_taken == 1 || (step.case_taken == 2 && step.scale != 0))
            out << " scale " << rat_to_string(step.scale);
        out << "\n";
    }
    if (!r.success) {
        out << "constructed no\n";
        out << "failed_at " << r.failed_at << "\n";
        const auto& step = r.steps.back();
        out << "failed.outgoing " << name_set(*s, step.outgoing) << "\n";
        out << "failed.cut " << vertex_set(*s, bitset_to_indices(step.min_cut_vertices)) << "\n";
        return kNegative;
    }
    out << "constructed yes\n";
    for (int a = 0; a < s->arc_count(); ++a)
        for (int j = 1; j <= s->pair_count(); ++j)
            if (r.flow->at(j, a) != 0)
                out << "flow " << s->arc(a).name << " " << j << " "
                    << rat_to_string(r.flow->at(j, a)) << "\n";
    return kOk;
}

int cmd_simulate(const std::string& file, std::uint64_t blocks, int forced_m,
                 std::uint64_t seed, const std::string& eps_text, std::ostream& out,
                 std::ostream& err) {
    auto parsed = load(file, err);
    if (!parsed) return kUsage;
    const auto& s = parsed->structure;
    auto eps = parse_rational(eps_text);
    if (!eps || *eps <= 0) {
        err << "bad epsilon '" << eps_text << "'\n";
        return kUsage;
    }

    McfResult mcf = solve_mcf(s, parsed->demands);
    if (!mcf.feasible) {
        out << "feasible no\n";
        return kNegative;
    }

    // Default sources: one uniform 2^p-ary symbol every q steps realizes an
    // entropy rate of exactly p/q.
    std::vector<SourceModel> sources;
    for (int i = 1; i <= s.pair_count(); ++i) {
        const Rat& h = parsed->demands.of(i);
        Int num = numerator(h), den = denominator(h);
        if (num > 20 || den > 1024) {
            err << "demand " << rat_to_string(h)
                << " needs an impractically large default source; use p/q with p <= 20\n";
            return kUsage;
        }
        sources.push_back(SourceModel::uniform_power_of_two(static_cast<int>(num),
                                                            static_cast<int>(den)));
    }

    std::optional<int> forced;
    if (forced_m > 0) forced = forced_m;
    auto built = build_schedule(s, *mcf.flow, sources, *eps, forced);
    if (auto* msg = std::get_if<std::string>(&built)) {
        err << *msg << "\n";
        return kNegative;
    }
    const auto& schedule = std::get<RoutingSchedule>(built);
    SimReport rep = simulate(s, schedule, blocks, seed);
    out << rep.to_text(s);
    for (const auto& pr : rep.pairs)
        if (!pr.reconstruction_ok) return kNegative;
    return kOk;
}

int cmd_export_dot(const std::string& file, const std::string& harcs, const std::string& hverts,
                   std::ostream& out, std::ostream& err) {
    auto parsed = load(file, err);
    if (!parsed) return kUsage;
    const auto& s = parsed->structure;
    Bitset arcs(s.arc_count()), verts(s.vertex_count());
    for (const auto& name : split_list(harcs)) {
        auto a = s.find_arc(name);
        if (!a) {
            err << "unknown arc '" << name << "'\n";
            return kUsage;
        }
        arcs.set(*a);
    }
    for (const auto& name : split_list(hverts)) {
        auto v = s.find_vertex(name);
        if (!v) {
            err << "unknown vertex '" << name << "'\n";
            return kUsage;
        }
        verts.set(*v);
    }
    out << export_dot(s, harcs.empty() ? nullptr : &arcs, hverts.empty() ? nullptr : &verts);
    return kOk;
}

int cmd_corpus(const std::string& name, const std::vector<std::string>& kv, std::ostream& out,
               std::ostream& err) {
    std::map<std::string, std::string> params;
    for (const auto& item : kv) {
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            err << "corpus parameters take the form key=value\n";
            return kUsage;
        }
        params[item.substr(0, eq)] = item.substr(eq + 1);
    }
    try {
        out << corpus_text(name, params);
        return kOk;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"structural routability of n-pairs information networks"};
    app.require_subcommand(1);

    std::string file, order, level = "auto", arcs_list, harcs, hverts, eps = "1";
    bool search = false, strict = false;
    int max_search = 8, forced_m = 0;
    std::uint64_t blocks = 1000, seed = 1;
    std::string corpus_name;
    std::vector<std::string> corpus_params;

    auto* validate = app.add_subcommand("validate", "check a network file");
    validate->add_option("file", file)->required();

    auto* analyze_cmd = app.add_subcommand("analyze", "decide downward dominance");
    analyze_cmd->add_option("file", file)->required();
    analyze_cmd->add_option("--order", order, "pair order, e.g. 2,1");
    analyze_cmd->add_flag("--search-orderings", search, "try every pair order");
    analyze_cmd->add_option("--level", level, "auto|l43|l42|l41|full");
    analyze_cmd->add_option("--max-order-search", max_search, "permutation cap");

    auto* sdom_cmd = app.add_subcommand("sdom", "structural dominance closure");
    sdom_cmd->add_option("file", file)->required();
    sdom_cmd->add_option("--arcs", arcs_list, "comma-separated arc names")->required();

    auto* flow_cmd = app.add_subcommand("flow", "multicommodity feasibility");
    flow_cmd->add_option("file", file)->required();
    flow_cmd->add_flag("--strict", strict, "maximize the uniform capacity slack");

    auto* construct_cmd = app.add_subcommand("construct", "greedy flow construction");
    construct_cmd->add_option("file", file)->required();
    construct_cmd->add_option("--order", order, "pair order, e.g. 2,1");

    auto* sim_cmd = app.add_subcommand("simulate", "block-routing simulation");
    sim_cmd->add_option("file", file)->required();
    sim_cmd->add_option("--blocks", blocks, "number of blocks")->required();
    sim_cmd->add_option("--m", forced_m, "force the block length");
    sim_cmd->add_option("--seed", seed, "PRNG seed")->required();
    sim_cmd->add_option("--eps", eps, "overhead budget per arc (rational)");

    auto* dot_cmd = app.add_subcommand("export-dot", "graph description output");
    dot_cmd->add_option("file", file)->required();
    dot_cmd->add_option("--highlight-arcs", harcs);
    dot_cmd->add_option("--highlight-vertices", hverts);

    auto* corpus_cmd = app.add_subcommand("corpus", "emit a built-in network");
    corpus_cmd->add_option("name", corpus_name)->required();
    corpus_cmd->add_option("params", corpus_params, "key=value ...");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(file, out, err);
        if (analyze_cmd->parsed())
            return cmd_analyze(file, order, search, level, max_search, out, err);
        if (sdom_cmd->parsed()) return cmd_sdom(file, arcs_list, out, err);
        if (flow_cmd->parsed()) return cmd_flow(file, strict, out, err);
        if (construct_cmd->parsed()) return cmd_construct(file, order, out, err);
        if (sim_cmd->parsed())
            return cmd_simulate(file, blocks, forced_m, seed, eps, out, err);
        if (dot_cmd->parsed()) return cmd_export_dot(file, harcs, hverts, out, err);
        if (corpus_cmd->parsed()) return cmd_corpus(corpus_name, corpus_params, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << "no subcommand\n";
    return kUsage;
}

}  // namespace npairs
