#include "npairs/routability.hpp"

#include <algorithm>
#include <sstream>

#include "npairs/dominance.hpp"

namespace npairs {

namespace {

std::string arc_list(const NetworkStructure& s, const std::vector<int>& arcs) {
    std::ostringstream os;
    os << "{";
    for (std::size_t k = 0; k < arcs.size(); ++k)
        os << (k ? "," : "") << s.arc(arcs[k]).name;
    os << "}";
    return os.str();
}

CutWitness make_witness(const NetworkStructure& s, const ViableCutList& cuts,
                        const OutgoingView& view, std::string detail) {
    CutWitness w;
    w.pair = cuts.cuts[view.representative].pair;
    w.cut_vertices = cuts.cuts[view.representative].cut_vertices;
    w.outgoing = view.outgoing;
    w.detail = std::move(detail);
    return w;
}

// All simple source-to-sink paths between two pairs' terminals, cached per
// (s-pair, h-pair) within one check.
struct CrossPaths {
    const NetworkStructure& s;
    std::map<std::pair<int, int>, std::vector<Path>> memo;
    const std::vector<Path>& get(int from_pair, int to_pair) {
        auto key = std::make_pair(from_pair, to_pair);
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(key, enumerate_paths_between(s, s.pair(from_pair).source,
                                                           s.pair(to_pair).sink)).first;
        return it->second;
    }
};

bool meets(const Path& p, const Bitset& arcs) {
    for (int a : p.arcs)
        if (arcs.test(a)) return true;
    return false;
}

std::vector<int> lower_indices(int i) {
    std::vector<int> v(i - 1);
    for (int k = 1; k < i; ++k) v[k - 1] = k;
    return v;
}

}  // namespace

const char* level_token(CertLevel level) {
    switch (level) {
        case CertLevel::UniqueExit: return "l43";
        case CertLevel::Separation: return "l42";
        case CertLevel::BlockedWalks: return "l41";
        case CertLevel::Full: return "full";
    }
    return "?";
}

std::optional<CertLevel> level_from_token(const std::string& token) {
    if (token == "l43") return CertLevel::UniqueExit;
    if (token == "l42") return CertLevel::Separation;
    if (token == "l41") return CertLevel::BlockedWalks;
    if (token == "full") return CertLevel::Full;
    return std::nullopt;
}

LevelOutcome check_unique_exit(const NetworkStructure& s) {
    LevelOutcome out{CertLevel::UniqueExit, true, std::nullopt};
    CrossPaths cross{s, {}};
    for (int i = 2; i <= s.pair_count() && out.holds; ++i) {
        ViableCutList cuts = enumerate_viable_cuts(s, i);
        for (const auto& view : cuts.outgoing_views) {
            if (view.outgoing.size() != 1) {
                out.holds = false;
                out.witness = make_witness(s, cuts, view,
                                           "outgoing set has " +
                                               std::to_string(view.outgoing.size()) +
                                               " arcs, need exactly 1");
                break;
            }
            Bitset O = indices_to_bitset(s.arc_count(), view.outgoing);
            for (int h = 1; h <= i && out.holds; ++h) {
                if (!(O & s.bundle(h).arcs).any()) continue;
                for (int sp = 1; sp <= h && out.holds; ++sp) {
                    if (!(O & s.bundle(sp).arcs).any()) continue;
                    const auto& paths = cross.get(sp, h);
                    bool any_meets = false, any_avoids = false;
                    for (const Path& p : paths) (meets(p, O) ? any_meets : any_avoids) = true;
                    if (any_meets && any_avoids) {
                        out.holds = false;
                        out.witness = make_witness(
                            s, cuts, view,
                            "paths from source " + std::to_string(sp) + " to sink " +
                                std::to_string(h) + " split over " + arc_list(s, view.outgoing));
                    }
                }
            }
            if (!out.holds) break;
        }
    }
    return out;
}

LevelOutcome check_separation(const NetworkStructure& s) {
    LevelOutcome out{CertLevel::Separation, true, std::nullopt};
    CrossPaths cross{s, {}};
    for (int i = 2; i <= s.pair_count() && out.holds; ++i) {
        ViableCutList cuts = enumerate_viable_cuts(s, i);
        auto lower = lower_indices(i);
        for (const auto& view : cuts.outgoing_views) {
            Bitset O = indices_to_bitset(s.arc_count(), view.outgoing);
            if (!is_J_disjoint(s, O, lower)) {
                out.holds = false;
                out.witness = make_witness(s, cuts, view, "outgoing set is not disjoint over "
                                                          "the lower bundles");
                break;
            }
            for (int h = 1; h <= i && out.holds; ++h) {
                if (!(O & s.bundle(h).arcs).any()) continue;
                for (int sp = 1; sp <= h && out.holds; ++sp) {
                    if (!(O & s.bundle(sp).arcs).any()) continue;
                    for (const Path& p : cross.get(sp, h)) {
                        if (!meets(p, O)) {
                            out.holds = false;
                            out.witness = make_witness(
                                s, cuts, view,
                                "a path from source " + std::to_string(sp) + " to sink " +
                                    std::to_string(h) + " avoids " + arc_list(s, view.outgoing));
                            break;
                        }
                    }
                }
            }
            if (!out.holds) break;
        }
    }
    return out;
}

LevelOutcome check_blocked_walks(const NetworkStructure& s) {
    LevelOutcome out{CertLevel::BlockedWalks, true, std::nullopt};
    for (int i = 2; i <= s.pair_count() && out.holds; ++i) {
        ViableCutList cuts = enumerate_viable_cuts(s, i);
        auto lower = lower_indices(i);
        for (const auto& view : cuts.outgoing_views) {
            Bitset O = indices_to_bitset(s.arc_count(), view.outgoing);
            if (!is_J_disjoint(s, O, lower)) {
                out.holds = false;
                out.witness = make_witness(s, cuts, view, "outgoing set is not disjoint over "
                                                          "the lower bundles");
                break;
            }
            for (int h = 1; h <= i; ++h) {
                if (!(O & s.bundle(h).arcs).any()) continue;
                if (!all_ii_walks_blocked(s, h, source_augmented(s, O, h))) {
                    out.holds = false;
                    out.witness = make_witness(s, cuts, view,
                                               "an indirect walk of pair " + std::to_string(h) +
                                                   " bypasses the augmented set");
                    break;
                }
            }
            if (!out.holds) break;
        }
    }
    return out;
}

LevelOutcome check_downward_dominance(const NetworkStructure& s) {
    LevelOutcome out{CertLevel::Full, true, std::nullopt};
    for (int i = 2; i <= s.pair_count() && out.holds; ++i) {
        ViableCutList cuts = enumerate_viable_cuts(s, i);
        for (const auto& view : cuts.outgoing_views) {
            Bitset O = indices_to_bitset(s.arc_count(), view.outgoing);
            FamilyMembership fam = downward_dominated_family(s, O, i - 1);
            if (!fam.member) {
                std::string why = fam.disjoint ? "a lower source arc is not dominated"
                                               : "not disjoint over the lower bundles";
                out.holds = false;
                out.witness = make_witness(s, cuts, view,
                                           "outgoing set fails family membership at level " +
                                               std::to_string(i - 1) + ": " + why);
                break;
            }
            auto r = sdom_contains(s, source_augmented(s, O, i), s.pair(i).source_arc);
            if (!r.contained) {
                out.holds = false;
                out.witness = make_witness(s, cuts, view,
                                           "source arc of pair " + std::to_string(i) +
                                               " not dominated by the augmented outgoing set");
                break;
            }
        }
    }
    return out;
}

AnalysisReport analyze(const NetworkStructure& s, std::optional<CertLevel> only) {
    AnalysisReport r;
    for (int i = 1; i <= s.pair_count(); ++i) r.order.push_back(i);

    auto run = [&](CertLevel level) -> const LevelOutcome& {
        switch (level) {
            case CertLevel::UniqueExit: r.levels.push_back(check_unique_exit(s)); break;
            case CertLevel::Separation: r.levels.push_back(check_separation(s)); break;
            case CertLevel::BlockedWalks: r.levels.push_back(check_blocked_walks(s)); break;
            case CertLevel::Full: r.levels.push_back(check_downward_dominance(s)); break;
        }
        return r.levels.back();
    };

    if (only) {
        const auto& out = run(*only);
        r.downward_dominated = out.holds;
        if (out.holds) r.certified_by = *only;
        else r.witness = out.witness;
        return r;
    }

    for (CertLevel level : {CertLevel::UniqueExit, CertLevel::Separation,
                            CertLevel::BlockedWalks, CertLevel::Full}) {
        const auto& out = run(level);
        if (out.holds) {
            r.downward_dominated = true;
            r.certified_by = level;
            return r;
        }
        if (level == CertLevel::Full) r.witness = out.witness;
    }
    return r;
}

OrderingSearch find_dd_ordering(const NetworkStructure& s, int max_pairs) {
    OrderingSearch result;
    if (s.pair_count() > max_pairs) {
        result.error = "ordering search over " + std::to_string(s.pair_count()) +
                       " pairs exceeds the limit of " + std::to_string(max_pairs);
        return result;
    }
    result.searched = true;
    std::vector<int> perm(s.pair_count());
    for (int i = 0; i < s.pair_count(); ++i) perm[i] = i + 1;
    do {
        NetworkStructure reordered = s.with_pair_order(perm);
        AnalysisReport rep = analyze(reordered);
        if (rep.downward_dominated) {
            rep.order = perm;
            result.ordering = perm;
            result.report = std::move(rep);
            return result;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return result;
}

}  // namespace npairs
