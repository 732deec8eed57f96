#include "ufm/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <stdexcept>

namespace ufm {

std::size_t oracle_budget() {
    static const std::size_t value = [] {
        const char *env = std::getenv("UFM_ORACLE_BUDGET");
        if (!env) return static_cast<std::size_t>(24);
        long parsed = std::strtol(env, nullptr, 10);
        if (parsed <= 0) throw std::invalid_argument("UFM_ORACLE_BUDGET must be positive");
        return static_cast<std::size_t>(parsed);
    }();
    return value;
}

namespace {

struct Enumerator {
    const BipartiteMultigraph &g;
    const FamilyOracle &family;
    std::vector<int> ids;
    EdgeIdSet current, best_set;

    Enumerator(const BipartiteMultigraph &g_, const FamilyOracle &family_)
        : g(g_), family(family_) {
        if (g.edges().size() > oracle_budget())
            throw std::runtime_error("instance exceeds the brute-force budget");
        for (const auto &[id, e] : g.edges()) ids.push_back(id);
    }

    bool degree_ok(int id) const {
        int t = family.t();
        const Edge &e = g.edge(id);
        return degree(g, current, e.end_plus) < t &&
               degree(g, current, e.end_minus) < t;
    }
};

void search_cardinality(Enumerator &ctx, std::size_t i, long long &best) {
    if (static_cast<long long>(ctx.current.size()) > best) {
        best = static_cast<long long>(ctx.current.size());
        ctx.best_set = ctx.current;
    }
    if (i == ctx.ids.size()) return;
    if (static_cast<long long>(ctx.current.size() + (ctx.ids.size() - i)) <= best)
        return;
    int id = ctx.ids[i];
    if (ctx.degree_ok(id)) {
        ctx.current.insert(id);
        if (ctx.family.check_original(ctx.g, ctx.current))
            search_cardinality(ctx, i + 1, best);
        ctx.current.erase(id);
    }
    search_cardinality(ctx, i + 1, best);
}

void search_weight(Enumerator &ctx, std::size_t i, Rat acc,
                   const std::vector<Rat> &suffix_positive, Rat &best) {
    if (acc > best) {
        best = acc;
        ctx.best_set = ctx.current;
    }
    if (i == ctx.ids.size()) return;
    if (!(acc + suffix_positive[i] > best)) return;
    int id = ctx.ids[i];
    if (ctx.degree_ok(id)) {
        ctx.current.insert(id);
        if (ctx.family.check_original(ctx.g, ctx.current))
            search_weight(ctx, i + 1, acc + ctx.g.edge(id).weight, suffix_positive,
                          best);
        ctx.current.erase(id);
    }
    search_weight(ctx, i + 1, acc, suffix_positive, best);
}

}  // namespace

std::string verify_solution(const BipartiteMultigraph &g, const FamilyOracle &family,
                            const EdgeIdSet &f) {
    for (int id : f)
        if (!g.has_edge(id)) return "solution uses unknown edge " + std::to_string(id);
    int t = family.t();
    for (const auto &v : g.vertices())
        if (degree(g, f, v) > t)
            return "degree bound violated at vertex " + to_string(v);

    std::vector<VertexSet> members;
    bool enumerated = true;
    try {
        members = family.enumerate_members(g, 200000);
    } catch (const std::length_error &) {
        enumerated = false;
    }
    if (enumerated) {
        for (const auto &u : members) {
            long long count = 0;
            for (int id : induced_edges(g, u))
                if (f.count(id)) ++count;
            if (count > feasibility_bound(t, u.size())) {
                std::string names;
                for (const auto &v : u) names += (names.empty() ? "" : ",") + to_string(v);
                return "forbidden set {" + names + "} is saturated";
            }
        }
        return "";
    }
    if (!family.check_original(g, f)) return "a forbidden set is saturated";
    return "";
}

long long brute_force_max(const BipartiteMultigraph &g, const FamilyOracle &family) {
    Enumerator ctx(g, family);
    if (!family.check_original(g, {}))
        throw std::invalid_argument("the empty solution is already infeasible");
    long long best = -1;
    search_cardinality(ctx, 0, best);
    return best;
}

EdgeIdSet brute_force_argmax(const BipartiteMultigraph &g, const FamilyOracle &family) {
    Enumerator ctx(g, family);
    if (!family.check_original(g, {}))
        throw std::invalid_argument("the empty solution is already infeasible");
    long long best = -1;
    search_cardinality(ctx, 0, best);
    return ctx.best_set;
}

Rat brute_force_max_weight(const BipartiteMultigraph &g, const FamilyOracle &family) {
    Enumerator ctx(g, family);
    if (!family.check_original(g, {}))
        throw std::invalid_argument("the empty solution is already infeasible");
    std::vector<Rat> suffix(ctx.ids.size() + 1);
    for (std::size_t i = ctx.ids.size(); i-- > 0;) {
        suffix[i] = suffix[i + 1];
        const Rat &w = g.edge(ctx.ids[i]).weight;
        if (w > Rat(0)) suffix[i] += w;
    }
    Rat best(0);
    best -= Rat(1);
    search_weight(ctx, 0, Rat(0), suffix, best);
    return best;
}

EdgeIdSet brute_force_argmax_weight(const BipartiteMultigraph &g,
                                    const FamilyOracle &family) {
    Enumerator ctx(g, family);
    if (!family.check_original(g, {}))
        throw std::invalid_argument("the empty solution is already infeasible");
    std::vector<Rat> suffix(ctx.ids.size() + 1);
    for (std::size_t i = ctx.ids.size(); i-- > 0;) {
        suffix[i] = suffix[i + 1];
        const Rat &w = g.edge(ctx.ids[i]).weight;
        if (w > Rat(0)) suffix[i] += w;
    }
    Rat best(0);
    best -= Rat(1);
    search_weight(ctx, 0, Rat(0), suffix, best);
    return ctx.best_set;
}

}  // namespace ufm
