#include "ufm/solver_unweighted.hpp"

#include <algorithm>
#include <deque>

namespace ufm {

long long MinMaxCertificate::value() const {
    long long v = static_cast<long long>(t) * static_cast<long long>(x.size()) +
                  component_edge_count;
    for (const auto &m : members) v += m.bound;
    return v;
}

namespace {

bool in_source_set(const ShrunkState &state, const EdgeIdSet &f, int t, VertexId v) {
    int d = degree(state.current(), f, v);
    return state.is_pseudo(v) ? d == 0 : d <= t - 1;
}

// Vertices reachable from S by alternating non-F (forward) and F (backward)
// arcs, with the parent edge of each vertex. BFS in vertex and edge id order.
struct Reachability {
    std::map<VertexId, int> parent_edge;
    VertexSet visited;
};

Reachability reach_from_sources(const ShrunkState &state, const EdgeIdSet &f,
                                int t) {
    const BipartiteMultigraph &g = state.current();
    Reachability r;
    std::deque<VertexId> queue;
    for (const auto &v : g.side_vertices(Side::plus))
        if (in_source_set(state, f, t, v)) {
            r.visited.insert(v);
            queue.push_back(v);
        }
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (int id : g.incident(v)) {
            bool forward = v.side == Side::plus;
            if (forward == (f.count(id) > 0)) continue;
            VertexId w = g.edge(id).end(other(v.side));
            if (!r.visited.insert(w).second) continue;
            r.parent_edge[w] = id;
            queue.push_back(w);
        }
    }
    return r;
}

EdgeIdSet sym_diff(const EdgeIdSet &f, const std::vector<int> &path) {
    EdgeIdSet out = f;
    for (int id : path) {
        if (out.count(id))
            out.erase(id);
        else
            out.insert(id);
    }
    return out;
}

// Parallel edges between the same pair of current vertices repoint to
// different original endpoints, so swapping one for another can turn an
// infeasible augmentation into a feasible one. Tries the path with every
// combination of parallel substitutes for its inserted edges.
std::optional<std::vector<int>> feasible_variant(const ShrunkState &state,
                                                 const FamilyOracle &family,
                                                 const EdgeIdSet &f,
                                                 const std::vector<int> &path) {
    const BipartiteMultigraph &g = state.current();
    std::vector<std::vector<int>> options;
    for (int id : path) {
        std::vector<int> alts;
        if (f.count(id)) {
            alts.push_back(id);
        } else {
            const Edge &e = g.edge(id);
            for (int cand : g.incident(e.end_plus))
                if (!f.count(cand) && g.edge(cand).end_minus == e.end_minus)
                    alts.push_back(cand);
        }
        options.push_back(std::move(alts));
    }
    std::vector<int> chosen(path.size());
    int tests = 1024;
    std::function<std::optional<std::vector<int>>(std::size_t)> dfs =
        [&](std::size_t i) -> std::optional<std::vector<int>> {
        if (i == path.size()) {
            if (--tests < 0) return std::nullopt;
            std::set<int> distinct(chosen.begin(), chosen.end());
            if (distinct.size() != chosen.size()) return std::nullopt;
            EdgeIdSet trial = sym_diff(f, chosen);
            if (!family.find_violation(state, trial)) return chosen;
            return std::nullopt;
        }
        for (int cand : options[i]) {
            chosen[i] = cand;
            if (auto got = dfs(i + 1)) return got;
            if (tests < 0) break;
        }
        return std::nullopt;
    };
    return dfs(0);
}

// FindViolatingSet: the minimal prefix F_i of the augmentation that turns
// infeasible; rolls F back to F_{i-1} and reports the violated set.
std::pair<EdgeIdSet, Violation> find_violating_prefix(
    const ShrunkState &state, const FamilyOracle &family, const EdgeIdSet &f,
    const std::vector<int> &path) {
    std::size_t l = path.size() / 2;
    EdgeIdSet fi = f;
    for (std::size_t i = 1; i <= l + 1; ++i) {
        fi.insert(path[2 * i - 2]);
        if (i <= l) fi.erase(path[2 * i - 1]);
        if (auto viol = family.find_violation(state, fi)) {
            fi.erase(path[2 * i - 2]);
            if (i <= l) fi.insert(path[2 * i - 1]);
            return {fi, *viol};
        }
    }
    throw std::logic_error("augmented solution was feasible after all");
}

MinMaxCertificate build_certificate(const ShrunkState &state, const EdgeIdSet &f,
                                    const FamilyOracle &family, int t) {
    const BipartiteMultigraph &g = state.current();
    Reachability reach = reach_from_sources(state, f, t);

    VertexSet xcur;
    for (const auto &v : g.vertices()) {
        bool reached = reach.visited.count(v) > 0;
        if (v.side == Side::plus ? !reached : reached) xcur.insert(v);
    }
    for (const auto &v : g.side_vertices(Side::minus)) {
        if (xcur.count(v)) continue;
        int from_r = 0;
        for (int id : g.incident(v))
            if (f.count(id) && reach.visited.count(g.edge(id).end_plus)) ++from_r;
        int needed = state.is_pseudo(v) ? 1 : t;
        if (from_r == needed) xcur.insert(v);
    }

    MinMaxCertificate cert;
    cert.t = t;
    cert.x = state.hat_set(xcur);
    for (std::size_t i : state.active_records()) {
        const ShrinkRecord &rec = state.records()[i];
        if (xcur.count(rec.plus_pseudo) || xcur.count(rec.minus_pseudo)) continue;
        CertificateMember m;
        m.set = rec.original_set;
        m.bound = family.certificate_bound(state.original(), m.set);
        cert.members.push_back(std::move(m));
    }

    VertexSet rest;
    for (const auto &v : state.original().vertices())
        if (!cert.x.count(v)) rest.insert(v);
    for (const auto &m : cert.members)
        for (const auto &v : m.set) rest.erase(v);
    cert.component_edge_count =
        static_cast<long long>(induced_edges(state.original(), rest).size());
    return cert;
}

}  // namespace

std::optional<std::vector<int>> find_augmenting_path(const ShrunkState &state,
                                                     const EdgeIdSet &f, int t) {
    const BipartiteMultigraph &g = state.current();
    std::map<VertexId, int> parent_edge;
    VertexSet visited;
    std::deque<VertexId> queue;
    for (const auto &v : g.side_vertices(Side::plus))
        if (in_source_set(state, f, t, v)) {
            visited.insert(v);
            queue.push_back(v);
        }
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (int id : g.incident(v)) {
            bool forward = v.side == Side::plus;
            if (forward == (f.count(id) > 0)) continue;
            VertexId w = g.edge(id).end(other(v.side));
            if (visited.count(w)) continue;
            visited.insert(w);
            parent_edge[w] = id;
            if (w.side == Side::minus) {
                int d = degree(g, f, w);
                bool sink = state.is_pseudo(w) ? d == 0 : d <= t - 1;
                if (sink) {
                    std::vector<int> edges;
                    VertexId cur = w;
                    while (true) {
                        auto it = parent_edge.find(cur);
                        if (it == parent_edge.end()) break;
                        edges.push_back(it->second);
                        cur = g.edge(it->second).end(other(cur.side));
                    }
                    std::reverse(edges.begin(), edges.end());
                    return edges;
                }
            }
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

UnweightedResult solve_max(const BipartiteMultigraph &g,
                           const FamilyOracle &family) {
    int t = family.t();
    ShrunkState state(g);
    EdgeIdSet f;
    if (family.find_violation(state, f))
        throw std::invalid_argument("the empty solution is already infeasible");

    long long n = static_cast<long long>(g.vertex_count());
    long long budget = 64 + 8 * t * (n + 2) * (n + 2) * (n + 2);
    while (true) {
        if (--budget < 0)
            throw std::runtime_error("iteration budget exceeded; aborting");
        auto path = find_augmenting_path(state, f, t);
        if (!path) break;
        if (auto variant = feasible_variant(state, family, f, *path)) {
            f = sym_diff(f, *variant);
            expand_all(state, f, family);
            if (family.find_violation(state, f))
                throw std::logic_error("expansion produced an infeasible solution");
        } else {
            auto [rolled, viol] = find_violating_prefix(state, family, f, *path);
            f = std::move(rolled);
            state.shrink(viol.hatted_set, f, viol);
        }
    }

    UnweightedResult result;
    result.certificate = build_certificate(state, f, family, t);
    expand_all(state, f, family);
    if (!family.check_original(state.original(), f))
        throw std::logic_error("final expansion produced an infeasible solution");
    result.matching = f;
    return result;
}

std::string verify_weak_duality(const BipartiteMultigraph &g,
                                const FamilyOracle &family, const EdgeIdSet &f,
                                const MinMaxCertificate &cert,
                                bool require_equality) {
    if (cert.t != family.t()) return "certificate t does not match the family";
    for (const auto &v : cert.x)
        if (!g.has_vertex(v)) return "certificate set X contains an unknown vertex";

    VertexSet used = cert.x;
    for (const auto &m : cert.members) {
        if (m.set.empty()) return "empty certificate member";
        for (const auto &v : m.set) {
            if (!g.has_vertex(v)) return "certificate member contains an unknown vertex";
            if (!used.insert(v).second)
                return "certificate member overlaps X or another member";
        }
        if (!family.is_certifiable(g, m.set))
            return "certificate member is not certifiable for this family";
        if (m.bound != family.certificate_bound(g, m.set))
            return "certificate member carries a wrong bound";
        for (const auto &[id, e] : g.edges()) {
            bool pin = m.set.count(e.end_plus) > 0;
            bool min = m.set.count(e.end_minus) > 0;
            if (pin == min) continue;
            VertexId outside = pin ? e.end_minus : e.end_plus;
            if (!cert.x.count(outside))
                return "certificate member is not a component outside X";
        }
    }

    VertexSet rest;
    for (const auto &v : g.vertices())
        if (!used.count(v)) rest.insert(v);
    long long ec = static_cast<long long>(induced_edges(g, rest).size());
    if (ec != cert.component_edge_count)
        return "component edge count does not match the certificate sets";

    long long size = static_cast<long long>(f.size());
    if (size > cert.value()) return "matching size exceeds the certificate value";
    if (require_equality && size != cert.value())
        return "certificate value is not tight";
    return "";
}

}  // namespace ufm
