#include <algorithm>
#include <functional>

#include "family_util.hpp"
#include "ufm/family.hpp"

namespace ufm {

// ----------------------------------------------------------------- matroid

MatroidCircuitFamily::MatroidCircuitFamily(int ground_size,
                                           std::vector<std::set<int>> circuits)
    : ground_size_(ground_size), circuits_(std::move(circuits)) {
    for (const auto &c : circuits_) {
        if (c.empty()) throw std::invalid_argument("empty circuit");
        for (int e : c)
            if (e < 0 || e >= ground_size_)
                throw std::invalid_argument("circuit element out of range");
    }
}

bool MatroidCircuitFamily::independent(const std::set<int> &elements) const {
    for (const auto &c : circuits_)
        if (std::includes(elements.begin(), elements.end(), c.begin(), c.end()))
            return false;
    return true;
}

int MatroidCircuitFamily::rank(const std::set<int> &elements) const {
    std::set<int> kept;
    for (int e : elements) {
        kept.insert(e);
        if (!independent(kept)) kept.erase(e);
    }
    return static_cast<int>(kept.size());
}

namespace {

int edge_element(const ShrunkState &state, int id) {
    return state.original().edge(id).end_plus.index;
}

std::set<int> set_elements(const VertexSet &u) {
    std::set<int> out;
    for (const auto &v : u)
        if (v.side == Side::plus) out.insert(v.index);
    return out;
}

}  // namespace

std::optional<Violation> MatroidCircuitFamily::find_violation(
    const ShrunkState &state, const EdgeIdSet &f) const {
    std::set<int> selected;
    std::map<int, int> edge_of;
    for (int id : f) {
        int e = edge_element(state, id);
        selected.insert(e);
        edge_of[e] = id;
    }

    std::vector<std::set<int>> shrunk_sets;
    std::set<int> shrunk_union;
    for (std::size_t i : state.active_records()) {
        std::set<int> s = set_elements(state.records()[i].original_set);
        shrunk_union.insert(s.begin(), s.end());
        shrunk_sets.push_back(std::move(s));
    }

    std::set<int> all = selected;
    all.insert(shrunk_union.begin(), shrunk_union.end());
    int promised = static_cast<int>(selected.size());
    for (const auto &s : shrunk_sets) promised += rank(s);
    if (rank(all) == promised) return std::nullopt;

    for (const auto &c : circuits_) {
        if (!std::includes(all.begin(), all.end(), c.begin(), c.end())) continue;
        bool inside_one = false;
        for (const auto &s : shrunk_sets)
            if (std::includes(s.begin(), s.end(), c.begin(), c.end())) {
                inside_one = true;
                break;
            }
        if (inside_one) continue;

        // Closure under the shrunk sets the circuit touches.
        std::set<int> closure = c;
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto &s : shrunk_sets) {
                bool meets = false, covered = true;
                for (int e : s) {
                    if (closure.count(e))
                        meets = true;
                    else
                        covered = false;
                }
                if (meets && !covered) {
                    closure.insert(s.begin(), s.end());
                    grew = true;
                }
            }
        }

        Violation viol;
        for (int e : closure) {
            viol.hatted_set.insert(vplus(e));
            viol.hatted_set.insert(vminus(e));
        }
        for (int e : c)
            if (edge_of.count(e)) viol.factor_edges.push_back(edge_of.at(e));
        return viol;
    }
    throw std::logic_error("rank deficiency without a witnessing circuit");
}

std::vector<std::vector<int>> MatroidCircuitFamily::expansion_candidates(
    const ShrunkState &state, const ShrinkRecord &record, const EdgeIdSet &f,
    const DeficiencyPreference &prefer) const {
    std::vector<int> pool;
    for (const Edge &e : record.removed_edges) pool.push_back(e.id);
    auto candidates = detail::degree_valid_subsets(state, pool, f, 1);
    VertexSet inner = record.inner_plus;
    inner.insert(record.inner_minus.begin(), record.inner_minus.end());
    detail::order_by_preference(candidates, state, inner, f, 1, prefer);
    return candidates;
}

bool MatroidCircuitFamily::check_original(const BipartiteMultigraph &g,
                                          const EdgeIdSet &f) const {
    for (const auto &v : g.vertices())
        if (degree(g, f, v) > 1) return false;
    std::set<int> selected;
    for (int id : f) selected.insert(g.edge(id).end_plus.index);
    return independent(selected);
}

std::vector<VertexSet> MatroidCircuitFamily::enumerate_members(
    const BipartiteMultigraph &, std::size_t max_members) const {
    if (circuits_.size() > max_members)
        throw std::length_error("family member list exceeds budget");
    std::vector<VertexSet> out;
    for (const auto &c : circuits_) {
        VertexSet u;
        for (int e : c) {
            u.insert(vplus(e));
            u.insert(vminus(e));
        }
        out.push_back(u);
    }
    return out;
}

bool MatroidCircuitFamily::is_certifiable(const BipartiteMultigraph &,
                                          const VertexSet &u) const {
    std::set<int> elements;
    for (const auto &v : u) {
        if (v.side == Side::plus) {
            if (!u.count(vminus(v.index))) return false;
            elements.insert(v.index);
        } else if (!u.count(vplus(v.index))) {
            return false;
        }
    }
    return !elements.empty() && rank(elements) < static_cast<int>(elements.size());
}

long long MatroidCircuitFamily::certificate_bound(const BipartiteMultigraph &,
                                                  const VertexSet &u) const {
    return rank(set_elements(u));
}

// --------------------------------------------------------------- branching

DirectedCycleFamily::DirectedCycleFamily(std::vector<std::pair<int, int>> arcs)
    : arcs_(std::move(arcs)) {}

std::optional<Violation> DirectedCycleFamily::find_violation(
    const ShrunkState &state, const EdgeIdSet &f) const {
    const BipartiteMultigraph &g = state.current();
    std::map<VertexId, VertexId> pred;  // head vertex -> tail's head vertex
    std::map<VertexId, int> in_edge;
    for (int id : f) {
        int arc = state.original().edge(id).end_plus.index;
        VertexId to = g.edge(id).end_minus;
        pred[to] = detail::current_vertex(state, vminus(arcs_.at(arc).first));
        in_edge[to] = id;
    }
    auto cycles = detail::functional_cycles(pred);
    if (cycles.empty()) return std::nullopt;

    Violation viol;
    VertexSet members;
    for (const auto &m : cycles.front()) {
        int id = in_edge.at(m);
        VertexId pp = g.edge(id).end_plus;
        viol.cycle_pairs.emplace_back(pp, m);
        viol.factor_edges.push_back(id);
        members.insert(pp);
        members.insert(m);
    }
    viol.hatted_set = state.hat_set(members);
    return viol;
}

std::vector<std::vector<int>> DirectedCycleFamily::expansion_candidates(
    const ShrunkState &state, const ShrinkRecord &record, const EdgeIdSet &f,
    const DeficiencyPreference &prefer) const {
    const BipartiteMultigraph &g = state.current();
    const auto &pairs = record.witness.cycle_pairs;
    const auto &edges = record.witness.factor_edges;
    int k = static_cast<int>(edges.size());
    if (k == 0)
        throw std::logic_error("shrunk record is missing its cycle witness");

    // One cycle edge is dropped so the minus vertices stay short of a full
    // cycle; a boundary edge at a minus vertex forces the choice, otherwise
    // edges whose endpoints tolerate a deficiency come first. Edges whose
    // plus endpoint is saturated from outside are dropped in any case.
    std::vector<int> order;
    for (int i = 0; i < k; ++i)
        if (degree(g, f, pairs[i].second) > 0) {
            order.push_back(i);
            break;
        }
    if (order.empty()) {
        std::set<int> seen;
        auto push = [&](int i) {
            if (seen.insert(i).second) order.push_back(i);
        };
        if (prefer) {
            for (int i = 0; i < k; ++i)
                if (prefer(pairs[i].first) && prefer(pairs[i].second)) push(i);
            for (int i = 0; i < k; ++i)
                if (prefer(pairs[i].first)) push(i);
            for (int i = 0; i < k; ++i)
                if (prefer(pairs[i].second)) push(i);
        }
        for (int i = 0; i < k; ++i) push(i);
    }

    std::vector<std::vector<int>> candidates;
    for (int dropped : order) {
        std::vector<int> chosen;
        for (int i = 0; i < k; ++i) {
            if (i == dropped || degree(g, f, pairs[i].first) > 0) continue;
            chosen.push_back(edges[i]);
        }
        candidates.push_back(std::move(chosen));
    }
    return candidates;
}

bool DirectedCycleFamily::check_original(const BipartiteMultigraph &g,
                                         const EdgeIdSet &f) const {
    for (const auto &v : g.vertices())
        if (degree(g, f, v) > 1) return false;
    std::map<VertexId, VertexId> pred;
    for (int id : f) {
        const Edge &e = g.edge(id);
        pred[e.end_minus] = vminus(arcs_.at(e.end_plus.index).first);
    }
    return detail::functional_cycles(pred).empty();
}

std::vector<VertexSet> DirectedCycleFamily::enumerate_members(
    const BipartiteMultigraph &, std::size_t max_members) const {
    std::map<int, std::vector<std::pair<int, int>>> adj;  // tail -> (arc, head)
    for (std::size_t a = 0; a < arcs_.size(); ++a)
        adj[arcs_[a].first].emplace_back(static_cast<int>(a), arcs_[a].second);

    std::set<VertexSet> seen;
    std::vector<VertexSet> out;
    std::vector<int> vpath;
    std::vector<int> apath;
    std::set<int> on_path;
    std::function<void(int, int)> dfs = [&](int root, int v) {
        auto it = adj.find(v);
        if (it == adj.end()) return;
        for (const auto &[arc, head] : it->second) {
            if (head == root) {
                VertexSet u;
                for (int a : apath) u.insert(vplus(a));
                u.insert(vplus(arc));
                for (int w : vpath) u.insert(vminus(w));
                if (seen.insert(u).second) {
                    out.push_back(u);
                    if (out.size() > max_members)
                        throw std::length_error(
                            "family member list exceeds budget");
                }
                continue;
            }
            if (head < root || on_path.count(head)) continue;
            vpath.push_back(head);
            apath.push_back(arc);
            on_path.insert(head);
            dfs(root, head);
            vpath.pop_back();
            apath.pop_back();
            on_path.erase(head);
        }
    };
    std::set<int> heads;
    for (const auto &[tail, head] : arcs_) {
        heads.insert(tail);
        heads.insert(head);
    }
    for (int root : heads) {
        vpath = {root};
        apath = {};
        on_path = {root};
        dfs(root, root);
    }
    return out;
}

namespace {

// Arcs of the source digraph fully represented inside u.
std::vector<int> inner_arcs(const std::vector<std::pair<int, int>> &arcs,
                            const VertexSet &u) {
    std::vector<int> out;
    for (const auto &v : u) {
        if (v.side != Side::plus) continue;
        int a = v.index;
        if (u.count(vminus(arcs.at(a).second))) out.push_back(a);
    }
    return out;
}

bool arc_set_acyclic(const std::vector<std::pair<int, int>> &arcs,
                     const std::vector<int> &chosen) {
    std::map<VertexId, VertexId> pred;
    for (int a : chosen) {
        VertexId head = vminus(arcs.at(a).second);
        if (pred.count(head)) return false;  // in-degree over one
        pred[head] = vminus(arcs.at(a).first);
    }
    return detail::functional_cycles(pred).empty();
}

}  // namespace

bool DirectedCycleFamily::is_certifiable(const BipartiteMultigraph &,
                                         const VertexSet &u) const {
    std::vector<int> pool = inner_arcs(arcs_, u);
    return !arc_set_acyclic(arcs_, pool);
}

long long DirectedCycleFamily::certificate_bound(const BipartiteMultigraph &,
                                                 const VertexSet &u) const {
    std::vector<int> pool = inner_arcs(arcs_, u);
    if (pool.size() > 20)
        throw std::length_error("certificate set too large to bound");
    long long best = 0;
    for (std::size_t mask = 0; mask < (std::size_t(1) << pool.size()); ++mask) {
        std::vector<int> chosen;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (mask & (std::size_t(1) << i)) chosen.push_back(pool[i]);
        if (static_cast<long long>(chosen.size()) <= best) continue;
        if (arc_set_acyclic(arcs_, chosen))
            best = static_cast<long long>(chosen.size());
    }
    return best;
}

}  // namespace ufm
