#include <algorithm>
#include <functional>

#include "family_util.hpp"
#include "ufm/family.hpp"

namespace ufm {

using detail::functional_cycles;

// ------------------------------------------------------------ odd symmetric

OddSymmetricFamily::OddSymmetricFamily(TwinPairing twins)
    : twins_(std::move(twins)) {}

std::optional<Violation> OddSymmetricFamily::find_violation(
    const ShrunkState &state, const EdgeIdSet &f) const {
    const BipartiteMultigraph &g = state.current();
    std::map<VertexId, VertexId> succ;
    std::map<VertexId, int> out_edge;
    for (int id : f) {
        const Edge &e = g.edge(id);
        succ[e.end_plus] = current_twin(state, twins_, e.end_minus);
        out_edge[e.end_plus] = id;
    }
    for (const auto &cyc : functional_cycles(succ)) {
        if (cyc.size() % 2 == 0) continue;
        Violation viol;
        VertexSet members;
        for (const auto &pv : cyc) {
            VertexId mv = current_twin(state, twins_, pv);
            viol.cycle_pairs.emplace_back(pv, mv);
            viol.factor_edges.push_back(out_edge.at(pv));
            members.insert(pv);
            members.insert(mv);
        }
        viol.hatted_set = state.hat_set(members);
        return viol;
    }
    return std::nullopt;
}

std::vector<std::vector<int>> OddSymmetricFamily::expansion_candidates(
    const ShrunkState &state, const ShrinkRecord &record, const EdgeIdSet &f,
    const DeficiencyPreference &prefer) const {
    const BipartiteMultigraph &g = state.current();
    const auto &pairs = record.witness.cycle_pairs;
    int k = static_cast<int>(pairs.size());
    if (k == 0 || k % 2 == 0)
        throw std::logic_error("shrunk record is missing its odd cycle witness");

    // Rotate so the minus vertex carrying a boundary edge (or a preferred
    // deficiency spot) sits at position 1.
    int start = 0;
    for (int i = 0; i < k; ++i)
        if (degree(g, f, pairs[i].second) > 0) {
            start = i;
            break;
        }
    if (degree(g, f, pairs[start].second) == 0 && prefer)
        for (int i = 0; i < k; ++i)
            if (prefer(pairs[i].second)) {
                start = i;
                break;
            }
    auto u = [&](int i) { return pairs[(start + i - 1 + k) % k]; };

    int j = -1;
    for (int i = 1; i <= k; ++i)
        if (degree(g, f, u(i).first) > 0) {
            j = i;
            break;
        }
    if (j < 0 && prefer)
        for (int i = 1; i <= k; ++i)
            if (prefer(u(i).first)) {
                j = i;
                break;
            }
    if (j < 0) j = 1;

    std::vector<std::pair<VertexId, VertexId>> picks;
    if (j % 2 == 1) {
        int kp = (k - 1) / 2;
        int jp = (j - 1) / 2;
        for (int i = 1; i <= j - 1; ++i) picks.emplace_back(u(i).first, u(i + 1).second);
        for (int i = jp + 1; i <= kp; ++i) {
            picks.emplace_back(u(2 * i).first, u(2 * i + 1).second);
            picks.emplace_back(u(2 * i + 1).first, u(2 * i).second);
        }
    } else {
        int jp = j / 2;
        for (int i = 1; i <= jp - 1; ++i) {
            picks.emplace_back(u(2 * i).first, u(2 * i + 1).second);
            picks.emplace_back(u(2 * i + 1).first, u(2 * i).second);
        }
        for (int i = j; i <= k; ++i) picks.emplace_back(u(i + 1).first, u(i).second);
    }

    std::vector<int> chosen;
    for (const auto &[pp, mm] : picks) {
        int id = detail::find_edge_between(g, pp, mm);
        if (id < 0)
            throw std::logic_error("missing symmetric edge inside a shrunk cycle");
        chosen.push_back(id);
    }
    return {chosen};
}

bool OddSymmetricFamily::check_original(const BipartiteMultigraph &g,
                                        const EdgeIdSet &f) const {
    for (const auto &v : g.vertices())
        if (degree(g, f, v) > 1) return false;
    std::map<VertexId, VertexId> succ;
    for (int id : f) {
        const Edge &e = g.edge(id);
        succ[e.end_plus] = vplus(twins_.plus_of(e.end_minus.index));
    }
    for (const auto &cyc : functional_cycles(succ))
        if (cyc.size() % 2 == 1) return false;
    return true;
}

std::vector<VertexSet> OddSymmetricFamily::enumerate_members(
    const BipartiteMultigraph &g, std::size_t max_members) const {
    // Simple directed cycles of the source digraph, odd length only.
    std::map<int, std::set<int>> adj;
    for (const auto &[id, e] : g.edges())
        adj[e.end_plus.index].insert(twins_.plus_of(e.end_minus.index));

    std::set<VertexSet> seen;
    std::vector<VertexSet> out;
    std::vector<int> path;
    std::set<int> on_path;
    std::function<void(int, int)> dfs = [&](int root, int v) {
        for (int w : adj.count(v) ? adj.at(v) : std::set<int>{}) {
            if (w == root) {
                if (path.size() % 2 == 1) {
                    VertexSet u;
                    for (int c : path) {
                        u.insert(vplus(c));
                        u.insert(vminus(twins_.minus_of(c)));
                    }
                    if (seen.insert(u).second) {
                        out.push_back(u);
                        if (out.size() > max_members)
                            throw std::length_error(
                                "family member list exceeds budget");
                    }
                }
                continue;
            }
            if (w < root || on_path.count(w)) continue;
            path.push_back(w);
            on_path.insert(w);
            dfs(root, w);
            path.pop_back();
            on_path.erase(w);
        }
    };
    for (const auto &[root, ignored] : adj) {
        path = {root};
        on_path = {root};
        dfs(root, root);
    }
    return out;
}

bool OddSymmetricFamily::is_certifiable(const BipartiteMultigraph &,
                                        const VertexSet &u) const {
    if (u.empty() || u.size() % 2 != 0) return false;
    int pairs = 0;
    for (const auto &v : u) {
        if (v.side != Side::plus) continue;
        if (!u.count(vminus(twins_.minus_of(v.index)))) return false;
        ++pairs;
    }
    if (static_cast<std::size_t>(2 * pairs) != u.size()) return false;
    return pairs % 2 == 1;
}

// ------------------------------------------------------------ triangle twin

TriangleTwinFamily::TriangleTwinFamily(TwinPairing twins)
    : OddSymmetricFamily(std::move(twins)) {}

std::optional<Violation> TriangleTwinFamily::find_violation(
    const ShrunkState &state, const EdgeIdSet &f) const {
    const BipartiteMultigraph &g = state.current();
    const BipartiteMultigraph &orig = state.original();
    std::map<int, int> class_succ;
    std::map<int, int> class_edge;
    for (int id : f) {
        const Edge &oe = orig.edge(id);
        class_succ[oe.end_plus.index] = twins_.plus_of(oe.end_minus.index);
        class_edge[oe.end_plus.index] = id;
    }
    for (const auto &[x, y] : class_succ) {
        auto it2 = class_succ.find(y);
        if (it2 == class_succ.end()) continue;
        int z = it2->second;
        auto it3 = class_succ.find(z);
        if (it3 == class_succ.end() || it3->second != x) continue;
        if (x == y || y == z || z == x) continue;
        if (x > y || x > z) continue;  // canonical start

        Violation viol;
        VertexSet members;
        for (int c : {x, y, z}) {
            int id = class_edge.at(c);
            VertexId pp = g.edge(id).end_plus;
            VertexId mm = current_twin(state, twins_, pp);
            viol.cycle_pairs.emplace_back(pp, mm);
            viol.factor_edges.push_back(id);
            members.insert(pp);
            members.insert(mm);
        }
        viol.hatted_set = state.hat_set(members);
        return viol;
    }
    return std::nullopt;
}

bool TriangleTwinFamily::check_original(const BipartiteMultigraph &g,
                                        const EdgeIdSet &f) const {
    for (const auto &v : g.vertices())
        if (degree(g, f, v) > 1) return false;
    std::map<int, int> class_succ;
    for (int id : f) {
        const Edge &e = g.edge(id);
        class_succ[e.end_plus.index] = twins_.plus_of(e.end_minus.index);
    }
    for (const auto &[x, y] : class_succ) {
        auto it2 = class_succ.find(y);
        if (it2 == class_succ.end()) continue;
        int z = it2->second;
        auto it3 = class_succ.find(z);
        if (it3 != class_succ.end() && it3->second == x && x != y && y != z &&
            z != x)
            return false;
    }
    return true;
}

std::vector<VertexSet> TriangleTwinFamily::enumerate_members(
    const BipartiteMultigraph &g, std::size_t max_members) const {
    std::set<std::pair<int, int>> arcs;
    std::set<int> classes;
    for (const auto &[id, e] : g.edges()) {
        arcs.emplace(e.end_plus.index, twins_.plus_of(e.end_minus.index));
        classes.insert(e.end_plus.index);
        classes.insert(twins_.plus_of(e.end_minus.index));
    }
    std::vector<int> cls(classes.begin(), classes.end());
    std::vector<VertexSet> out;
    for (std::size_t i = 0; i < cls.size(); ++i)
        for (std::size_t j = i + 1; j < cls.size(); ++j)
            for (std::size_t k = j + 1; k < cls.size(); ++k) {
                int x = cls[i], y = cls[j], z = cls[k];
                bool fwd = arcs.count({x, y}) && arcs.count({y, z}) &&
                           arcs.count({z, x});
                bool bwd = arcs.count({x, z}) && arcs.count({z, y}) &&
                           arcs.count({y, x});
                if (!fwd && !bwd) continue;
                VertexSet u;
                for (int c : {x, y, z}) {
                    u.insert(vplus(c));
                    u.insert(vminus(twins_.minus_of(c)));
                }
                out.push_back(u);
                if (out.size() > max_members)
                    throw std::length_error("family member list exceeds budget");
            }
    return out;
}

bool TriangleTwinFamily::is_certifiable(const BipartiteMultigraph &g,
                                        const VertexSet &u) const {
    if (!OddSymmetricFamily::is_certifiable(g, u)) return false;
    if (u.size() > 24) return false;

    // Certifiable when no triangle-avoiding perfect matching covers u, so
    // that |F[u]| is forced strictly below |u|/2.
    std::vector<VertexId> plus;
    for (const auto &v : u)
        if (v.side == Side::plus) plus.push_back(v);
    EdgeIdSet inner = induced_edges(g, u);

    std::map<int, int> succ;
    std::set<VertexId> used_minus;
    std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
        if (i == plus.size()) return true;
        int x = plus[i].index;
        for (int id : g.incident(plus[i])) {
            if (!inner.count(id)) continue;
            VertexId b = g.edge(id).end_minus;
            if (used_minus.count(b)) continue;
            int y = twins_.plus_of(b.index);
            bool tri = false;
            auto f1 = succ.find(y);
            if (f1 != succ.end()) {
                auto f2 = succ.find(f1->second);
                if (f2 != succ.end() && f2->second == x && y != x &&
                    f1->second != x && f1->second != y)
                    tri = true;
            }
            if (tri) continue;
            succ[x] = y;
            used_minus.insert(b);
            if (dfs(i + 1)) return true;
            succ.erase(x);
            used_minus.erase(b);
        }
        return false;
    };
    return !dfs(0);
}

// ------------------------------------------------------------ C_{4k+2} free

C4k2Family::C4k2Family(TwinPairing twins) : twins_(std::move(twins)) {}

namespace {

std::vector<VertexSet> solution_components(const BipartiteMultigraph &g,
                                           const EdgeIdSet &f) {
    std::set<VertexId> seen;
    std::vector<VertexSet> comps;
    for (int id : f) {
        VertexId s = g.edge(id).end_plus;
        if (seen.count(s)) continue;
        VertexSet comp;
        std::vector<VertexId> queue{s};
        seen.insert(s);
        while (!queue.empty()) {
            VertexId v = queue.back();
            queue.pop_back();
            comp.insert(v);
            for (int eid : g.incident(v)) {
                if (!f.count(eid)) continue;
                const Edge &e = g.edge(eid);
                VertexId w = e.end_plus == v ? e.end_minus : e.end_plus;
                if (seen.insert(w).second) queue.push_back(w);
            }
        }
        comps.push_back(comp);
    }
    return comps;
}

}  // namespace

std::optional<Violation> C4k2Family::find_violation(const ShrunkState &state,
                                                    const EdgeIdSet &f) const {
    const BipartiteMultigraph &g = state.current();

    std::vector<VertexSet> saturated;
    for (const auto &comp : solution_components(g, f)) {
        bool full = true;
        for (const auto &v : comp)
            if (degree(g, f, v) != state.capacity(v, 2)) {
                full = false;
                break;
            }
        if (full) saturated.push_back(comp);
    }
    if (saturated.empty()) return std::nullopt;
    if (saturated.size() > 12)
        throw std::length_error("too many saturated components to combine");

    // Unions of saturated components whose pseudovertices pair up record by
    // record and whose pair count is odd; smaller unions first.
    std::size_t n = saturated.size();
    std::vector<std::vector<std::size_t>> picks;
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        std::vector<std::size_t> pick;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i)) pick.push_back(i);
        picks.push_back(pick);
    }
    std::stable_sort(picks.begin(), picks.end(),
                     [](const auto &a, const auto &b) { return a.size() < b.size(); });

    for (const auto &pick : picks) {
        VertexSet un;
        for (std::size_t i : pick) un.insert(saturated[i].begin(), saturated[i].end());
        int np = 0, nm = 0, records = 0;
        bool paired = true;
        for (const auto &v : un) {
            if (state.is_pseudo(v)) {
                const ShrinkRecord &rec = state.records()[state.pseudo_record(v)];
                if (!un.count(rec.plus_pseudo) || !un.count(rec.minus_pseudo)) {
                    paired = false;
                    break;
                }
                if (v.side == Side::plus) ++records;
            } else {
                (v.side == Side::plus ? np : nm)++;
            }
        }
        if (!paired || np != nm) continue;
        if ((np + records) % 2 == 0) continue;
        VertexSet hat = state.hat_set(un);
        if (hat.size() < 6) continue;

        Violation viol;
        viol.hatted_set = hat;
        for (int id : f) {
            const Edge &e = g.edge(id);
            if (un.count(e.end_plus) && un.count(e.end_minus))
                viol.factor_edges.push_back(id);
        }
        return viol;
    }
    return std::nullopt;
}

std::vector<std::vector<int>> C4k2Family::expansion_candidates(
    const ShrunkState &state, const ShrinkRecord &record, const EdgeIdSet &f,
    const DeficiencyPreference &prefer) const {
    std::vector<int> pool;
    for (const Edge &e : record.removed_edges) pool.push_back(e.id);
    if (pool.size() > 20) {
        // Dense sets overflow the subset enumeration; fall back to the edges
        // of the saturating structure, which carry the useful completions.
        std::set<int> keep(record.witness.factor_edges.begin(),
                           record.witness.factor_edges.end());
        std::erase_if(pool, [&](int id) { return !keep.count(id); });
    }
    auto candidates = detail::degree_valid_subsets(state, pool, f, 2);
    VertexSet inner = record.inner_plus;
    inner.insert(record.inner_minus.begin(), record.inner_minus.end());
    detail::order_by_preference(candidates, state, inner, f, 2, prefer);
    return candidates;
}

bool C4k2Family::check_original(const BipartiteMultigraph &g,
                                const EdgeIdSet &f) const {
    for (const auto &v : g.vertices())
        if (degree(g, f, v) > 2) return false;
    for (const auto &comp : solution_components(g, f)) {
        bool full = true;
        for (const auto &v : comp)
            if (degree(g, f, v) != 2) {
                full = false;
                break;
            }
        if (full && comp.size() >= 6 && (comp.size() / 2) % 2 == 1) return false;
    }
    return true;
}

std::vector<VertexSet> C4k2Family::enumerate_members(
    const BipartiteMultigraph &g, std::size_t max_members) const {
    std::vector<VertexId> verts(g.vertices().begin(), g.vertices().end());
    if (verts.size() > 16)
        throw std::length_error("graph too large for member enumeration");
    std::vector<VertexSet> out;
    for (std::size_t mask = 1; mask < (std::size_t(1) << verts.size()); ++mask) {
        VertexSet u;
        int np = 0, nm = 0;
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (mask & (std::size_t(1) << i)) {
                u.insert(verts[i]);
                (verts[i].side == Side::plus ? np : nm)++;
            }
        if (np != nm || np % 2 == 0 || np < 3) continue;
        out.push_back(u);
        if (out.size() > max_members)
            throw std::length_error("family member list exceeds budget");
    }
    return out;
}

bool C4k2Family::is_certifiable(const BipartiteMultigraph &,
                                const VertexSet &u) const {
    int np = 0, nm = 0;
    for (const auto &v : u) (v.side == Side::plus ? np : nm)++;
    return np == nm && np % 2 == 1 && np >= 3;
}

}  // namespace ufm
