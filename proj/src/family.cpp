#include "ufm/family.hpp"

#include <algorithm>
#include <functional>

#include "family_util.hpp"

namespace ufm {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long long feasibility_bound(int t, std::size_t set_size) {
    return floor_div(static_cast<long long>(t) * static_cast<long long>(set_size) - 1,
                     2);
}

long long FamilyOracle::certificate_bound(const BipartiteMultigraph &,
                                          const VertexSet &u) const {
    return floor_div(static_cast<long long>(t()) * static_cast<long long>(u.size()),
                     2) -
           1;
}

VertexId current_twin(const ShrunkState &state, const TwinPairing &twins,
                      VertexId v) {
    if (state.is_pseudo(v)) {
        const ShrinkRecord &rec = state.records()[state.pseudo_record(v)];
        return v.side == Side::plus ? rec.minus_pseudo : rec.plus_pseudo;
    }
    if (v.side == Side::plus) return vminus(twins.minus_of(v.index));
    return vplus(twins.plus_of(v.index));
}

namespace detail {

int find_edge_between(const BipartiteMultigraph &g, VertexId p, VertexId m) {
    for (int id : g.incident(p))
        if (g.edge(id).end_minus == m) return id;
    return -1;
}

std::vector<std::vector<VertexId>> functional_cycles(
    const std::map<VertexId, VertexId> &succ) {
    std::map<VertexId, int> color;  // 1 on current walk, 2 finished
    std::vector<std::vector<VertexId>> cycles;
    for (const auto &[start, ignored] : succ) {
        if (color.count(start)) continue;
        std::vector<VertexId> path;
        VertexId v = start;
        while (true) {
            auto c = color.find(v);
            if (c != color.end()) {
                if (c->second == 1) {
                    auto it = std::find(path.begin(), path.end(), v);
                    std::vector<VertexId> cyc(it, path.end());
                    auto mn = std::min_element(cyc.begin(), cyc.end());
                    std::rotate(cyc.begin(), mn, cyc.end());
                    cycles.push_back(cyc);
                }
                break;
            }
            color[v] = 1;
            path.push_back(v);
            auto s = succ.find(v);
            if (s == succ.end()) break;
            v = s->second;
        }
        for (const auto &w : path) color[w] = 2;
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

VertexId current_vertex(const ShrunkState &state, VertexId v) {
    if (state.current().has_vertex(v) && !state.is_pseudo(v)) return v;
    for (std::size_t i : state.active_records()) {
        const ShrinkRecord &rec = state.records()[i];
        if (rec.original_set.count(v))
            return v.side == Side::plus ? rec.plus_pseudo : rec.minus_pseudo;
    }
    if (state.current().has_vertex(v)) return v;
    throw std::logic_error("vertex is not represented in the current graph");
}

std::vector<std::vector<int>> degree_valid_subsets(const ShrunkState &state,
                                                   std::vector<int> pool,
                                                   const EdgeIdSet &f, int t) {
    if (pool.size() > 20)
        throw std::length_error("expansion pool too large to enumerate");
    std::sort(pool.begin(), pool.end());

    const BipartiteMultigraph &g = state.current();
    std::map<VertexId, int> residual;
    auto room = [&](VertexId v) {
        auto [it, fresh] = residual.try_emplace(v, 0);
        if (fresh) it->second = state.capacity(v, t) - degree(g, f, v);
        return it->second;
    };

    std::vector<std::vector<int>> out;
    std::vector<int> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == pool.size()) {
            out.push_back(chosen);
            return;
        }
        const Edge &e = g.edge(pool[i]);
        if (room(e.end_plus) > 0 && room(e.end_minus) > 0) {
            residual[e.end_plus]--;
            residual[e.end_minus]--;
            chosen.push_back(pool[i]);
            rec(i + 1);
            chosen.pop_back();
            residual[e.end_plus]++;
            residual[e.end_minus]++;
        }
        rec(i + 1);
    };
    rec(0);

    std::stable_sort(out.begin(), out.end(),
                     [](const std::vector<int> &a, const std::vector<int> &b) {
                         if (a.size() != b.size()) return a.size() > b.size();
                         return a < b;
                     });
    return out;
}

void order_by_preference(std::vector<std::vector<int>> &candidates,
                         const ShrunkState &state, const VertexSet &inner,
                         const EdgeIdSet &f, int t,
                         const DeficiencyPreference &prefer) {
    if (!prefer) return;
    const BipartiteMultigraph &g = state.current();
    auto score = [&](const std::vector<int> &cand) {
        EdgeIdSet combined = f;
        combined.insert(cand.begin(), cand.end());
        int bad = 0;
        for (const auto &v : inner)
            if (degree(g, combined, v) < state.capacity(v, t) && !prefer(v)) ++bad;
        return bad;
    };
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](const std::vector<int> &a, const std::vector<int> &b) {
                         return score(a) < score(b);
                     });
}

}  // namespace detail

// ---------------------------------------------------------------- explicit

ExplicitFamily::ExplicitFamily(int t, std::vector<VertexSet> sets)
    : t_(t), sets_(std::move(sets)) {
    if (t_ < 1) throw std::invalid_argument("t must be positive");
}

std::optional<Violation> ExplicitFamily::find_violation(const ShrunkState &state,
                                                        const EdgeIdSet &f) const {
    const BipartiteMultigraph &g = state.current();
    for (const VertexSet &u : sets_) {
        // Carrier of U at the current level; skip U when some shrunk set
        // straddles its boundary.
        VertexSet carrier;
        VertexSet covered;
        bool straddled = false;
        for (const auto &v : g.vertices()) {
            VertexSet h = state.hat_vertex(v);
            bool all = true, any = false;
            for (const auto &w : h) {
                if (u.count(w))
                    any = true;
                else
                    all = false;
            }
            if (any && !all) {
                straddled = true;
                break;
            }
            if (all && any) {
                carrier.insert(v);
                covered.insert(h.begin(), h.end());
            }
        }
        if (straddled || carrier.empty()) continue;
        VertexSet u_both = u;  // u lists both sides already
        if (covered != u_both) continue;

        EdgeIdSet induced = induced_edges(g, carrier);
        EdgeIdSet factor;
        for (int id : induced)
            if (f.count(id)) factor.insert(id);
        bool saturated = true;
        for (const auto &v : carrier)
            if (degree(g, factor, v) != state.capacity(v, t_)) {
                saturated = false;
                break;
            }
        if (!saturated) continue;

        Violation viol;
        viol.hatted_set = u;
        viol.factor_edges.assign(factor.begin(), factor.end());
        return viol;
    }
    return std::nullopt;
}

std::vector<std::vector<int>> ExplicitFamily::expansion_candidates(
    const ShrunkState &state, const ShrinkRecord &record, const EdgeIdSet &f,
    const DeficiencyPreference &prefer) const {
    std::vector<int> pool;
    for (const Edge &e : record.removed_edges) pool.push_back(e.id);
    auto candidates = detail::degree_valid_subsets(state, pool, f, t_);
    VertexSet inner = record.inner_plus;
    inner.insert(record.inner_minus.begin(), record.inner_minus.end());
    detail::order_by_preference(candidates, state, inner, f, t_, prefer);
    return candidates;
}

bool ExplicitFamily::check_original(const BipartiteMultigraph &g,
                                    const EdgeIdSet &f) const {
    for (const auto &v : g.vertices())
        if (degree(g, f, v) > t_) return false;
    for (const VertexSet &u : sets_) {
        EdgeIdSet inner = induced_edges(g, u);
        long long count = 0;
        for (int id : inner)
            if (f.count(id)) ++count;
        if (count > feasibility_bound(t_, u.size())) return false;
    }
    return true;
}

std::vector<VertexSet> ExplicitFamily::enumerate_members(
    const BipartiteMultigraph &, std::size_t max_members) const {
    if (sets_.size() > max_members)
        throw std::length_error("family member list exceeds budget");
    return sets_;
}

bool ExplicitFamily::is_certifiable(const BipartiteMultigraph &,
                                    const VertexSet &u) const {
    if ((static_cast<long long>(t_) * static_cast<long long>(u.size())) % 2 != 0)
        return false;
    return std::find(sets_.begin(), sets_.end(), u) != sets_.end();
}

// ---------------------------------------------------------------- K_{t,t}

KttFreeFamily::KttFreeFamily(int t) : t_(t) {
    if (t_ < 2) throw std::invalid_argument("K_{t,t}-free requires t >= 2");
}

namespace {

// Finds a K_{t,t} on the given vertex pools that is fully saturated by f:
// each corner has all t of its f-edges inside, and the corners span a
// complete bipartite subgraph of g.
struct KttWitness {
    VertexSet plus_side, minus_side;
    std::vector<int> factor_edges;
};

std::optional<KttWitness> find_saturated_ktt(
    const BipartiteMultigraph &g, const EdgeIdSet &f, int t,
    const std::function<bool(VertexId)> &eligible) {
    std::vector<VertexId> pool;
    for (const auto &v : g.side_vertices(Side::plus))
        if (eligible(v) && degree(g, f, v) == t) pool.push_back(v);

    std::vector<VertexId> combo;
    std::optional<KttWitness> hit;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (hit) return;
        if (static_cast<int>(combo.size()) == t) {
            VertexSet minus_side;
            std::vector<int> factor;
            for (const auto &a : combo)
                for (int id : g.incident(a))
                    if (f.count(id)) {
                        minus_side.insert(g.edge(id).end_minus);
                        factor.push_back(id);
                    }
            if (static_cast<int>(minus_side.size()) != t) return;
            for (const auto &b : minus_side) {
                if (!eligible(b)) return;
                for (int id : g.incident(b))
                    if (f.count(id) &&
                        std::find(combo.begin(), combo.end(),
                                  g.edge(id).end_plus) == combo.end())
                        return;
            }
            for (const auto &a : combo)
                for (const auto &b : minus_side)
                    if (detail::find_edge_between(g, a, b) < 0) return;
            KttWitness w;
            w.plus_side.insert(combo.begin(), combo.end());
            w.minus_side = minus_side;
            w.factor_edges = factor;
            hit = w;
            return;
        }
        if (i == pool.size()) return;
        combo.push_back(pool[i]);
        rec(i + 1);
        combo.pop_back();
        rec(i + 1);
    };
    rec(0);
    return hit;
}

}  // namespace

std::optional<Violation> KttFreeFamily::find_violation(const ShrunkState &state,
                                                       const EdgeIdSet &f) const {
    auto hit = find_saturated_ktt(state.current(), f, t_,
                                  [&](VertexId v) { return !state.is_pseudo(v); });
    if (!hit) return std::nullopt;
    Violation viol;
    viol.hatted_set = hit->plus_side;
    viol.hatted_set.insert(hit->minus_side.begin(), hit->minus_side.end());
    viol.factor_edges = hit->factor_edges;
    return viol;
}

std::vector<std::vector<int>> KttFreeFamily::expansion_candidates(
    const ShrunkState &state, const ShrinkRecord &record, const EdgeIdSet &f,
    const DeficiencyPreference &prefer) const {
    const BipartiteMultigraph &g = state.current();

    // A boundary f-edge forces the missing inner edge onto its endpoint;
    // otherwise any vertex may carry the deficiency, zero-potential ones first.
    auto corner_choices = [&](const VertexSet &side) {
        std::vector<VertexId> out;
        for (const auto &v : side)
            if (degree(g, f, v) > 0) out.push_back(v);
        if (!out.empty()) return out;
        if (prefer) {
            for (const auto &v : side)
                if (prefer(v)) out.push_back(v);
            for (const auto &v : side)
                if (!prefer(v)) out.push_back(v);
        } else {
            out.assign(side.begin(), side.end());
        }
        return out;
    };

    std::vector<std::vector<int>> candidates;
    for (const auto &u_star : corner_choices(record.inner_plus))
        for (const auto &v_star : corner_choices(record.inner_minus)) {
            std::vector<int> chosen;
            for (const auto &a : record.inner_plus)
                for (const auto &b : record.inner_minus) {
                    if (a == u_star && b == v_star) continue;
                    int id = detail::find_edge_between(g, a, b);
                    if (id < 0)
                        throw std::logic_error("shrunk set is not complete bipartite");
                    chosen.push_back(id);
                }
            candidates.push_back(std::move(chosen));
        }
    return candidates;
}

bool KttFreeFamily::check_original(const BipartiteMultigraph &g,
                                   const EdgeIdSet &f) const {
    for (const auto &v : g.vertices())
        if (degree(g, f, v) > t_) return false;
    return !find_saturated_ktt(g, f, t_, [](VertexId) { return true; });
}

std::vector<VertexSet> KttFreeFamily::enumerate_members(
    const BipartiteMultigraph &g, std::size_t max_members) const {
    VertexSet plus_set = g.side_vertices(Side::plus);
    VertexSet minus_set = g.side_vertices(Side::minus);
    std::vector<VertexId> plus(plus_set.begin(), plus_set.end());
    std::vector<VertexId> minus(minus_set.begin(), minus_set.end());
    if (plus.size() > 16 || minus.size() > 16)
        throw std::length_error("graph too large for member enumeration");

    std::vector<VertexSet> out;
    std::vector<VertexId> a, b;
    std::function<void(std::size_t)> pick_b = [&](std::size_t i) {
        if (static_cast<int>(b.size()) == t_) {
            for (const auto &x : a)
                for (const auto &y : b)
                    if (detail::find_edge_between(g, x, y) < 0) return;
            VertexSet u(a.begin(), a.end());
            u.insert(b.begin(), b.end());
            out.push_back(u);
            if (out.size() > max_members)
                throw std::length_error("family member list exceeds budget");
            return;
        }
        if (i == minus.size()) return;
        b.push_back(minus[i]);
        pick_b(i + 1);
        b.pop_back();
        pick_b(i + 1);
    };
    std::function<void(std::size_t)> pick_a = [&](std::size_t i) {
        if (static_cast<int>(a.size()) == t_) {
            pick_b(0);
            return;
        }
        if (i == plus.size()) return;
        a.push_back(plus[i]);
        pick_a(i + 1);
        a.pop_back();
        pick_a(i + 1);
    };
    pick_a(0);
    return out;
}

bool KttFreeFamily::is_certifiable(const BipartiteMultigraph &g,
                                   const VertexSet &u) const {
    VertexSet plus_side, minus_side;
    for (const auto &v : u)
        (v.side == Side::plus ? plus_side : minus_side).insert(v);
    if (static_cast<int>(plus_side.size()) != t_ ||
        static_cast<int>(minus_side.size()) != t_)
        return false;
    for (const auto &a : plus_side)
        for (const auto &b : minus_side)
            if (detail::find_edge_between(g, a, b) < 0) return false;
    return true;
}

}  // namespace ufm
