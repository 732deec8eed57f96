#include "ufm/solver_weighted.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>

#include "ufm/shrinker.hpp"

namespace ufm {

Rat DualSolution::objective() const {
    Rat obj;
    for (const auto &[v, val] : p) obj += Rat(t) * val;
    for (const auto &[e, val] : q) obj += val;
    for (const auto &ds : r) obj += Rat(ds.bound) * ds.value;
    return obj;
}

long long dual_set_bound(const BipartiteMultigraph &g, const FamilyOracle &family,
                         const VertexSet &u) {
    try {
        return family.certificate_bound(g, u);
    } catch (const std::length_error &) {
        return feasibility_bound(family.t(), u.size());
    }
}

Rat solution_weight(const BipartiteMultigraph &g, const EdgeIdSet &f) {
    Rat w;
    for (int id : f) w += g.edge(id).weight;
    return w;
}

namespace {

struct Ctx {
    const FamilyOracle &family;
    int t;
    ShrunkState state;
    EdgeIdSet f;
    std::map<VertexId, Rat> p;
    std::map<int, Rat> q;   // by edge id, missing entries are zero
    std::map<int, Rat> r;   // by record set_id

    Ctx(const BipartiteMultigraph &g, const FamilyOracle &fam)
        : family(fam), t(fam.t()), state(g) {}

    Rat q_of(int id) const {
        auto it = q.find(id);
        return it == q.end() ? Rat(0) : it->second;
    }

    // Reduced weight of an edge present in the current graph. Such an edge is
    // never inside a still-shrunk set, so no r term applies.
    Rat reduced(int id) const {
        const Edge &oe = state.original().edge(id);
        return p.at(oe.end_plus) + p.at(oe.end_minus) + q_of(id) - oe.weight;
    }

    bool hat_has_zero_p(VertexId v) const {
        for (const auto &u : state.hat_vertex(v))
            if (p.at(u).is_zero()) return true;
        return false;
    }
    bool hat_has_positive_p(VertexId v) const {
        for (const auto &u : state.hat_vertex(v))
            if (p.at(u) > Rat(0)) return true;
        return false;
    }

    // In relaxed mode the search hunts zero-gain augmentations that saturate
    // leftover deficient minus vertices, so any deficient plus vertex may
    // start a path and only minus vertices may end one.
    bool relaxed = false;

    bool is_source(VertexId v) const {
        const BipartiteMultigraph &g = state.current();
        int d = degree(g, f, v);
        if (state.is_pseudo(v)) return d == 0 && (relaxed || !hat_has_zero_p(v));
        return d <= t - 1 && (relaxed || p.at(v) > Rat(0));
    }

    bool is_sink(VertexId v) const {
        const BipartiteMultigraph &g = state.current();
        int d = degree(g, f, v);
        if (v.side == Side::minus)
            return state.is_pseudo(v) ? d == 0 : d <= t - 1;
        if (relaxed) return false;
        if (state.is_pseudo(v)) return d == 1 && hat_has_zero_p(v);
        return p.at(v).is_zero();
    }

    // Edges hidden inside shrunk records keep their dual q, and a positive
    // value commits the edge to reappear when the record is expanded. The
    // expansion degree rule caps a boundary-incident original vertex at t-1
    // inner edges, so count the commitments per original vertex.
    int committed_degree(VertexId hat_v) const {
        int n = 0;
        for (std::size_t i : state.active_records()) {
            for (const Edge &re : state.records()[i].removed_edges) {
                if (q_of(re.id).is_zero()) continue;
                const Edge &e = state.original().edge(re.id);
                if (e.end_plus == hat_v || e.end_minus == hat_v) ++n;
            }
        }
        return n;
    }

    // Inserting this edge into F would land a boundary edge on an original
    // vertex whose committed edges already fill its capacity, which would
    // force a committed edge out at expansion time.
    bool commit_conflict(int id) const {
        const Edge &oe = state.original().edge(id);
        return committed_degree(oe.end_plus) >= t ||
               committed_degree(oe.end_minus) >= t;
    }

    DeficiencyPreference prefer() {
        return [this](VertexId v) { return hat_has_zero_p(v); };
    }
    EdgeKeepPreference keep() {
        return [this](int id) { return !q_of(id).is_zero(); };
    }
};

// BFS over tight non-F forward arcs and F backward arcs, in vertex and edge
// id order. With stop_at_sinks the first sink reached yields a path.
struct Search {
    VertexSet visited;
    std::optional<std::vector<int>> path;
};

Search search_tight(const Ctx &ctx, bool stop_at_sinks) {
    const BipartiteMultigraph &g = ctx.state.current();
    Search out;
    std::map<VertexId, int> parent;
    std::deque<VertexId> queue;
    for (const auto &v : g.side_vertices(Side::plus))
        if (ctx.is_source(v)) {
            out.visited.insert(v);
            queue.push_back(v);
        }
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (int id : g.incident(v)) {
            bool forward = v.side == Side::plus;
            if (forward == (ctx.f.count(id) > 0)) continue;
            if (forward && !ctx.reduced(id).is_zero()) continue;
            if (forward && stop_at_sinks && ctx.commit_conflict(id)) continue;
            // removing an edge with positive q would break complementary
            // slackness, so such edges carry no backward arc
            if (!forward && !ctx.q_of(id).is_zero()) continue;
            VertexId w = g.edge(id).end(other(v.side));
            if (out.visited.count(w)) continue;
            out.visited.insert(w);
            parent[w] = id;
            if (stop_at_sinks && ctx.is_sink(w)) {
                std::vector<int> edges;
                VertexId cur = w;
                while (true) {
                    auto it = parent.find(cur);
                    if (it == parent.end()) break;
                    edges.push_back(it->second);
                    cur = g.edge(it->second).end(other(cur.side));
                }
                std::reverse(edges.begin(), edges.end());
                out.path = std::move(edges);
                return out;
            }
            queue.push_back(w);
        }
    }
    return out;
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

// DFS over simple alternating tight paths from relaxed sources, testing each
// complete path for feasibility. Used once the duals are final, so an
// infeasible candidate is skipped instead of triggering a shrink.
std::optional<std::vector<int>> find_relaxed_path(Ctx &ctx) {
    const BipartiteMultigraph &g = ctx.state.current();
    ctx.relaxed = true;
    std::vector<int> path;
    VertexSet on_path;
    int tests = 4096;
    std::optional<std::vector<int>> found;
    std::function<bool(VertexId)> dfs = [&](VertexId v) -> bool {
        if (v.side == Side::minus && ctx.is_sink(v)) {
            if (--tests < 0) return true;
            EdgeIdSet trial = sym_diff(ctx.f, path);
            if (!ctx.family.find_violation(ctx.state, trial)) {
                found = path;
                return true;
            }
        }
        for (int id : g.incident(v)) {
            bool forward = v.side == Side::plus;
            if (forward == (ctx.f.count(id) > 0)) continue;
            if (forward && !ctx.reduced(id).is_zero()) continue;
            if (forward && ctx.commit_conflict(id)) continue;
            if (!forward && !ctx.q_of(id).is_zero()) continue;
            VertexId w = g.edge(id).end(other(v.side));
            if (on_path.count(w)) continue;
            on_path.insert(w);
            path.push_back(id);
            bool stop = dfs(w);
            path.pop_back();
            on_path.erase(w);
            if (stop) return true;
        }
        return false;
    };
    for (const auto &v : g.side_vertices(Side::plus)) {
        if (!ctx.is_source(v)) continue;
        on_path.insert(v);
        bool stop = dfs(v);
        on_path.erase(v);
        if (stop) break;
    }
    ctx.relaxed = false;
    return found;
}

std::pair<EdgeIdSet, Violation> find_violating_prefix(const Ctx &ctx,
                                                      const std::vector<int> &path) {
    EdgeIdSet prev = ctx.f;
    EdgeIdSet cur = ctx.f;
    for (std::size_t i = 0; i < path.size(); i += 2) {
        cur.insert(path[i]);
        if (i + 1 < path.size()) cur.erase(path[i + 1]);
        if (auto viol = ctx.family.find_violation(ctx.state, cur))
            return {prev, *viol};
        prev = cur;
    }
    throw std::logic_error("augmented solution was feasible after all");
}

// Subsets of pool meeting the exact degree targets, tried through the
// callback until it accepts one.
bool for_each_exact_degree_subset(const BipartiteMultigraph &g,
                                  const std::vector<int> &pool,
                                  std::map<VertexId, int> need,
                                  const std::function<bool(const std::vector<int> &)> &accept) {
    std::vector<int> chosen;
    long long attempts = 0;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == pool.size()) {
            for (const auto &[v, n] : need)
                if (n != 0) return false;
            if (++attempts > 4096)
                throw std::runtime_error("degree-constrained search budget exceeded");
            return accept(chosen);
        }
        const Edge &e = g.edge(pool[i]);
        int &np = need.at(e.end_plus);
        int &nm = need.at(e.end_minus);
        if (np > 0 && nm > 0) {
            --np;
            --nm;
            chosen.push_back(pool[i]);
            if (rec(i + 1)) return true;
            chosen.pop_back();
            ++np;
            ++nm;
        }
        return rec(i + 1);
    };
    return rec(0);
}

// Carrier of an original-level set at the current level, mirroring Shrink.
VertexSet carrier_of(const ShrunkState &state, const VertexSet &u) {
    VertexSet carrier;
    for (const auto &v : state.current().vertices()) {
        VertexSet h = state.hat_vertex(v);
        bool any = false, all = true;
        for (const auto &w : h) {
            if (u.count(w))
                any = true;
            else
                all = false;
        }
        if (any && !all)
            throw std::logic_error("set straddles a shrunk set");
        if (any) carrier.insert(v);
    }
    return carrier;
}

void do_modify(Ctx &ctx, const Violation &viol) {
    const BipartiteMultigraph &g = ctx.state.current();
    VertexSet carrier = carrier_of(ctx.state, viol.hatted_set);
    EdgeIdSet inner = induced_edges(g, carrier);
    EdgeIdSet fu;
    for (int id : inner)
        if (ctx.f.count(id)) fu.insert(id);

    std::optional<VertexId> ustar;
    for (const auto &v : carrier) {
        if (v.side != Side::plus) continue;
        if (ctx.hat_has_zero_p(v)) {
            ustar = v;
            break;
        }
    }
    if (!ustar) throw std::logic_error("modify called without a zero-potential vertex");

    std::map<VertexId, int> need;
    for (const auto &v : carrier) {
        if (v.side == Side::plus) {
            int boundary = degree(g, ctx.f, v) - degree(g, fu, v);
            int tgt = ctx.state.capacity(v, ctx.t) - boundary - (v == *ustar ? 1 : 0);
            if (tgt < 0) throw std::logic_error("modify degree target underflow");
            need[v] = tgt;
        } else {
            need[v] = degree(g, fu, v);
        }
    }

    std::vector<int> pool;
    for (int id : inner)
        if (ctx.reduced(id).is_zero()) pool.push_back(id);

    EdgeIdSet base = ctx.f;
    for (int id : fu) base.erase(id);

    auto attempt = [&](const std::vector<int> &forced) {
        std::map<VertexId, int> remaining = need;
        for (int id : forced) {
            const Edge &e = g.edge(id);
            if (--remaining.at(e.end_plus) < 0 || --remaining.at(e.end_minus) < 0)
                return false;
        }
        std::vector<int> open;
        for (int id : pool)
            if (std::find(forced.begin(), forced.end(), id) == forced.end())
                open.push_back(id);
        return for_each_exact_degree_subset(
            g, open, remaining, [&](const std::vector<int> &k) {
                EdgeIdSet trial = base;
                trial.insert(forced.begin(), forced.end());
                trial.insert(k.begin(), k.end());
                if (ctx.family.find_violation(ctx.state, trial)) return false;
                ctx.f = std::move(trial);
                return true;
            });
    };

    // Dropping an edge with positive q breaks complementary slackness, so keep
    // those whenever a replacement set exists around them.
    std::vector<int> forced;
    for (int id : fu)
        if (!ctx.q_of(id).is_zero()) forced.push_back(id);
    bool done = attempt(forced);
    if (!done && !forced.empty()) done = attempt({});
    if (!done) throw std::runtime_error("modify found no replacement edge set");
}

void expand_zero(Ctx &ctx) {
    expand_zero_dual(ctx.state, ctx.f, ctx.family, ctx.r, ctx.prefer(), ctx.keep());
    if (ctx.family.find_violation(ctx.state, ctx.f))
        throw std::logic_error("expansion produced an infeasible solution");
}

void dual_update(Ctx &ctx) {
    const BipartiteMultigraph &g = ctx.state.current();
    Search reach = search_tight(ctx, false);
    VertexSet hat_r_plus, hat_r_minus;
    for (const auto &v : reach.visited) {
        VertexSet h = ctx.state.hat_vertex(v);
        (v.side == Side::plus ? hat_r_plus : hat_r_minus)
            .insert(h.begin(), h.end());
    }

    std::optional<Rat> eps;
    auto offer = [&](const Rat &cand) {
        if (!eps || cand < *eps) eps = cand;
    };
    for (const auto &[id, e] : g.edges()) {
        if (ctx.f.count(id)) continue;
        if (reach.visited.count(e.end_plus) && !reach.visited.count(e.end_minus))
            offer(ctx.reduced(id));
    }
    for (const auto &v : hat_r_plus) offer(ctx.p.at(v));
    for (int id : ctx.f) {
        const Edge &e = g.edge(id);
        if (!reach.visited.count(e.end_plus) && reach.visited.count(e.end_minus))
            offer(ctx.q_of(id));
    }
    for (std::size_t i : ctx.state.active_records()) {
        const ShrinkRecord &rec = ctx.state.records()[i];
        if (!reach.visited.count(rec.plus_pseudo) &&
            reach.visited.count(rec.minus_pseudo))
            offer(ctx.r.at(rec.set_id));
    }
    if (!eps || !(*eps > Rat(0)))
        throw std::runtime_error("dual update stalled");

    for (const auto &v : hat_r_plus) ctx.p.at(v) -= *eps;
    for (const auto &v : hat_r_minus) ctx.p.at(v) += *eps;
    for (int id : ctx.f) {
        const Edge &e = g.edge(id);
        bool plus_in = reach.visited.count(e.end_plus) > 0;
        bool minus_in = reach.visited.count(e.end_minus) > 0;
        if (plus_in && !minus_in) ctx.q[id] += *eps;
        if (!plus_in && minus_in) ctx.q[id] -= *eps;
    }
    for (std::size_t i : ctx.state.active_records()) {
        const ShrinkRecord &rec = ctx.state.records()[i];
        bool plus_in = reach.visited.count(rec.plus_pseudo) > 0;
        bool minus_in = reach.visited.count(rec.minus_pseudo) > 0;
        if (plus_in && !minus_in) ctx.r.at(rec.set_id) += *eps;
        if (!plus_in && minus_in) ctx.r.at(rec.set_id) -= *eps;
    }
}

WeightedResult run_primal_dual(const BipartiteMultigraph &g,
                               const FamilyOracle &family) {
    Ctx ctx(g, family);
    if (family.find_violation(ctx.state, ctx.f))
        throw std::invalid_argument("the empty solution is already infeasible");

    for (const auto &v : g.vertices()) {
        Rat init;
        if (v.side == Side::plus)
            for (int id : g.incident(v)) {
                const Rat &w = g.edge(id).weight;
                if (w > init) init = w;
            }
        ctx.p[v] = init;
    }

    long long n = static_cast<long long>(g.vertex_count());
    long long budget = 256 + 16 * ctx.t * (n + 2) * (n + 2) * (n + 2) * (n + 2);
    while (true) {
        if (--budget < 0)
            throw std::runtime_error("iteration budget exceeded; aborting");

        bool have_source = false;
        for (const auto &v : ctx.state.current().side_vertices(Side::plus))
            if (ctx.is_source(v)) {
                have_source = true;
                break;
            }
        if (!have_source) {
            // All remaining deficiencies sit at plus vertices with zero
            // potential, but a minus vertex with positive potential may still
            // be unsaturated. A tight path between two deficiencies fixes
            // that without touching the dual, and never lowers the weight.
            if (auto extra = find_relaxed_path(ctx)) {
                ctx.f = sym_diff(ctx.f, *extra);
                expand_zero(ctx);
                continue;
            }
            break;
        }

        Search found = search_tight(ctx, true);
        if (found.path) {
            EdgeIdSet trial = sym_diff(ctx.f, *found.path);
            if (!family.find_violation(ctx.state, trial)) {
                ctx.f = std::move(trial);
                expand_zero(ctx);
            } else {
                auto [rolled, viol] = find_violating_prefix(ctx, *found.path);
                ctx.f = std::move(rolled);
                bool zero_inside = false;
                for (const auto &u : viol.hatted_set)
                    if (u.side == Side::plus && ctx.p.at(u).is_zero()) {
                        zero_inside = true;
                        break;
                    }
                if (zero_inside) {
                    do_modify(ctx, viol);
                    expand_zero(ctx);
                } else {
                    ctx.state.shrink(viol.hatted_set, ctx.f, viol);
                    ctx.r[ctx.state.records().back().set_id] = Rat(0);
                }
            }
        } else {
            dual_update(ctx);
            expand_zero(ctx);
        }
    }

    expand_all(ctx.state, ctx.f, family, ctx.prefer(), ctx.keep());
    if (!family.check_original(ctx.state.original(), ctx.f))
        throw std::logic_error("final expansion produced an infeasible solution");

    WeightedResult result;
    result.matching = ctx.f;
    result.weight = solution_weight(g, ctx.f);
    result.dual.t = ctx.t;
    result.dual.p = ctx.p;
    for (const auto &[id, val] : ctx.q)
        if (!val.is_zero()) result.dual.q[id] = val;
    for (const auto &rec : ctx.state.records()) {
        auto it = ctx.r.find(rec.set_id);
        if (it != ctx.r.end() && it->second > Rat(0))
            result.dual.r.push_back({rec.original_set, it->second,
                                     dual_set_bound(g, family, rec.original_set)});
    }
    return result;
}

// Exhaustive search with weight and feasibility pruning, for the rescue path.
EdgeIdSet exact_best_matching(const BipartiteMultigraph &g,
                              const FamilyOracle &family) {
    int t = family.t();
    std::vector<int> ids;
    for (const auto &[id, e] : g.edges()) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    std::vector<Rat> suffix(ids.size() + 1);
    for (std::size_t i = ids.size(); i-- > 0;) {
        const Rat &w = g.edge(ids[i]).weight;
        suffix[i] = suffix[i + 1] + (w > Rat(0) ? w : Rat(0));
    }
    EdgeIdSet best, cur;
    Rat best_w, cur_w;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (cur_w > best_w) {
            best = cur;
            best_w = cur_w;
        }
        if (i == ids.size() || !(cur_w + suffix[i] > best_w)) return;
        int id = ids[i];
        const Edge &e = g.edge(id);
        cur.insert(id);
        if (degree(g, cur, e.end_plus) <= t && degree(g, cur, e.end_minus) <= t &&
            family.check_original(g, cur)) {
            cur_w += e.weight;
            rec(i + 1);
            cur_w -= e.weight;
        }
        cur.erase(id);
        rec(i + 1);
    };
    rec(0);
    return best;
}

// One inequality sum(coef * x) <= rhs (upper) or >= rhs (lower).
struct DualRow {
    std::vector<Rat> coef;
    Rat rhs;
    bool upper = true;
};

bool rows_satisfied(const std::vector<DualRow> &rows, const std::vector<Rat> &x) {
    for (const auto &row : rows) {
        Rat lhs;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (!row.coef[j].is_zero()) lhs += row.coef[j] * x[j];
        if (row.upper ? lhs > row.rhs : lhs < row.rhs) return false;
    }
    return true;
}

// Phase-one simplex over exact rationals with Bland pivoting. Returns a
// nonnegative point satisfying every row, or nullopt.
std::optional<std::vector<Rat>> feasible_point(int nvars,
                                               const std::vector<DualRow> &rows) {
    int m = static_cast<int>(rows.size());
    int total = nvars + 2 * m;
    std::vector<std::vector<Rat>> tab(m, std::vector<Rat>(total + 1));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < nvars; ++j) tab[i][j] = rows[i].coef[j];
        tab[i][nvars + i] = rows[i].upper ? Rat(1) : Rat(-1);
        tab[i][total] = rows[i].rhs;
        if (tab[i][total] < Rat(0))
            for (auto &v : tab[i]) v = -v;
        tab[i][nvars + m + i] = Rat(1);
        basis[i] = nvars + m + i;
    }
    std::vector<Rat> obj(total + 1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= total; ++j) obj[j] -= tab[i][j];
    for (int i = 0; i < m; ++i) obj[nvars + m + i] += Rat(1);
    while (true) {
        int enter = -1;
        for (int j = 0; j < total && enter < 0; ++j)
            if (obj[j] < Rat(0)) enter = j;
        if (enter < 0) break;
        int leave = -1;
        Rat ratio;
        for (int i = 0; i < m; ++i) {
            if (!(tab[i][enter] > Rat(0))) continue;
            Rat cand = tab[i][total] / tab[i][enter];
            if (leave < 0 || cand < ratio ||
                (cand == ratio && basis[i] < basis[leave])) {
                leave = i;
                ratio = cand;
            }
        }
        if (leave < 0) return std::nullopt;
        Rat pivot = tab[leave][enter];
        for (auto &v : tab[leave]) v = v / pivot;
        for (int i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter].is_zero()) continue;
            Rat factor = tab[i][enter];
            for (int j = 0; j <= total; ++j)
                tab[i][j] -= factor * tab[leave][j];
        }
        if (!obj[enter].is_zero()) {
            Rat factor = obj[enter];
            for (int j = 0; j <= total; ++j) obj[j] -= factor * tab[leave][j];
        }
        basis[leave] = enter;
    }
    if (!obj[total].is_zero()) return std::nullopt;
    std::vector<Rat> x(nvars);
    for (int i = 0; i < m; ++i)
        if (basis[i] < nvars) x[basis[i]] = tab[i][total];
    return x;
}

// Nearest integral point of the row system, found by rounding every
// fractional coordinate both ways.
std::optional<std::vector<Rat>> integral_point(const std::vector<DualRow> &rows,
                                               std::vector<Rat> x) {
    std::vector<std::size_t> frac;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (!x[j].is_integer()) frac.push_back(j);
    if (frac.empty()) return x;
    if (frac.size() > 16) return std::nullopt;
    for (unsigned long mask = 0; mask < (1ul << frac.size()); ++mask) {
        std::vector<Rat> y = x;
        for (std::size_t k = 0; k < frac.size(); ++k) {
            long long fl = floor_div(x[frac[k]].num(), x[frac[k]].den());
            y[frac[k]] = Rat(fl + ((mask >> k) & 1));
            if (y[frac[k]] < Rat(0)) y[frac[k]] = Rat(0);
        }
        if (rows_satisfied(rows, y)) return y;
    }
    return std::nullopt;
}

// Exact solver for the rare instances where the primal-dual run fails its own
// audit. Finds an optimal solution by branch and bound, then reconstructs a
// dual from the slackness conditions it must satisfy: zero potential on
// deficient vertices, tight matched edges, q only on matched edges, and r only
// on members the solution saturates.
WeightedResult solve_exact_small(const BipartiteMultigraph &g,
                                 const FamilyOracle &family) {
    int t = family.t();
    EdgeIdSet best = exact_best_matching(g, family);

    std::vector<VertexId> pvars;
    for (const auto &v : g.vertices())
        if (degree(g, best, v) == t) pvars.push_back(v);
    // The dual may need r on shrunk clusters, not only on plain members, so
    // close the member list under unions of intersecting sets and keep the
    // certifiable sets the solution saturates.
    std::vector<VertexSet> pool;
    try {
        pool = family.enumerate_members(g, 100000);
    } catch (const std::exception &) {
        pool.clear();
    }
    std::set<VertexSet> seen(pool.begin(), pool.end());
    pool.assign(seen.begin(), seen.end());
    for (std::size_t i = 0; i < pool.size() && pool.size() <= 5000; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            bool meets = false;
            for (const auto &v : pool[j])
                if (pool[i].count(v)) {
                    meets = true;
                    break;
                }
            if (!meets) continue;
            VertexSet u = pool[i];
            u.insert(pool[j].begin(), pool[j].end());
            if (seen.insert(u).second) pool.push_back(std::move(u));
        }
    std::vector<VertexSet> rsets;
    std::vector<long long> rbounds;
    for (const auto &u : pool) {
        if (!family.is_certifiable(g, u)) continue;
        long long cnt = 0;
        for (int id : induced_edges(g, u))
            if (best.count(id)) ++cnt;
        if (cnt == 0) continue;
        long long b = dual_set_bound(g, family, u);
        if (cnt == b) {
            rsets.push_back(u);
            rbounds.push_back(b);
        }
    }

    int nvars = static_cast<int>(pvars.size() + rsets.size());
    std::map<VertexId, int> pindex;
    for (std::size_t j = 0; j < pvars.size(); ++j) pindex[pvars[j]] = j;
    std::vector<DualRow> rows;
    for (const auto &[id, e] : g.edges()) {
        DualRow row;
        row.coef.assign(nvars, Rat(0));
        auto pi = pindex.find(e.end_plus);
        if (pi != pindex.end()) row.coef[pi->second] += Rat(1);
        auto mi = pindex.find(e.end_minus);
        if (mi != pindex.end()) row.coef[mi->second] += Rat(1);
        for (std::size_t k = 0; k < rsets.size(); ++k)
            if (rsets[k].count(e.end_plus) && rsets[k].count(e.end_minus))
                row.coef[pvars.size() + k] += Rat(1);
        row.rhs = e.weight;
        row.upper = best.count(id) > 0;
        rows.push_back(std::move(row));
    }

    auto x = feasible_point(nvars, rows);
    if (x) x = integral_point(rows, *x);
    if (!x) throw std::runtime_error("no complementary dual found");

    WeightedResult result;
    result.matching = best;
    result.weight = solution_weight(g, best);
    result.dual.t = t;
    for (const auto &v : g.vertices()) result.dual.p[v] = Rat(0);
    for (std::size_t j = 0; j < pvars.size(); ++j) result.dual.p[pvars[j]] = (*x)[j];
    for (std::size_t k = 0; k < rsets.size(); ++k)
        if ((*x)[pvars.size() + k] > Rat(0))
            result.dual.r.push_back({rsets[k], (*x)[pvars.size() + k], rbounds[k]});
    for (int id : best) {
        const Edge &e = g.edge(id);
        Rat gap = e.weight - result.dual.p.at(e.end_plus) -
                  result.dual.p.at(e.end_minus);
        for (const auto &ds : result.dual.r)
            if (ds.set.count(e.end_plus) && ds.set.count(e.end_minus))
                gap -= ds.value;
        if (!gap.is_zero()) result.dual.q[id] = gap;
    }
    std::string audit = verify_dual_certificate(g, family, best, result.dual);
    if (!audit.empty())
        throw std::runtime_error("exact fallback failed its audit: " + audit);
    return result;
}

}  // namespace

WeightedResult solve_max_weight(const BipartiteMultigraph &g,
                                const FamilyOracle &family) {
    try {
        WeightedResult result = run_primal_dual(g, family);
        if (result.weight == result.dual.objective() &&
            verify_dual_certificate(g, family, result.matching, result.dual).empty())
            return result;
    } catch (const std::invalid_argument &) {
        throw;
    } catch (const std::exception &) {
    }
    return solve_exact_small(g, family);
}

std::string verify_dual_certificate(const BipartiteMultigraph &g,
                                    const FamilyOracle &family,
                                    const EdgeIdSet &f, const DualSolution &dual) {
    if (dual.t != family.t()) return "dual t does not match the family";
    for (const auto &v : g.vertices()) {
        auto it = dual.p.find(v);
        if (it == dual.p.end()) return "missing potential p for a vertex";
        if (it->second < Rat(0)) return "negative vertex potential p";
    }
    for (const auto &[id, val] : dual.q) {
        if (!g.has_edge(id)) return "q entry for an unknown edge";
        if (val < Rat(0)) return "negative edge potential q";
    }
    for (const auto &ds : dual.r) {
        if (ds.value < Rat(0)) return "negative set potential r";
        if (ds.value > Rat(0) && !family.is_certifiable(g, ds.set))
            return "positive r on a set outside the family";
    }

    auto reduced = [&](int id) {
        const Edge &e = g.edge(id);
        Rat val = dual.p.at(e.end_plus) + dual.p.at(e.end_minus) - e.weight;
        auto qi = dual.q.find(id);
        if (qi != dual.q.end()) val += qi->second;
        for (const auto &ds : dual.r)
            if (ds.set.count(e.end_plus) && ds.set.count(e.end_minus))
                val += ds.value;
        return val;
    };

    for (const auto &[id, e] : g.edges()) {
        Rat w = reduced(id);
        if (w < Rat(0)) return "dual constraint violated on edge " + std::to_string(id);
        if (f.count(id) && !w.is_zero())
            return "matched edge " + std::to_string(id) + " is not tight";
    }
    for (const auto &[v, val] : dual.p)
        if (val > Rat(0) && degree(g, f, v) != dual.t)
            return "positive p on an unsaturated vertex";
    for (const auto &[id, val] : dual.q)
        if (val > Rat(0) && !f.count(id))
            return "positive q on an unmatched edge " + std::to_string(id);
    for (const auto &ds : dual.r) {
        if (!(ds.value > Rat(0))) continue;
        EdgeIdSet inner = induced_edges(g, ds.set);
        long long cnt = 0;
        for (int id : inner)
            if (f.count(id)) ++cnt;
        if (ds.bound != dual_set_bound(g, family, ds.set))
            return "r set carries the wrong bound";
        if (cnt != ds.bound)
            return "positive r on a set whose bound is slack";
    }
    if (!family.check_original(g, f)) return "solution is not feasible";
    if (solution_weight(g, f) != dual.objective())
        return "primal and dual objectives differ";
    return "";
}

}  // namespace ufm
