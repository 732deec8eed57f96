#include "ufm/reductions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace ufm {

namespace {

void validate_endpoint(int v, int n) {
    if (v < 0 || v >= n) throw std::invalid_argument("vertex index out of range");
}

std::string cycle_name(const std::vector<int> &vs) {
    std::string s;
    for (int v : vs) s += std::to_string(v) + "->";
    return s + std::to_string(vs.front());
}

}  // namespace

Digraph encode_matching_as_even_factor(const UndirectedGraph &g,
                                       ReductionWitness &witness) {
    Digraph d;
    d.n = g.n;
    witness.forward.clear();
    for (const auto &[u, v, w] : g.edges) {
        validate_endpoint(u, g.n);
        validate_endpoint(v, g.n);
        if (u == v) throw std::invalid_argument("loop edge in matching instance");
        int a = d.add_arc(u, v, w);
        int b = d.add_arc(v, u, w);
        witness.forward.push_back({a, b});
    }
    return d;
}

std::string check_odd_cycle_symmetry(const Digraph &d) {
    std::set<std::pair<int, int>> arc_set;
    for (const auto &a : d.arcs) arc_set.insert({a.tail, a.head});

    bool all_reversed = true;
    for (const auto &[t, h] : arc_set)
        if (!arc_set.count({h, t})) {
            all_reversed = false;
            break;
        }
    if (all_reversed) return "";

    // Asymmetric arcs exist; enumerate simple dicycles rooted at their
    // smallest vertex and check the odd ones.
    std::map<int, std::set<int>> out;
    for (const auto &[t, h] : arc_set) out[t].insert(h);
    long long budget = 2000000;
    std::string diag;
    std::vector<int> path;
    std::vector<bool> on_path(d.n, false);
    std::function<bool(int, int)> dfs = [&](int root, int v) -> bool {
        if (--budget < 0) {
            diag = "odd-cycle symmetry could not be certified within budget";
            return true;
        }
        for (int w : out[v]) {
            if (w == root) {
                if (path.size() % 2 == 1) {
                    for (std::size_t i = 0; i < path.size(); ++i) {
                        int a = path[i];
                        int b = i + 1 < path.size() ? path[i + 1] : root;
                        if (!arc_set.count({b, a})) {
                            diag = "odd dicycle " + cycle_name(path) +
                                   " lacks the reverse arc (" + std::to_string(b) +
                                   "," + std::to_string(a) + ")";
                            return true;
                        }
                    }
                }
                continue;
            }
            if (w < root || on_path[w]) continue;
            path.push_back(w);
            on_path[w] = true;
            bool stop = dfs(root, w);
            on_path[w] = false;
            path.pop_back();
            if (stop) return true;
        }
        return false;
    };
    for (int root = 0; root < d.n; ++root) {
        path = {root};
        on_path.assign(d.n, false);
        on_path[root] = true;
        if (dfs(root, root)) return diag;
    }
    return "";
}

EncodedEvenFactor encode_even_factor(const Digraph &d, bool require_symmetry) {
    if (require_symmetry) {
        std::string diag = check_odd_cycle_symmetry(d);
        if (!diag.empty())
            throw std::invalid_argument("digraph is not odd-cycle symmetric: " + diag);
    }
    BipartiteMultigraph g;
    for (int i = 0; i < d.n; ++i) {
        g.add_vertex(vplus(i));
        g.add_vertex(vminus(i));
    }
    ReductionWitness witness;
    witness.twins = TwinPairing(d.n);
    for (const auto &a : d.arcs) {
        validate_endpoint(a.tail, d.n);
        validate_endpoint(a.head, d.n);
        int id = g.add_edge(vplus(a.tail), vminus(a.head), a.weight);
        witness.forward.push_back({id});
    }
    return {std::move(g), OddSymmetricFamily(witness.twins), std::move(witness)};
}

EncodedTriangleFree encode_triangle_free(const UndirectedGraph &g) {
    BipartiteMultigraph h;
    for (int i = 0; i < g.n; ++i) {
        h.add_vertex(vplus(i));
        h.add_vertex(vminus(i));
    }
    ReductionWitness witness;
    witness.twins = TwinPairing(g.n);
    for (const auto &[u, v, w] : g.edges) {
        validate_endpoint(u, g.n);
        validate_endpoint(v, g.n);
        if (u == v) throw std::invalid_argument("loop edge in triangle-free instance");
        int a = h.add_edge(vplus(u), vminus(v), w);
        int b = h.add_edge(vplus(v), vminus(u), w);
        witness.forward.push_back({a, b});
    }
    return {std::move(h), TriangleTwinFamily(witness.twins), std::move(witness)};
}

EncodedMatroid encode_matroid(int ground_size,
                              const std::vector<std::set<int>> &circuits,
                              const std::vector<Rat> &weights) {
    if (static_cast<int>(weights.size()) != ground_size)
        throw std::invalid_argument("one weight per ground element required");
    BipartiteMultigraph g;
    ReductionWitness witness;
    witness.twins = TwinPairing(ground_size);
    for (int i = 0; i < ground_size; ++i) {
        g.add_vertex(vplus(i));
        g.add_vertex(vminus(i));
    }
    for (int i = 0; i < ground_size; ++i)
        witness.forward.push_back({g.add_edge(vplus(i), vminus(i), weights[i])});
    return {std::move(g), MatroidCircuitFamily(ground_size, circuits),
            std::move(witness)};
}

EncodedBranching encode_branching(const Digraph &d) {
    BipartiteMultigraph g;
    for (int v = 0; v < d.n; ++v) g.add_vertex(vminus(v));
    std::vector<std::pair<int, int>> arcs;
    ReductionWitness witness;
    for (const auto &a : d.arcs) {
        validate_endpoint(a.tail, d.n);
        validate_endpoint(a.head, d.n);
        int i = static_cast<int>(arcs.size());
        arcs.emplace_back(a.tail, a.head);
        g.add_vertex(vplus(i));
        witness.forward.push_back({g.add_edge(vplus(i), vminus(a.head), a.weight)});
        witness.twins.set(i, a.head);
    }
    return {std::move(g), DirectedCycleFamily(std::move(arcs)), std::move(witness)};
}

std::vector<int> decode_even_factor(const Digraph &d, const EdgeIdSet &f) {
    std::vector<int> arcs;
    for (int id : f) {
        if (id < 0 || id >= static_cast<int>(d.arcs.size()))
            throw std::invalid_argument("solution edge outside the encoding");
        arcs.push_back(id);
    }
    return arcs;
}

std::vector<int> decode_matching(const UndirectedGraph &g,
                                 const ReductionWitness &witness,
                                 const std::vector<int> &factor_arcs) {
    // arc id -> source edge, and the path or cycle structure of the factor
    std::map<int, int> source_of;
    for (std::size_t e = 0; e < witness.forward.size(); ++e)
        for (int a : witness.forward[e]) source_of[a] = static_cast<int>(e);

    std::map<int, std::pair<int, int>> succ;  // tail -> (head, arc id)
    std::set<int> has_in;
    for (int a : factor_arcs) {
        auto it = source_of.find(a);
        if (it == source_of.end())
            throw std::invalid_argument("factor arc outside the encoding");
        const auto &[u, v, w] = g.edges[it->second];
        int tail = a == witness.forward[it->second][0] ? u : v;
        int head = tail == u ? v : u;
        if (!succ.emplace(tail, std::make_pair(head, a)).second)
            throw std::invalid_argument("factor has out-degree above one");
        if (!has_in.insert(head).second)
            throw std::invalid_argument("factor has in-degree above one");
    }

    std::set<int> chosen;
    std::set<int> done;
    auto walk = [&](int start) {
        std::vector<int> arcs;
        std::vector<Rat> ws;
        int v = start;
        while (true) {
            done.insert(v);
            auto it = succ.find(v);
            if (it == succ.end()) break;
            arcs.push_back(it->second.second);
            ws.push_back(std::get<2>(g.edges[source_of.at(it->second.second)]));
            v = it->second.first;
            if (v == start) break;
        }
        Rat even, odd;
        for (std::size_t i = 0; i < arcs.size(); ++i)
            (i % 2 == 0 ? even : odd) += ws[i];
        std::size_t parity = odd > even ? 1 : 0;
        for (std::size_t i = parity; i < arcs.size(); i += 2)
            chosen.insert(source_of.at(arcs[i]));
    };
    for (const auto &[tail, hv] : succ)
        if (!has_in.count(tail)) walk(tail);
    for (const auto &[tail, hv] : succ)
        if (!done.count(tail)) walk(tail);

    return {chosen.begin(), chosen.end()};
}

std::vector<int> decode_triangle_free(const UndirectedGraph &g,
                                      const ReductionWitness &witness,
                                      const EdgeIdSet &f) {
    std::vector<int> mult(g.edges.size(), 0);
    std::set<int> known;
    for (std::size_t e = 0; e < witness.forward.size(); ++e)
        for (int id : witness.forward[e]) {
            known.insert(id);
            if (f.count(id)) ++mult[e];
        }
    for (int id : f)
        if (!known.count(id))
            throw std::invalid_argument("solution edge outside the encoding");
    return mult;
}

std::set<int> decode_matroid(const EdgeIdSet &f) { return {f.begin(), f.end()}; }

std::vector<int> decode_branching(const EdgeIdSet &f) { return {f.begin(), f.end()}; }

}  // namespace ufm
