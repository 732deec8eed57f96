#ifndef UFM_GRAPH_HPP
#define UFM_GRAPH_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufm/rational.hpp"

namespace ufm {

enum class Side { plus, minus };

inline Side other(Side s) { return s == Side::plus ? Side::minus : Side::plus; }

struct VertexId {
    Side side;
    int index;

    friend bool operator==(const VertexId &a, const VertexId &b) {
        return a.side == b.side && a.index == b.index;
    }
    friend bool operator!=(const VertexId &a, const VertexId &b) { return !(a == b); }
    friend bool operator<(const VertexId &a, const VertexId &b) {
        if (a.side != b.side) return a.side < b.side;
        return a.index < b.index;
    }
};

inline VertexId vplus(int i) { return {Side::plus, i}; }
inline VertexId vminus(int i) { return {Side::minus, i}; }

inline std::string to_string(VertexId v) {
    return std::to_string(v.index) + (v.side == Side::plus ? "+" : "-");
}

using VertexSet = std::set<VertexId>;
using EdgeIdSet = std::set<int>;

struct Edge {
    int id = -1;
    VertexId end_plus{Side::plus, -1};
    VertexId end_minus{Side::minus, -1};
    Rat weight;

    VertexId end(Side s) const { return s == Side::plus ? end_plus : end_minus; }
};

// Bipartite multigraph with stable edge ids. Shrinking re-points edge
// endpoints, so endpoints are mutable while ids are permanent.
class BipartiteMultigraph {
   public:
    void add_vertex(VertexId v) {
        vertices_.insert(v);
        adjacency_.try_emplace(v);
    }

    bool has_vertex(VertexId v) const { return vertices_.count(v) > 0; }

    void remove_vertex(VertexId v) {
        if (!adjacency_.at(v).empty())
            throw std::logic_error("removing vertex with incident edges");
        vertices_.erase(v);
        adjacency_.erase(v);
    }

    int add_edge(VertexId p, VertexId m, Rat w = Rat(0)) {
        int id = next_edge_id_++;
        insert_edge(Edge{id, p, m, w});
        return id;
    }

    void insert_edge(const Edge &e) {
        if (e.end_plus.side != Side::plus || e.end_minus.side != Side::minus)
            throw std::invalid_argument("edge endpoints on wrong sides");
        if (!has_vertex(e.end_plus) || !has_vertex(e.end_minus))
            throw std::invalid_argument("edge endpoint not in graph");
        edges_.emplace(e.id, e);
        adjacency_.at(e.end_plus).insert(e.id);
        adjacency_.at(e.end_minus).insert(e.id);
        if (e.id >= next_edge_id_) next_edge_id_ = e.id + 1;
    }

    void remove_edge(int id) {
        const Edge &e = edges_.at(id);
        adjacency_.at(e.end_plus).erase(id);
        adjacency_.at(e.end_minus).erase(id);
        edges_.erase(id);
    }

    // Moves one endpoint of an edge; the other endpoint is untouched.
    void repoint(int id, Side side, VertexId to) {
        Edge &e = edges_.at(id);
        VertexId from = e.end(side);
        adjacency_.at(from).erase(id);
        adjacency_.at(to).insert(id);
        (side == Side::plus ? e.end_plus : e.end_minus) = to;
    }

    bool has_edge(int id) const { return edges_.count(id) > 0; }
    const Edge &edge(int id) const { return edges_.at(id); }

    const VertexSet &vertices() const { return vertices_; }
    VertexSet side_vertices(Side s) const {
        VertexSet out;
        for (const auto &v : vertices_)
            if (v.side == s) out.insert(v);
        return out;
    }

    const std::map<int, Edge> &edges() const { return edges_; }
    const EdgeIdSet &incident(VertexId v) const { return adjacency_.at(v); }

    std::size_t edge_count() const { return edges_.size(); }
    std::size_t vertex_count() const { return vertices_.size(); }

   private:
    VertexSet vertices_;
    std::map<int, Edge> edges_;
    std::map<VertexId, EdgeIdSet> adjacency_;
    int next_edge_id_ = 0;
};

// E[X]: edges with both endpoints in X.
EdgeIdSet induced_edges(const BipartiteMultigraph &g, const VertexSet &x);

// F[X,Y] for disjoint X, Y: edges of F with one endpoint in each.
EdgeIdSet cross_edges(const BipartiteMultigraph &g, const EdgeIdSet &f,
                      const VertexSet &x, const VertexSet &y);

// deg_F(v), counting parallel edges with multiplicity.
int degree(const BipartiteMultigraph &g, const EdgeIdSet &f, VertexId v);

struct Digraph {
    struct Arc {
        int id;
        int tail;
        int head;
        Rat weight;
    };
    int n = 0;
    std::vector<Arc> arcs;

    int add_arc(int tail, int head, Rat w = Rat(0)) {
        int id = static_cast<int>(arcs.size());
        arcs.push_back({id, tail, head, w});
        return id;
    }
};

}  // namespace ufm

#endif
