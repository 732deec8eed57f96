#include "ufm/graph.hpp"

namespace ufm {

EdgeIdSet induced_edges(const BipartiteMultigraph &g, const VertexSet &x) {
    for (const auto &v : x)
        if (!g.has_vertex(v))
            throw std::invalid_argument("induced_edges: unknown vertex id");
    EdgeIdSet out;
    for (const auto &[id, e] : g.edges())
        if (x.count(e.end_plus) && x.count(e.end_minus)) out.insert(id);
    return out;
}

EdgeIdSet cross_edges(const BipartiteMultigraph &g, const EdgeIdSet &f,
                      const VertexSet &x, const VertexSet &y) {
    for (const auto &v : x)
        if (y.count(v))
            throw std::invalid_argument("cross_edges: X and Y overlap");
    EdgeIdSet out;
    for (int id : f) {
        const Edge &e = g.edge(id);
        bool px = x.count(e.end_plus) > 0, py = y.count(e.end_plus) > 0;
        bool mx = x.count(e.end_minus) > 0, my = y.count(e.end_minus) > 0;
        if ((px && my) || (py && mx)) out.insert(id);
    }
    return out;
}

int degree(const BipartiteMultigraph &g, const EdgeIdSet &f, VertexId v) {
    int d = 0;
    for (int id : g.incident(v))
        if (f.count(id)) ++d;
    return d;
}

}  // namespace ufm
