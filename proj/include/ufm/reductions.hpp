#ifndef UFM_REDUCTIONS_HPP
#define UFM_REDUCTIONS_HPP

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ufm/family.hpp"
#include "ufm/graph.hpp"
#include "ufm/rational.hpp"

namespace ufm {

// Simple undirected graph, the source of the matching and triangle-free
// reductions. Vertices are 0..n-1.
struct UndirectedGraph {
    int n = 0;
    std::vector<std::tuple<int, int, Rat>> edges;  // (u, v, weight)

    int add_edge(int u, int v, Rat w = Rat(0)) {
        edges.emplace_back(u, v, w);
        return static_cast<int>(edges.size()) - 1;
    }
};

// How encoded edge ids relate to source elements; decoders consume this.
struct ReductionWitness {
    // source element index -> encoded edge ids, in encoding order
    std::vector<std::vector<int>> forward;
    TwinPairing twins;
};

// Matching in G as an even factor: each edge becomes the two opposite arcs,
// both carrying the edge weight. A matching M maps to the 2-cycles over its
// edges, an even factor of twice the weight.
Digraph encode_matching_as_even_factor(const UndirectedGraph &g,
                                       ReductionWitness &witness);

struct EncodedEvenFactor {
    BipartiteMultigraph graph;
    OddSymmetricFamily family;
    ReductionWitness witness;
};

// Even factors of D as 1-matchings: arc (u,v) becomes edge {u+, v-}; the
// forbidden sets are the doubled odd sets. Edge ids equal arc ids. When
// require_symmetry is set, an asymmetric odd dicycle is rejected with a
// diagnostic (the solver needs symmetry; the oracle does not).
EncodedEvenFactor encode_even_factor(const Digraph &d, bool require_symmetry);

// Empty string, or a diagnostic naming an odd dicycle without its reverse.
std::string check_odd_cycle_symmetry(const Digraph &d);

struct EncodedTriangleFree {
    BipartiteMultigraph graph;
    TriangleTwinFamily family;
    ReductionWitness witness;
};

// Triangle-free 2-matchings via the doubled encoding: edge {u,v} becomes
// {u+, v-} and {v+, u-}, both with the original weight. Values map 1:1.
EncodedTriangleFree encode_triangle_free(const UndirectedGraph &g);

struct EncodedMatroid {
    BipartiteMultigraph graph;
    MatroidCircuitFamily family;
    ReductionWitness witness;
};

// Matroid independent sets as 1-matchings on the perfect pairing {i+, i-}.
EncodedMatroid encode_matroid(int ground_size,
                              const std::vector<std::set<int>> &circuits,
                              const std::vector<Rat> &weights);

struct EncodedBranching {
    BipartiteMultigraph graph;
    DirectedCycleFamily family;
    ReductionWitness witness;
};

// Branchings of D as 1-matchings: arc a becomes edge {a+, head(a)-}.
// In-degree bounds come from the matching degrees, acyclicity from the
// forbidden doubled dicycles. Edge ids equal arc ids.
EncodedBranching encode_branching(const Digraph &d);

// Decoders. Each returns the source-problem solution; values obey the cited
// relations exactly (factor 2 for matching vs even factor, 1 otherwise).

// Arcs of the even factor selected by a 1-matching of the encoded graph.
std::vector<int> decode_even_factor(const Digraph &d, const EdgeIdSet &f);

// Matching from an even factor of the doubled digraph of g: decomposes the
// factor into paths and even cycles and keeps the heavier alternating class
// of each, so w(M) >= w'(F)/2 with equality at the optimum.
std::vector<int> decode_matching(const UndirectedGraph &g, const ReductionWitness &witness,
                                 const std::vector<int> &factor_arcs);

// Multiplicity (0, 1 or 2) per source edge of the triangle-free 2-matching.
std::vector<int> decode_triangle_free(const UndirectedGraph &g,
                                      const ReductionWitness &witness,
                                      const EdgeIdSet &f);

// Selected ground elements / selected arcs; ids equal encoded edge ids.
std::set<int> decode_matroid(const EdgeIdSet &f);
std::vector<int> decode_branching(const EdgeIdSet &f);

}  // namespace ufm

#endif
