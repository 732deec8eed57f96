#ifndef UFM_SOLVER_UNWEIGHTED_HPP
#define UFM_SOLVER_UNWEIGHTED_HPP

#include <optional>
#include <string>
#include <vector>

#include "ufm/family.hpp"
#include "ufm/graph.hpp"
#include "ufm/shrinker.hpp"

namespace ufm {

struct CertificateMember {
    VertexSet set;
    long long bound = 0;
};

// Min-max certificate: |F| <= t|X| + |E[C]| + sum of member bounds, where the
// members are disjoint from X and from each other, and C is everything else.
struct MinMaxCertificate {
    int t = 1;
    VertexSet x;
    std::vector<CertificateMember> members;
    long long component_edge_count = 0;

    long long value() const;
};

struct UnweightedResult {
    EdgeIdSet matching;
    MinMaxCertificate certificate;
};

// Maximum feasible t-matching by shortest augmenting paths with shrinking.
// The returned certificate attains the matching size.
UnweightedResult solve_max(const BipartiteMultigraph &g, const FamilyOracle &family);

// Shortest S-T path in the auxiliary digraph of the current graph, as the
// alternating edge id sequence (e_1, f_1, ..., e_{l+1}). Ties are broken by
// visiting vertices and edge ids in increasing order.
std::optional<std::vector<int>> find_augmenting_path(const ShrunkState &state,
                                                     const EdgeIdSet &f, int t);

// Checks a certificate against a solution: structure of the terms, the edge
// count of the residual component part, and the bound itself. Returns an
// error description, or an empty string on success.
std::string verify_weak_duality(const BipartiteMultigraph &g,
                                const FamilyOracle &family, const EdgeIdSet &f,
                                const MinMaxCertificate &cert,
                                bool require_equality);

}  // namespace ufm

#endif
