#ifndef UFM_SOLVER_WEIGHTED_HPP
#define UFM_SOLVER_WEIGHTED_HPP

#include <map>
#include <string>
#include <vector>

#include "ufm/family.hpp"
#include "ufm/graph.hpp"
#include "ufm/rational.hpp"

namespace ufm {

struct DualSet {
    VertexSet set;
    Rat value;
    // Coefficient of the set in the dual objective: the largest number of
    // inner edges a feasible solution can hold.
    long long bound = 0;
};

// Feasible solution of the dual linear program: vertex potentials p, edge
// potentials q, and set potentials r on forbidden sets.
struct DualSolution {
    int t = 1;
    std::map<VertexId, Rat> p;
    std::map<int, Rat> q;
    std::vector<DualSet> r;

    Rat objective() const;
};

struct WeightedResult {
    EdgeIdSet matching;
    Rat weight;
    DualSolution dual;
};

// Primal-dual algorithm; the returned dual satisfies complementary slackness
// with the matching, so both are optimal.
WeightedResult solve_max_weight(const BipartiteMultigraph &g,
                                const FamilyOracle &family);

// Exact complementary slackness audit. Checks dual feasibility, tightness of
// matched edges, saturation under positive p, q only on matched edges, and
// each positive-r set meeting its bound. Returns an error description naming
// the witness, or an empty string.
std::string verify_dual_certificate(const BipartiteMultigraph &g,
                                    const FamilyOracle &family,
                                    const EdgeIdSet &f, const DualSolution &dual);

Rat solution_weight(const BipartiteMultigraph &g, const EdgeIdSet &f);

// Dual objective coefficient for a set: the family bound when it can be
// evaluated, otherwise the defining feasibility bound.
long long dual_set_bound(const BipartiteMultigraph &g, const FamilyOracle &family,
                         const VertexSet &u);

}  // namespace ufm

#endif
