#ifndef UFM_ORACLE_HPP
#define UFM_ORACLE_HPP

#include <string>

#include "ufm/family.hpp"
#include "ufm/graph.hpp"
#include "ufm/rational.hpp"

namespace ufm {

// Instance size the brute-force routines accept, in edges. Reads the
// UFM_ORACLE_BUDGET environment variable once; defaults to 24.
std::size_t oracle_budget();

// Checks a solution directly against the definition: degree bounds plus the
// defining inequality on every enumerable member. Returns an error naming the
// first violated constraint, or an empty string.
std::string verify_solution(const BipartiteMultigraph &g, const FamilyOracle &family,
                            const EdgeIdSet &f);

// Exhaustive search over edge subsets; independent of the solver machinery.
// Throws std::runtime_error when the instance exceeds the budget.
long long brute_force_max(const BipartiteMultigraph &g, const FamilyOracle &family);
Rat brute_force_max_weight(const BipartiteMultigraph &g, const FamilyOracle &family);

// The subsets themselves, when callers need a witness.
EdgeIdSet brute_force_argmax(const BipartiteMultigraph &g, const FamilyOracle &family);
EdgeIdSet brute_force_argmax_weight(const BipartiteMultigraph &g,
                                    const FamilyOracle &family);

}  // namespace ufm

#endif
