#ifndef UFM_FAMILY_UTIL_HPP
#define UFM_FAMILY_UTIL_HPP

#include <vector>

#include "ufm/family.hpp"

namespace ufm {
namespace detail {

// Smallest edge id joining p and m in g, or -1.
int find_edge_between(const BipartiteMultigraph &g, VertexId p, VertexId m);

// Cycles of a partial successor function, each rotated to start at its
// smallest vertex, ordered by that vertex.
std::vector<std::vector<VertexId>> functional_cycles(
    const std::map<VertexId, VertexId> &succ);

// The current-graph vertex representing an original vertex: itself when
// natural, otherwise the pseudovertex of the active record containing it.
VertexId current_vertex(const ShrunkState &state, VertexId v);

// All subsets of pool whose addition to f keeps every vertex within its
// capacity, sorted by decreasing size then lexicographically. Guarded
// against large pools; this is a desk-scale enumeration.
std::vector<std::vector<int>> degree_valid_subsets(const ShrunkState &state,
                                                   std::vector<int> pool,
                                                   const EdgeIdSet &f, int t);

// Stable-sorts candidates so that those whose degree deficiencies sit on
// preferred vertices come first. No-op when prefer is null.
void order_by_preference(std::vector<std::vector<int>> &candidates,
                         const ShrunkState &state, const VertexSet &inner,
                         const EdgeIdSet &f, int t,
                         const DeficiencyPreference &prefer);

}  // namespace detail
}  // namespace ufm

#endif
