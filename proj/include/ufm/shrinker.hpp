#ifndef UFM_SHRINKER_HPP
#define UFM_SHRINKER_HPP

#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "ufm/graph.hpp"

namespace ufm {

class FamilyOracle;

// Predicate used during weighted expansion: plus-vertices for which leaving a
// degree deficiency is acceptable (zero potential). Null means "no preference".
using DeficiencyPreference = std::function<bool(VertexId)>;

// Predicate used during weighted expansion: edge ids that should stay in the
// solution if any candidate allows it (positive dual q). Null means "no
// preference".
using EdgeKeepPreference = std::function<bool(int)>;

// Structural witness of an infeasibility, captured at detection time.
// hatted_set is the original-vertex preimage of the set to shrink; the other
// fields carry whatever the detecting family needs later for expansion or
// for rewriting the solution in place.
struct Violation {
    VertexSet hatted_set;
    // Twin pairs (plus, minus) in cyclic order; edge {pair[i].plus,
    // pair[i+1].minus} belongs to the saturating structure.
    std::vector<std::pair<VertexId, VertexId>> cycle_pairs;
    // Edge ids of the saturating structure (t-factor of the violated set).
    std::vector<int> factor_edges;
};

struct ShrinkRecord {
    int set_id = -1;
    VertexSet original_set;  // preimage in the input graph
    VertexId plus_pseudo{Side::plus, -1};
    VertexId minus_pseudo{Side::minus, -1};
    std::vector<Edge> removed_edges;  // endpoints at the immediate inner level
    std::vector<std::tuple<int, Side, VertexId>> repointed;
    VertexSet inner_plus, inner_minus;  // immediate inner level
    Violation witness;
};

// The shrunk graph together with the stack of shrinks that produced it.
// Copyable so that expansion strategies can explore completions.
class ShrunkState {
   public:
    explicit ShrunkState(const BipartiteMultigraph &input);

    const BipartiteMultigraph &original() const { return original_; }
    const BipartiteMultigraph &current() const { return current_; }
    BipartiteMultigraph &current() { return current_; }

    bool is_pseudo(VertexId v) const { return pseudo_record_.count(v) > 0; }
    // Record index that created a pseudovertex.
    int pseudo_record(VertexId v) const { return pseudo_record_.at(v); }

    int capacity(VertexId v, int t) const { return is_pseudo(v) ? 1 : t; }

    const std::vector<ShrinkRecord> &records() const { return records_; }
    bool expanded(std::size_t i) const { return expanded_[i]; }
    // Records whose pseudovertices are in the current graph.
    std::vector<std::size_t> active_records() const;
    bool any_shrunk() const { return !active_records().empty(); }

    // Preimage of a set of current vertices in the input graph.
    VertexSet hat_set(const VertexSet &x) const;
    VertexSet hat_vertex(VertexId v) const;

    // Contracts the current-level carrier of U (naturals in U plus
    // pseudovertices whose preimage meets U) into a fresh pseudovertex pair.
    // Edges inside the carrier are deleted from the graph and from f.
    void shrink(const VertexSet &u, EdgeIdSet &f, Violation witness);

    // Undoes one record: restores inner vertices and edges, then asks the
    // family for the inner edge set to add to f.
    // With underfill one non-keep edge is left out of the re-added set so the
    // caller can complete the saturation itself.
    void expand_record(std::size_t index, EdgeIdSet &f, const FamilyOracle &family,
                       const DeficiencyPreference &prefer = nullptr,
                       const EdgeKeepPreference &keep = nullptr,
                       bool underfill = false);

    // Restores the graph part of a record without consulting the family.
    void restore_record_graph(std::size_t index);

    bool satisfies_degree_constraint(const EdgeIdSet &f, int t) const;

   private:
    BipartiteMultigraph original_;
    BipartiteMultigraph current_;
    std::vector<ShrinkRecord> records_;
    std::vector<bool> expanded_;
    std::map<VertexId, int> pseudo_record_;
    int next_pseudo_index_;
    int next_set_id_ = 0;
};

// Pops every remaining record, outermost first.
void expand_all(ShrunkState &state, EdgeIdSet &f, const FamilyOracle &family,
                const DeficiencyPreference &prefer = nullptr,
                const EdgeKeepPreference &keep = nullptr);

// Pops exactly the currently expandable records whose dual value r is zero;
// nested records with positive r stay shrunk. r is keyed by record set_id,
// missing entries count as zero.
void expand_zero_dual(ShrunkState &state, EdgeIdSet &f, const FamilyOracle &family,
                      const std::map<int, Rat> &r,
                      const DeficiencyPreference &prefer = nullptr,
                      const EdgeKeepPreference &keep = nullptr);

// Existential feasibility: searches for a full expansion of all records that
// yields a feasible solution in the input graph. Works on copies.
std::optional<EdgeIdSet> search_feasible_completion(ShrunkState state, EdgeIdSet f,
                                                    const FamilyOracle &family);

}  // namespace ufm

#endif
