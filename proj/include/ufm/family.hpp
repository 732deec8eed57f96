#ifndef UFM_FAMILY_HPP
#define UFM_FAMILY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ufm/graph.hpp"
#include "ufm/shrinker.hpp"

namespace ufm {

// Contract for the prescribed family of forbidden sets. An implementation
// must guarantee that every shrunk member can always be completed with the
// required inner edges whenever the degree constraint holds (the "admits
// expansion" assumption); expansion_candidates embodies that guarantee.
class FamilyOracle {
   public:
    virtual ~FamilyOracle() = default;

    virtual int t() const = 0;
    virtual std::string name() const = 0;

    // Feasibility of f in the (possibly shrunk) current graph. Returns the
    // witness of a violated set, or nullopt if f is feasible.
    virtual std::optional<Violation> find_violation(const ShrunkState &state,
                                                    const EdgeIdSet &f) const = 0;

    // Candidate inner edge sets for expanding one record, most preferred
    // first. Called with the record's graph already restored. Constructive
    // families return a single candidate; search-based families may return
    // several and rely on completion lookahead.
    virtual std::vector<std::vector<int>> expansion_candidates(
        const ShrunkState &state, const ShrinkRecord &record, const EdgeIdSet &f,
        const DeficiencyPreference &prefer) const = 0;

    // True when expansion_candidates needs lookahead to pick among candidates.
    virtual bool needs_lookahead() const { return false; }

    // Direct feasibility of a solution in the input graph, with no shrunk
    // sets. Used by verifiers and by the completion search.
    virtual bool check_original(const BipartiteMultigraph &g,
                                const EdgeIdSet &f) const = 0;

    // Explicit member list at desk scale, for the brute-force oracle.
    // Throws when the family cannot enumerate within the budget.
    virtual std::vector<VertexSet> enumerate_members(const BipartiteMultigraph &g,
                                                     std::size_t max_members) const = 0;

    // Whether a vertex set may appear as a component term of a min-max
    // certificate. This is the closure of the family under the shrinking
    // process (e.g. triangle clusters), not bare membership.
    virtual bool is_certifiable(const BipartiteMultigraph &g,
                                const VertexSet &u) const = 0;

    // Largest |F[u]| over feasible solutions, for a certifiable set.
    virtual long long certificate_bound(const BipartiteMultigraph &g,
                                        const VertexSet &u) const;

    // Documented cost class of one feasibility check.
    virtual std::string feasibility_cost() const = 0;
};

long long floor_div(long long a, long long b);

// Bound of the defining inequality: floor((t|U|-1)/2).
long long feasibility_bound(int t, std::size_t set_size);

// Twin pairing on original vertices: an involution between plus and minus
// indices. Doubled encodings pair the two copies of one source vertex.
class TwinPairing {
   public:
    TwinPairing() = default;
    explicit TwinPairing(int n) {
        for (int i = 0; i < n; ++i) pair_[i] = i;
    }
    void set(int plus_index, int minus_index) { pair_[plus_index] = minus_index; }
    int minus_of(int plus_index) const { return pair_.at(plus_index); }
    int plus_of(int minus_index) const {
        for (const auto &[p, m] : pair_)
            if (m == minus_index) return p;
        throw std::invalid_argument("minus index not in twin pairing");
    }
    bool are_twins(VertexId a, VertexId b) const {
        if (a.side == b.side) return false;
        if (a.side == Side::minus) std::swap(a, b);
        auto it = pair_.find(a.index);
        return it != pair_.end() && it->second == b.index;
    }

   private:
    std::map<int, int> pair_;
};

// Current-level twin of v: naturals via the pairing, pseudovertices via the
// record that created them.
VertexId current_twin(const ShrunkState &state, const TwinPairing &twins, VertexId v);

class ExplicitFamily : public FamilyOracle {
   public:
    ExplicitFamily(int t, std::vector<VertexSet> sets);
    int t() const override { return t_; }
    std::string name() const override { return "explicit"; }
    std::optional<Violation> find_violation(const ShrunkState &,
                                            const EdgeIdSet &) const override;
    std::vector<std::vector<int>> expansion_candidates(
        const ShrunkState &, const ShrinkRecord &, const EdgeIdSet &,
        const DeficiencyPreference &) const override;
    bool needs_lookahead() const override { return true; }
    bool check_original(const BipartiteMultigraph &, const EdgeIdSet &) const override;
    std::vector<VertexSet> enumerate_members(const BipartiteMultigraph &,
                                             std::size_t) const override;
    bool is_certifiable(const BipartiteMultigraph &, const VertexSet &u) const override;
    std::string feasibility_cost() const override {
        return "exponential (oracle scale only)";
    }
    const std::vector<VertexSet> &sets() const { return sets_; }

   private:
    int t_;
    std::vector<VertexSet> sets_;
};

// K_{t,t}-free t-matchings in bipartite graphs; t = 2 is square-free.
class KttFreeFamily : public FamilyOracle {
   public:
    explicit KttFreeFamily(int t);
    int t() const override { return t_; }
    std::string name() const override { return t_ == 2 ? "squarefree" : "kttfree"; }
    std::optional<Violation> find_violation(const ShrunkState &,
                                            const EdgeIdSet &) const override;
    std::vector<std::vector<int>> expansion_candidates(
        const ShrunkState &, const ShrinkRecord &, const EdgeIdSet &,
        const DeficiencyPreference &) const override;
    bool check_original(const BipartiteMultigraph &, const EdgeIdSet &) const override;
    std::vector<VertexSet> enumerate_members(const BipartiteMultigraph &,
                                             std::size_t) const override;
    bool is_certifiable(const BipartiteMultigraph &, const VertexSet &u) const override;
    std::string feasibility_cost() const override {
        return t_ == 2 ? "O(1) per new edge" : "O(n^t) scan";
    }

   private:
    int t_;
};

using SquareFreeFamily = KttFreeFamily;

// Even factors: forbidden sets are the doubled copies of odd vertex sets of
// the source digraph. Nonbipartite matching arrives here by reduction.
class OddSymmetricFamily : public FamilyOracle {
   public:
    explicit OddSymmetricFamily(TwinPairing twins);
    int t() const override { return 1; }
    std::string name() const override { return "oddsymmetric"; }
    std::optional<Violation> find_violation(const ShrunkState &,
                                            const EdgeIdSet &) const override;
    std::vector<std::vector<int>> expansion_candidates(
        const ShrunkState &, const ShrinkRecord &, const EdgeIdSet &,
        const DeficiencyPreference &) const override;
    bool check_original(const BipartiteMultigraph &, const EdgeIdSet &) const override;
    std::vector<VertexSet> enumerate_members(const BipartiteMultigraph &,
                                             std::size_t) const override;
    bool is_certifiable(const BipartiteMultigraph &, const VertexSet &u) const override;
    std::string feasibility_cost() const override { return "O(n) cycle scan"; }
    const TwinPairing &twins() const { return twins_; }

   protected:
    TwinPairing twins_;
};

// Triangle-free 2-matchings via the doubled encoding: only twin-triples are
// forbidden, detected on the original edge identities.
class TriangleTwinFamily : public OddSymmetricFamily {
   public:
    explicit TriangleTwinFamily(TwinPairing twins);
    std::string name() const override { return "trianglefree"; }
    std::optional<Violation> find_violation(const ShrunkState &,
                                            const EdgeIdSet &) const override;
    bool check_original(const BipartiteMultigraph &, const EdgeIdSet &) const override;
    std::vector<VertexSet> enumerate_members(const BipartiteMultigraph &,
                                             std::size_t) const override;
    bool is_certifiable(const BipartiteMultigraph &, const VertexSet &u) const override;
    std::string feasibility_cost() const override { return "O(n) triangle scan"; }
};

// Matroid independence via the pairing-edge encoding; forbidden sets are the
// doubled circuits. Constructed from an explicit circuit list at desk scale.
class MatroidCircuitFamily : public FamilyOracle {
   public:
    MatroidCircuitFamily(int ground_size, std::vector<std::set<int>> circuits);
    int t() const override { return 1; }
    std::string name() const override { return "matroid"; }
    std::optional<Violation> find_violation(const ShrunkState &,
                                            const EdgeIdSet &) const override;
    std::vector<std::vector<int>> expansion_candidates(
        const ShrunkState &, const ShrinkRecord &, const EdgeIdSet &,
        const DeficiencyPreference &) const override;
    bool needs_lookahead() const override { return true; }
    bool check_original(const BipartiteMultigraph &, const EdgeIdSet &) const override;
    std::vector<VertexSet> enumerate_members(const BipartiteMultigraph &,
                                             std::size_t) const override;
    bool is_certifiable(const BipartiteMultigraph &, const VertexSet &u) const override;
    long long certificate_bound(const BipartiteMultigraph &,
                                const VertexSet &u) const override;
    std::string feasibility_cost() const override { return "one rank evaluation"; }

    bool independent(const std::set<int> &elements) const;
    int rank(const std::set<int> &elements) const;

   private:
    int ground_size_;
    std::vector<std::set<int>> circuits_;
};

// Branchings: plus-vertices are arcs, minus-vertices are heads; forbidden
// sets are the doubled directed cycles.
class DirectedCycleFamily : public FamilyOracle {
   public:
    // arcs[i] = (tail, head) of source arc i; plus index i pairs with edge to
    // minus index head(i).
    explicit DirectedCycleFamily(std::vector<std::pair<int, int>> arcs);
    int t() const override { return 1; }
    std::string name() const override { return "branching"; }
    std::optional<Violation> find_violation(const ShrunkState &,
                                            const EdgeIdSet &) const override;
    std::vector<std::vector<int>> expansion_candidates(
        const ShrunkState &, const ShrinkRecord &, const EdgeIdSet &,
        const DeficiencyPreference &) const override;
    bool check_original(const BipartiteMultigraph &, const EdgeIdSet &) const override;
    std::vector<VertexSet> enumerate_members(const BipartiteMultigraph &,
                                             std::size_t) const override;
    bool is_certifiable(const BipartiteMultigraph &, const VertexSet &u) const override;
    long long certificate_bound(const BipartiteMultigraph &,
                                const VertexSet &u) const override;
    std::string feasibility_cost() const override { return "O(n) cycle walk"; }

   private:
    std::vector<std::pair<int, int>> arcs_;  // tail, head per plus index
};

// C_{4k+2}-free 2-matchings in symmetric bipartite graphs with all twin
// edges present: forbidden sets are the odd-balanced twin-closed sets.
class C4k2Family : public FamilyOracle {
   public:
    explicit C4k2Family(TwinPairing twins);
    int t() const override { return 2; }
    std::string name() const override { return "c4k2free"; }
    std::optional<Violation> find_violation(const ShrunkState &,
                                            const EdgeIdSet &) const override;
    std::vector<std::vector<int>> expansion_candidates(
        const ShrunkState &, const ShrinkRecord &, const EdgeIdSet &,
        const DeficiencyPreference &) const override;
    bool needs_lookahead() const override { return true; }
    bool check_original(const BipartiteMultigraph &, const EdgeIdSet &) const override;
    std::vector<VertexSet> enumerate_members(const BipartiteMultigraph &,
                                             std::size_t) const override;
    bool is_certifiable(const BipartiteMultigraph &, const VertexSet &u) const override;
    std::string feasibility_cost() const override { return "O(n) component scan"; }
    const TwinPairing &twins() const { return twins_; }

   private:
    TwinPairing twins_;
};

// No forbidden sets: plain bipartite t-matching, used as a baseline.
class EmptyFamily : public FamilyOracle {
   public:
    explicit EmptyFamily(int t) : t_(t) {}
    int t() const override { return t_; }
    std::string name() const override { return "none"; }
    std::optional<Violation> find_violation(const ShrunkState &,
                                            const EdgeIdSet &) const override {
        return std::nullopt;
    }
    std::vector<std::vector<int>> expansion_candidates(
        const ShrunkState &, const ShrinkRecord &, const EdgeIdSet &,
        const DeficiencyPreference &) const override {
        throw std::logic_error("empty family never shrinks");
    }
    bool check_original(const BipartiteMultigraph &g,
                        const EdgeIdSet &f) const override {
        for (const auto &v : g.vertices())
            if (degree(g, f, v) > t_) return false;
        return true;
    }
    std::vector<VertexSet> enumerate_members(const BipartiteMultigraph &,
                                             std::size_t) const override {
        return {};
    }
    bool is_certifiable(const BipartiteMultigraph &, const VertexSet &) const override {
        return false;
    }
    std::string feasibility_cost() const override { return "O(1)"; }

   private:
    int t_;
};

}  // namespace ufm

#endif
