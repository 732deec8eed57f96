#ifndef UFM_IO_HPP
#define UFM_IO_HPP

#include <iosfwd>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ufm/family.hpp"
#include "ufm/graph.hpp"
#include "ufm/solver_unweighted.hpp"
#include "ufm/solver_weighted.hpp"

namespace ufm {

// Parse failure with "file:line: message" in what().
class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// A fully validated instance: the encoded graph and family, plus the name
// tables and the family payload needed to re-serialize it as a ufm-kind file.
struct Instance {
    std::string kind = "ufm";  // source problem kind of the input file
    int t = 1;
    BipartiteMultigraph graph;
    std::shared_ptr<FamilyOracle> family;
    std::vector<std::string> plus_names, minus_names;

    // serialization payload for `reduce`
    std::string family_kind = "none";
    std::vector<std::pair<int, int>> twin_pairs;   // plus index, minus index
    std::vector<VertexSet> member_sets;            // explicit sets or circuits
    std::vector<std::pair<int, int>> arcs;         // branching: tail, head

    // encoded value = factor * source value (2 for matching, 1 otherwise)
    int source_value_factor = 1;

    const std::string &name_of(VertexId v) const {
        return (v.side == Side::plus ? plus_names : minus_names).at(v.index);
    }
    VertexId vertex_by_name(Side side, const std::string &name) const;
};

Instance parse_instance(std::istream &in, const std::string &filename);
// '-' reads stdin.
Instance load_instance(const std::string &path);

struct Solution {
    Rat value;
    EdgeIdSet edges;
    bool has_certificate = false;
    MinMaxCertificate certificate;
    bool has_dual = false;
    DualSolution dual;
};

Solution parse_solution(std::istream &in, const std::string &filename,
                        const Instance &instance);
Solution load_solution(const std::string &path, const Instance &instance);

void write_solution(std::ostream &out, const Instance &instance, const Solution &s);
// Always emits a ufm-kind file reproducing the encoded graph and family.
void write_instance(std::ostream &out, const Instance &instance);

// Runs every check a solution file supports: feasibility, the value line,
// and whichever certificate is present (tight min-max or dual CS). Returns
// an error naming the witness, or an empty string.
std::string verify_solution_file(const Instance &instance, const Solution &s);

}  // namespace ufm

#endif
