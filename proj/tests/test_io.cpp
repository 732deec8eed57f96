#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "ufm/io.hpp"
#include "ufm/oracle.hpp"
#include "ufm/solver_unweighted.hpp"
#include "ufm/solver_weighted.hpp"

using namespace ufm;

static Instance parse(const std::string &text) {
    std::istringstream in(text);
    return parse_instance(in, "<test>");
}

TEST_CASE("a square-free K22 instance parses") {
    Instance inst = parse(
        "problem ufm\n"
        "t 2\n"
        "vplus a b\n"
        "vminus x y\n"
        "family squarefree\n"
        "edge a x\nedge a y\nedge b x\nedge b y\n");
    CHECK(inst.t == 2);
    CHECK(inst.graph.edge_count() == 4);
    CHECK(inst.family->name() == "squarefree");
    CHECK(inst.vertex_by_name(Side::plus, "b") == vplus(1));
    CHECK(solve_max(inst.graph, *inst.family).matching.size() == 3);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse("problem ufm\nvplus a\nvminus x\nedge a z\n"),
                         doctest::Contains("<test>:4"), ParseError);
    CHECK_THROWS_WITH_AS(parse("problem ufm\nvplus a a\n"),
                         doctest::Contains("duplicate"), ParseError);
    CHECK_THROWS_WITH_AS(parse("problem ufm\nbogus record\n"),
                         doctest::Contains("unknown record"), ParseError);
    CHECK_THROWS_AS(parse("problem nosuch\n"), ParseError);
    CHECK_THROWS_AS(parse("# only comments\n"), ParseError);
}

TEST_CASE("rational weights round-trip") {
    Instance inst = parse(
        "problem ufm\nt 1\nvplus a\nvminus x\nfamily none\nedge a x 7/3\n");
    CHECK(inst.graph.edge(0).weight == Rat(7, 3));
    std::ostringstream out;
    write_instance(out, inst);
    Instance again = parse(out.str());
    CHECK(again.graph.edge(0).weight == Rat(7, 3));
}

TEST_CASE("asymmetric even factor instances are rejected with a diagnostic") {
    std::string text =
        "problem evenfactor\nvertex u v w\n"
        "arc u v\narc v w\narc w u\n";
    CHECK_THROWS_WITH_AS(parse(text), doctest::Contains("odd-cycle"), ParseError);
}

TEST_CASE("matching kind applies the full chain") {
    Instance inst = parse(
        "problem matching\nvertex u v w\n"
        "edge u v\nedge v w\nedge w u\n");
    CHECK(inst.kind == "matching");
    CHECK(inst.source_value_factor == 2);
    CHECK(inst.graph.edge_count() == 6);
    CHECK(solve_max(inst.graph, *inst.family).matching.size() == 2);
}

TEST_CASE("matroid kind with circuits and weights") {
    Instance inst = parse(
        "problem matroid\nvertex e1 e2 e3\n"
        "set e1 e2 e3\n"
        "weight e1 5\nweight e2 1\nweight e3 3\n");
    WeightedResult res = solve_max_weight(inst.graph, *inst.family);
    CHECK(res.weight == Rat(8));
}

TEST_CASE("branching kind round-trips through reduce") {
    Instance inst = parse(
        "problem branching\nvertex u v\n"
        "arc u v 3\narc v u 4\n");
    std::ostringstream out;
    write_instance(out, inst);
    Instance again = parse(out.str());
    CHECK(again.family_kind == "branching");
    CHECK(solve_max_weight(again.graph, *again.family).weight == Rat(4));
    CHECK(solve_max_weight(inst.graph, *inst.family).weight == Rat(4));
}

TEST_CASE("solution files round-trip and verify") {
    Instance inst = parse(
        "problem ufm\nt 2\nvplus a b\nvminus x y\nfamily squarefree\n"
        "edge a x\nedge a y\nedge b x\nedge b y\n");
    UnweightedResult res = solve_max(inst.graph, *inst.family);
    Solution s;
    s.edges = res.matching;
    s.value = Rat(static_cast<long long>(res.matching.size()));
    s.has_certificate = true;
    s.certificate = res.certificate;

    std::ostringstream out;
    write_solution(out, inst, s);
    std::istringstream back(out.str());
    Solution parsed = parse_solution(back, "<sol>", inst);
    CHECK(parsed.edges == s.edges);
    CHECK(parsed.value == s.value);
    CHECK(verify_solution_file(inst, parsed) == "");
}

TEST_CASE("weighted solution files carry a working dual block") {
    Instance inst = parse(
        "problem ufm\nt 1\nvplus a b\nvminus x y\nfamily none\n"
        "edge a x 2\nedge b y 3\n");
    WeightedResult res = solve_max_weight(inst.graph, *inst.family);
    Solution s;
    s.edges = res.matching;
    s.value = res.weight;
    s.has_dual = true;
    s.dual = res.dual;

    std::ostringstream out;
    write_solution(out, inst, s);
    std::istringstream back(out.str());
    Solution parsed = parse_solution(back, "<sol>", inst);
    CHECK(verify_solution_file(inst, parsed) == "");
    CHECK(parsed.value == Rat(5));
}

TEST_CASE("tampered solutions fail verification") {
    Instance inst = parse(
        "problem ufm\nt 2\nvplus a b\nvminus x y\nfamily squarefree\n"
        "edge a x\nedge a y\nedge b x\nedge b y\n");
    UnweightedResult res = solve_max(inst.graph, *inst.family);
    Solution s;
    s.edges = res.matching;
    s.value = Rat(static_cast<long long>(res.matching.size()));
    s.has_certificate = true;
    s.certificate = res.certificate;

    Solution fewer = s;
    fewer.edges.erase(fewer.edges.begin());
    CHECK(verify_solution_file(inst, fewer) != "");

    Solution wrong_value = s;
    wrong_value.value += Rat(1);
    CHECK(verify_solution_file(inst, wrong_value) != "");

    Solution too_many = s;
    for (const auto &[id, e] : inst.graph.edges()) too_many.edges.insert(id);
    too_many.value = Rat(static_cast<long long>(too_many.edges.size()));
    CHECK(verify_solution_file(inst, too_many) != "");
}

TEST_CASE("parallel edges use multiplicity") {
    Instance inst = parse(
        "problem ufm\nt 2\nvplus a\nvminus x\nfamily none\n"
        "edge a x 1\nedge a x 1\n");
    Solution s;
    s.edges = {0, 1};
    s.value = Rat(2);
    std::ostringstream out;
    write_solution(out, inst, s);
    CHECK(out.str().find("edge a x 2") != std::string::npos);
    std::istringstream back(out.str());
    Solution parsed = parse_solution(back, "<sol>", inst);
    CHECK(parsed.edges == EdgeIdSet{0, 1});
    CHECK(verify_solution_file(inst, parsed) == "");
}
