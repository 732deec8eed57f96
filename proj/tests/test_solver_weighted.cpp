#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ufm/oracle.hpp"
#include "ufm/solver_weighted.hpp"

using namespace ufm;

static void check_optimal_weight(const BipartiteMultigraph &g,
                                 const FamilyOracle &family, const Rat &expected) {
    WeightedResult res = solve_max_weight(g, family);
    CHECK(res.weight == expected);
    CHECK(solution_weight(g, res.matching) == res.weight);
    CHECK(verify_solution(g, family, res.matching) == "");
    CHECK(res.dual.objective() == expected);
    CHECK(verify_dual_certificate(g, family, res.matching, res.dual) == "");
    CHECK(brute_force_max_weight(g, family) == expected);
}

TEST_CASE("two disjoint weighted edges") {
    BipartiteMultigraph g;
    for (int i = 0; i < 2; ++i) {
        g.add_vertex(vplus(i));
        g.add_vertex(vminus(i));
    }
    g.add_edge(vplus(0), vminus(0), Rat(2));
    g.add_edge(vplus(1), vminus(1), Rat(3));
    check_optimal_weight(g, EmptyFamily(1), Rat(5));
}

TEST_CASE("weighted square-free on C4 drops the lightest edge") {
    BipartiteMultigraph g;
    for (int i = 0; i < 2; ++i) {
        g.add_vertex(vplus(i));
        g.add_vertex(vminus(i));
    }
    // vertex-induced weights pi = (3,1 | 2,2)
    g.add_edge(vplus(0), vminus(0), Rat(5));
    g.add_edge(vplus(0), vminus(1), Rat(5));
    g.add_edge(vplus(1), vminus(0), Rat(3));
    g.add_edge(vplus(1), vminus(1), Rat(3));
    check_optimal_weight(g, SquareFreeFamily(2), Rat(13));
}

TEST_CASE("negative weights are never picked") {
    BipartiteMultigraph g;
    g.add_vertex(vplus(0));
    g.add_vertex(vminus(0));
    g.add_vertex(vminus(1));
    g.add_edge(vplus(0), vminus(0), Rat(-4));
    g.add_edge(vplus(0), vminus(1), Rat(2));
    WeightedResult res = solve_max_weight(g, EmptyFamily(1));
    CHECK(res.weight == Rat(2));
    CHECK(res.matching == EdgeIdSet{1});
    CHECK(verify_dual_certificate(g, EmptyFamily(1), res.matching, res.dual) == "");
}

TEST_CASE("all-negative instance keeps the empty solution") {
    BipartiteMultigraph g;
    g.add_vertex(vplus(0));
    g.add_vertex(vminus(0));
    g.add_edge(vplus(0), vminus(0), Rat(-1));
    WeightedResult res = solve_max_weight(g, EmptyFamily(1));
    CHECK(res.matching.empty());
    CHECK(res.weight == Rat(0));
    CHECK(res.dual.objective() == Rat(0));
}

TEST_CASE("weighted triangle even factor") {
    // symmetric triangle, arc weight pi(tail)+pi(head) with pi = (4,1,2)
    std::vector<long long> pi{4, 1, 2};
    BipartiteMultigraph g;
    for (int i = 0; i < 3; ++i) {
        g.add_vertex(vplus(i));
        g.add_vertex(vminus(i));
    }
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3;
        g.add_edge(vplus(i), vminus(j), Rat(pi[i] + pi[j]));
        g.add_edge(vplus(j), vminus(i), Rat(pi[j] + pi[i]));
    }
    OddSymmetricFamily family{TwinPairing(3)};
    Rat expected = brute_force_max_weight(g, family);
    check_optimal_weight(g, family, expected);
}

TEST_CASE("integer weights give integer duals") {
    BipartiteMultigraph g;
    for (int i = 0; i < 2; ++i) {
        g.add_vertex(vplus(i));
        g.add_vertex(vminus(i));
    }
    g.add_edge(vplus(0), vminus(0), Rat(5));
    g.add_edge(vplus(0), vminus(1), Rat(5));
    g.add_edge(vplus(1), vminus(0), Rat(3));
    g.add_edge(vplus(1), vminus(1), Rat(3));
    WeightedResult res = solve_max_weight(g, SquareFreeFamily(2));
    for (const auto &[v, val] : res.dual.p) CHECK(val.is_integer());
    for (const auto &[id, val] : res.dual.q) CHECK(val.is_integer());
    for (const auto &ds : res.dual.r) CHECK(ds.value.is_integer());
}

TEST_CASE("random vertex-induced square-free instances match the oracle") {
    std::mt19937 rng(7031);
    for (int iter = 0; iter < 40; ++iter) {
        int a = 2 + static_cast<int>(rng() % 3);
        int b = 2 + static_cast<int>(rng() % 3);
        std::vector<long long> pp(a), pm(b);
        for (auto &x : pp) x = rng() % 11;
        for (auto &x : pm) x = rng() % 11;
        BipartiteMultigraph g;
        for (int i = 0; i < a; ++i) g.add_vertex(vplus(i));
        for (int j = 0; j < b; ++j) g.add_vertex(vminus(j));
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j)
                if (rng() % 3 != 0) g.add_edge(vplus(i), vminus(j), Rat(pp[i] + pm[j]));
        SquareFreeFamily family(2);
        WeightedResult res = solve_max_weight(g, family);
        CHECK(verify_solution(g, family, res.matching) == "");
        CHECK(verify_dual_certificate(g, family, res.matching, res.dual) == "");
        CHECK(res.weight == brute_force_max_weight(g, family));
    }
}

TEST_CASE("random empty-family instances with arbitrary weights") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 40; ++iter) {
        int a = 2 + static_cast<int>(rng() % 3);
        int b = 2 + static_cast<int>(rng() % 3);
        int t = 1 + static_cast<int>(rng() % 2);
        BipartiteMultigraph g;
        for (int i = 0; i < a; ++i) g.add_vertex(vplus(i));
        for (int j = 0; j < b; ++j) g.add_vertex(vminus(j));
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j)
                if (rng() % 2 == 0)
                    g.add_edge(vplus(i), vminus(j), Rat(static_cast<long long>(rng() % 15) - 3));
        EmptyFamily family(t);
        WeightedResult res = solve_max_weight(g, family);
        CHECK(verify_dual_certificate(g, family, res.matching, res.dual) == "");
        CHECK(res.weight == brute_force_max_weight(g, family));
    }
}

TEST_CASE("dual checker rejects tampering") {
    BipartiteMultigraph g;
    for (int i = 0; i < 2; ++i) {
        g.add_vertex(vplus(i));
        g.add_vertex(vminus(i));
    }
    g.add_edge(vplus(0), vminus(0), Rat(2));
    g.add_edge(vplus(1), vminus(1), Rat(3));
    EmptyFamily family(1);
    WeightedResult res = solve_max_weight(g, family);
    REQUIRE(verify_dual_certificate(g, family, res.matching, res.dual) == "");

    DualSolution broken = res.dual;
    broken.p[vplus(0)] += Rat(1);
    CHECK(verify_dual_certificate(g, family, res.matching, broken) != "");

    broken = res.dual;
    broken.q[0] = Rat(1);
    CHECK(verify_dual_certificate(g, family, res.matching, broken) != "");

    EdgeIdSet fewer = res.matching;
    fewer.erase(fewer.begin());
    CHECK(verify_dual_certificate(g, family, fewer, res.dual) != "");
}
