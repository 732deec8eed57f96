#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ufm/oracle.hpp"
#include "ufm/solver_unweighted.hpp"

using namespace ufm;

static BipartiteMultigraph complete(int a, int b) {
    BipartiteMultigraph g;
    for (int i = 0; i < a; ++i) g.add_vertex(vplus(i));
    for (int j = 0; j < b; ++j) g.add_vertex(vminus(j));
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(vplus(i), vminus(j));
    return g;
}

static void check_optimal(const BipartiteMultigraph &g, const FamilyOracle &family,
                          long long expected) {
    UnweightedResult res = solve_max(g, family);
    CHECK(static_cast<long long>(res.matching.size()) == expected);
    CHECK(verify_solution(g, family, res.matching) == "");
    CHECK(res.certificate.value() == expected);
    CHECK(verify_weak_duality(g, family, res.matching, res.certificate, true) == "");
    CHECK(brute_force_max(g, family) == expected);
}

TEST_CASE("square-free matching on C4 is 3") {
    check_optimal(complete(2, 2), SquareFreeFamily(2), 3);
}

TEST_CASE("square-free matching on K33 is 6") {
    check_optimal(complete(3, 3), SquareFreeFamily(2), 6);
}

TEST_CASE("plain t-matching with the empty family") {
    check_optimal(complete(3, 3), EmptyFamily(1), 3);
    check_optimal(complete(3, 3), EmptyFamily(2), 6);
}

TEST_CASE("star certificate names the center") {
    BipartiteMultigraph g;
    g.add_vertex(vminus(0));
    for (int i = 0; i < 3; ++i) {
        g.add_vertex(vplus(i));
        g.add_edge(vplus(i), vminus(0));
    }
    EmptyFamily family(1);
    UnweightedResult res = solve_max(g, family);
    CHECK(res.matching.size() == 1);
    CHECK(res.certificate.x == VertexSet{vminus(0)});
    CHECK(res.certificate.value() == 1);
}

TEST_CASE("symmetric triangle even factor is 2") {
    BipartiteMultigraph g;
    for (int i = 0; i < 3; ++i) {
        g.add_vertex(vplus(i));
        g.add_vertex(vminus(i));
    }
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3;
        g.add_edge(vplus(i), vminus(j));
        g.add_edge(vplus(j), vminus(i));
    }
    check_optimal(g, OddSymmetricFamily(TwinPairing(3)), 2);
}

TEST_CASE("triangle-free 2-matching of a triangle is 2") {
    BipartiteMultigraph g;
    for (int i = 0; i < 3; ++i) {
        g.add_vertex(vplus(i));
        g.add_vertex(vminus(i));
    }
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3;
        g.add_edge(vplus(i), vminus(j));
        g.add_edge(vplus(j), vminus(i));
    }
    check_optimal(g, TriangleTwinFamily(TwinPairing(3)), 2);
}

TEST_CASE("matroid rank via the pairing encoding") {
    BipartiteMultigraph g;
    for (int i = 0; i < 3; ++i) {
        g.add_vertex(vplus(i));
        g.add_vertex(vminus(i));
        g.add_edge(vplus(i), vminus(i));
    }
    check_optimal(g, MatroidCircuitFamily(3, {{0, 1, 2}}), 2);
    check_optimal(g, MatroidCircuitFamily(3, {}), 3);
}

TEST_CASE("branchings: a 2-cycle forbids taking both arcs") {
    DirectedCycleFamily family({{0, 1}, {1, 0}});
    BipartiteMultigraph g;
    g.add_vertex(vminus(0));
    g.add_vertex(vminus(1));
    g.add_vertex(vplus(0));
    g.add_vertex(vplus(1));
    g.add_edge(vplus(0), vminus(1));
    g.add_edge(vplus(1), vminus(0));
    check_optimal(g, family, 1);
}

TEST_CASE("explicit family blocks its one set") {
    BipartiteMultigraph g = complete(2, 2);
    ExplicitFamily family(2, {{vplus(0), vplus(1), vminus(0), vminus(1)}});
    check_optimal(g, family, 3);
}

TEST_CASE("augmenting path search prefers small ids") {
    BipartiteMultigraph g = complete(2, 2);
    ShrunkState state(g);
    EdgeIdSet f;
    auto path = find_augmenting_path(state, f, 1);
    REQUIRE(path.has_value());
    CHECK(*path == std::vector<int>{0});
}

TEST_CASE("random square-free instances match the oracle") {
    std::mt19937 rng(20240817);
    for (int iter = 0; iter < 60; ++iter) {
        int a = 2 + static_cast<int>(rng() % 3);
        int b = 2 + static_cast<int>(rng() % 3);
        BipartiteMultigraph g;
        for (int i = 0; i < a; ++i) g.add_vertex(vplus(i));
        for (int j = 0; j < b; ++j) g.add_vertex(vminus(j));
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j)
                if (rng() % 3 != 0) g.add_edge(vplus(i), vminus(j));
        SquareFreeFamily family(2);
        UnweightedResult res = solve_max(g, family);
        CHECK(verify_solution(g, family, res.matching) == "");
        CHECK(verify_weak_duality(g, family, res.matching, res.certificate, true) == "");
        CHECK(static_cast<long long>(res.matching.size()) == brute_force_max(g, family));
    }
}

TEST_CASE("random even factor instances match the oracle") {
    std::mt19937 rng(424242);
    for (int iter = 0; iter < 40; ++iter) {
        int n = 3 + static_cast<int>(rng() % 3);
        BipartiteMultigraph g;
        for (int i = 0; i < n; ++i) {
            g.add_vertex(vplus(i));
            g.add_vertex(vminus(i));
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2 == 0) {
                    g.add_edge(vplus(i), vminus(j));
                    g.add_edge(vplus(j), vminus(i));
                }
        OddSymmetricFamily family{TwinPairing(n)};
        UnweightedResult res = solve_max(g, family);
        CHECK(verify_solution(g, family, res.matching) == "");
        CHECK(verify_weak_duality(g, family, res.matching, res.certificate, true) == "");
        CHECK(static_cast<long long>(res.matching.size()) == brute_force_max(g, family));
    }
}

TEST_CASE("weak duality checker rejects bad certificates") {
    BipartiteMultigraph g = complete(2, 2);
    SquareFreeFamily family(2);
    UnweightedResult res = solve_max(g, family);
    REQUIRE(verify_weak_duality(g, family, res.matching, res.certificate, true) == "");

    MinMaxCertificate broken = res.certificate;
    broken.component_edge_count += 1;
    CHECK(verify_weak_duality(g, family, res.matching, broken, true) != "");

    broken = res.certificate;
    broken.t = 1;
    CHECK(verify_weak_duality(g, family, res.matching, broken, true) != "");

    broken = res.certificate;
    broken.members.push_back({VertexSet{vplus(0), vminus(0)}, 0});
    CHECK(verify_weak_duality(g, family, res.matching, broken, true) != "");
}
