#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ufm/oracle.hpp"

using namespace ufm;

static BipartiteMultigraph complete(int a, int b) {
    BipartiteMultigraph g;
    for (int i = 0; i < a; ++i) g.add_vertex(vplus(i));
    for (int j = 0; j < b; ++j) g.add_vertex(vminus(j));
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(vplus(i), vminus(j));
    return g;
}

TEST_CASE("brute force values on known instances") {
    CHECK(brute_force_max(complete(2, 2), SquareFreeFamily(2)) == 3);
    CHECK(brute_force_max(complete(3, 3), SquareFreeFamily(2)) == 6);
    CHECK(brute_force_max(complete(3, 3), EmptyFamily(1)) == 3);
    CHECK(brute_force_max(complete(3, 3), EmptyFamily(3)) == 9);
}

TEST_CASE("argmax returns a witness of the optimum") {
    BipartiteMultigraph g = complete(3, 3);
    SquareFreeFamily family(2);
    EdgeIdSet best = brute_force_argmax(g, family);
    CHECK(best.size() == 6);
    CHECK(verify_solution(g, family, best) == "");
}

TEST_CASE("weighted brute force prefers heavy feasible subsets") {
    BipartiteMultigraph g;
    for (int i = 0; i < 2; ++i) {
        g.add_vertex(vplus(i));
        g.add_vertex(vminus(i));
    }
    g.add_edge(vplus(0), vminus(0), Rat(5));
    g.add_edge(vplus(0), vminus(1), Rat(5));
    g.add_edge(vplus(1), vminus(0), Rat(3));
    g.add_edge(vplus(1), vminus(1), Rat(3));
    CHECK(brute_force_max_weight(g, SquareFreeFamily(2)) == Rat(13));
    CHECK(brute_force_max_weight(g, EmptyFamily(2)) == Rat(16));

    EdgeIdSet best = brute_force_argmax_weight(g, SquareFreeFamily(2));
    Rat total;
    for (int id : best) total += g.edge(id).weight;
    CHECK(total == Rat(13));
}

TEST_CASE("negative weights leave the empty set") {
    BipartiteMultigraph g;
    g.add_vertex(vplus(0));
    g.add_vertex(vminus(0));
    g.add_edge(vplus(0), vminus(0), Rat(-2));
    CHECK(brute_force_max_weight(g, EmptyFamily(1)) == Rat(0));
    CHECK(brute_force_argmax_weight(g, EmptyFamily(1)).empty());
}

TEST_CASE("verify_solution names the violated constraint") {
    BipartiteMultigraph g = complete(2, 2);
    SquareFreeFamily family(2);
    CHECK(verify_solution(g, family, EdgeIdSet{0, 1, 2}) == "");

    std::string err = verify_solution(g, family, EdgeIdSet{0, 1, 2, 3});
    CHECK(err.find("forbidden set") != std::string::npos);

    BipartiteMultigraph multi;
    multi.add_vertex(vplus(0));
    multi.add_vertex(vminus(0));
    multi.add_edge(vplus(0), vminus(0));
    multi.add_edge(vplus(0), vminus(0));
    err = verify_solution(multi, EmptyFamily(1), EdgeIdSet{0, 1});
    CHECK(err.find("degree bound") != std::string::npos);

    err = verify_solution(g, family, EdgeIdSet{17});
    CHECK(err.find("unknown edge") != std::string::npos);
}

TEST_CASE("the edge budget is enforced") {
    BipartiteMultigraph g = complete(5, 5);  // 25 edges, over the default 24
    CHECK_THROWS_AS(brute_force_max(g, EmptyFamily(1)), std::runtime_error);
    CHECK(oracle_budget() == 24);
}
