#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ufm/family.hpp"
#include "ufm/graph.hpp"
#include "ufm/shrinker.hpp"

using namespace ufm;

static BipartiteMultigraph complete(int a, int b) {
    BipartiteMultigraph g;
    for (int i = 0; i < a; ++i) g.add_vertex(vplus(i));
    for (int j = 0; j < b; ++j) g.add_vertex(vminus(j));
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(vplus(i), vminus(j));
    return g;
}

// doubled symmetric digraph of an undirected cycle 0-1-...-(n-1)-0
static BipartiteMultigraph doubled_cycle(int n) {
    BipartiteMultigraph g;
    for (int i = 0; i < n; ++i) {
        g.add_vertex(vplus(i));
        g.add_vertex(vminus(i));
    }
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        g.add_edge(vplus(i), vminus(j));
        g.add_edge(vplus(j), vminus(i));
    }
    return g;
}

TEST_CASE("feasibility bound arithmetic") {
    CHECK(feasibility_bound(2, 4) == 3);   // square
    CHECK(feasibility_bound(1, 6) == 2);   // doubled triangle
    CHECK(feasibility_bound(3, 6) == 8);
    CHECK(floor_div(-1, 2) == -1);
}

TEST_CASE("square-free family on K33") {
    KttFreeFamily family(2);
    CHECK(family.name() == "squarefree");
    BipartiteMultigraph g = complete(3, 3);
    ShrunkState state(g);

    // edge (i,j) has id 3i+j; a saturated square on {0,1}x{0,1}
    EdgeIdSet square{0, 1, 3, 4};
    auto viol = family.find_violation(state, square);
    REQUIRE(viol.has_value());
    CHECK(viol->hatted_set == VertexSet{vplus(0), vplus(1), vminus(0), vminus(1)});
    CHECK(viol->factor_edges.size() == 4);

    // three edges of the square are fine
    CHECK_FALSE(family.find_violation(state, EdgeIdSet{0, 1, 3}).has_value());
    CHECK(family.check_original(g, EdgeIdSet{0, 1, 3}));
    CHECK_FALSE(family.check_original(g, square));

    auto members = family.enumerate_members(g, 100);
    CHECK(members.size() == 9);
    for (const auto &u : members) {
        CHECK(u.size() == 4);
        CHECK(family.is_certifiable(g, u));
        CHECK(family.certificate_bound(g, u) == 3);
    }
    CHECK_FALSE(family.is_certifiable(g, VertexSet{vplus(0), vminus(0)}));
}

TEST_CASE("ktt-free family with t=3") {
    KttFreeFamily family(3);
    CHECK(family.t() == 3);
    BipartiteMultigraph g = complete(3, 3);
    ShrunkState state(g);
    EdgeIdSet all;
    for (const auto &[id, e] : g.edges()) all.insert(id);
    auto viol = family.find_violation(state, all);
    REQUIRE(viol.has_value());
    CHECK(viol->hatted_set.size() == 6);
    all.erase(4);
    CHECK_FALSE(family.find_violation(state, all).has_value());
}

TEST_CASE("odd symmetric family detects an odd dicycle") {
    OddSymmetricFamily family{TwinPairing(3)};
    CHECK(family.t() == 1);
    BipartiteMultigraph g = doubled_cycle(3);
    ShrunkState state(g);

    // forward orientation: edges 0,2,4 are (0+,1-),(1+,2-),(2+,0-)
    EdgeIdSet cycle{0, 2, 4};
    auto viol = family.find_violation(state, cycle);
    REQUIRE(viol.has_value());
    CHECK(viol->hatted_set.size() == 6);
    CHECK(viol->cycle_pairs.size() == 3);

    CHECK_FALSE(family.find_violation(state, EdgeIdSet{0, 2}).has_value());
    CHECK(family.check_original(g, EdgeIdSet{0, 2}));
    CHECK_FALSE(family.check_original(g, cycle));

    // both orientations double to the same vertex set
    auto members = family.enumerate_members(g, 100);
    CHECK(members.size() == 1);
    CHECK(family.is_certifiable(g, members[0]));
    CHECK(family.certificate_bound(g, members[0]) == 2);
}

TEST_CASE("odd symmetric family allows even dicycles") {
    OddSymmetricFamily family{TwinPairing(4)};
    BipartiteMultigraph g = doubled_cycle(4);
    ShrunkState state(g);
    EdgeIdSet cycle{0, 2, 4, 6};
    CHECK_FALSE(family.find_violation(state, cycle).has_value());
    CHECK(family.enumerate_members(g, 100).empty());
}

TEST_CASE("triangle twin family") {
    TriangleTwinFamily family{TwinPairing(3)};
    BipartiteMultigraph g = doubled_cycle(3);
    ShrunkState state(g);

    EdgeIdSet tri{0, 2, 4};
    auto viol = family.find_violation(state, tri);
    REQUIRE(viol.has_value());
    CHECK(viol->hatted_set.size() == 6);
    CHECK_FALSE(family.check_original(g, tri));
    CHECK(family.check_original(g, EdgeIdSet{0, 2}));

    auto members = family.enumerate_members(g, 100);
    CHECK(members.size() == 1);
    CHECK(members[0].size() == 6);
}

TEST_CASE("matroid circuit family: uniform U23") {
    MatroidCircuitFamily family(3, {{0, 1, 2}});
    CHECK(family.independent({0, 1}));
    CHECK_FALSE(family.independent({0, 1, 2}));
    CHECK(family.rank({0, 1, 2}) == 2);

    BipartiteMultigraph g;
    for (int i = 0; i < 3; ++i) {
        g.add_vertex(vplus(i));
        g.add_vertex(vminus(i));
        g.add_edge(vplus(i), vminus(i));
    }
    ShrunkState state(g);
    EdgeIdSet all{0, 1, 2};
    auto viol = family.find_violation(state, all);
    REQUIRE(viol.has_value());
    CHECK(viol->hatted_set.size() == 6);
    CHECK_FALSE(family.find_violation(state, EdgeIdSet{0, 2}).has_value());

    auto members = family.enumerate_members(g, 100);
    CHECK(members.size() == 1);
    CHECK(family.is_certifiable(g, members[0]));
    CHECK(family.certificate_bound(g, members[0]) == 2);  // matroid rank
}

TEST_CASE("directed cycle family") {
    // arcs: 0: u->v, 1: v->u, 2: u->w
    DirectedCycleFamily family({{0, 1}, {1, 0}, {0, 2}});
    BipartiteMultigraph g;
    for (int v = 0; v < 3; ++v) g.add_vertex(vminus(v));
    for (int a = 0; a < 3; ++a) g.add_vertex(vplus(a));
    g.add_edge(vplus(0), vminus(1));  // arc 0 hits head v
    g.add_edge(vplus(1), vminus(0));  // arc 1 hits head u
    g.add_edge(vplus(2), vminus(2));  // arc 2 hits head w
    ShrunkState state(g);

    EdgeIdSet two_cycle{0, 1};
    auto viol = family.find_violation(state, two_cycle);
    REQUIRE(viol.has_value());
    CHECK(viol->hatted_set == VertexSet{vplus(0), vplus(1), vminus(0), vminus(1)});
    CHECK_FALSE(family.find_violation(state, EdgeIdSet{0, 2}).has_value());
    CHECK(family.check_original(g, EdgeIdSet{0, 2}));
    CHECK_FALSE(family.check_original(g, two_cycle));

    auto members = family.enumerate_members(g, 100);
    CHECK(members.size() == 1);
    CHECK(family.certificate_bound(g, members[0]) == 1);  // one arc of the 2-cycle
}

TEST_CASE("c4k2 family detects a saturated six-cycle") {
    C4k2Family family{TwinPairing(3)};
    CHECK(family.t() == 2);
    BipartiteMultigraph g;
    for (int i = 0; i < 3; ++i) {
        g.add_vertex(vplus(i));
        g.add_vertex(vminus(i));
    }
    // six-cycle 0+ 0- 1+ 1- 2+ 2-; twin edges {i+,i-} are on the cycle
    g.add_edge(vplus(0), vminus(0));  // 0
    g.add_edge(vplus(1), vminus(0));  // 1
    g.add_edge(vplus(1), vminus(1));  // 2
    g.add_edge(vplus(2), vminus(1));  // 3
    g.add_edge(vplus(2), vminus(2));  // 4
    g.add_edge(vplus(0), vminus(2));  // 5
    ShrunkState state(g);

    EdgeIdSet all{0, 1, 2, 3, 4, 5};
    auto viol = family.find_violation(state, all);
    REQUIRE(viol.has_value());
    CHECK(viol->hatted_set.size() == 6);
    CHECK_FALSE(family.check_original(g, all));

    all.erase(5);
    CHECK_FALSE(family.find_violation(state, all).has_value());
    CHECK(family.check_original(g, all));

    auto members = family.enumerate_members(g, 100);
    CHECK(members.size() == 1);  // only the full 3+3 set has odd balanced sides
    CHECK(family.is_certifiable(g, members[0]));
}

TEST_CASE("explicit family") {
    BipartiteMultigraph g = complete(2, 2);
    VertexSet u{vplus(0), vplus(1), vminus(0), vminus(1)};
    ExplicitFamily family(2, {u});
    ShrunkState state(g);
    EdgeIdSet all{0, 1, 2, 3};
    auto viol = family.find_violation(state, all);
    REQUIRE(viol.has_value());
    CHECK(viol->hatted_set == u);
    CHECK_FALSE(family.find_violation(state, EdgeIdSet{0, 1, 2}).has_value());
    CHECK(family.enumerate_members(g, 10) == std::vector<VertexSet>{u});
    CHECK(family.is_certifiable(g, u));  // t|U| even
}

TEST_CASE("empty family never objects") {
    EmptyFamily family(2);
    BipartiteMultigraph g = complete(2, 2);
    ShrunkState state(g);
    CHECK_FALSE(family.find_violation(state, EdgeIdSet{0, 1, 2, 3}).has_value());
    CHECK(family.check_original(g, EdgeIdSet{0, 1, 2, 3}));
}
