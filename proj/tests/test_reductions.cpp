#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ufm/oracle.hpp"
#include "ufm/reductions.hpp"
#include "ufm/solver_unweighted.hpp"
#include "ufm/solver_weighted.hpp"

using namespace ufm;

// brute-force maximum matching of a simple undirected graph
static int matching_number(const UndirectedGraph &g) {
    int m = static_cast<int>(g.edges.size());
    int best = 0;
    for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<int> deg(g.n, 0);
        bool ok = true;
        int size = 0;
        for (int i = 0; i < m && ok; ++i)
            if (mask & (1 << i)) {
                const auto &[u, v, w] = g.edges[i];
                if (++deg[u] > 1 || ++deg[v] > 1) ok = false;
                ++size;
            }
        if (ok) best = std::max(best, size);
    }
    return best;
}

TEST_CASE("a single edge becomes a 2-cycle of arcs") {
    UndirectedGraph g;
    g.n = 2;
    g.add_edge(0, 1, Rat(7));
    ReductionWitness w;
    Digraph d = encode_matching_as_even_factor(g, w);
    REQUIRE(d.arcs.size() == 2);
    CHECK(d.arcs[0].tail == 0);
    CHECK(d.arcs[0].head == 1);
    CHECK(d.arcs[1].tail == 1);
    CHECK(d.arcs[1].head == 0);
    CHECK(d.arcs[0].weight == Rat(7));
    CHECK(w.forward[0] == std::vector<int>{0, 1});
}

TEST_CASE("triangle matching chain gives even factor value 2") {
    UndirectedGraph g;
    g.n = 3;
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    ReductionWitness w;
    Digraph d = encode_matching_as_even_factor(g, w);
    EncodedEvenFactor enc = encode_even_factor(d, true);
    CHECK(brute_force_max(enc.graph, enc.family) == 2);
    UnweightedResult res = solve_max(enc.graph, enc.family);
    CHECK(res.matching.size() == 2);

    auto arcs = decode_even_factor(d, res.matching);
    auto matched = decode_matching(g, w, arcs);
    CHECK(static_cast<int>(matched.size()) == matching_number(g));
}

TEST_CASE("Petersen graph via the reduction chain reaches 10") {
    UndirectedGraph g;
    g.n = 10;
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);          // outer cycle
        g.add_edge(i + 5, (i + 2) % 5 + 5);  // inner pentagram
        g.add_edge(i, i + 5);                // spokes
    }
    CHECK(matching_number(g) == 5);

    ReductionWitness w;
    Digraph d = encode_matching_as_even_factor(g, w);
    EncodedEvenFactor enc = encode_even_factor(d, true);
    UnweightedResult res = solve_max(enc.graph, enc.family);
    CHECK(res.matching.size() == 10);
    CHECK(verify_weak_duality(enc.graph, enc.family, res.matching, res.certificate,
                              true) == "");

    auto matched = decode_matching(g, w, decode_even_factor(d, res.matching));
    CHECK(matched.size() == 5);
    std::vector<int> deg(g.n, 0);
    for (int e : matched) {
        ++deg[std::get<0>(g.edges[e])];
        ++deg[std::get<1>(g.edges[e])];
    }
    for (int v = 0; v < g.n; ++v) CHECK(deg[v] <= 1);
}

TEST_CASE("odd cycle symmetry guard") {
    Digraph d;
    d.n = 3;
    d.add_arc(0, 1);
    d.add_arc(1, 2);
    d.add_arc(2, 0);
    CHECK(check_odd_cycle_symmetry(d) != "");
    CHECK_THROWS_AS(encode_even_factor(d, true), std::invalid_argument);
    CHECK(encode_even_factor(d, false).graph.edge_count() == 3);

    d.add_arc(1, 0);
    d.add_arc(2, 1);
    d.add_arc(0, 2);
    CHECK(check_odd_cycle_symmetry(d) == "");

    Digraph even;
    even.n = 4;
    even.add_arc(0, 1);
    even.add_arc(1, 2);
    even.add_arc(2, 3);
    even.add_arc(3, 0);
    CHECK(check_odd_cycle_symmetry(even) == "");  // only an even dicycle
}

TEST_CASE("triangle-free chain values") {
    UndirectedGraph tri;
    tri.n = 3;
    tri.add_edge(0, 1);
    tri.add_edge(1, 2);
    tri.add_edge(2, 0);
    EncodedTriangleFree enc = encode_triangle_free(tri);
    CHECK(brute_force_max(enc.graph, enc.family) == 2);
    UnweightedResult res = solve_max(enc.graph, enc.family);
    CHECK(res.matching.size() == 2);
    auto mult = decode_triangle_free(tri, enc.witness, res.matching);
    int total = 0, with_one = 0;
    for (int x : mult) {
        total += x;
        with_one += x == 1;
    }
    CHECK(total == 2);
    CHECK(with_one <= 2);  // never a full triangle

    UndirectedGraph c4;
    c4.n = 4;
    c4.add_edge(0, 1);
    c4.add_edge(1, 2);
    c4.add_edge(2, 3);
    c4.add_edge(3, 0);
    EncodedTriangleFree enc4 = encode_triangle_free(c4);
    CHECK(solve_max(enc4.graph, enc4.family).matching.size() == 4);

    UndirectedGraph single;
    single.n = 2;
    single.add_edge(0, 1);
    EncodedTriangleFree enc1 = encode_triangle_free(single);
    CHECK(solve_max(enc1.graph, enc1.family).matching.size() == 2);  // one edge twice
    auto m1 = decode_triangle_free(
        single, enc1.witness, solve_max(enc1.graph, enc1.family).matching);
    CHECK(m1[0] == 2);
}

TEST_CASE("matroid encodings") {
    EncodedMatroid free3 = encode_matroid(3, {}, {Rat(1), Rat(1), Rat(1)});
    CHECK(solve_max(free3.graph, free3.family).matching.size() == 3);

    EncodedMatroid u23 = encode_matroid(3, {{0, 1, 2}}, {Rat(1), Rat(1), Rat(1)});
    UnweightedResult res = solve_max(u23.graph, u23.family);
    CHECK(res.matching.size() == 2);
    CHECK(decode_matroid(res.matching).size() == 2);

    // graphic matroid of K3: the only circuit is the full triangle
    EncodedMatroid k3 = encode_matroid(3, {{0, 1, 2}}, {Rat(1), Rat(1), Rat(1)});
    CHECK(brute_force_max(k3.graph, k3.family) == 2);
}

TEST_CASE("branching encodings") {
    Digraph single;
    single.n = 2;
    single.add_arc(0, 1, Rat(6));
    EncodedBranching enc = encode_branching(single);
    WeightedResult res = solve_max_weight(enc.graph, enc.family);
    CHECK(res.weight == Rat(6));

    Digraph cyc;
    cyc.n = 2;
    cyc.add_arc(0, 1, Rat(3));
    cyc.add_arc(1, 0, Rat(4));
    EncodedBranching enc2 = encode_branching(cyc);
    CHECK(brute_force_max_weight(enc2.graph, enc2.family) == Rat(4));
    WeightedResult res2 = solve_max_weight(enc2.graph, enc2.family);
    CHECK(res2.weight == Rat(4));
    CHECK(decode_branching(res2.matching) == std::vector<int>{1});

    Digraph star;
    star.n = 4;
    star.add_arc(1, 0);
    star.add_arc(2, 0);
    star.add_arc(3, 0);
    EncodedBranching enc3 = encode_branching(star);
    CHECK(solve_max(enc3.graph, enc3.family).matching.size() == 1);  // in-degree cap
}
