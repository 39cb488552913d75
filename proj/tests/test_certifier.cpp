#include <catch_amalgamated.hpp>

#include "tiling/certifier.hpp"
#include "tiling/generators.hpp"

using namespace tiling;

TEST_CASE("framework checks on the worked examples") {
    auto k6 = check_framework(complete_graph(6), Rational(3), Rational(0), 1, 1);
    CHECK(k6.f1);
    CHECK(k6.f1_perfect);
    CHECK(k6.f2);
    CHECK(k6.f3);
    CHECK(k6.pass);

    Graph two = Graph::disjoint_union(complete_graph(4), complete_graph(4));
    CHECK(check_framework(two, Rational(3), Rational(0), 2, 2).pass);
    CHECK(!check_framework(two, Rational(3), Rational(0), 1, 2).f2);

    auto c5 = check_framework(cycle_graph(5), Rational(3), Rational(0), 1, 1);
    CHECK(c5.f1_weight == Rational(0));
    CHECK(!c5.pass);

    CHECK_THROWS_AS(check_framework(complete_graph(3), Rational(1), Rational(0), 1, 1), error);
}

TEST_CASE("robustness separates genuine and fragile frameworks") {
    // K_7 survives every (1/7,1/7)-approximation at (3,0;1,1).
    auto good = check_robust(complete_graph(7), Rational(Int(1), Int(7)), Rational(3), Rational(0),
                             1, 1, 0);
    CHECK(good.verdict == RobustVerdict::pass_exhaustive);

    // Two K_4s die when a vertex deletion leaves an unlinked K_3.
    Graph two = Graph::disjoint_union(complete_graph(4), complete_graph(4));
    auto bad = check_robust(two, Rational(Int(1), Int(8)), Rational(3), Rational(0), 2, 2, 0);
    CHECK(bad.verdict == RobustVerdict::fail);
    CHECK((!bad.removed_vertices.empty() || !bad.removed_edges.empty()));

    // mu with floor(mu n) = 0 and no edge slack reduces to the plain check.
    auto degenerate = check_robust(complete_graph(6), Rational(Int(1), Int(100)), Rational(3),
                                   Rational(0), 1, 1, 0);
    CHECK(degenerate.verdict == RobustVerdict::pass_exhaustive);
    CHECK_THROWS_AS(check_robust(two, Rational(0), Rational(3), Rational(0), 2, 2, 0), error);
}

TEST_CASE("degree condition implies the framework") {
    auto k8 = check_degree_framework(complete_graph(8), Rational(2), Rational(Int(1), Int(4)));
    CHECK(k8.hypothesis);
    REQUIRE(k8.conclusion.has_value());
    CHECK(k8.conclusion->pass);
    CHECK(k8.l == k8.t);  // k = 2

    auto c8 = check_degree_framework(cycle_graph(8), Rational(2), Rational(Int(1), Int(8)));
    CHECK(!c8.hypothesis);
    CHECK(!c8.conclusion.has_value());

    // Balanced complete bipartite hosts sit exactly at delta = n/2, so the
    // strict hypothesis fails for every positive mu; the framework itself
    // still holds with one tight component at k = 2.
    auto k44 = check_degree_framework(complete_bipartite(4, 4), Rational(2),
                                      Rational(Int(1), Int(5)));
    CHECK(!k44.hypothesis);
    auto direct = check_framework(complete_bipartite(4, 4), Rational(2), Rational(0), 1, 1);
    CHECK(direct.pass);
    CHECK(direct.f2_witness.tight_used == 1);
}

TEST_CASE("strong degree sequences") {
    CHECK(check_strong_degree_sequence(complete_graph(8), Rational(2), Rational(Int(1), Int(8))));
    CHECK(!check_strong_degree_sequence(empty_graph(6), Rational(2), Rational(Int(1), Int(8))));
    // Dropping one vertex's degree below the i = 1 bound (chi alpha + mu n
    // = 2 here) flips the verdict.
    Graph g = complete_graph(9);
    CHECK(check_strong_degree_sequence(g, Rational(2), Rational(Int(1), Int(9))));
    Graph weak(9);
    for (auto [u, v] : g.edges())
        if (u != 0 || v == 8) weak.add_edge(u, v);  // vertex 0 keeps degree 1
    CHECK(weak.degree(0) == 1);
    CHECK(!check_strong_degree_sequence(weak, Rational(2), Rational(Int(1), Int(9))));
}

TEST_CASE("uniform density checks") {
    auto full = check_uniform_density(complete_graph(10), Rational(Int(1), Int(20)), Rational(1),
                                      Rational(Int(1), Int(2)), 0);
    CHECK(full.pass);
    CHECK(full.exhaustive);

    auto hollow = check_uniform_density(empty_graph(8), Rational(Int(1), Int(100)),
                                        Rational(Int(1), Int(2)), Rational(0), 0);
    CHECK(!hollow.pass);
    CHECK(!hollow.witness.empty());

    // Disjoint equal cliques at the matching density, exhaustively.
    Graph cliques = gen_disjoint_cliques({5, 5});
    auto dr = check_uniform_density(cliques, Rational(Int(1), Int(8)), Rational(Int(2), Int(5)),
                                    Rational(Int(1), Int(10)), 0);
    CHECK(dr.exhaustive);
    CHECK(dr.pass);

    // Beyond n = 20 the check samples extremal and random candidates and
    // says so.
    auto big = check_uniform_density(complete_graph(24), Rational(Int(1), Int(48)), Rational(1),
                                     Rational(Int(1), Int(2)), 7);
    CHECK(big.pass);
    CHECK(!big.exhaustive);
    auto sparse = check_uniform_density(empty_graph(24), Rational(Int(1), Int(100)),
                                        Rational(Int(1), Int(2)), Rational(0), 7);
    CHECK(!sparse.pass);
}

TEST_CASE("backstop reduction") {
    auto k4 = backstop_reduce(clique_hypergraph(complete_graph(4), 3));
    CHECK(k4.tight_count == 1);
    CHECK(k4.loose_count == 1);

    Graph bow(5);
    bow.add_edge(0, 1);
    bow.add_edge(0, 2);
    bow.add_edge(1, 2);
    bow.add_edge(2, 3);
    bow.add_edge(2, 4);
    bow.add_edge(3, 4);
    auto b = backstop_reduce(clique_hypergraph(bow, 3));
    CHECK(b.tight_count == 2);
    CHECK(b.loose_count == 1);

    auto two = backstop_reduce(
        clique_hypergraph(Graph::disjoint_union(complete_graph(3), complete_graph(3)), 3));
    CHECK(two.tight_count == 2);
    CHECK(two.loose_count == 2);

    Graph lonely = Graph::disjoint_union(complete_graph(3), empty_graph(1));
    CHECK_THROWS_AS(backstop_reduce(clique_hypergraph(lonely, 3)), error);
}
