#include <catch_amalgamated.hpp>

#include "tiling/clique.hpp"
#include "tiling/generators.hpp"

using namespace tiling;

namespace {

Graph bowtie() {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(2, 4);
    g.add_edge(3, 4);
    return g;
}

Graph petersen() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    return g;
}

}  // namespace

TEST_CASE("clique enumeration") {
    CHECK(clique_hypergraph(complete_graph(4), 3).edges.size() == 4);
    CHECK(clique_hypergraph(cycle_graph(5), 3).edges.empty());
    CHECK(clique_hypergraph(petersen(), 2).edges.size() == 15);
    CHECK_THROWS_AS(clique_hypergraph(complete_graph(3), 1), error);
    // Oracle: count k-subsets inducing cliques directly.
    Rng rng(7);
    Graph g = gen_erdos_renyi(8, Rational(Int(1), Int(2)), rng);
    long long naive = 0;
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b)
            for (int c = b + 1; c < 8; ++c)
                if (g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c)) ++naive;
    CHECK(static_cast<long long>(clique_hypergraph(g, 3).edges.size()) == naive);
}

TEST_CASE("tight, loose and reachability structure") {
    auto two = decompose(clique_hypergraph(
        Graph::disjoint_union(complete_graph(3), complete_graph(3)), 3));
    CHECK(two.tight.size() == 2);
    CHECK(two.loose.size() == 2);

    auto bow = decompose(clique_hypergraph(bowtie(), 3));
    CHECK(bow.tight.size() == 2);
    CHECK(bow.loose.size() == 1);

    auto k4 = decompose(clique_hypergraph(complete_graph(4), 3));
    CHECK(k4.tight.size() == 1);
    CHECK(k4.loose.size() == 1);
    CHECK(k4.reach[0].size() == 1);

    auto k3 = decompose(clique_hypergraph(complete_graph(3), 3));
    CHECK(k3.tight.size() == 1);
    CHECK(k3.reach[0].size() == 3);
}

TEST_CASE("linkage witnesses") {
    auto j4 = clique_hypergraph(complete_graph(4), 3);
    for (Vertex v = 0; v < 4; ++v) {
        auto w = is_linked(j4, v);
        REQUIRE(w.has_value());
        CHECK(std::binary_search(w->e.begin(), w->e.end(), v));
        CHECK(!std::binary_search(w->f.begin(), w->f.end(), v));
        std::vector<Vertex> inter;
        std::set_intersection(w->e.begin(), w->e.end(), w->f.begin(), w->f.end(),
                              std::back_inserter(inter));
        CHECK(inter.size() == 2);
    }
    auto j3 = clique_hypergraph(complete_graph(3), 3);
    CHECK(!is_linked(j3, 0).has_value());
    CHECK_THROWS_AS(is_linked(j3, 9), error);

    // K_5 minus a perfect matching on 4 vertices, checked against exhaustive
    // witness search.
    Graph g = complete_graph(5);
    Graph h(5);
    for (auto [u, v] : g.edges())
        if (!((u == 0 && v == 1) || (u == 2 && v == 3))) h.add_edge(u, v);
    auto j = clique_hypergraph(h, 3);
    for (Vertex v = 0; v < 5; ++v) {
        bool brute = false;
        for (const auto& e : j.edges)
            for (const auto& f : j.edges) {
                if (!std::binary_search(e.begin(), e.end(), v)) continue;
                if (std::binary_search(f.begin(), f.end(), v)) continue;
                std::vector<Vertex> inter;
                std::set_intersection(e.begin(), e.end(), f.begin(), f.end(),
                                      std::back_inserter(inter));
                if (inter.size() == 2) brute = true;
            }
        CHECK(is_linked(j, v).has_value() == brute);
    }
}

TEST_CASE("shadows") {
    CliqueHypergraph one;
    one.k = 3;
    one.n = 3;
    one.edges = {{0, 1, 2}};
    auto s = shadow(one);
    CHECK(s.k == 2);
    CHECK(s.edges == std::vector<HyperEdge>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(shadow(clique_hypergraph(complete_graph(4), 3)).edges.size() == 6);

    // Random 3-graph vs brute-force subset scan.
    Rng rng(11);
    CliqueHypergraph r;
    r.k = 3;
    r.n = 6;
    std::set<HyperEdge> es;
    for (int it = 0; it < 8; ++it) {
        HyperEdge e{static_cast<Vertex>(rng.below(6)), 0, 0};
        e[1] = static_cast<Vertex>(rng.below(6));
        e[2] = static_cast<Vertex>(rng.below(6));
        std::sort(e.begin(), e.end());
        if (e[0] != e[1] && e[1] != e[2]) es.insert(e);
    }
    r.edges.assign(es.begin(), es.end());
    std::set<HyperEdge> naive;
    for (const auto& e : r.edges)
        for (int drop = 0; drop < 3; ++drop) {
            HyperEdge f;
            for (int i = 0; i < 3; ++i)
                if (i != drop) f.push_back(e[i]);
            naive.insert(f);
        }
    auto sh = shadow(r);
    CHECK(std::set<HyperEdge>(sh.edges.begin(), sh.edges.end()) == naive);
}

TEST_CASE("tl-connectivity decisions") {
    Graph two = Graph::disjoint_union(complete_graph(3), complete_graph(3));
    auto j2 = clique_hypergraph(two, 3);
    CHECK(tl_connectivity(j2, 2, 2).connected);
    CHECK(!tl_connectivity(j2, 1, 1).connected);
    CHECK(tl_connectivity(clique_hypergraph(bowtie(), 3), 2, 1).connected);
    CHECK_THROWS_AS(tl_connectivity(j2, 0, 1), error);
    // A vertex in no edge is uncoverable.
    Graph lonely = Graph::disjoint_union(complete_graph(3), empty_graph(1));
    CHECK_THROWS_AS(tl_connectivity(clique_hypergraph(lonely, 3), 2, 2), error);
    // The witness is minimal in tight count on the exhaustive path.
    auto w = tl_connectivity(j2, 2, 2);
    CHECK(w.exact);
    CHECK(w.tight_used == 2);
}

TEST_CASE("tl-connectivity falls back to the conservative greedy") {
    // 21 disjoint triangles exceed the exhaustive cutoff of 20 components.
    Graph many(0);
    for (int i = 0; i < 21; ++i) many = Graph::disjoint_union(many, complete_graph(3));
    auto j = clique_hypergraph(many, 3);
    auto yes = tl_connectivity(j, 21, 21);
    CHECK(yes.connected);
    CHECK(!yes.exact);
    CHECK(yes.tight_used == 21);
    auto no = tl_connectivity(j, 20, 21);
    CHECK(!no.connected);  // conservative refusal
    CHECK(!no.exact);
}
