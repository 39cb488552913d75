#include <catch_amalgamated.hpp>

#include "tiling/chromatic.hpp"
#include "tiling/generators.hpp"

using namespace tiling;

TEST_CASE("proper colouring enumeration is exact and ordered") {
    CHECK(count_proper_colourings(complete_graph(3), 2) == 0);
    CHECK(count_proper_colourings(complete_graph(2), 2) == 2);
    // Brute-force oracle over 3^5 assignments.
    long long naive = 0;
    Graph c5 = cycle_graph(5);
    for (int a = 0; a < 243; ++a) {
        int digits[5], x = a;
        for (int i = 0; i < 5; ++i) digits[i] = (x % 3) + 1, x /= 3;
        bool proper = true;
        for (auto [u, v] : c5.edges())
            if (digits[u] == digits[v]) proper = false;
        if (proper) ++naive;
    }
    CHECK(naive == 30);
    CHECK(count_proper_colourings(c5, 3) == naive);

    std::vector<std::vector<int>> seen;
    enumerate_proper_colourings(complete_graph(2), 2, [&](const Colouring& col) {
        seen.push_back(col.colour);
        return true;
    });
    REQUIRE(seen.size() == 2);
    CHECK(seen[0] == std::vector<int>{1, 2});
    CHECK(seen[1] == std::vector<int>{2, 1});
}

TEST_CASE("chromatic profiles match the worked examples") {
    auto k122 = chromatic_profile(bottle_graph(3, 1, 2));
    CHECK(k122.crit == Rational(Int(5), Int(2)));

    auto k3 = chromatic_profile(complete_graph(3));
    CHECK(k3.chi == 3);
    CHECK(k3.alpha == Rational(Int(1), Int(3)));
    CHECK(k3.crit == Rational(3));
    CHECK(k3.d_set == std::set<long long>{0});
    CHECK(!k3.gcd_chi.has_value());

    auto c5 = chromatic_profile(cycle_graph(5));
    CHECK(c5.chi == 3);
    CHECK(c5.alpha == Rational(Int(1), Int(5)));
    CHECK(c5.crit == Rational(Int(5), Int(2)));
    CHECK(c5.d_set == std::set<long long>{0, 1});
    CHECK(c5.gcd_chi == 1);

    auto k24 = chromatic_profile(complete_bipartite(2, 4));
    CHECK(k24.chi == 2);
    CHECK(k24.d_set == std::set<long long>{2});
    CHECK(k24.gcd_chi == 2);

    CHECK_THROWS_AS(chromatic_profile(Graph(0)), error);
}

TEST_CASE("fcr classification") {
    CHECK(is_fcr(cycle_graph(5)));
    CHECK(!is_fcr(complete_bipartite(2, 4)));
    CHECK(!is_fcr(complete_graph(3)));
    // chi = 2 needs both gcds equal to one; a connected graph has
    // gcd_c = v(F), so bipartite members of the class are disconnected.
    CHECK(!is_fcr(path_graph(3)));
    CHECK(is_fcr(Graph::disjoint_union(path_graph(3), complete_graph(2))));
    CHECK_THROWS_AS(is_fcr(Graph(0)), error);
}

TEST_CASE("guest profiles aggregate the disjoint union") {
    auto two_k3 = guest_profile(uniform_guest(complete_graph(3), 2));
    CHECK(two_k3.crit == Rational(3));
    CHECK(two_k3.max_degree == 2);
    CHECK(two_k3.max_tile_order == 3);
    CHECK(two_k3.tile_count == 2);

    auto mixed = guest_profile(TiledGuest(std::vector<Graph>{cycle_graph(4), complete_graph(4)}));
    CHECK(mixed.chi == 4);
    CHECK(mixed.crit > Rational(3));

    auto iso = guest_profile(uniform_guest(empty_graph(1), 6));
    CHECK(iso.chi == 1);
    CHECK_THROWS_AS(guest_profile(TiledGuest{}), error);
}

TEST_CASE("bottle graphs hit their critical values exactly") {
    auto b = bottle_graph(3, 1, 2);
    CHECK(b.same_as(complete_multipartite({1, 2, 2})));
    CHECK(bottle_graph(2, 1, 1).same_as(complete_graph(2)));
    CHECK(bottle_graph(4, 1, 3).n() == 10);
    CHECK(chromatic_profile(bottle_graph(4, 1, 3)).crit == Rational(Int(10), Int(3)));

    CHECK_THROWS_AS(bottle_graph(3, 2, 4), error);  // not coprime
    CHECK_THROWS_AS(bottle_graph(3, 3, 2), error);  // a > b
    CHECK_THROWS_AS(bottle_graph(1, 1, 1), error);

    CHECK(bottle_for(Rational(Int(5), Int(2))).same_as(complete_multipartite({1, 2, 2})));
    CHECK(bottle_for(Rational(3)).same_as(complete_graph(3)));
}

TEST_CASE("colouring witnesses realise requested ords") {
    Budget bud;
    Graph g = Graph::disjoint_union(cycle_graph(5), complete_graph(2));
    auto ords = graph_ord_vectors(g, 3, ColourKind::proper, bud);
    for (size_t i = 0; i < ords.size(); i += 7) {
        auto col = colouring_with_ord(g, 3, ords[i], ColourKind::proper, bud);
        REQUIRE(col.has_value());
        CHECK(col->proper_in(g));
        CHECK(col->ord() == ords[i]);
    }
    // Topological: components are monochromatic.
    auto tops = graph_ord_vectors(g, 2, ColourKind::topological, bud);
    for (const auto& o : tops) {
        auto col = colouring_with_ord(g, 2, o, ColourKind::topological, bud);
        REQUIRE(col.has_value());
        CHECK(col->topological_in(g));
    }
}

TEST_CASE("profiles beyond enumeration scale stop at the budget") {
    Rng rng(99);
    Graph big = gen_erdos_renyi(26, Rational(Int(1), Int(2)), rng);
    Budget tiny{20'000, 0};
    CHECK_THROWS_AS(chromatic_profile(big, tiny), error);
}

TEST_CASE("ord sets stay exact on long cycles") {
    Budget bud;
    auto ords = graph_ord_vectors(cycle_graph(60), 3, ColourKind::proper, bud);
    CHECK(!ords.empty());
    // Every ord of a proper colouring has all classes independent-set sized.
    for (const auto& o : ords) {
        CHECK(o[0] + o[1] + o[2] == 60);
        for (int c = 0; c < 3; ++c) CHECK(o[c] <= 30);
    }
    auto mid = ords[ords.size() / 2];
    auto col = colouring_with_ord(cycle_graph(60), 3, mid, ColourKind::proper, bud);
    REQUIRE(col.has_value());
    CHECK(col->proper_in(cycle_graph(60)));
    CHECK(col->ord() == mid);
}
