#include <catch_amalgamated.hpp>

#include "tiling/oracles.hpp"
#include "tiling/generators.hpp"

using namespace tiling;

TEST_CASE("brute embedding search") {
    auto ok = brute_embed(uniform_guest(complete_graph(2), 3), complete_bipartite(3, 3));
    REQUIRE(ok.status == SearchStatus::found);
    CHECK(validate_embedding(uniform_guest(complete_graph(2), 3), complete_bipartite(3, 3),
                             *ok.witness));

    CHECK(brute_embed(uniform_guest(complete_graph(4), 1), complete_bipartite(3, 3)).status ==
          SearchStatus::none);

    // Tiny budgets surface as UNDECIDED.
    auto tight = brute_embed(uniform_guest(cycle_graph(4), 2), complete_bipartite(4, 4), 3);
    CHECK(tight.status == SearchStatus::undecided);
}

TEST_CASE("subset sum DP") {
    CHECK(subset_sum_dp({1, 1, 1}, 0, 3));
    CHECK(!subset_sum_dp({2, 2}, 1, 1));
    CHECK(subset_sum_dp({2, 2}, 2, 2));
    CHECK(subset_sum_dp({}, 0, 0));
    CHECK_THROWS_AS(subset_sum_dp({-1}, 0, 0), error);
    auto [z, len] = longest_sum_interval({2, 3});
    CHECK(z == 2);
    CHECK(len == 2);  // {2,3}
}

TEST_CASE("perfect tiling decisions") {
    CHECK(brute_perfect_tiling(complete_graph(6), complete_graph(3)).status ==
          SearchStatus::found);
    CHECK(brute_perfect_tiling(cycle_graph(6), complete_graph(3)).status == SearchStatus::none);
    CHECK(brute_perfect_tiling(complete_graph(7), complete_graph(3)).status ==
          SearchStatus::none);  // divisibility
    CHECK(brute_perfect_tiling(complete_bipartite(2, 4), complete_bipartite(2, 4)).status ==
          SearchStatus::found);
    CHECK(brute_perfect_tiling(complete_bipartite(4, 4), cycle_graph(4)).status ==
          SearchStatus::found);
}

TEST_CASE("parity obstruction for complete bipartite hosts") {
    // Odd sides admit no perfect K_{2,4}-tiling.
    CHECK(brute_perfect_tiling(complete_bipartite(1, 5), complete_bipartite(2, 4)).status ==
          SearchStatus::none);
    CHECK(brute_perfect_tiling(complete_bipartite(3, 3), complete_bipartite(2, 4)).status ==
          SearchStatus::none);
    // Even split works.
    CHECK(brute_perfect_tiling(complete_bipartite(2, 4), complete_bipartite(2, 4)).status ==
          SearchStatus::found);
    // Swapping in the flexi-chromatic pair of K_{1,2}s repairs odd sides.
    TiledGuest repaired(std::vector<Graph>{complete_bipartite(1, 2), complete_bipartite(1, 2)});
    CHECK(brute_embed(repaired, complete_bipartite(3, 3)).status == SearchStatus::found);
}
