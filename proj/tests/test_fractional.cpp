#include <catch_amalgamated.hpp>

#include "tiling/fractional.hpp"
#include "tiling/generators.hpp"
#include "tiling/lp.hpp"

using namespace tiling;

TEST_CASE("simplex survives the classic cycling instance") {
    // Beale's degenerate LP cycles under naive pivoting; Bland's rule must
    // terminate at the optimum 1/20.
    std::vector<std::vector<std::pair<int, Rational>>> cols(4);
    auto r = [](long long p, long long q = 1) { return Rational(Int(p), Int(q)); };
    cols[0] = {{0, r(1, 4)}, {1, r(1, 2)}};
    cols[1] = {{0, r(-60)}, {1, r(-90)}};
    cols[2] = {{0, r(-1, 25)}, {1, r(-1, 50)}, {2, r(1)}};
    cols[3] = {{0, r(9)}, {1, r(3)}};
    std::vector<Rational> rhs{r(0), r(0), r(1)};
    std::vector<Rational> obj{r(3, 4), r(-150), r(1, 50), r(-6)};
    auto res = solve_packing_lp(3, cols, rhs, obj);
    CHECK(res.objective == r(1, 20));
}

TEST_CASE("homomorphism enumeration") {
    CHECK(enumerate_homs(complete_graph(2), complete_graph(3)).size() == 6);
    CHECK(enumerate_homs(complete_graph(3), cycle_graph(5)).empty());
    // Brute-force oracle over 3^4 maps filtering edge preservation.
    long long naive = 0;
    Graph c4 = cycle_graph(4), k3 = complete_graph(3);
    for (int a = 0; a < 81; ++a) {
        int digits[4], x = a;
        for (int i = 0; i < 4; ++i) digits[i] = x % 3, x /= 3;
        bool hom = true;
        for (auto [u, v] : c4.edges())
            if (!k3.has_edge(digits[u], digits[v])) hom = false;
        if (hom) ++naive;
    }
    CHECK(naive == 18);
    CHECK(static_cast<long long>(enumerate_homs(c4, k3).size()) == naive);

    HomOptions capped;
    capped.cap = 3;
    CHECK_THROWS_AS(enumerate_homs(complete_graph(2), complete_graph(3), capped), error);
    HomOptions inj;
    inj.injective_only = true;
    CHECK(enumerate_homs(empty_graph(2), complete_graph(3), inj).size() == 6);
}

TEST_CASE("maximum fractional tilings") {
    CHECK(max_fractional_tiling(cycle_graph(4), complete_graph(2)).weight() == Rational(4));
    CHECK(max_fractional_tiling(cycle_graph(5), complete_graph(2)).weight() == Rational(5));
    CHECK(max_fractional_tiling(complete_bipartite(3, 3), complete_graph(3)).weight() ==
          Rational(0));
    // Degree hypothesis instance: delta(G) >= (1 - 1/crit) n forces perfect.
    auto lpr = fractional_tiling_lp(complete_graph(5), bottle_graph(3, 1, 2));
    CHECK(lpr.tiling.weight() == Rational(5));
}

TEST_CASE("minimum fractional covers dualise exactly") {
    auto c1 = min_fractional_cover(complete_graph(3), complete_graph(3));
    CHECK(c1.size() == Rational(1));
    auto r2 = fractional_tiling_lp(cycle_graph(5), complete_graph(2));
    CHECK(r2.cover.size() == Rational(Int(5), Int(2)));
    CHECK(r2.cover.size() * Int(2) == r2.tiling.weight());
    CHECK(min_fractional_cover(complete_bipartite(3, 3), complete_graph(3)).size() == Rational(0));
}

TEST_CASE("tiling composition") {
    // Identity-style composition keeps the outer tiling.
    FractionalTiling inner;
    inner.tile = complete_graph(2);
    inner.homs = {Homomorphism{{0, 1}}};
    inner.weights = {Rational(1)};
    auto outer = max_fractional_tiling(complete_graph(4), complete_graph(2));
    auto same = compose_tilings(outer, complete_graph(2), inner);
    CHECK(same.weight() == outer.weight());

    // G=K_4, B=K_2, F = two isolated vertices.
    FractionalTiling iso;
    iso.tile = empty_graph(2);
    iso.homs = {Homomorphism{{0, 1}}};
    iso.weights = {Rational(1)};
    auto comp = compose_tilings(outer, complete_graph(2), iso);
    CHECK(comp.weight() == outer.weight());

    // Composing with a perfect inner tiling never loses weight, so the
    // B_2 optimum dominates the composed B_{5/2} route.
    Graph host = complete_graph(5);
    auto outer52 = max_fractional_tiling(host, bottle_for(Rational(Int(5), Int(2))));
    auto inner2 = fractional_tiling_lp(bottle_for(Rational(Int(5), Int(2))), complete_graph(2));
    REQUIRE(inner2.tiling.weight() == Rational(5));  // perfect on K_{1,2,2}
    auto composed = compose_tilings(outer52, bottle_for(Rational(Int(5), Int(2))), inner2.tiling);
    CHECK(composed.weight() == outer52.weight());
    auto direct2 = max_fractional_tiling(host, complete_graph(2));
    CHECK(direct2.weight() >= composed.weight());

    // Imperfect inner tilings are rejected.
    FractionalTiling bad;
    bad.tile = complete_graph(2);
    bad.homs = {Homomorphism{{0, 1}}};
    bad.weights = {Rational(Int(1), Int(2))};
    CHECK_THROWS_AS(compose_tilings(outer, complete_graph(2), bad), error);
}

TEST_CASE("multipartite column reduction matches full enumeration") {
    // For complete multipartite tiles the LP runs over clique homs only; the
    // optimum and the dual's feasibility over all homomorphisms must match a
    // solve over the full enumeration.
    auto full_lp_weight = [](const Graph& g, const Graph& f) {
        auto homs = enumerate_homs(f, g, HomOptions{500'000, false});
        int n = g.n();
        std::vector<std::vector<std::pair<int, Rational>>> cols;
        for (const auto& h : homs) {
            std::map<int, int> cnt;
            for (Vertex t : h.map) ++cnt[t];
            std::vector<std::pair<int, Rational>> col;
            for (auto [v, c] : cnt) col.emplace_back(v, Rational(Int(c)));
            cols.push_back(col);
        }
        if (homs.empty()) return Rational(0);
        std::vector<Rational> rhs(n, Rational(1)), obj(homs.size(), Rational(1));
        return solve_packing_lp(n, cols, rhs, obj).objective * Int(f.n());
    };
    Rng rng(12345);
    std::vector<Graph> fs{complete_graph(2), bottle_graph(3, 1, 2), complete_bipartite(1, 2),
                          empty_graph(2)};
    for (int it = 0; it < 20; ++it) {
        int n = 2 + static_cast<int>(rng.below(4));
        Graph g = gen_erdos_renyi(n, Rational(Int(1), Int(2)), rng);
        const Graph& f = fs[it % fs.size()];
        auto reduced = fractional_tiling_lp(g, f);
        CHECK(reduced.tiling.weight() == full_lp_weight(g, f));
        for (const auto& h : enumerate_homs(f, g, HomOptions{500'000, false})) {
            Rational s(0);
            for (Vertex t : h.map) s += reduced.cover.values[t];
            CHECK(s >= Rational(1));
        }
    }
}

TEST_CASE("bounded degree covers") {
    // Disjoint copies with the integral tiling: multiplicity one.
    Graph r = Graph::disjoint_union(complete_graph(2), complete_graph(2));
    FractionalTiling integral;
    integral.tile = complete_graph(2);
    integral.homs = {Homomorphism{{0, 1}}, Homomorphism{{2, 3}}};
    integral.weights = {Rational(1), Rational(1)};
    auto cov = bounded_degree_cover(r, complete_graph(2), integral, Rational(0));
    CHECK(cov.ok);
    CHECK(cov.max_multiplicity == 1);
    CHECK(cov.covered == 4);

    // K_4 with the LP matching: two images, disjoint.
    auto t4 = max_fractional_tiling(complete_graph(4), complete_graph(2));
    auto cov4 = bounded_degree_cover(complete_graph(4), complete_graph(2), t4, Rational(0));
    CHECK(cov4.ok);
    CHECK(cov4.images.size() == 2);
    CHECK(cov4.max_multiplicity == 1);

    // C_5 with the half-integral tiling: full coverage, multiplicity within
    // the k^2+1 edge-cover bound.
    auto t5 = max_fractional_tiling(cycle_graph(5), complete_graph(2));
    auto cov5 = bounded_degree_cover(cycle_graph(5), complete_graph(2), t5, Rational(0));
    CHECK(cov5.ok);
    CHECK(cov5.covered == 5);
    CHECK(cov5.max_multiplicity <= 2 * 2 + 1);

    CHECK_THROWS_AS(
        bounded_degree_cover(cycle_graph(5), complete_graph(2), t5, Rational(Int(1), Int(2))),
        error);  // rho >= 1/f^6
}
