#include <catch_amalgamated.hpp>

#include "tiling/allocation.hpp"
#include "tiling/generators.hpp"

using namespace tiling;

TEST_CASE("apply_incidence matches naive per-tile summation") {
    Graph host = complete_graph(4);
    auto guest = uniform_guest(complete_graph(2), 3);
    AllocationContext ctx(guest, host);

    AllocationVector empty;
    auto zero = apply_incidence(ctx, empty);
    CHECK(zero == std::vector<long long>(4, 0));

    AllocationVector one;
    one.add(0, {0, 1}, 1);
    auto load = apply_incidence(ctx, one);
    CHECK(load == std::vector<long long>{1, 1, 0, 0});

    // Random allocation vs naive recomputation.
    Rng rng(5);
    AllocationVector u;
    std::map<std::pair<int, std::vector<Vertex>>, long long> naive;
    for (int it = 0; it < 10; ++it) {
        Vertex a = static_cast<Vertex>(rng.below(4)), b = static_cast<Vertex>(rng.below(4));
        if (a == b) continue;
        u.add(0, {a, b}, 1);
        naive[{0, {a, b}}] += 1;
    }
    std::vector<long long> expect(4, 0);
    for (auto& [key, cnt] : naive)
        for (Vertex t : key.second) expect[t] += cnt;
    CHECK(apply_incidence(ctx, u) == expect);
}

TEST_CASE("weights_to_flow builds conserving flows") {
    auto f1 = weights_to_flow(complete_graph(2), {1, -1});
    CHECK(f1.value(1, 0) == 1);
    auto f0 = weights_to_flow(cycle_graph(5), {0, 0, 0, 0, 0});
    CHECK(f0.values.empty());
    auto f2 = weights_to_flow(complete_graph(3), {2, -1, -1});
    CHECK(f2.antisymmetric());
    CHECK(flow_conserves(complete_graph(3), f2, {2, -1, -1}));
    for (auto& [uv, val] : f2.values) CHECK(std::llabs(val) <= 4);
    CHECK_THROWS_AS(weights_to_flow(complete_graph(3), {1, 0, 0}), error);
    CHECK_THROWS_AS(weights_to_flow(Graph::disjoint_union(complete_graph(2), complete_graph(2)),
                                    {1, -1, 0, 0}),
                    error);
}

TEST_CASE("surjectivity witnesses round-trip") {
    Graph host = complete_graph(3);
    auto guest = uniform_guest(complete_graph(2), 40);
    AllocationContext ctx(guest, host);
    auto t = extract_tight_component(clique_hypergraph(host, 2), 0);
    Budget bud;
    auto built = build_surjective(ctx, t, 3, bud);
    CHECK(verify_surjective_witness(ctx, built.u, t, 3, built.witness));
    auto chk = check_surjective(ctx, built.u, t, 3);
    CHECK(chk.ok);
    CHECK(!chk.greedy_failure);

    // Empty allocation: trivially surjective at s = 0, refused at s >= 1.
    auto zero = check_surjective(ctx, AllocationVector{}, t, 0);
    CHECK(zero.ok);
    auto one = check_surjective(ctx, AllocationVector{}, t, 1);
    CHECK(!one.ok);
    CHECK(one.greedy_failure);

    // Insufficient guest mass reports the deficit.
    AllocationContext small(uniform_guest(complete_graph(2), 2), host);
    Budget bud2;
    CHECK_THROWS_AS(build_surjective(small, t, 5, bud2), error);
}

TEST_CASE("flow_repair keeps the matrix identity exactly") {
    Graph host = complete_graph(4);
    auto t = extract_tight_component(clique_hypergraph(host, 3), 0);
    long long s = 1, sprime = 2 * 4 * (4 * s + 3);
    auto guest = uniform_guest(complete_graph(3), static_cast<int>(sprime) * 12 + 16);
    AllocationContext ctx(guest, host);
    Budget bud;
    auto built = build_surjective(ctx, t, sprime, bud);

    SECTION("b = 0 keeps the allocation") {
        auto rep = flow_repair(ctx, t, t.reach[0], {0, 0, 0, 0}, built.u, built.witness, s, sprime);
        CHECK(rep.w.entries == built.u.entries);
    }
    SECTION("single transfer") {
        std::vector<long long> b{1, -1, 0, 0};
        auto rep = flow_repair(ctx, t, t.reach[0], b, built.u, built.witness, s, sprime);
        CHECK(load_difference(ctx, built.u, rep.w) == b);
        CHECK(verify_surjective_witness(ctx, rep.w, t, sprime / 2, rep.witness));
    }
    SECTION("support violations are rejected") {
        // Supported outside the reachability component: restrict the class.
        std::vector<Vertex> fake_class{0, 1};
        std::vector<long long> b{0, 0, 1, -1};
        CHECK_THROWS_AS(flow_repair(ctx, t, fake_class, b, built.u, built.witness, s, sprime),
                        error);
    }
    SECTION("precondition arithmetic is checked") {
        CHECK_THROWS_AS(
            flow_repair(ctx, t, t.reach[0], {1, -1, 0, 0}, built.u, built.witness, s, 8), error);
    }
}

TEST_CASE("flow repair crosses reachability classes on tripartite hosts") {
    // K_{2,2,2}: one tight component, three reachability classes (the
    // parts); transfers stay inside a class.
    Graph host = complete_multipartite({2, 2, 2});
    auto t = extract_tight_component(clique_hypergraph(host, 3), 0);
    REQUIRE(t.reach.size() == 3);
    long long s = 1, sprime = 2 * 6 * (6 * s + 3);
    auto guest = uniform_guest(complete_graph(3),
                               static_cast<int>(sprime) * static_cast<int>(t.edges.size()) * 3 + 8);
    AllocationContext ctx(guest, host);
    Budget bud{50'000'000, 0};
    auto built = build_surjective(ctx, t, sprime, bud);
    for (const auto& cls : t.reach) {
        REQUIRE(cls.size() == 2);
        std::vector<long long> b(host.n(), 0);
        b[cls[0]] = 1;
        b[cls[1]] = -1;
        auto rep = flow_repair(ctx, t, cls, b, built.u, built.witness, s, sprime);
        CHECK(load_difference(ctx, built.u, rep.w) == b);
        CHECK(verify_surjective_witness(ctx, rep.w, t, sprime / 2, rep.witness));
    }
}

TEST_CASE("allocate_tight fixes residues at e0 via the flexi witness") {
    Graph host = complete_graph(4);
    auto t = extract_tight_component(clique_hypergraph(host, 3), 0);
    long long s = 1;
    long long sprime = 8 * 4 * (4 * 4 * s + 3);
    int reserve = static_cast<int>(sprime) * 12 + 8;
    std::vector<Graph> tiles(reserve, complete_graph(3));
    int wcount = 3 * 8;
    for (int i = 0; i < wcount; ++i) tiles.push_back(empty_graph(1));
    TiledGuest guest(tiles);
    AllocationContext ctx(guest, host);
    Budget bud;
    auto built = build_surjective(ctx, t, sprime, bud);
    std::vector<int> w_tiles;
    for (int i = reserve; i < guest.tile_count(); ++i) w_tiles.push_back(i);
    auto cert = certify_flexi(guest.subtiling(w_tiles), ColourKind::proper, 3, 4, 0);
    REQUIRE(cert.status == SearchStatus::found);

    SECTION("c = 0 keeps u") {
        auto res = allocate_tight(ctx, t, t.edges[0], built.u, built.witness, sprime, w_tiles,
                                  *cert.certificate, {0, 0, 0, 0});
        CHECK(load_difference(ctx, res.u, res.w) == std::vector<long long>(4, 0));
    }
    SECTION("a two-vertex move is exact") {
        std::vector<long long> c{1, 0, -1, 0};
        auto res = allocate_tight(ctx, t, t.edges[0], built.u, built.witness, sprime, w_tiles,
                                  *cert.certificate, c);
        CHECK(load_difference(ctx, res.u, res.w) == c);
    }
    SECTION("unbalanced demands are rejected") {
        CHECK_THROWS_AS(allocate_tight(ctx, t, t.edges[0], built.u, built.witness, sprime, w_tiles,
                                       *cert.certificate, {1, 0, 0, 0}),
                        error);
    }
}

TEST_CASE("balanced_partition meets the deviation bound") {
    std::vector<std::vector<long long>> same(12, {1, 0});
    auto bp = balanced_partition(same, 4, 0);
    CHECK(bp.deviation == Rational(0));
    auto bp1 = balanced_partition(same, 1, 0);
    CHECK(bp1.deviation == Rational(0));

    Rng rng(3);
    std::vector<std::vector<long long>> xs;
    long long n = 0;
    for (int i = 0; i < 200; ++i) {
        std::vector<long long> x{rng.below(5), rng.below(5), rng.below(5)};
        for (auto v : x) n += v;
        xs.push_back(x);
    }
    auto bp4 = balanced_partition(xs, 4, 1);
    CHECK(bp4.deviation <= Rational(Int(n), Int(16)));
}

TEST_CASE("allocate_to_blowup produces validated embeddings") {
    SECTION("two edges into the blow-up of one edge") {
        BlowupHost host{complete_graph(2), 2};
        auto h = uniform_guest(complete_graph(2), 2);
        auto res = allocate_to_blowup(h, host, Rational(2), Rational(0));
        CHECK(validate_embedding(h, host.expand(), res.embedding));
        for (auto l : res.loads) CHECK(l <= 2);
    }
    SECTION("triangles into a blow-up of a triangle tiling") {
        Graph reduced = Graph::disjoint_union(complete_graph(3), complete_graph(3));
        BlowupHost host{reduced, 5};
        auto h = uniform_guest(complete_graph(3), 9);
        auto res = allocate_to_blowup(h, host, Rational(3), Rational(Int(1), Int(10)));
        CHECK(validate_embedding(h, host.expand(), res.embedding));
    }
    SECTION("crit mismatch is an error") {
        BlowupHost host{bottle_graph(3, 1, 2), 4};
        CHECK_THROWS_AS(allocate_to_blowup(uniform_guest(complete_graph(3), 2), host,
                                           Rational(Int(5), Int(2)), Rational(Int(1), Int(10))),
                        error);
    }
    SECTION("oversize guests are rejected") {
        BlowupHost host{complete_graph(2), 2};
        CHECK_THROWS_AS(allocate_to_blowup(uniform_guest(complete_graph(2), 3), host, Rational(2),
                                           Rational(Int(1), Int(10))),
                        error);
    }
}

TEST_CASE("blow-up allocation survives guests at the rho cap") {
    // Guests filled to exactly (1-rho) n with chunky mixed tiles force the
    // capacity-aware repair and its first-fit rebuild.
    Rng rng(1122334455);
    int embedded = 0;
    for (int it = 0; it < 150; ++it) {
        int which = it % 4;
        Rational chi = which == 0   ? Rational(2)
                       : which == 1 ? Rational(Int(5), Int(2))
                       : which == 2 ? Rational(3)
                                    : Rational(Int(7), Int(3));
        Graph bottle = bottle_for(chi);
        int copies = 2 + static_cast<int>(rng.below(5));
        int m = 6 + static_cast<int>(rng.below(7));
        Graph reduced(0);
        for (int c = 0; c < copies; ++c) reduced = Graph::disjoint_union(reduced, bottle);
        BlowupHost host{reduced, m};
        long long cap = static_cast<long long>(host.order()) * 9 / 10;
        std::vector<Graph> pool{complete_graph(2), path_graph(3), empty_graph(1), path_graph(4),
                                path_graph(5)};
        if (chi >= Rational(Int(5), Int(2))) pool.push_back(cycle_graph(5));
        if (chi >= Rational(3)) pool.push_back(complete_graph(3));
        std::vector<Graph> tiles;
        long long used = 0;
        for (;;) {
            const Graph& t = pool[static_cast<size_t>(rng.below((long long)pool.size()))];
            if (used + t.n() > cap) break;
            tiles.push_back(t);
            used += t.n();
        }
        while (used < cap) {
            tiles.push_back(empty_graph(1));
            ++used;
        }
        TiledGuest h(tiles);
        if (guest_profile(h).crit > chi) continue;
        auto res = allocate_to_blowup(h, host, chi, Rational(Int(1), Int(10)), rng.raw());
        REQUIRE(validate_embedding(h, host.expand(), res.embedding));
        ++embedded;
    }
    CHECK(embedded > 100);
}
