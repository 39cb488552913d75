#pragma once

#include <random>
#include <string>
#include <vector>

#include "tiling/chromatic.hpp"
#include "tiling/error.hpp"
#include "tiling/graph.hpp"
#include "tiling/guest.hpp"
#include "tiling/rational.hpp"

namespace tiling {

// All randomness funnels through one seeded engine; rational probabilities
// are decided exactly by a modular draw so runs replay bit-for-bit.
class Rng {
public:
    explicit Rng(unsigned long long seed) : eng_(seed) {}

    unsigned long long raw() { return eng_(); }

    long long below(long long m) { return static_cast<long long>(eng_() % static_cast<unsigned long long>(m)); }

    bool chance(const Rational& p) {
        long long den = to_ll(p.denominator());
        long long num = to_ll(p.numerator());
        return below(den) < num;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<size_t>(below(static_cast<long long>(i)))]);
    }

private:
    std::mt19937_64 eng_;
};

inline Graph gen_erdos_renyi(int n, const Rational& p, Rng& rng) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.chance(p)) g.add_edge(u, v);
    return g;
}

inline Graph gen_disjoint_cliques(const std::vector<int>& sizes) {
    Graph g(0);
    for (int s : sizes) g = Graph::disjoint_union(g, complete_graph(s));
    return g;
}

// Erdos-Renyi conditioned on a minimum degree, rejection-sampled.
inline Graph gen_min_degree(int n, const Rational& p, int delta, Rng& rng, int retries = 500) {
    for (int it = 0; it < retries; ++it) {
        Graph g = gen_erdos_renyi(n, p, rng);
        if (g.min_degree() >= delta) return g;
    }
    throw error(errc::precondition,
                "REJECTED: no graph with min degree " + std::to_string(delta) + " after retries");
}

inline Graph gen_random_permutation_of(const Graph& g, Rng& rng) {
    std::vector<Vertex> perm(g.n());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    return g.relabelled(perm);
}

// Tile catalogue for guest generation.
inline Graph tile_by_name(const std::string& name) {
    auto num = [&](size_t from, size_t to) { return std::stoi(name.substr(from, to - from)); };
    if (name.size() >= 2 && name[0] == 'K' && name.find(',') == std::string::npos)
        return complete_graph(num(1, name.size()));
    if (name.size() >= 2 && name[0] == 'C') return cycle_graph(num(1, name.size()));
    if (name.size() >= 2 && name[0] == 'P') return path_graph(num(1, name.size()));
    if (name.size() >= 2 && name[0] == 'E') return empty_graph(num(1, name.size()));
    if (name[0] == 'K' && name.find(',') != std::string::npos) {
        auto comma = name.find(',');
        return complete_bipartite(num(1, comma), num(comma + 1, name.size()));
    }
    if (name.rfind("B", 0) == 0) {
        // Bk.a.b
        auto d1 = name.find('.');
        auto d2 = name.find('.', d1 + 1);
        return bottle_graph(num(1, d1), num(d1 + 1, d2), num(d2 + 1, name.size()));
    }
    throw error(errc::parse, "unknown tile name '" + name + "'");
}

inline TiledGuest gen_guest(const std::vector<std::pair<std::string, int>>& recipe,
                            int max_tile_order = 0) {
    std::vector<Graph> tiles;
    for (const auto& [name, count] : recipe) {
        Graph t = tile_by_name(name);
        if (max_tile_order > 0 && t.n() > max_tile_order)
            throw error(errc::precondition, "tile '" + name + "' exceeds the order bound");
        for (int i = 0; i < count; ++i) tiles.push_back(t);
    }
    return TiledGuest(std::move(tiles));
}

// Fingerprint for report determinism checks (FNV-1a).
inline unsigned long long fnv1a(const std::string& s) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace tiling
