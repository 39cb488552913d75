#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "tiling/error.hpp"
#include "tiling/graph.hpp"

namespace tiling {

// Edge-preserving vertex map from a source tile into a target graph.
struct Homomorphism {
    std::vector<Vertex> map;  // source vertex -> target vertex

    int preimage_count(Vertex target) const {
        int c = 0;
        for (Vertex t : map)
            if (t == target) ++c;
        return c;
    }

    bool valid(const Graph& source, const Graph& target) const {
        if (map.size() != static_cast<size_t>(source.n())) return false;
        for (Vertex t : map)
            if (t < 0 || t >= target.n()) return false;
        for (auto [u, v] : source.edges())
            if (!target.has_edge(map[u], map[v])) return false;
        return true;
    }
};

struct HomOptions {
    long long cap = 200'000;
    bool injective_only = false;
};

// All homomorphisms from f to g, each once, lexicographic in the map vector.
inline std::vector<Homomorphism> enumerate_homs(const Graph& f, const Graph& g,
                                                const HomOptions& opt = {}) {
    std::vector<Homomorphism> out;
    std::vector<Vertex> map(f.n(), -1);
    std::vector<char> used(g.n(), 0);
    std::function<void(int)> rec = [&](int v) {
        if (v == f.n()) {
            if (static_cast<long long>(out.size()) >= opt.cap)
                throw error(errc::capped,
                            "homomorphism cap " + std::to_string(opt.cap) + " exceeded");
            out.push_back(Homomorphism{map});
            return;
        }
        for (Vertex t = 0; t < g.n(); ++t) {
            if (opt.injective_only && used[t]) continue;
            bool ok = true;
            for (Vertex u : f.neighbours(v))
                if (u < v && !g.has_edge(map[u], t)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            map[v] = t;
            used[t] = 1;
            rec(v + 1);
            used[t] = 0;
            map[v] = -1;
        }
    };
    rec(0);
    return out;
}

}  // namespace tiling
