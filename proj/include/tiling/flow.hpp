#pragma once

#include <map>
#include <queue>
#include <vector>

#include "tiling/error.hpp"
#include "tiling/graph.hpp"

namespace tiling {

// Antisymmetric integer edge labelling.
struct Flow {
    std::map<std::pair<Vertex, Vertex>, long long> values;

    long long value(Vertex u, Vertex v) const {
        auto it = values.find({u, v});
        return it == values.end() ? 0 : it->second;
    }

    void add(Vertex u, Vertex v, long long amount) {
        values[{u, v}] += amount;
        values[{v, u}] -= amount;
    }

    bool antisymmetric() const {
        for (const auto& [uv, f] : values)
            if (value(uv.second, uv.first) != -f) return false;
        return true;
    }
};

// Builds a flow with net inflow w(v) at every vertex and |f| <= ||w||_1 on
// every edge, by routing one unit at a time from a deficit vertex to a
// surplus vertex along a BFS shortest path.
inline Flow weights_to_flow(const Graph& g, const std::vector<long long>& w) {
    if (!g.connected()) throw error(errc::precondition, "flow host must be connected");
    long long sum = 0;
    for (long long x : w) sum += x;
    if (sum != 0) throw error(errc::precondition, "weights must sum to zero");

    std::vector<long long> need(w);  // remaining net inflow requirement
    Flow f;
    for (;;) {
        Vertex src = -1, dst = -1;
        for (Vertex v = 0; v < g.n(); ++v)
            if (need[v] < 0) {
                src = v;
                break;
            }
        if (src < 0) break;
        for (Vertex v = 0; v < g.n(); ++v)
            if (need[v] > 0) {
                dst = v;
                break;
            }
        // BFS shortest path src -> dst, neighbours in ascending order.
        std::vector<Vertex> parent(g.n(), -1);
        std::vector<char> seen(g.n(), 0);
        std::queue<Vertex> q;
        q.push(src);
        seen[src] = 1;
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            if (u == dst) break;
            for (Vertex v : g.neighbours(u))
                if (!seen[v]) {
                    seen[v] = 1;
                    parent[v] = u;
                    q.push(v);
                }
        }
        Vertex cur = dst;
        while (cur != src) {
            f.add(parent[cur], cur, 1);
            cur = parent[cur];
        }
        ++need[src];
        --need[dst];
    }
    return f;
}

inline bool flow_conserves(const Graph& g, const Flow& f, const std::vector<long long>& w) {
    for (Vertex v = 0; v < g.n(); ++v) {
        long long inflow = 0;
        for (Vertex u : g.neighbours(v)) inflow += f.value(u, v);
        if (inflow != w[v]) return false;
    }
    return true;
}

}  // namespace tiling
