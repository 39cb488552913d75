#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "tiling/error.hpp"
#include "tiling/graph.hpp"
#include "tiling/guest.hpp"

namespace tiling {

// Injective edge-preserving map of a guest into a host.
struct EmbeddingWitness {
    std::vector<Vertex> map;  // guest vertex (global index) -> host vertex
};

inline bool validate_embedding(const TiledGuest& h, const Graph& g, const EmbeddingWitness& w) {
    if (w.map.size() != static_cast<size_t>(h.order())) return false;
    std::vector<char> used(g.n(), 0);
    for (Vertex t : w.map) {
        if (t < 0 || t >= g.n() || used[t]) return false;
        used[t] = 1;
    }
    for (int i = 0; i < h.tile_count(); ++i)
        for (auto [u, v] : h.tile(i).edges())
            if (!g.has_edge(w.map[u + h.offset(i)], w.map[v + h.offset(i)])) return false;
    return true;
}

enum class SearchStatus { found, none, undecided };

struct EmbedResult {
    SearchStatus status = SearchStatus::none;
    std::optional<EmbeddingWitness> witness;
    long long nodes = 0;
};

// Exhaustive backtracking embedding search, tiles in decreasing order of
// size, vertices inside a tile in BFS order so earlier neighbours prune.
inline EmbedResult brute_embed(const TiledGuest& h, const Graph& g, long long budget = 10'000'000) {
    EmbedResult res;
    if (h.order() > g.n()) {
        res.status = SearchStatus::none;
        return res;
    }
    std::vector<int> tile_order(h.tile_count());
    std::iota(tile_order.begin(), tile_order.end(), 0);
    std::stable_sort(tile_order.begin(), tile_order.end(),
                     [&](int a, int b) { return h.tile(a).n() > h.tile(b).n(); });

    struct TilePlan {
        int tile;
        std::vector<Vertex> order;
        std::vector<std::vector<int>> earlier;  // indices into order
    };
    std::vector<TilePlan> plans;
    for (int t : tile_order) {
        const Graph& tile = h.tile(t);
        TilePlan plan;
        plan.tile = t;
        std::vector<char> seen(tile.n(), 0);
        for (Vertex s = 0; s < tile.n(); ++s) {
            if (seen[s]) continue;
            std::vector<Vertex> q{s};
            seen[s] = 1;
            for (size_t head = 0; head < q.size(); ++head) {
                plan.order.push_back(q[head]);
                for (Vertex v : tile.neighbours(q[head]))
                    if (!seen[v]) seen[v] = 1, q.push_back(v);
            }
        }
        std::vector<int> pos(tile.n(), -1);
        for (size_t i = 0; i < plan.order.size(); ++i) pos[plan.order[i]] = static_cast<int>(i);
        plan.earlier.resize(plan.order.size());
        for (size_t i = 0; i < plan.order.size(); ++i)
            for (Vertex u : tile.neighbours(plan.order[i]))
                if (pos[u] < static_cast<int>(i)) plan.earlier[i].push_back(pos[u]);
        plans.push_back(std::move(plan));
    }

    std::vector<Vertex> assignment(h.order(), -1);
    std::vector<char> used(g.n(), 0);
    bool undecided = false;

    std::function<bool(size_t)> rec_tile = [&](size_t pi) -> bool {
        if (pi == plans.size()) return true;
        const TilePlan& plan = plans[pi];
        std::vector<Vertex> local(plan.order.size(), -1);
        std::function<bool(size_t)> go = [&](size_t vi) -> bool {
            if (vi == plan.order.size()) return rec_tile(pi + 1);
            if (++res.nodes > budget) {
                undecided = true;
                return false;
            }
            for (Vertex t = 0; t < g.n(); ++t) {
                if (used[t]) continue;
                bool ok = true;
                for (int e : plan.earlier[vi])
                    if (!g.has_edge(local[e], t)) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                used[t] = 1;
                local[vi] = t;
                assignment[h.offset(plan.tile) + plan.order[vi]] = t;
                if (go(vi + 1)) return true;
                if (undecided) return false;
                assignment[h.offset(plan.tile) + plan.order[vi]] = -1;
                local[vi] = -1;
                used[t] = 0;
            }
            return false;
        };
        return go(0);
    };

    bool found = rec_tile(0);
    if (found) {
        res.status = SearchStatus::found;
        res.witness = EmbeddingWitness{assignment};
    } else {
        res.status = undecided ? SearchStatus::undecided : SearchStatus::none;
    }
    return res;
}

// true iff every value in [lo, hi] is a subset sum of x; bitset DP.
inline bool subset_sum_dp(const std::vector<int>& x, long long lo, long long hi) {
    long long total = 0;
    for (int v : x) {
        if (v < 0) throw error(errc::precondition, "subset-sum values must be nonnegative");
        total += v;
    }
    if (lo < 0 || hi > total || lo > hi) return false;
    size_t words = static_cast<size_t>(total / 64 + 1);
    std::vector<std::uint64_t> dp(words, 0);
    dp[0] = 1;
    for (int v : x) {
        if (v == 0) continue;
        size_t word_off = static_cast<size_t>(v) >> 6;
        int bit_off = v & 63;
        for (size_t w = words; w-- > 0;) {
            std::uint64_t x0 = dp[w];
            if (!x0) continue;
            size_t dw = w + word_off;
            if (dw < words) dp[dw] |= x0 << bit_off;
            if (bit_off && dw + 1 < words) dp[dw + 1] |= x0 >> (64 - bit_off);
        }
    }
    for (long long s = lo; s <= hi; ++s)
        if (!((dp[static_cast<size_t>(s) >> 6] >> (s & 63)) & 1u)) return false;
    return true;
}

// All subset sums of x, sorted.
inline std::vector<long long> subset_sums(const std::vector<int>& x) {
    long long total = 0;
    for (int v : x) total += v;
    std::vector<char> dp(static_cast<size_t>(total) + 1, 0);
    dp[0] = 1;
    for (int v : x)
        for (long long s = total; s >= v && v > 0; --s)
            if (dp[static_cast<size_t>(s - v)]) dp[static_cast<size_t>(s)] = 1;
    std::vector<long long> out;
    for (long long s = 0; s <= total; ++s)
        if (dp[static_cast<size_t>(s)]) out.push_back(s);
    return out;
}

// Longest run [z, z+len-1] of consecutive subset sums, returned as (z, len).
inline std::pair<long long, long long> longest_sum_interval(const std::vector<int>& x) {
    auto sums = subset_sums(x);
    long long best_z = 0, best_len = 0, z = 0, len = 0;
    for (size_t i = 0; i < sums.size(); ++i) {
        if (i == 0 || sums[i] != sums[i - 1] + 1) {
            z = sums[i];
            len = 1;
        } else {
            ++len;
        }
        if (len > best_len) {
            best_len = len;
            best_z = z;
        }
    }
    return {best_z, best_len};
}

// Exhaustive perfect F-tiling decision: the lowest uncovered vertex must be
// covered by the next copy, pinned to each tile vertex in turn.
struct PerfectTilingResult {
    SearchStatus status = SearchStatus::none;
    long long nodes = 0;
};

inline PerfectTilingResult brute_perfect_tiling(const Graph& g, const Graph& f,
                                                long long budget = 10'000'000) {
    PerfectTilingResult res;
    if (f.n() == 0 || g.n() % f.n() != 0) {
        res.status = SearchStatus::none;
        return res;
    }
    std::vector<Vertex> order;
    {
        std::vector<char> seen(f.n(), 0);
        for (Vertex s = 0; s < f.n(); ++s) {
            if (seen[s]) continue;
            std::vector<Vertex> q{s};
            seen[s] = 1;
            for (size_t head = 0; head < q.size(); ++head) {
                order.push_back(q[head]);
                for (Vertex v : f.neighbours(q[head]))
                    if (!seen[v]) seen[v] = 1, q.push_back(v);
            }
        }
    }
    std::vector<int> pos(f.n(), -1);
    for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);

    std::vector<char> used(g.n(), 0);
    bool over_budget = false;

    std::function<bool(int)> cover = [&](int covered_count) -> bool {
        if (covered_count == g.n()) return true;
        if (over_budget) return false;
        Vertex anchor = 0;
        while (used[anchor]) ++anchor;
        std::vector<Vertex> local(f.n(), -1);
        for (Vertex a = 0; a < f.n(); ++a) {
            // Pin tile vertex a onto the anchor, place the rest.
            std::function<bool(size_t)> place = [&](size_t vi) -> bool {
                if (vi == order.size()) return cover(covered_count + f.n());
                if (++res.nodes > budget) {
                    over_budget = true;
                    return false;
                }
                Vertex fv = order[vi];
                if (fv == a) {
                    for (Vertex u : f.neighbours(fv))
                        if (local[u] >= 0 && !g.has_edge(local[u], anchor)) return false;
                    local[fv] = anchor;
                    if (place(vi + 1)) return true;
                    local[fv] = -1;
                    return false;
                }
                for (Vertex t = anchor + 1; t < g.n(); ++t) {
                    // Vertices below the anchor are always covered already.
                    if (used[t]) continue;
                    bool ok = true;
                    for (Vertex u : f.neighbours(fv))
                        if (local[u] >= 0 && !g.has_edge(local[u], t)) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                    used[t] = 1;
                    local[fv] = t;
                    if (place(vi + 1)) return true;
                    if (over_budget) {
                        local[fv] = -1;
                        used[t] = 0;
                        return false;
                    }
                    local[fv] = -1;
                    used[t] = 0;
                }
                return false;
            };
            used[anchor] = 1;
            if (place(0)) return true;
            used[anchor] = 0;
            local.assign(f.n(), -1);
            if (over_budget) return false;
        }
        return false;
    };

    bool found = cover(0);
    res.status = found ? SearchStatus::found
                       : (over_budget ? SearchStatus::undecided : SearchStatus::none);
    return res;
}

}  // namespace tiling
