#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tiling/error.hpp"
#include "tiling/graph.hpp"
#include "tiling/union_find.hpp"

namespace tiling {

using HyperEdge = std::vector<Vertex>;  // sorted k-set

// k-uniform hypergraph whose edges induce k-cliques of a source graph.
struct CliqueHypergraph {
    int k = 0;
    int n = 0;
    std::vector<HyperEdge> edges;
};

namespace detail {

// Bron-Kerbosch style candidate-set recursion specialised to cliques of
// exactly size k: the candidate set is intersected with each new member's
// neighbourhood and restricted to higher indices, so every k-clique appears
// once, in lexicographic order. (Pivoting would be unsound here; it is a
// maximal-clique optimisation.)
inline void k_cliques_rec(const Graph& g, std::vector<Vertex>& r, const std::vector<Vertex>& p,
                          int k, std::vector<HyperEdge>& out) {
    if (static_cast<int>(r.size()) == k) {
        out.push_back(r);
        return;
    }
    if (r.size() + p.size() < static_cast<size_t>(k)) return;
    for (size_t i = 0; i < p.size(); ++i) {
        Vertex v = p[i];
        std::vector<Vertex> p2;
        for (size_t j2 = i + 1; j2 < p.size(); ++j2)
            if (g.has_edge(p[j2], v)) p2.push_back(p[j2]);
        r.push_back(v);
        k_cliques_rec(g, r, p2, k, out);
        r.pop_back();
    }
}

}  // namespace detail

inline CliqueHypergraph clique_hypergraph(const Graph& g, int k) {
    if (k < 2) throw error(errc::precondition, "clique hypergraph needs k >= 2");
    CliqueHypergraph j;
    j.k = k;
    j.n = g.n();
    std::vector<Vertex> r, p(g.n());
    std::iota(p.begin(), p.end(), 0);
    detail::k_cliques_rec(g, r, p, k, j.edges);
    std::sort(j.edges.begin(), j.edges.end());
    return j;
}

// Buckets of edges sharing each (k-1)-subset; tight adjacency is membership
// in a common bucket.
inline std::map<HyperEdge, std::vector<int>> subset_buckets(const CliqueHypergraph& j) {
    std::map<HyperEdge, std::vector<int>> buckets;
    for (size_t ei = 0; ei < j.edges.size(); ++ei) {
        const auto& e = j.edges[ei];
        for (int drop = 0; drop < j.k; ++drop) {
            HyperEdge s;
            s.reserve(j.k - 1);
            for (int i = 0; i < j.k; ++i)
                if (i != drop) s.push_back(e[i]);
            buckets[s].push_back(static_cast<int>(ei));
        }
    }
    return buckets;
}

// Tight components partition the edge set, loose components partition the
// tight components, and reachability classes partition each tight
// component's vertex set into at most k classes.
struct ComponentDecomposition {
    int k = 0;
    std::vector<std::vector<int>> tight;          // edge indices per tight component
    std::vector<std::vector<int>> loose;          // tight-component ids per loose component
    std::vector<std::vector<std::vector<Vertex>>> reach;  // per tight component, vertex classes
    std::vector<std::vector<Vertex>> tight_vertices;      // per tight component, sorted support
};

inline ComponentDecomposition decompose(const CliqueHypergraph& j) {
    ComponentDecomposition d;
    d.k = j.k;
    int m = static_cast<int>(j.edges.size());
    UnionFind tight_uf(m);
    auto buckets = subset_buckets(j);
    for (const auto& [s, ids] : buckets)
        for (size_t i = 1; i < ids.size(); ++i) tight_uf.unite(ids[0], ids[i]);

    std::map<int, int> tight_id;
    for (int e = 0; e < m; ++e) {
        int root = tight_uf.find(e);
        if (!tight_id.count(root)) {
            tight_id[root] = static_cast<int>(d.tight.size());
            d.tight.push_back({});
        }
        d.tight[tight_id[root]].push_back(e);
    }

    int t = static_cast<int>(d.tight.size());
    d.tight_vertices.resize(t);
    for (int c = 0; c < t; ++c) {
        std::set<Vertex> vs;
        for (int e : d.tight[c]) vs.insert(j.edges[e].begin(), j.edges[e].end());
        d.tight_vertices[c].assign(vs.begin(), vs.end());
    }

    // Loose: tight components sharing a vertex.
    UnionFind loose_uf(t);
    std::map<Vertex, int> first_comp;
    for (int c = 0; c < t; ++c)
        for (Vertex v : d.tight_vertices[c]) {
            auto it = first_comp.find(v);
            if (it == first_comp.end())
                first_comp[v] = c;
            else
                loose_uf.unite(it->second, c);
        }
    std::map<int, int> loose_id;
    for (int c = 0; c < t; ++c) {
        int root = loose_uf.find(c);
        if (!loose_id.count(root)) {
            loose_id[root] = static_cast<int>(d.loose.size());
            d.loose.push_back({});
        }
        d.loose[loose_id[root]].push_back(c);
    }

    // Reachability inside each tight component: union the two leftover
    // vertices of every tight-adjacent edge pair. Bucket members pairwise
    // qualify, so uniting all leftovers of a bucket suffices. A bucket's
    // edges all live in one tight component, and the union-find must be
    // per-component so shared vertices cannot leak merges across components.
    std::vector<int> comp_of_edge(m);
    for (int c = 0; c < t; ++c)
        for (int e : d.tight[c]) comp_of_edge[e] = c;
    std::vector<std::map<Vertex, int>> local(t);  // vertex -> local index
    for (int c = 0; c < t; ++c)
        for (size_t i = 0; i < d.tight_vertices[c].size(); ++i)
            local[c][d.tight_vertices[c][i]] = static_cast<int>(i);
    std::vector<UnionFind> reach_uf;
    reach_uf.reserve(t);
    for (int c = 0; c < t; ++c) reach_uf.emplace_back(static_cast<int>(d.tight_vertices[c].size()));
    for (const auto& [s, ids] : buckets) {
        if (ids.size() < 2) continue;
        int c = comp_of_edge[ids[0]];
        std::vector<int> extras;
        for (int e : ids)
            for (Vertex v : j.edges[e])
                if (!std::binary_search(s.begin(), s.end(), v)) extras.push_back(local[c].at(v));
        for (size_t i = 1; i < extras.size(); ++i) reach_uf[c].unite(extras[0], extras[i]);
    }
    d.reach.resize(t);
    for (int c = 0; c < t; ++c) {
        std::map<int, std::vector<Vertex>> classes;
        for (size_t i = 0; i < d.tight_vertices[c].size(); ++i)
            classes[reach_uf[c].find(static_cast<int>(i))].push_back(d.tight_vertices[c][i]);
        for (auto& [root, vs] : classes) d.reach[c].push_back(vs);
    }
    return d;
}

// Witness for a linked vertex: e contains v, f avoids it, |e cap f| = k-1.
struct LinkWitness {
    HyperEdge e, f;
};

inline std::optional<LinkWitness> is_linked(const CliqueHypergraph& j, Vertex v) {
    if (v < 0 || v >= j.n) throw error(errc::precondition, "vertex out of range");
    auto buckets = subset_buckets(j);
    for (const auto& e : j.edges) {
        if (!std::binary_search(e.begin(), e.end(), v)) continue;
        HyperEdge s;
        for (Vertex u : e)
            if (u != v) s.push_back(u);
        auto it = buckets.find(s);
        if (it == buckets.end()) continue;
        for (int fi : it->second) {
            const auto& f = j.edges[fi];
            if (!std::binary_search(f.begin(), f.end(), v)) return LinkWitness{e, f};
        }
    }
    return std::nullopt;
}

inline bool all_linked(const CliqueHypergraph& j) {
    for (Vertex v = 0; v < j.n; ++v)
        if (!is_linked(j, v)) return false;
    return true;
}

inline CliqueHypergraph shadow(const CliqueHypergraph& j) {
    if (j.k < 2) throw error(errc::precondition, "shadow needs k >= 2");
    CliqueHypergraph s;
    s.k = j.k - 1;
    s.n = j.n;
    std::set<HyperEdge> seen;
    for (const auto& e : j.edges)
        for (int drop = 0; drop < j.k; ++drop) {
            HyperEdge f;
            f.reserve(j.k - 1);
            for (int i = 0; i < j.k; ++i)
                if (i != drop) f.push_back(e[i]);
            seen.insert(f);
        }
    s.edges.assign(seen.begin(), seen.end());
    return s;
}

// Outcome of the (t,l)-connectivity decision. `exact` is false when the
// count of tight components forced the greedy backstop path, in which case a
// negative answer is conservative.
struct TlConnectivity {
    bool connected = false;
    bool exact = true;
    std::vector<int> chosen_tight;  // tight component ids of the witness
    int tight_used = 0;
    int loose_count = 0;
};

namespace detail {

inline int loose_count_of_subset(const ComponentDecomposition& d, const std::vector<int>& comps) {
    UnionFind uf(static_cast<int>(comps.size()));
    std::map<Vertex, int> first;
    for (size_t i = 0; i < comps.size(); ++i)
        for (Vertex v : d.tight_vertices[comps[i]]) {
            auto it = first.find(v);
            if (it == first.end())
                first[v] = static_cast<int>(i);
            else
                uf.unite(it->second, static_cast<int>(i));
        }
    return uf.components();
}

}  // namespace detail

inline TlConnectivity tl_connectivity(const CliqueHypergraph& j, int t, int l) {
    if (t < 1 || l < 1) throw error(errc::precondition, "budgets must be >= 1");
    auto d = decompose(j);
    std::vector<char> covered(j.n, 0);
    for (const auto& e : j.edges)
        for (Vertex v : e) covered[v] = 1;
    for (Vertex v = 0; v < j.n; ++v)
        if (!covered[v]) throw error(errc::uncoverable, "vertex " + std::to_string(v) + " lies in no edge");

    int c = static_cast<int>(d.tight.size());
    TlConnectivity out;
    if (c <= 20) {
        // Exhaustive over subsets of tight components, pruned by coverage.
        std::vector<std::vector<std::uint64_t>> masks;  // nothing fancy: n <= 64*words
        int words = (j.n + 63) / 64;
        masks.assign(c, std::vector<std::uint64_t>(words, 0));
        for (int i = 0; i < c; ++i)
            for (Vertex v : d.tight_vertices[i]) masks[i][v >> 6] |= std::uint64_t(1) << (v & 63);
        std::vector<std::uint64_t> full(words, 0);
        for (Vertex v = 0; v < j.n; ++v) full[v >> 6] |= std::uint64_t(1) << (v & 63);

        int best_tight = c + 1;
        std::vector<int> best;
        for (std::uint32_t sub = 1; sub < (1u << c); ++sub) {
            int sz = __builtin_popcount(sub);
            if (sz > t || sz >= best_tight) continue;
            std::vector<std::uint64_t> acc(words, 0);
            std::vector<int> comps;
            for (int i = 0; i < c; ++i)
                if (sub >> i & 1) {
                    comps.push_back(i);
                    for (int w = 0; w < words; ++w) acc[w] |= masks[i][w];
                }
            if (acc != full) continue;
            if (detail::loose_count_of_subset(d, comps) > l) continue;
            best_tight = sz;
            best = comps;
        }
        if (!best.empty()) {
            out.connected = true;
            out.chosen_tight = best;
            out.tight_used = best_tight;
            out.loose_count = detail::loose_count_of_subset(d, best);
        } else {
            out.connected = false;
            out.tight_used = c;
            out.loose_count = static_cast<int>(d.loose.size());
        }
        out.exact = true;
        return out;
    }

    // Greedy merge backstop; a "no" may be conservative.
    std::vector<int> chosen;
    {
        std::vector<char> cov(j.n, 0);
        // Largest components first until spanning.
        std::vector<int> order(c);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return d.tight_vertices[a].size() > d.tight_vertices[b].size();
        });
        for (int i : order) {
            bool adds = false;
            for (Vertex v : d.tight_vertices[i])
                if (!cov[v]) adds = true;
            if (!adds) continue;
            chosen.push_back(i);
            for (Vertex v : d.tight_vertices[i]) cov[v] = 1;
        }
        // Merge loose components while possible.
        bool improved = true;
        while (improved && detail::loose_count_of_subset(d, chosen) > l) {
            improved = false;
            int cur = detail::loose_count_of_subset(d, chosen);
            for (int i = 0; i < c; ++i) {
                if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
                auto trial = chosen;
                trial.push_back(i);
                if (detail::loose_count_of_subset(d, trial) < cur) {
                    chosen = trial;
                    improved = true;
                    break;
                }
            }
        }
    }
    std::sort(chosen.begin(), chosen.end());
    out.chosen_tight = chosen;
    out.tight_used = static_cast<int>(chosen.size());
    out.loose_count = detail::loose_count_of_subset(d, chosen);
    out.connected = out.tight_used <= t && out.loose_count <= l;
    out.exact = false;
    return out;
}

}  // namespace tiling
