#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tiling/error.hpp"

namespace tiling {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;  // normalised u < v

// Finite simple undirected graph on vertices {0..n-1}.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n) {}

    Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
        for (auto [u, v] : edges) add_edge(u, v);
    }

    int n() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    void add_edge(Vertex u, Vertex v) {
        if (u == v) throw error(errc::precondition, "self-loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n_ || v >= n_)
            throw error(errc::precondition, "vertex index out of range");
        if (u > v) std::swap(u, v);
        if (adj_[u][v]) throw error(errc::precondition, "duplicate edge");
        adj_[u].set(v);
        adj_[v].set(u);
        edges_.emplace_back(u, v);
    }

    bool has_edge(Vertex u, Vertex v) const { return u != v && adj_[u][v]; }

    const std::vector<Edge>& edges() const { return edges_; }

    std::vector<Vertex> neighbours(Vertex u) const {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < n_; ++v)
            if (adj_[u][v]) out.push_back(v);
        return out;
    }

    int degree(Vertex u) const {
        int d = 0;
        for (size_t w = 0; w < adj_[u].words.size(); ++w) d += __builtin_popcountll(adj_[u].words[w]);
        return d;
    }

    int min_degree() const {
        int d = n_ == 0 ? 0 : n_;
        for (Vertex u = 0; u < n_; ++u) d = std::min(d, degree(u));
        return d;
    }

    int max_degree() const {
        int d = 0;
        for (Vertex u = 0; u < n_; ++u) d = std::max(d, degree(u));
        return d;
    }

    std::vector<std::vector<Vertex>> components() const {
        std::vector<std::vector<Vertex>> comps;
        std::vector<char> seen(n_, 0);
        for (Vertex s = 0; s < n_; ++s) {
            if (seen[s]) continue;
            std::vector<Vertex> comp, stack{s};
            seen[s] = 1;
            while (!stack.empty()) {
                Vertex u = stack.back();
                stack.pop_back();
                comp.push_back(u);
                for (Vertex v : neighbours(u))
                    if (!seen[v]) seen[v] = 1, stack.push_back(v);
            }
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
        return comps;
    }

    bool connected() const { return n_ <= 1 || components().size() == 1; }

    Graph induced(const std::vector<Vertex>& vs) const {
        std::vector<int> pos(n_, -1);
        for (size_t i = 0; i < vs.size(); ++i) pos[vs[i]] = static_cast<int>(i);
        Graph g(static_cast<int>(vs.size()));
        for (auto [u, v] : edges_)
            if (pos[u] >= 0 && pos[v] >= 0) g.add_edge(pos[u], pos[v]);
        return g;
    }

    // Union with vertex sets shifted apart.
    static Graph disjoint_union(const Graph& a, const Graph& b) {
        Graph g(a.n() + b.n());
        for (auto [u, v] : a.edges()) g.add_edge(u, v);
        for (auto [u, v] : b.edges()) g.add_edge(u + a.n(), v + a.n());
        return g;
    }

    bool same_as(const Graph& other) const {
        if (n_ != other.n_) return false;
        auto e1 = edges_, e2 = other.edges_;
        std::sort(e1.begin(), e1.end());
        std::sort(e2.begin(), e2.end());
        return e1 == e2;
    }

    Graph relabelled(const std::vector<Vertex>& perm) const {
        Graph g(n_);
        for (auto [u, v] : edges_) g.add_edge(perm[u], perm[v]);
        return g;
    }

    Graph complement() const {
        Graph g(n_);
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v = u + 1; v < n_; ++v)
                if (!has_edge(u, v)) g.add_edge(u, v);
        return g;
    }

private:
    struct Bitset {
        std::vector<std::uint64_t> words;
        bool operator[](int i) const {
            size_t w = static_cast<size_t>(i) >> 6;
            return w < words.size() && (words[w] >> (i & 63)) & 1u;
        }
        void set(int i) {
            size_t w = static_cast<size_t>(i) >> 6;
            if (w >= words.size()) words.resize(w + 1, 0);
            words[w] |= std::uint64_t(1) << (i & 63);
        }
    };

    int n_ = 0;
    std::vector<Bitset> adj_;
    std::vector<Edge> edges_;
};

// Common small graphs.
inline Graph complete_graph(int r) {
    Graph g(r);
    for (int u = 0; u < r; ++u)
        for (int v = u + 1; v < r; ++v) g.add_edge(u, v);
    return g;
}

inline Graph cycle_graph(int r) {
    Graph g(r);
    for (int u = 0; u < r; ++u) g.add_edge(u, (u + 1) % r);
    return g;
}

inline Graph path_graph(int r) {
    Graph g(r);
    for (int u = 0; u + 1 < r; ++u) g.add_edge(u, u + 1);
    return g;
}

inline Graph empty_graph(int r) { return Graph(r); }

inline Graph complete_multipartite(const std::vector<int>& parts) {
    int n = std::accumulate(parts.begin(), parts.end(), 0);
    Graph g(n);
    std::vector<int> part_of(n);
    int at = 0;
    for (size_t p = 0; p < parts.size(); ++p)
        for (int i = 0; i < parts[p]; ++i) part_of[at++] = static_cast<int>(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (part_of[u] != part_of[v]) g.add_edge(u, v);
    return g;
}

inline Graph complete_bipartite(int a, int b) { return complete_multipartite({a, b}); }

// m-blow-up: each vertex becomes a cluster of `m`, each edge a complete
// bipartite graph between clusters.
inline Graph blow_up(const Graph& r, int m) {
    Graph g(r.n() * m);
    for (auto [u, v] : r.edges())
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) g.add_edge(u * m + i, v * m + j);
    return g;
}

// Edge-list format: `n <count>` header, `e <u> <v>` lines, `#` comments.
inline Graph parse_graph(std::istream& in, int& line_no) {
    int n = -1;
    Graph g;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "n") {
            if (n >= 0) throw error(errc::parse, "line " + std::to_string(line_no) + ": repeated n header");
            if (!(ls >> n) || n < 0)
                throw error(errc::parse, "line " + std::to_string(line_no) + ": bad vertex count");
            g = Graph(n);
        } else if (tag == "e") {
            if (n < 0) throw error(errc::parse, "line " + std::to_string(line_no) + ": edge before n header");
            int u, v;
            if (!(ls >> u >> v))
                throw error(errc::parse, "line " + std::to_string(line_no) + ": malformed edge line");
            try {
                g.add_edge(u, v);
            } catch (const error& e) {
                throw error(errc::parse, "line " + std::to_string(line_no) + ": " + e.what());
            }
        } else {
            throw error(errc::parse, "line " + std::to_string(line_no) + ": unknown tag '" + tag + "'");
        }
    }
    if (n < 0) throw error(errc::parse, "missing n header");
    return g;
}

inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    int line_no = 0;
    return parse_graph(in, line_no);
}

inline std::string format_graph(const Graph& g) {
    std::ostringstream os;
    os << "n " << g.n() << "\n";
    for (auto [u, v] : g.edges()) os << "e " << u << " " << v << "\n";
    return os.str();
}

}  // namespace tiling
