#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "tiling/error.hpp"
#include "tiling/graph.hpp"
#include "tiling/guest.hpp"
#include "tiling/rational.hpp"

namespace tiling {

enum class ColourKind { proper, topological };

// Vertex colouring with colours 1..k.
struct Colouring {
    std::vector<int> colour;
    int k = 0;

    std::vector<int> ord() const {
        std::vector<int> o(k, 0);
        for (int c : colour) ++o[c - 1];
        return o;
    }

    bool proper_in(const Graph& g) const {
        for (auto [u, v] : g.edges())
            if (colour[u] == colour[v]) return false;
        return true;
    }

    bool topological_in(const Graph& g) const {
        for (auto [u, v] : g.edges())
            if (colour[u] != colour[v]) return false;
        return true;
    }

    bool matches(const Graph& g, ColourKind kind) const {
        return kind == ColourKind::proper ? proper_in(g) : topological_in(g);
    }
};

// Counts elementary colouring evaluations across a search.
struct Budget {
    long long limit = 10'000'000;
    long long used = 0;
    bool spend(long long c = 1) {
        used += c;
        return used <= limit;
    }
};

using OrdVec = std::vector<int>;

inline OrdVec add_ord(const OrdVec& a, const OrdVec& b) {
    OrdVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

// Yields every proper k-colouring exactly once, lexicographic in the
// assignment vector (vertex 0 most significant). Returns false if the
// callback stopped the enumeration.
inline bool enumerate_proper_colourings(const Graph& g, int k,
                                        const std::function<bool(const Colouring&)>& yield) {
    if (k < 1) throw error(errc::precondition, "k must be >= 1");
    Colouring col{std::vector<int>(g.n(), 0), k};
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v == g.n()) return yield(col);
        for (int c = 1; c <= k; ++c) {
            bool ok = true;
            for (Vertex u : g.neighbours(v))
                if (u < v && col.colour[u] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            col.colour[v] = c;
            if (!rec(v + 1)) return false;
        }
        col.colour[v] = 0;
        return true;
    };
    return rec(0);
}

inline long long count_proper_colourings(const Graph& g, int k) {
    long long cnt = 0;
    enumerate_proper_colourings(g, k, [&](const Colouring&) {
        ++cnt;
        return true;
    });
    return cnt;
}

namespace detail {

// Decision search with degree-descending branching order and first-use
// symmetry breaking.
inline bool k_colourable(const Graph& g, int k, Budget& budget) {
    int n = g.n();
    if (n == 0 || k >= n) return true;
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    std::vector<int> col(n, 0);
    std::function<bool(int, int)> rec = [&](int idx, int max_used) -> bool {
        if (idx == n) return true;
        if (!budget.spend()) throw error(errc::budget, "colouring search budget exhausted");
        Vertex v = order[idx];
        int top = std::min(k, max_used + 1);
        for (int c = 1; c <= top; ++c) {
            bool ok = true;
            for (Vertex u : g.neighbours(v))
                if (col[u] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            col[v] = c;
            if (rec(idx + 1, std::max(max_used, c))) return true;
            col[v] = 0;
        }
        return false;
    };
    return rec(0, 0);
}

inline int greedy_clique_lower_bound(const Graph& g) {
    int best = g.n() > 0 ? 1 : 0;
    std::vector<Vertex> order(g.n());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    for (Vertex s : order) {
        std::vector<Vertex> clique{s};
        for (Vertex u : order) {
            if (u == s) continue;
            bool adj_all = true;
            for (Vertex w : clique)
                if (!g.has_edge(u, w)) {
                    adj_all = false;
                    break;
                }
            if (adj_all) clique.push_back(u);
        }
        best = std::max(best, static_cast<int>(clique.size()));
    }
    return best;
}

// If g is complete multipartite, returns its part sizes.
inline std::optional<std::vector<int>> multipartite_parts(const Graph& g) {
    Graph co = g.complement();
    auto comps = co.components();
    std::vector<int> parts;
    for (const auto& comp : comps) {
        for (size_t i = 0; i < comp.size(); ++i)
            for (size_t j = i + 1; j < comp.size(); ++j)
                if (!co.has_edge(comp[i], comp[j])) return std::nullopt;
        parts.push_back(static_cast<int>(comp.size()));
    }
    return parts;
}

inline void dedup(std::vector<OrdVec>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Set-valued DP for the ord vectors of proper k-colourings of a cycle.
inline std::vector<OrdVec> cycle_ords(const Graph& comp, int k) {
    struct Key {
        int cur, root;
        bool operator<(const Key& o) const { return std::tie(cur, root) < std::tie(o.cur, o.root); }
    };
    std::vector<Vertex> walk{0};
    Vertex prev = 0, cur = comp.neighbours(0)[0];
    while (cur != 0) {
        walk.push_back(cur);
        auto nb = comp.neighbours(cur);
        Vertex nxt = (nb[0] == prev) ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
    }
    std::map<Key, std::vector<OrdVec>> states;
    for (int c = 1; c <= k; ++c) {
        OrdVec o(k, 0);
        ++o[c - 1];
        states[{c, c}].push_back(o);
    }
    for (size_t i = 1; i < walk.size(); ++i) {
        std::map<Key, std::vector<OrdVec>> next;
        for (auto& [key, ords] : states)
            for (int c = 1; c <= k; ++c) {
                if (c == key.cur) continue;
                auto& bucket = next[{c, key.root}];
                for (const auto& o : ords) {
                    OrdVec o2 = o;
                    ++o2[c - 1];
                    bucket.push_back(o2);
                }
            }
        for (auto& [key, ords] : next) dedup(ords);
        states = std::move(next);
    }
    std::vector<OrdVec> out;
    for (auto& [key, ords] : states)
        if (key.cur != key.root) out.insert(out.end(), ords.begin(), ords.end());
    dedup(out);
    return out;
}

// Subtree DP for trees: per root colour, the realisable subtree ords.
inline std::vector<OrdVec> tree_ords(const Graph& comp, int k) {
    std::function<std::vector<std::vector<OrdVec>>(Vertex, Vertex)> sub =
        [&](Vertex u, Vertex par) -> std::vector<std::vector<OrdVec>> {
        std::vector<std::vector<OrdVec>> mine(k + 1);
        for (int c = 1; c <= k; ++c) {
            OrdVec o(k, 0);
            ++o[c - 1];
            mine[c] = {o};
        }
        for (Vertex v : comp.neighbours(u)) {
            if (v == par) continue;
            auto child = sub(v, u);
            for (int c = 1; c <= k; ++c) {
                std::vector<OrdVec> child_any;
                for (int c2 = 1; c2 <= k; ++c2)
                    if (c2 != c) child_any.insert(child_any.end(), child[c2].begin(), child[c2].end());
                dedup(child_any);
                std::vector<OrdVec> merged;
                merged.reserve(mine[c].size() * child_any.size());
                for (const auto& a : mine[c])
                    for (const auto& b : child_any) merged.push_back(add_ord(a, b));
                dedup(merged);
                mine[c] = std::move(merged);
            }
        }
        return mine;
    };
    auto per_colour = sub(0, -1);
    std::vector<OrdVec> out;
    for (int c = 1; c <= k; ++c) out.insert(out.end(), per_colour[c].begin(), per_colour[c].end());
    dedup(out);
    return out;
}

// All ord vectors of proper k-colourings of a connected component.
inline std::vector<OrdVec> component_proper_ords(const Graph& comp, int k, Budget& budget) {
    int n = comp.n();
    if (n == 1) {
        std::vector<OrdVec> out;
        for (int c = 1; c <= k; ++c) {
            OrdVec o(k, 0);
            ++o[c - 1];
            out.push_back(o);
        }
        return out;
    }
    if (auto parts = multipartite_parts(comp); parts && static_cast<int>(parts->size()) == k) {
        // Colour classes coincide with the parts; ords are their permutations.
        std::vector<int> ps = *parts;
        std::sort(ps.begin(), ps.end());
        std::vector<OrdVec> out;
        do out.push_back(OrdVec(ps.begin(), ps.end()));
        while (std::next_permutation(ps.begin(), ps.end()));
        dedup(out);
        return out;
    }
    bool deg2 = true;
    for (Vertex v = 0; v < n && deg2; ++v) deg2 = comp.degree(v) == 2;
    if (n >= 3 && deg2 && comp.edge_count() == n) return cycle_ords(comp, k);
    if (comp.edge_count() == n - 1) return tree_ords(comp, k);
    std::vector<OrdVec> out;
    std::vector<int> col(n, 0);
    OrdVec cur(k, 0);
    std::function<void(int)> rec = [&](int v) {
        if (!budget.spend()) throw error(errc::budget, "ord enumeration budget exhausted");
        if (v == n) {
            out.push_back(cur);
            return;
        }
        for (int c = 1; c <= k; ++c) {
            bool ok = true;
            for (Vertex u : comp.neighbours(v))
                if (u < v && col[u] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            col[v] = c;
            ++cur[c - 1];
            rec(v + 1);
            --cur[c - 1];
            col[v] = 0;
        }
    };
    rec(0);
    dedup(out);
    return out;
}

// Topological colourings give each component a single colour.
inline std::vector<OrdVec> component_topological_ords(int comp_order, int k) {
    std::vector<OrdVec> out;
    for (int c = 1; c <= k; ++c) {
        OrdVec o(k, 0);
        o[c - 1] = comp_order;
        out.push_back(o);
    }
    return out;
}

}  // namespace detail

// Set of realisable ord vectors, stored as a flat bitset over the first k-1
// class sizes in mixed radix (base = total+1); the last class size is implied
// by the tracked sum.
class OrdSet {
public:
    OrdSet() = default;
    OrdSet(int k, int total) : k_(k), base_(total + 1), sum_(0) {
        size_t cells = 1;
        for (int i = 0; i + 1 < k_; ++i) cells *= static_cast<size_t>(base_);
        cells_ = cells;
        bits_.assign((cells + 63) / 64, 0);
    }

    int k() const { return k_; }
    int sum() const { return sum_; }
    void set_sum(int s) { sum_ = s; }

    size_t index(const OrdVec& o) const {
        size_t idx = 0;
        for (int i = k_ - 2; i >= 0; --i) idx = idx * base_ + static_cast<size_t>(o[i]);
        return idx;
    }

    OrdVec decode(size_t idx) const {
        OrdVec o(k_, 0);
        int s = 0;
        for (int i = 0; i + 1 < k_; ++i) {
            o[i] = static_cast<int>(idx % base_);
            s += o[i];
            idx /= base_;
        }
        o[k_ - 1] = sum_ - s;
        return o;
    }

    void insert(const OrdVec& o) {
        size_t idx = index(o);
        bits_[idx >> 6] |= std::uint64_t(1) << (idx & 63);
    }

    bool contains(const OrdVec& o) const {
        int s = 0;
        for (int i = 0; i < k_; ++i) {
            if (o[i] < 0 || o[i] >= base_) return false;
            s += o[i];
        }
        if (s != sum_) return false;
        size_t idx = index(o);
        return idx < cells_ && (bits_[idx >> 6] >> (idx & 63)) & 1u;
    }

    // this |= (src shifted by offset). The shift never carries between
    // mixed-radix digits because every class size is bounded by the grand
    // total that fixed the base.
    void shift_or(const OrdSet& src, const OrdVec& offset) {
        size_t off = index(offset);
        size_t word_off = off >> 6;
        int bit_off = static_cast<int>(off & 63);
        for (size_t w = 0; w < src.bits_.size(); ++w) {
            std::uint64_t x = src.bits_[w];
            if (!x) continue;
            size_t dw = w + word_off;
            if (dw < bits_.size()) bits_[dw] |= x << bit_off;
            if (bit_off && dw + 1 < bits_.size()) bits_[dw + 1] |= x >> (64 - bit_off);
        }
    }

    bool empty() const {
        for (auto w : bits_)
            if (w) return false;
        return true;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t x = bits_[w];
            while (x) {
                int b = __builtin_ctzll(x);
                x &= x - 1;
                size_t idx = (w << 6) + static_cast<size_t>(b);
                if (idx < cells_) f(decode(idx));
            }
        }
    }

    std::vector<OrdVec> all() const {
        std::vector<OrdVec> out;
        for_each([&](const OrdVec& o) { out.push_back(o); });
        return out;
    }

private:
    int k_ = 0;
    int base_ = 1;
    int sum_ = 0;
    size_t cells_ = 0;
    std::vector<std::uint64_t> bits_;
};

// Per-piece ord choices composed over a sequence of pieces (tiles or
// components), with prefix sets retained for witness reconstruction.
struct OrdComposition {
    int k = 0;
    int total = 0;
    std::vector<std::vector<OrdVec>> piece_ords;
    std::vector<OrdSet> prefix;  // prefix[i] = sums over pieces 0..i-1

    const OrdSet& final_set() const { return prefix.back(); }

    // A per-piece decomposition of `target`, choosing the first feasible
    // piece ord at every step; empty when target is not realisable.
    std::optional<std::vector<OrdVec>> decompose(const OrdVec& target) const {
        if (!final_set().contains(target)) return std::nullopt;
        std::vector<OrdVec> choice(piece_ords.size());
        OrdVec rest = target;
        for (int i = static_cast<int>(piece_ords.size()) - 1; i >= 0; --i) {
            bool found = false;
            for (const auto& o : piece_ords[i]) {
                OrdVec prev(rest.size());
                bool nonneg = true;
                for (size_t j = 0; j < rest.size(); ++j) {
                    prev[j] = rest[j] - o[j];
                    if (prev[j] < 0) nonneg = false;
                }
                if (!nonneg || !prefix[i].contains(prev)) continue;
                choice[i] = o;
                rest = prev;
                found = true;
                break;
            }
            if (!found) return std::nullopt;
        }
        return choice;
    }
};

inline OrdComposition compose_ords(const std::vector<std::vector<OrdVec>>& piece_ords, int k,
                                   int total) {
    OrdComposition comp;
    comp.k = k;
    comp.total = total;
    comp.piece_ords = piece_ords;
    comp.prefix.reserve(piece_ords.size() + 1);
    OrdSet cur(k, total);
    cur.insert(OrdVec(k, 0));
    comp.prefix.push_back(cur);
    for (const auto& ords : piece_ords) {
        int piece_sum = ords.empty() ? 0 : std::accumulate(ords[0].begin(), ords[0].end(), 0);
        OrdSet next(k, total);
        next.set_sum(comp.prefix.back().sum() + piece_sum);
        for (const auto& o : ords) next.shift_or(comp.prefix.back(), o);
        comp.prefix.push_back(std::move(next));
    }
    return comp;
}

// Ord vectors realisable by proper/topological k-colourings of g.
inline std::vector<OrdVec> graph_ord_vectors(const Graph& g, int k, ColourKind kind,
                                             Budget& budget) {
    auto comps = g.components();
    std::vector<std::vector<OrdVec>> piece_ords;
    for (const auto& cvs : comps) {
        if (kind == ColourKind::topological)
            piece_ords.push_back(detail::component_topological_ords(static_cast<int>(cvs.size()), k));
        else
            piece_ords.push_back(detail::component_proper_ords(g.induced(cvs), k, budget));
        if (piece_ords.back().empty()) return {};
    }
    auto comp = compose_ords(piece_ords, k, g.n());
    return comp.final_set().all();
}

namespace detail {

// Exact witness on a cycle by forward set-DP over the walk and a backward
// trace; avoids the exponential backtracking on long cycles.
inline std::optional<std::vector<int>> cycle_colouring_with_ord(const Graph& comp, int k,
                                                                const OrdVec& target) {
    int n = comp.n();
    std::vector<Vertex> walk{0};
    Vertex prev = 0, cur = comp.neighbours(0)[0];
    while (cur != 0) {
        walk.push_back(cur);
        auto nb = comp.neighbours(cur);
        Vertex nxt = (nb[0] == prev) ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
    }
    for (int root = 1; root <= k; ++root) {
        // dp[i][c] = count vectors over walk[0..i] with walk[i] coloured c.
        std::vector<std::vector<OrdSet>> dp(n, std::vector<OrdSet>(k + 1));
        for (int c = 1; c <= k; ++c) dp[0][c] = OrdSet(k, n);
        OrdVec o0(k, 0);
        ++o0[root - 1];
        dp[0][root].insert(o0);
        dp[0][root].set_sum(1);
        for (int i = 1; i < n; ++i)
            for (int c = 1; c <= k; ++c) {
                dp[i][c] = OrdSet(k, n);
                dp[i][c].set_sum(i + 1);
                OrdVec shift(k, 0);
                ++shift[c - 1];
                for (int c2 = 1; c2 <= k; ++c2)
                    if (c2 != c) dp[i][c].shift_or(dp[i - 1][c2], shift);
            }
        for (int last = 1; last <= k; ++last) {
            if (last == root || !dp[n - 1][last].contains(target)) continue;
            std::vector<int> colour_of(n, 0);
            OrdVec rest = target;
            int c = last;
            for (int i = n - 1; i >= 1; --i) {
                colour_of[walk[i]] = c;
                --rest[c - 1];
                int cprev = -1;
                for (int c2 = 1; c2 <= k; ++c2)
                    if (c2 != c && dp[i - 1][c2].contains(rest)) {
                        cprev = c2;
                        break;
                    }
                if (cprev < 0) return std::nullopt;  // unreachable
                c = cprev;
            }
            colour_of[walk[0]] = c;
            return colour_of;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Searches for a colouring of g with the exact ord vector, by backtracking
// with per-class remaining-capacity pruning.
inline std::optional<Colouring> colouring_with_ord(const Graph& g, int k, const OrdVec& target,
                                                   ColourKind kind, Budget& budget) {
    int n = g.n();
    long long s = std::accumulate(target.begin(), target.end(), 0LL);
    if (s != n) return std::nullopt;
    for (int c = 0; c < k; ++c)
        if (target[c] < 0) return std::nullopt;

    if (kind == ColourKind::topological) {
        auto comps = g.components();
        std::vector<int> cap(target.begin(), target.end());
        Colouring col{std::vector<int>(n, 0), k};
        std::function<bool(size_t)> rec = [&](size_t i) -> bool {
            if (i == comps.size()) return true;
            if (!budget.spend()) throw error(errc::budget, "witness search budget exhausted");
            int sz = static_cast<int>(comps[i].size());
            for (int c = 0; c < k; ++c) {
                if (cap[c] < sz) continue;
                cap[c] -= sz;
                for (Vertex v : comps[i]) col.colour[v] = c + 1;
                if (rec(i + 1)) return true;
                cap[c] += sz;
            }
            return false;
        };
        if (!rec(0)) return std::nullopt;
        return col;
    }

    // Proper: split target across components first, then per-component
    // vertex-level search in BFS order so the adjacency pruning bites.
    auto comps = g.components();
    std::vector<std::vector<OrdVec>> piece_ords;
    for (const auto& cvs : comps)
        piece_ords.push_back(detail::component_proper_ords(g.induced(cvs), k, budget));
    auto comp_dp = compose_ords(piece_ords, k, n);
    auto split = comp_dp.decompose(target);
    if (!split) return std::nullopt;

    Colouring col{std::vector<int>(n, 0), k};
    for (size_t ci = 0; ci < comps.size(); ++ci) {
        Graph sub = g.induced(comps[ci]);
        int m = sub.n();
        bool deg2 = m >= 3;
        for (Vertex v = 0; v < m && deg2; ++v) deg2 = sub.degree(v) == 2;
        if (deg2 && sub.edge_count() == m && m > 20) {
            auto cyc = detail::cycle_colouring_with_ord(sub, k, (*split)[ci]);
            if (!cyc) return std::nullopt;
            for (int i = 0; i < m; ++i) col.colour[comps[ci][i]] = (*cyc)[i];
            continue;
        }
        std::vector<int> cap((*split)[ci].begin(), (*split)[ci].end());
        std::vector<Vertex> order;
        std::vector<char> seen(m, 0);
        std::vector<Vertex> q{0};
        seen[0] = 1;
        for (size_t h = 0; h < q.size(); ++h) {
            order.push_back(q[h]);
            for (Vertex v : sub.neighbours(q[h]))
                if (!seen[v]) seen[v] = 1, q.push_back(v);
        }
        std::vector<int> scol(m, 0);
        std::function<bool(int)> rec = [&](int idx) -> bool {
            if (idx == m) return true;
            if (!budget.spend()) throw error(errc::budget, "witness search budget exhausted");
            Vertex v = order[idx];
            for (int c = 1; c <= k; ++c) {
                if (cap[c - 1] == 0) continue;
                bool ok = true;
                for (Vertex u : sub.neighbours(v))
                    if (scol[u] == c) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                scol[v] = c;
                --cap[c - 1];
                if (rec(idx + 1)) return true;
                ++cap[c - 1];
                scol[v] = 0;
            }
            return false;
        };
        if (!rec(0)) return std::nullopt;
        for (int i = 0; i < m; ++i) col.colour[comps[ci][i]] = scol[i];
    }
    return col;
}

// Chromatic invariants: chi, alpha, crit, the difference set over proper
// chi-colourings and the two gcd parameters.
struct ChromaticProfile {
    int chi = 0;
    Rational alpha;
    Rational crit;
    std::set<long long> d_set;
    std::optional<long long> gcd_chi;  // nullopt encodes the infinity sentinel
    long long gcd_c = 0;
    // Guest extras.
    int max_degree = 0;
    int max_tile_order = 0;
    int tile_count = 0;
};

inline int chromatic_number(const Graph& g, Budget& budget) {
    if (g.n() == 0) return 0;
    if (g.edge_count() == 0) return 1;
    int chi = 1;
    for (const auto& cvs : g.components()) {
        Graph comp = g.induced(cvs);
        if (comp.edge_count() == 0) continue;
        int lo = std::max({2, chi, detail::greedy_clique_lower_bound(comp)});
        while (!detail::k_colourable(comp, lo, budget)) ++lo;
        chi = std::max(chi, lo);
    }
    return chi;
}

namespace detail {

inline void fill_profile_from_ords(ChromaticProfile& p, const std::vector<OrdVec>& ords, int v) {
    long long min_class = v;
    for (const auto& o : ords) {
        for (int c = 0; c < p.chi; ++c) min_class = std::min<long long>(min_class, o[c]);
        if (p.chi >= 2)
            p.d_set.insert(std::llabs(static_cast<long long>(o[0]) - o[1]));
        else
            p.d_set.insert(o[0]);
    }
    p.alpha = Rational(Int(min_class), Int(v));
    if (p.chi <= 1) {
        p.crit = Rational(1);
    } else {
        Rational k1{Int(p.chi - 1)};
        p.crit = k1 + p.alpha * k1 / (Rational(1) - p.alpha);
    }
    long long gchi = 0;
    for (long long d : p.d_set)
        if (d != 0) gchi = std::gcd(gchi, d);
    p.gcd_chi = gchi == 0 ? std::nullopt : std::optional<long long>(gchi);
}

}  // namespace detail

inline ChromaticProfile chromatic_profile(const Graph& g, Budget& budget) {
    if (g.n() == 0) throw error(errc::precondition, "empty graph has no chromatic profile");
    ChromaticProfile p;
    p.chi = chromatic_number(g, budget);
    auto ords = graph_ord_vectors(g, p.chi, ColourKind::proper, budget);
    detail::fill_profile_from_ords(p, ords, g.n());
    long long gc = 0;
    for (const auto& comp : g.components()) gc = std::gcd(gc, static_cast<long long>(comp.size()));
    p.gcd_c = gc;
    p.max_degree = g.max_degree();
    p.max_tile_order = g.n();
    p.tile_count = 1;
    return p;
}

inline ChromaticProfile chromatic_profile(const Graph& g) {
    Budget b;
    return chromatic_profile(g, b);
}

inline bool is_fcr(const ChromaticProfile& p) {
    bool gchi1 = p.gcd_chi.has_value() && *p.gcd_chi == 1;
    if (p.chi == 2) return gchi1 && p.gcd_c == 1;
    return p.chi >= 3 && gchi1;
}

inline bool is_fcr(const Graph& g) {
    if (g.n() == 0) throw error(errc::precondition, "empty graph");
    return is_fcr(chromatic_profile(g));
}

// Profile of the disjoint union of the tiles, plus guest statistics.
inline ChromaticProfile guest_profile(const TiledGuest& h, Budget& budget) {
    if (h.order() == 0) throw error(errc::precondition, "empty guest");
    int chi = 1;
    for (const auto& t : h.tiles()) chi = std::max(chi, chromatic_number(t, budget));

    std::vector<std::vector<OrdVec>> piece_ords;
    for (const auto& t : h.tiles())
        piece_ords.push_back(graph_ord_vectors(t, chi, ColourKind::proper, budget));
    auto comp = compose_ords(piece_ords, chi, h.order());

    ChromaticProfile p;
    p.chi = chi;
    detail::fill_profile_from_ords(p, comp.final_set().all(), h.order());
    long long gc = 0;
    for (const auto& t : h.tiles())
        for (const auto& cvs : t.components()) gc = std::gcd(gc, static_cast<long long>(cvs.size()));
    p.gcd_c = gc;
    p.max_degree = h.max_degree();
    p.max_tile_order = h.max_tile_order();
    p.tile_count = h.tile_count();
    return p;
}

inline ChromaticProfile guest_profile(const TiledGuest& h) {
    Budget b;
    return guest_profile(h, b);
}

// Complete k-partite graph with parts a, b, ..., b; crit = (k-1) + a/b.
inline Graph bottle_graph(int k, int a, int b) {
    if (k < 2) throw error(errc::precondition, "bottle graph needs k >= 2");
    if (a < 1 || a > b) throw error(errc::precondition, "bottle graph needs 1 <= a <= b");
    if (std::gcd(a, b) != 1) throw error(errc::precondition, "bottle graph needs gcd(a,b) = 1");
    std::vector<int> parts{a};
    for (int i = 1; i < k; ++i) parts.push_back(b);
    return complete_multipartite(parts);
}

// B_chi for rational chi > 1: with chi = floor(chi) + a/b, coprime a <= b,
// this is K_{a, (ceil(chi)-1)*b}; integral chi gives the clique K_chi.
inline Graph bottle_for(const Rational& chi) {
    if (chi <= Rational(1)) throw error(errc::precondition, "bottle graph needs chi > 1");
    Int fl = rat_floor(chi);
    Rational frac = chi - Rational(fl);
    if (frac == Rational(0)) return complete_graph(static_cast<int>(to_ll(fl)));
    int a = static_cast<int>(to_ll(frac.numerator()));
    int b = static_cast<int>(to_ll(frac.denominator()));
    int k = static_cast<int>(to_ll(fl)) + 1;
    return bottle_graph(k, a, b);
}

}  // namespace tiling
