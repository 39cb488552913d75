#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "tiling/chromatic.hpp"
#include "tiling/clique.hpp"
#include "tiling/error.hpp"
#include "tiling/graph.hpp"
#include "tiling/homomorphism.hpp"
#include "tiling/lp.hpp"
#include "tiling/rational.hpp"

namespace tiling {

// Rational-weighted set of homomorphisms of F into a host; only the support
// is stored. Weight is v(F) times the total mass.
struct FractionalTiling {
    Graph tile;
    std::vector<Homomorphism> homs;
    std::vector<Rational> weights;

    Rational total_mass() const {
        Rational s(0);
        for (const auto& w : weights) s += w;
        return s;
    }
    Rational weight() const { return Rational(Int(tile.n())) * total_mass(); }

    std::vector<Rational> loads(int host_n) const {
        std::vector<Rational> load(host_n, Rational(0));
        for (size_t i = 0; i < homs.size(); ++i)
            for (Vertex t : homs[i].map) load[t] += weights[i];
        return load;
    }

    bool feasible(int host_n) const {
        for (const auto& l : loads(host_n))
            if (l > Rational(1)) return false;
        for (const auto& w : weights)
            if (w < Rational(0) || w > Rational(1)) return false;
        return true;
    }
};

// Dual object: nonnegative vertex values covering every homomorphism with
// multiplicity, i.e. sum_v |theta^-1(v)| c(v) >= 1.
struct FractionalCover {
    Graph tile;
    std::vector<Rational> values;

    Rational size() const {
        Rational s(0);
        for (const auto& v : values) s += v;
        return s;
    }

    bool feasible_for(const std::vector<Homomorphism>& homs) const {
        for (const auto& h : homs) {
            Rational s(0);
            for (Vertex t : h.map) s += values[t];
            if (s < Rational(1)) return false;
        }
        return true;
    }
};

struct TilingLpResult {
    FractionalTiling tiling;
    FractionalCover cover;
    long long hom_count = 0;
    long long pivots = 0;
};

namespace detail {

inline std::optional<std::vector<std::vector<Vertex>>> multipartite_part_sets(const Graph& g) {
    Graph co = g.complement();
    auto comps = co.components();
    for (const auto& comp : comps)
        for (size_t i = 0; i < comp.size(); ++i)
            for (size_t j = i + 1; j < comp.size(); ++j)
                if (!co.has_edge(comp[i], comp[j])) return std::nullopt;
    return comps;
}

// For complete multipartite F, every homomorphism column is a convex
// combination of columns that send each part to a single vertex of a
// k-clique (distribute each part's image independently), so the tiling LP
// restricted to clique homs has the same optimum and its dual stays feasible
// for all of Hom(F;G). This keeps bottle-graph checks tractable.
inline std::vector<Homomorphism> clique_homs(const Graph& g,
                                             const std::vector<std::vector<Vertex>>& parts,
                                             const HomOptions& opt) {
    int k = static_cast<int>(parts.size());
    int fn = 0;
    for (const auto& p : parts) fn += static_cast<int>(p.size());
    std::vector<HyperEdge> cliques;
    if (k == 1) {
        for (Vertex v = 0; v < g.n(); ++v) cliques.push_back({v});
    } else {
        cliques = clique_hypergraph(g, k).edges;
    }
    std::vector<int> sizes;
    for (const auto& p : parts) sizes.push_back(static_cast<int>(p.size()));
    // Distinct placements of the part-size multiset over clique positions.
    std::vector<std::vector<int>> patterns;
    {
        std::vector<int> perm = sizes;
        std::sort(perm.begin(), perm.end());
        do patterns.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));
    }
    std::vector<Homomorphism> out;
    for (const auto& K : cliques)
        for (const auto& pattern : patterns) {
            // Assign each position the next unused part of the wanted size.
            std::vector<char> used(parts.size(), 0);
            std::vector<Vertex> map(fn, -1);
            for (int pos = 0; pos < k; ++pos) {
                int chosen = -1;
                for (size_t pi = 0; pi < parts.size(); ++pi)
                    if (!used[pi] && static_cast<int>(parts[pi].size()) == pattern[pos]) {
                        chosen = static_cast<int>(pi);
                        break;
                    }
                used[chosen] = 1;
                for (Vertex u : parts[chosen]) map[u] = K[pos];
            }
            if (static_cast<long long>(out.size()) >= opt.cap)
                throw error(errc::capped,
                            "homomorphism cap " + std::to_string(opt.cap) + " exceeded");
            out.push_back(Homomorphism{map});
        }
    std::sort(out.begin(), out.end(),
              [](const Homomorphism& a, const Homomorphism& b) { return a.map < b.map; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Homomorphism& a, const Homomorphism& b) { return a.map == b.map; }),
              out.end());
    return out;
}

}  // namespace detail

// Maximum-weight fractional F-tiling and the minimum fractional F-cover read
// off the same exact simplex solve; strong duality holds by construction and
// both sides are verified before returning.
inline TilingLpResult fractional_tiling_lp(const Graph& g, const Graph& f,
                                           const HomOptions& opt = {}) {
    std::vector<Homomorphism> homs;
    if (auto parts = detail::multipartite_part_sets(f); parts && f.n() > 0 && !opt.injective_only)
        homs = detail::clique_homs(g, *parts, opt);
    else
        homs = enumerate_homs(f, g, opt);
    int n = g.n();
    std::vector<std::vector<std::pair<int, Rational>>> cols;
    cols.reserve(homs.size());
    for (const auto& h : homs) {
        std::map<int, int> cnt;
        for (Vertex t : h.map) ++cnt[t];
        std::vector<std::pair<int, Rational>> col;
        for (auto [v, c] : cnt) col.emplace_back(v, Rational(Int(c)));
        cols.push_back(std::move(col));
    }
    std::vector<Rational> rhs(n, Rational(1)), obj(homs.size(), Rational(1));
    LpResult lp = homs.empty()
                      ? LpResult{Rational(0), {}, std::vector<Rational>(n, Rational(0)), 0}
                      : solve_packing_lp(n, cols, rhs, obj);

    TilingLpResult out;
    out.hom_count = static_cast<long long>(homs.size());
    out.pivots = lp.pivots;
    out.tiling.tile = f;
    for (size_t j = 0; j < homs.size(); ++j)
        if (lp.x[j] != Rational(0)) {
            out.tiling.homs.push_back(homs[j]);
            out.tiling.weights.push_back(lp.x[j]);
        }
    out.cover.tile = f;
    out.cover.values = lp.dual;

    if (!out.tiling.feasible(n)) throw error(errc::precondition, "LP returned infeasible tiling");
    if (!out.cover.feasible_for(homs)) throw error(errc::precondition, "LP returned infeasible cover");
    if (out.cover.size() != out.tiling.total_mass())
        throw error(errc::precondition, "strong duality violated");
    return out;
}

inline FractionalTiling max_fractional_tiling(const Graph& g, const Graph& f,
                                              const HomOptions& opt = {}) {
    return fractional_tiling_lp(g, f, opt).tiling;
}

inline FractionalCover min_fractional_cover(const Graph& g, const Graph& f,
                                            const HomOptions& opt = {}) {
    return fractional_tiling_lp(g, f, opt).cover;
}

// omega''(theta'') = sum of omega'(theta') * omega(theta) over compositions
// theta' . theta = theta''. Requires the inner tiling to be perfect on B, and
// preserves the outer weight.
inline FractionalTiling compose_tilings(const FractionalTiling& outer, const Graph& host_b,
                                        const FractionalTiling& inner) {
    if (inner.weight() != Rational(Int(host_b.n())))
        throw error(errc::precondition, "inner tiling must be perfect on its host");
    std::map<std::vector<Vertex>, Rational> acc;
    for (size_t oi = 0; oi < outer.homs.size(); ++oi)
        for (size_t ii = 0; ii < inner.homs.size(); ++ii) {
            std::vector<Vertex> comp(inner.homs[ii].map.size());
            for (size_t u = 0; u < comp.size(); ++u) comp[u] = outer.homs[oi].map[inner.homs[ii].map[u]];
            acc[comp] += outer.weights[oi] * inner.weights[ii];
        }
    FractionalTiling out;
    out.tile = inner.tile;
    for (auto& [mapvec, w] : acc) {
        out.homs.push_back(Homomorphism{mapvec});
        out.weights.push_back(w);
    }
    return out;
}

// Union of homomorphic images of F covering most of R with bounded per-vertex
// multiplicity.
struct HomCover {
    std::vector<Homomorphism> images;   // homs of F into R
    int max_multiplicity = 0;           // images through a single vertex
    int covered = 0;                    // distinct covered vertices of R
    bool ok = false;
};

namespace detail {

// Injective lifts of theta into the f-blow-up: every preimage class is
// spread over distinct clones of its target.
inline void lift_hom_rec(const Homomorphism& theta, int f, size_t u,
                         std::vector<Vertex>& cur, std::vector<std::set<int>>& used,
                         std::vector<std::vector<Vertex>>& out) {
    if (u == theta.map.size()) {
        out.push_back(cur);
        return;
    }
    Vertex base = theta.map[u];
    for (int clone = 0; clone < f; ++clone) {
        if (used[base].count(clone)) continue;
        used[base].insert(clone);
        cur[u] = base * f + clone;
        lift_hom_rec(theta, f, u + 1, cur, used, out);
        used[base].erase(clone);
    }
}

}  // namespace detail

// Constructive bounded-degree cover: pad to a perfect tiling if needed, lift
// to the f-blow-up, cover the support hypergraph greedily with repair, and
// project back. The multiplicity bound f^2+1 per blow-up vertex (hence f^4
// per vertex of R) is asserted on the result, never assumed.
inline HomCover bounded_degree_cover(const Graph& r, const Graph& f, const FractionalTiling& tiling,
                                     const Rational& rho) {
    int fn = f.n();
    if (fn < 2) throw error(errc::precondition, "tile must have at least 2 vertices");
    Rational f6 = Rational(Int(fn)) * Int(fn) * Int(fn) * Int(fn) * Int(fn) * Int(fn);
    if (rho * f6 >= Rational(1)) throw error(errc::precondition, "requires rho < 1/f^6");
    if (tiling.weight() < (Rational(1) - rho) * Int(r.n()))
        throw error(errc::precondition, "tiling is not (1-rho)-perfect");

    // Pad with universal vertices until a perfect tiling exists, then re-solve.
    Graph r0 = r;
    FractionalTiling perfect = tiling;
    if (tiling.weight() != Rational(Int(r.n()))) {
        int pad = static_cast<int>(to_ll(rat_ceil(rho * Int(r.n())))) * (fn - 1);
        pad = std::max(pad, fn);
        Graph padded(r.n() + pad);
        for (auto [u, v] : r.edges()) padded.add_edge(u, v);
        for (int p = 0; p < pad; ++p)
            for (int u = 0; u < r.n() + p; ++u) padded.add_edge(u, r.n() + p);
        r0 = padded;
        auto lpr = fractional_tiling_lp(r0, f);
        if (lpr.tiling.weight() != Rational(Int(r0.n())))
            throw error(errc::cover_failed, "padded host admits no perfect fractional tiling");
        perfect = lpr.tiling;
    }

    // Support hypergraph on the blow-up, remembering a generating hom per edge.
    struct JEdge {
        std::vector<Vertex> verts;  // sorted
        int hom_index;              // into perfect.homs
    };
    std::vector<JEdge> jedges;
    std::map<std::vector<Vertex>, int> seen;
    for (size_t hi = 0; hi < perfect.homs.size(); ++hi) {
        std::vector<std::vector<Vertex>> lifts;
        std::vector<Vertex> cur(perfect.homs[hi].map.size());
        std::vector<std::set<int>> used(r0.n());
        detail::lift_hom_rec(perfect.homs[hi], fn, 0, cur, used, lifts);
        for (auto& lift : lifts) {
            std::vector<Vertex> vs = lift;
            std::sort(vs.begin(), vs.end());
            if (!seen.count(vs)) {
                seen[vs] = static_cast<int>(jedges.size());
                jedges.push_back(JEdge{vs, static_cast<int>(hi)});
            }
        }
    }

    int nstar = r0.n() * fn;
    std::vector<char> covered(nstar, 0);
    std::vector<int> degree(nstar, 0);
    std::vector<int> chosen;
    int remaining = nstar;
    while (remaining > 0) {
        int best = -1, best_new = 0;
        for (size_t e = 0; e < jedges.size(); ++e) {
            int nw = 0;
            for (Vertex v : jedges[e].verts)
                if (!covered[v]) ++nw;
            if (nw > best_new) {
                best_new = nw;
                best = static_cast<int>(e);
            }
        }
        if (best < 0) {
            HomCover fail;
            fail.ok = false;
            return fail;  // some blow-up vertex lies in no support edge
        }
        chosen.push_back(best);
        for (Vertex v : jedges[best].verts) {
            if (!covered[v]) --remaining;
            covered[v] = 1;
            ++degree[v];
        }
    }
    // Drop redundant edges (all vertices multiply covered), highest index first.
    for (int i = static_cast<int>(chosen.size()) - 1; i >= 0; --i) {
        bool redundant = true;
        for (Vertex v : jedges[chosen[i]].verts)
            if (degree[v] <= 1) {
                redundant = false;
                break;
            }
        if (redundant) {
            for (Vertex v : jedges[chosen[i]].verts) --degree[v];
            chosen.erase(chosen.begin() + i);
        }
    }
    int dmax = *std::max_element(degree.begin(), degree.end());
    if (dmax > fn * fn + 1) {
        HomCover fail;
        fail.ok = false;
        fail.max_multiplicity = dmax;
        throw error(errc::cover_failed,
                    "cover degree " + std::to_string(dmax) + " exceeds f^2+1 after repair");
    }

    // Project to R, dropping images that touch padding and collapsing
    // distinct lifts of the same homomorphic image.
    HomCover out;
    std::vector<int> mult(r.n(), 0);
    std::vector<char> cov(r.n(), 0);
    std::set<std::pair<std::vector<Vertex>, std::vector<Edge>>> image_seen;
    for (int e : chosen) {
        const auto& h = perfect.homs[jedges[e].hom_index];
        bool pad_touch = false;
        for (Vertex t : h.map)
            if (t >= r.n()) pad_touch = true;
        if (pad_touch) continue;
        std::set<Vertex> img(h.map.begin(), h.map.end());
        std::set<Edge> img_edges;
        for (auto [u, v] : f.edges()) {
            Vertex a = h.map[u], b = h.map[v];
            img_edges.emplace(std::min(a, b), std::max(a, b));
        }
        auto key = std::make_pair(std::vector<Vertex>(img.begin(), img.end()),
                                  std::vector<Edge>(img_edges.begin(), img_edges.end()));
        if (!image_seen.insert(key).second) continue;
        out.images.push_back(h);
        for (Vertex t : img) {
            ++mult[t];
            cov[t] = 1;
        }
    }
    out.covered = static_cast<int>(std::count(cov.begin(), cov.end(), 1));
    out.max_multiplicity = out.images.empty() ? 0 : *std::max_element(mult.begin(), mult.end());
    Rational coverage_needed = (Rational(1) - rho * f6) * Int(r.n());
    out.ok = Rational(Int(out.covered)) >= coverage_needed &&
             out.max_multiplicity <= fn * fn * fn * fn;
    if (!out.ok)
        throw error(errc::cover_failed, "cover misses the coverage or degree contract");
    return out;
}

}  // namespace tiling
