#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tiling/chromatic.hpp"
#include "tiling/clique.hpp"
#include "tiling/error.hpp"
#include "tiling/fractional.hpp"
#include "tiling/graph.hpp"
#include "tiling/rational.hpp"

namespace tiling {

// Tiling-framework verdict: space (F1), divisibility (F2) and linkage (F3),
// with enough witness data to replay each check.
struct FrameworkReport {
    Rational chi;
    Rational rho;
    int t = 1, l = 1;
    bool f1 = false;
    Rational f1_weight;
    bool f1_perfect = false;
    bool f2 = false;
    TlConnectivity f2_witness;
    bool f3 = false;
    std::vector<Vertex> unlinked;
    bool pass = false;
    long long hom_count = 0;
};

inline FrameworkReport check_framework(const Graph& g, const Rational& chi, const Rational& rho,
                                       int t, int l, const HomOptions& opt = {}) {
    if (chi <= Rational(1)) throw error(errc::precondition, "chi must exceed 1");
    FrameworkReport rep;
    rep.chi = chi;
    rep.rho = rho;
    rep.t = t;
    rep.l = l;

    Graph bottle = bottle_for(chi);
    auto lpr = fractional_tiling_lp(g, bottle, opt);
    rep.hom_count = lpr.hom_count;
    rep.f1_weight = lpr.tiling.weight();
    rep.f1_perfect = rep.f1_weight == Rational(Int(g.n()));
    rep.f1 = rep.f1_weight >= (Rational(1) - rho) * Int(g.n());

    int k = static_cast<int>(to_ll(rat_ceil(chi)));
    auto j = clique_hypergraph(g, k);
    try {
        rep.f2_witness = tl_connectivity(j, t, l);
        rep.f2 = rep.f2_witness.connected;
    } catch (const error& e) {
        if (e.code() != errc::uncoverable) throw;
        rep.f2 = false;
    }

    rep.f3 = true;
    for (Vertex v = 0; v < g.n(); ++v)
        if (!is_linked(j, v)) {
            rep.f3 = false;
            rep.unlinked.push_back(v);
        }
    rep.pass = rep.f1 && rep.f2 && rep.f3;
    return rep;
}

enum class RobustVerdict { pass_exhaustive, pass_sampled, fail };

struct RobustReport {
    RobustVerdict verdict = RobustVerdict::fail;
    long long candidates_checked = 0;
    // Counterexample when failing: deleted vertices plus deleted edges.
    std::vector<Vertex> removed_vertices;
    std::vector<Edge> removed_edges;
};

namespace detail {

inline Graph delete_vertices(const Graph& g, const std::vector<Vertex>& del) {
    std::vector<char> drop(g.n(), 0);
    for (Vertex v : del) drop[v] = 1;
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.n(); ++v)
        if (!drop[v]) keep.push_back(v);
    return g.induced(keep);
}

inline Graph delete_edges(const Graph& g, const std::vector<Edge>& del) {
    Graph out(g.n());
    for (auto [u, v] : g.edges()) {
        bool dropped = false;
        for (auto [a, b] : del)
            if ((a == u && b == v) || (a == v && b == u)) dropped = true;
        if (!dropped) out.add_edge(u, v);
    }
    return out;
}

}  // namespace detail

// Robustness of the framework property under (mu,mu)-approximations:
// exhaustive over vertex deletions when the count is small, adversarial and
// sampled edge deletions on top. Sampled verdicts are never conflated with
// exhaustive ones.
inline RobustReport check_robust(const Graph& g, const Rational& mu, const Rational& chi,
                                 const Rational& rho, int t, int l, unsigned long long seed = 0,
                                 long long enumeration_cap = 100'000,
                                 const HomOptions& opt = {}) {
    if (mu <= Rational(0) || mu > Rational(1))
        throw error(errc::precondition, "mu must lie in (0,1]");
    RobustReport rep;
    int n = g.n();
    long long max_del = to_ll(rat_floor(mu * Int(n)));
    long long deg_slack = to_ll(rat_floor(mu * Int(n)));

    // All vertex subsets of size <= max_del, if affordable.
    long long count = 1, binom = 1;
    for (long long d = 1; d <= max_del; ++d) {
        binom = binom * (n - d + 1) / d;
        count += binom;
        if (count > enumeration_cap) break;
    }
    bool exhaustive = count <= enumeration_cap;

    std::mt19937_64 rng(seed);
    auto framework_holds = [&](const Graph& sub) {
        try {
            return check_framework(sub, chi, rho, t, l, opt).pass;
        } catch (const error& e) {
            if (e.code() == errc::capped) throw;
            return false;
        }
    };

    // Adversarial edge deletion: remove the highest-F1-load edges subject to
    // the per-vertex degree-loss cap.
    auto adversarial_edges = [&](const Graph& sub) {
        std::vector<Edge> del;
        if (sub.edge_count() == 0 || deg_slack == 0) return del;
        Graph bottle = bottle_for(chi);
        std::map<Edge, Rational> load;
        try {
            auto lpr = fractional_tiling_lp(sub, bottle, opt);
            for (size_t i = 0; i < lpr.tiling.homs.size(); ++i) {
                const auto& hm = lpr.tiling.homs[i].map;
                for (auto [u, v] : bottle.edges()) {
                    Edge e{std::min(hm[u], hm[v]), std::max(hm[u], hm[v])};
                    load[e] += lpr.tiling.weights[i];
                }
            }
        } catch (const error&) {
            return del;
        }
        std::vector<std::pair<Rational, Edge>> ranked;
        for (auto& [e, w] : load) ranked.emplace_back(w, e);
        std::sort(ranked.begin(), ranked.end(),
                  [](const auto& a, const auto& b) { return b.first < a.first; });
        std::vector<long long> lost(sub.n(), 0);
        for (auto& [w, e] : ranked) {
            if (lost[e.first] + 1 > deg_slack || lost[e.second] + 1 > deg_slack) continue;
            del.push_back(e);
            ++lost[e.first];
            ++lost[e.second];
        }
        return del;
    };

    auto consider = [&](const std::vector<Vertex>& vdel) -> bool {
        Graph sub = detail::delete_vertices(g, vdel);
        ++rep.candidates_checked;
        if (!framework_holds(sub)) {
            rep.removed_vertices = vdel;
            return false;
        }
        auto edel = adversarial_edges(sub);
        if (!edel.empty()) {
            ++rep.candidates_checked;
            if (!framework_holds(detail::delete_edges(sub, edel))) {
                rep.removed_vertices = vdel;
                rep.removed_edges = edel;
                return false;
            }
        }
        return true;
    };

    if (exhaustive) {
        // Enumerate subsets of size 0..max_del.
        std::vector<Vertex> cur;
        std::function<bool(int, long long)> rec = [&](int start, long long left) -> bool {
            if (!consider(cur)) return false;
            if (left == 0) return true;
            for (int v = start; v < n; ++v) {
                cur.push_back(v);
                bool ok = rec(v + 1, left - 1);
                cur.pop_back();
                if (!ok) return false;
            }
            return true;
        };
        if (!rec(0, max_del)) {
            rep.verdict = RobustVerdict::fail;
            return rep;
        }
        rep.verdict = RobustVerdict::pass_exhaustive;
        return rep;
    }

    // Seeded sampling of vertex deletions.
    const int samples = 64;
    for (int it = 0; it < samples; ++it) {
        std::vector<Vertex> pool(n);
        std::iota(pool.begin(), pool.end(), 0);
        std::shuffle(pool.begin(), pool.end(), rng);
        long long d = max_del == 0 ? 0 : static_cast<long long>(rng() % (max_del + 1));
        std::vector<Vertex> vdel(pool.begin(), pool.begin() + d);
        std::sort(vdel.begin(), vdel.end());
        if (!consider(vdel)) {
            rep.verdict = RobustVerdict::fail;
            return rep;
        }
    }
    rep.verdict = RobustVerdict::pass_sampled;
    return rep;
}

struct DegreeFrameworkReport {
    bool hypothesis = false;  // delta(G) >= (1 - 1/chi + mu) n
    Rational t_formula;
    int t = 0, l = 0;
    std::optional<FrameworkReport> conclusion;
};

// Minimum-degree sufficient condition: computes the implied budgets
// t = k^{4k} / (chi + 1 - k + mu/2)^k (l = t when k = 2, else 1) and runs
// the framework check at chi + mu/4 with rho = 0.
inline DegreeFrameworkReport check_degree_framework(const Graph& g, const Rational& chi,
                                                    const Rational& mu,
                                                    const HomOptions& opt = {}) {
    DegreeFrameworkReport rep;
    int n = g.n();
    Rational need = (Rational(1) - Rational(1) / chi + mu) * Int(n);
    rep.hypothesis = Rational(Int(g.min_degree())) >= need;
    int k = static_cast<int>(to_ll(rat_ceil(chi)));
    Rational denom = chi + Rational(1) - Rational(Int(k)) + mu / Int(2);
    if (denom <= Rational(0)) throw error(errc::precondition, "chi + 1 - k + mu/2 must be positive");
    Rational tf(1);
    for (int i = 0; i < 4 * k; ++i) tf *= Int(k);
    for (int i = 0; i < k; ++i) tf /= denom;
    rep.t_formula = tf;
    rep.t = static_cast<int>(to_ll(rat_ceil(tf)));
    rep.l = k == 2 ? rep.t : 1;
    if (!rep.hypothesis) return rep;
    rep.conclusion = check_framework(g, chi + mu / Int(4), Rational(0), rep.t, rep.l, opt);
    return rep;
}

// Degree-sequence strength: d_i >= (1 - 1/chi - alpha) n + chi alpha i + mu n
// for all i in [n/chi], with alpha = 1 - (ceil(chi)-1)/chi.
inline bool check_strong_degree_sequence(const Graph& g, const Rational& chi, const Rational& mu) {
    if (chi <= Rational(0)) throw error(errc::precondition, "chi must be positive");
    int n = g.n();
    std::vector<int> degs(n);
    for (Vertex v = 0; v < n; ++v) degs[v] = g.degree(v);
    std::sort(degs.begin(), degs.end());
    int k = static_cast<int>(to_ll(rat_ceil(chi)));
    Rational alpha = Rational(1) - Rational(Int(k - 1)) / chi;
    long long top = to_ll(rat_floor(Rational(Int(n)) / chi));
    for (long long i = 1; i <= top; ++i) {
        Rational bound = (Rational(1) - Rational(1) / chi - alpha) * Int(n) +
                         chi * alpha * Int(i) + mu * Int(n);
        if (Rational(Int(degs[i - 1])) < bound) return false;
    }
    return true;
}

struct DensityReport {
    bool pass = false;
    bool exhaustive = false;
    bool degree_ok = false;
    std::vector<Vertex> witness;  // violating U when failing
};

// (rho,d)-uniform density: e(U) >= d |U|^2 / 2 - rho n^2 for every U, checked
// exhaustively for n <= 20 and on extremal/sampled candidates beyond that;
// also requires delta(G) >= mu n.
inline DensityReport check_uniform_density(const Graph& g, const Rational& rho, const Rational& d,
                                           const Rational& mu, unsigned long long seed = 0) {
    DensityReport rep;
    int n = g.n();
    rep.degree_ok = Rational(Int(g.min_degree())) >= mu * Int(n);

    auto edges_within = [&](const std::vector<Vertex>& u) {
        long long e = 0;
        for (size_t i = 0; i < u.size(); ++i)
            for (size_t j = i + 1; j < u.size(); ++j)
                if (g.has_edge(u[i], u[j])) ++e;
        return e;
    };
    auto dense_enough = [&](const std::vector<Vertex>& u) {
        Rational lhs(Int(edges_within(u)));
        Rational rhs = d * Int(static_cast<long long>(u.size()) * u.size()) / Int(2) -
                       rho * Int(static_cast<long long>(n) * n);
        return lhs >= rhs;
    };

    if (n <= 20) {
        rep.exhaustive = true;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<Vertex> u;
            for (int v = 0; v < n; ++v)
                if (mask >> v & 1) u.push_back(v);
            if (!dense_enough(u)) {
                rep.witness = u;
                rep.pass = false;
                return rep;
            }
        }
        rep.pass = rep.degree_ok;
        return rep;
    }

    rep.exhaustive = false;
    // Extremal candidates: degree-ordered prefixes and neighbourhoods.
    std::vector<std::vector<Vertex>> candidates;
    std::vector<Vertex> by_degree(n);
    std::iota(by_degree.begin(), by_degree.end(), 0);
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
    for (int len = 1; len <= n; ++len)
        candidates.emplace_back(by_degree.begin(), by_degree.begin() + len);
    for (Vertex v = 0; v < n; ++v) candidates.push_back(g.neighbours(v));
    std::mt19937_64 rng(seed);
    for (int it = 0; it < 256; ++it) {
        std::vector<Vertex> u;
        for (Vertex v = 0; v < n; ++v)
            if (rng() & 1) u.push_back(v);
        candidates.push_back(std::move(u));
    }
    for (auto& u : candidates)
        if (!dense_enough(u)) {
            rep.witness = u;
            rep.pass = false;
            return rep;
        }
    rep.pass = rep.degree_ok;
    return rep;
}

struct BackstopResult {
    std::vector<int> chosen_tight;  // ids in the full decomposition
    int tight_count = 0;
    int loose_count = 0;
};

// Greedy spanning subgraph: every vertex contributes the largest tight
// component through one of its edges, then tight components are added while
// they merge loose components.
inline BackstopResult backstop_reduce(const CliqueHypergraph& j) {
    auto d = decompose(j);
    std::vector<char> covered(j.n, 0);
    for (const auto& e : j.edges)
        for (Vertex v : e) covered[v] = 1;
    for (Vertex v = 0; v < j.n; ++v)
        if (!covered[v])
            throw error(errc::uncoverable, "vertex " + std::to_string(v) + " lies in no edge");

    int c = static_cast<int>(d.tight.size());
    std::vector<int> comp_sizes(c);
    for (int i = 0; i < c; ++i) comp_sizes[i] = static_cast<int>(d.tight[i].size());

    // Per vertex, the largest tight component whose support contains it.
    std::set<int> chosen_set;
    for (Vertex v = 0; v < j.n; ++v) {
        int best = -1;
        for (int i = 0; i < c; ++i)
            if (std::binary_search(d.tight_vertices[i].begin(), d.tight_vertices[i].end(), v))
                if (best < 0 || comp_sizes[i] > comp_sizes[best]) best = i;
        chosen_set.insert(best);
    }
    std::vector<int> chosen(chosen_set.begin(), chosen_set.end());

    auto loose_of = [&](const std::vector<int>& comps) {
        return detail::loose_count_of_subset(d, comps);
    };
    bool improved = true;
    while (improved) {
        improved = false;
        int cur = loose_of(chosen);
        if (cur <= 1) break;
        int pick = -1, best_after = cur;
        for (int i = 0; i < c; ++i) {
            if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
            auto trial = chosen;
            trial.push_back(i);
            int after = loose_of(trial);
            if (after < best_after) {
                best_after = after;
                pick = i;
            }
        }
        if (pick >= 0) {
            chosen.push_back(pick);
            std::sort(chosen.begin(), chosen.end());
            improved = true;
        }
    }

    BackstopResult out;
    out.chosen_tight = chosen;
    out.tight_count = static_cast<int>(chosen.size());
    out.loose_count = loose_of(chosen);
    return out;
}

}  // namespace tiling
