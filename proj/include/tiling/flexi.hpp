#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tiling/chromatic.hpp"
#include "tiling/error.hpp"
#include "tiling/flow.hpp"
#include "tiling/graph.hpp"
#include "tiling/guest.hpp"
#include "tiling/oracles.hpp"
#include "tiling/rational.hpp"

namespace tiling {

// Certificate that every balanced demand vector of max-norm at most s can be
// absorbed around the central colouring, up to slack p. Witnesses are stored
// per demand and re-checkable without trusting the construction.
struct FlexiCertificate {
    ColourKind kind = ColourKind::proper;
    int k = 1;
    int s = 0;
    int p = 0;
    Colouring central;
    std::map<std::vector<int>, Colouring> witnesses;
};

// All w in Z^k with sum 0 and max-norm <= s, lexicographic.
inline std::vector<std::vector<int>> enumerate_demands(int k, int s) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k, 0);
    std::function<void(int, int)> rec = [&](int i, int sum) {
        if (i == k - 1) {
            cur[i] = -sum;
            if (std::abs(cur[i]) <= s) out.push_back(cur);
            return;
        }
        for (int v = -s; v <= s; ++v) {
            cur[i] = v;
            rec(i + 1, sum + v);
        }
    };
    if (k == 0) return out;
    rec(0, 0);
    return out;
}

struct CertCheck {
    bool ok = true;
    std::string reason;
};

// Independent verifier: checks the central colouring, then every demand
// against its stored witness. Shares no state with any construction.
inline CertCheck verify_certificate(const Graph& g, const FlexiCertificate& cert) {
    CertCheck out;
    auto fail = [&](std::string why) {
        out.ok = false;
        out.reason = std::move(why);
        return out;
    };
    if (cert.central.k != cert.k || static_cast<int>(cert.central.colour.size()) != g.n())
        return fail("central colouring shape mismatch");
    if (!cert.central.matches(g, cert.kind)) return fail("central colouring violates kind");
    auto base = cert.central.ord();
    for (const auto& w : enumerate_demands(cert.k, cert.s)) {
        auto it = cert.witnesses.find(w);
        if (it == cert.witnesses.end()) {
            std::string d = "missing witness for demand (";
            for (int x : w) d += std::to_string(x) + ",";
            return fail(d + ")");
        }
        const Colouring& wit = it->second;
        if (wit.k != cert.k || static_cast<int>(wit.colour.size()) != g.n())
            return fail("witness shape mismatch");
        if (!wit.matches(g, cert.kind)) return fail("witness violates kind");
        auto o = wit.ord();
        for (int c = 0; c < cert.k; ++c)
            if (std::abs(base[c] - o[c] - w[c]) > cert.p) return fail("witness deviates beyond p");
    }
    return out;
}

// Deterministic subsample of the demand grid: every step-th demand plus the
// extremes; used when full verification is outside the budget.
inline CertCheck verify_certificate_sampled(const Graph& g, const FlexiCertificate& cert,
                                            int max_demands) {
    auto demands = enumerate_demands(cert.k, cert.s);
    if (static_cast<int>(demands.size()) <= max_demands) return verify_certificate(g, cert);
    CertCheck out;
    auto base = cert.central.ord();
    if (!cert.central.matches(g, cert.kind)) {
        out.ok = false;
        out.reason = "central colouring violates kind";
        return out;
    }
    size_t step = demands.size() / static_cast<size_t>(max_demands) + 1;
    for (size_t i = 0; i < demands.size(); i += step) {
        const auto& w = demands[i];
        auto it = cert.witnesses.find(w);
        if (it == cert.witnesses.end() || !it->second.matches(g, cert.kind)) {
            out.ok = false;
            out.reason = "sampled demand failed";
            return out;
        }
        auto o = it->second.ord();
        for (int c = 0; c < cert.k; ++c)
            if (std::abs(base[c] - o[c] - w[c]) > cert.p) {
                out.ok = false;
                out.reason = "sampled witness deviates beyond p";
                return out;
            }
    }
    return out;
}

struct FlexiOutcome {
    SearchStatus status = SearchStatus::undecided;
    std::optional<FlexiCertificate> certificate;
    // One unmatched demand per candidate central ord; exhaustive on refuted.
    std::vector<std::pair<OrdVec, std::vector<int>>> refutation;
    long long budget_used = 0;
};

// Search for a certificate by enumerating central ord vectors (balanced
// first) over the realisable ord set; refutation is exhaustive whenever the
// budget survives the whole scan. Only ord vectors matter: colourings with
// equal ord are interchangeable in every demand check.
inline FlexiOutcome certify_flexi(const TiledGuest& h, ColourKind kind, int k, int s, int p,
                                  long long budget_limit = 10'000'000) {
    if (k < 1 || s < 0 || p < 0) throw error(errc::precondition, "need k >= 1, s >= 0, p >= 0");
    Budget budget{budget_limit, 0};
    FlexiOutcome out;
    try {
        std::vector<std::vector<OrdVec>> piece_ords;
        for (const auto& t : h.tiles()) {
            if (kind == ColourKind::topological) {
                std::vector<std::vector<OrdVec>> comp_ords;
                for (const auto& cvs : t.components())
                    comp_ords.push_back(
                        detail::component_topological_ords(static_cast<int>(cvs.size()), k));
                auto cd = compose_ords(comp_ords, k, t.n());
                piece_ords.push_back(cd.final_set().all());
            } else {
                piece_ords.push_back(graph_ord_vectors(t, k, ColourKind::proper, budget));
            }
            if (piece_ords.back().empty()) {
                out.status = SearchStatus::none;  // no colouring at all
                out.budget_used = budget.used;
                return out;
            }
        }
        auto dp = compose_ords(piece_ords, k, h.order());
        const OrdSet& realizable = dp.final_set();
        auto demands = enumerate_demands(k, s);
        auto centrals = realizable.all();
        // Balanced centrals first, then lexicographic.
        int n = h.order();
        auto imbalance = [&](const OrdVec& o) {
            long long dev = 0;
            for (int c = 0; c < k; ++c)
                dev = std::max<long long>(dev, std::llabs(static_cast<long long>(o[c]) * k - n));
            return dev;
        };
        std::stable_sort(centrals.begin(), centrals.end(), [&](const OrdVec& a, const OrdVec& b) {
            return imbalance(a) < imbalance(b);
        });
        auto deviations = enumerate_demands(k, p);
        for (const auto& central : centrals) {
            std::vector<int> bad;
            bool all_ok = true;
            for (const auto& w : demands) {
                if (!budget.spend()) throw error(errc::budget, "certification budget exhausted");
                bool found = false;
                OrdVec target(k);
                for (int c = 0; c < k; ++c) target[c] = central[c] - w[c];
                if (p == 0) {
                    found = realizable.contains(target);
                } else {
                    for (const auto& d : deviations) {
                        OrdVec t2(k);
                        for (int c = 0; c < k; ++c) t2[c] = target[c] + d[c];
                        if (realizable.contains(t2)) {
                            found = true;
                            break;
                        }
                    }
                }
                if (!found) {
                    all_ok = false;
                    bad = w;
                    break;
                }
            }
            if (!all_ok) {
                out.refutation.emplace_back(central, bad);
                continue;
            }
            // Certificate: reconstruct the central and one witness per demand.
            FlexiCertificate cert;
            cert.kind = kind;
            cert.k = k;
            cert.s = s;
            cert.p = p;
            Graph flat = h.flatten();
            auto cc = colouring_with_ord(flat, k, central, kind, budget);
            if (!cc) throw error(errc::budget, "central reconstruction failed");
            cert.central = *cc;
            for (const auto& w : demands) {
                OrdVec target(k);
                for (int c = 0; c < k; ++c) target[c] = central[c] - w[c];
                std::optional<Colouring> wit;
                if (p == 0) {
                    wit = colouring_with_ord(flat, k, target, kind, budget);
                } else {
                    for (const auto& d : deviations) {
                        OrdVec t2(k);
                        for (int c = 0; c < k; ++c) t2[c] = target[c] + d[c];
                        if (realizable.contains(t2)) {
                            wit = colouring_with_ord(flat, k, t2, kind, budget);
                            if (wit) break;
                        }
                    }
                }
                if (!wit) throw error(errc::budget, "witness reconstruction failed");
                cert.witnesses[w] = *wit;
            }
            out.status = SearchStatus::found;
            out.certificate = std::move(cert);
            out.budget_used = budget.used;
            return out;
        }
        out.status = SearchStatus::none;
        out.budget_used = budget.used;
        return out;
    } catch (const error& e) {
        if (e.code() != errc::budget) throw;
        out.status = SearchStatus::undecided;
        out.budget_used = budget.used;
        return out;
    }
}

inline Colouring concat_colourings(const Colouring& a, const Colouring& b) {
    Colouring out;
    out.k = std::max(a.k, b.k);
    out.colour = a.colour;
    out.colour.insert(out.colour.end(), b.colour.begin(), b.colour.end());
    return out;
}

inline TiledGuest concat_guests(const TiledGuest& a, const TiledGuest& b) {
    std::vector<Graph> tiles = a.tiles();
    tiles.insert(tiles.end(), b.tiles().begin(), b.tiles().end());
    return TiledGuest(std::move(tiles));
}

struct WildcardResult {
    TiledGuest guest;
    FlexiCertificate certificate;
};

// Disjoint union of two certified graphs: the W1 witness absorbs the demand,
// the W2 witness corrects the residual. Requires s2 >= p1; yields (k, s1, p2).
inline WildcardResult flexi_sum(const TiledGuest& w1, const FlexiCertificate& c1,
                                const TiledGuest& w2, const FlexiCertificate& c2) {
    if (c1.kind != c2.kind) throw error(errc::precondition, "certificate kinds differ");
    if (c1.k != c2.k) throw error(errc::precondition, "certificate colour counts differ");
    if (c2.s < c1.p) throw error(errc::precondition, "needs s2 >= p1");
    int k = c1.k;
    WildcardResult out;
    out.guest = concat_guests(w1, w2);
    FlexiCertificate& cert = out.certificate;
    cert.kind = c1.kind;
    cert.k = k;
    cert.s = c1.s;
    cert.p = c2.p;
    cert.central = concat_colourings(c1.central, c2.central);
    auto ord1 = c1.central.ord();
    for (const auto& w : enumerate_demands(k, c1.s)) {
        auto it1 = c1.witnesses.find(w);
        if (it1 == c1.witnesses.end())
            throw error(errc::precondition, "first certificate misses a demand witness");
        auto o1 = it1->second.ord();
        std::vector<int> residual(k);
        for (int c = 0; c < k; ++c) residual[c] = -(ord1[c] - o1[c] - w[c]);
        auto it2 = c2.witnesses.find(residual);
        if (it2 == c2.witnesses.end())
            throw error(errc::precondition, "second certificate misses the residual witness");
        cert.witnesses[w] = concat_colourings(it1->second, it2->second);
    }
    return out;
}

// One part of a wildcard assembly: a guest with a base colouring and, for
// each y in [range], a colouring that grows class k by y (up to tol) while
// classes 1..k-2 stay fixed.
struct ShiftPart {
    TiledGuest guest;
    Colouring base;
    std::vector<Colouring> shifts;  // shifts[y-1] realises +y
    int tol = 0;
};

namespace detail {

// Permutation on colours 1..k sending k-1 -> i and k -> j (k >= 2),
// remaining colours to the remaining targets in increasing order.
inline std::vector<int> pair_permutation(int k, int i, int j) {
    std::vector<int> sigma(k + 1, 0);
    sigma[k - 1] = i;
    sigma[k] = j;
    std::vector<char> taken(k + 1, 0);
    taken[i] = taken[j] = 1;
    int next = 1;
    for (int c = 1; c <= k - 2; ++c) {
        while (taken[next]) ++next;
        sigma[c] = next;
        taken[next] = 1;
    }
    return sigma;
}

inline Colouring permute_colouring(const Colouring& col, const std::vector<int>& sigma) {
    Colouring out = col;
    for (auto& c : out.colour) c = sigma[c];
    return out;
}

}  // namespace detail

// Assembles k^2 shift parts into a (k, w/k, k*tol)-flexi-chromatic
// certificate for their union. Demands are decomposed into pairwise
// transfers by a flow on the complete graph over the colour classes; the
// ordered pair (i,j) owns the part that realises transfers from class i to
// class j. Idle parts keep their base colouring throughout.
inline WildcardResult build_wildcards(const std::vector<ShiftPart>& parts, ColourKind kind, int k,
                                      int w_role, int p) {
    if (static_cast<int>(parts.size()) != k * k)
        throw error(errc::precondition, "expected k^2 parts, got " + std::to_string(parts.size()));
    if (p >= w_role && w_role > 0)
        throw error(errc::precondition, "needs p < w");
    if (w_role < 0) throw error(errc::precondition, "w must be nonnegative");

    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j)
            if (i != j) pairs.emplace_back(i, j);
    int active = static_cast<int>(pairs.size());

    int s_out = k >= 1 ? w_role / k : 0;
    int p_out = k * p;

    // Permuted bases form the central colouring.
    std::vector<std::vector<int>> sigmas(parts.size());
    std::vector<Colouring> central_parts(parts.size());
    for (size_t pi = 0; pi < parts.size(); ++pi) {
        if (static_cast<int>(pi) < active && k >= 2)
            sigmas[pi] = detail::pair_permutation(k, pairs[pi].first, pairs[pi].second);
        else {
            sigmas[pi].resize(k + 1);
            std::iota(sigmas[pi].begin(), sigmas[pi].end(), 0);
        }
        central_parts[pi] = detail::permute_colouring(parts[pi].base, sigmas[pi]);
    }

    WildcardResult out;
    for (const auto& part : parts) out.guest = concat_guests(out.guest, part.guest);
    FlexiCertificate& cert = out.certificate;
    cert.kind = kind;
    cert.k = k;
    cert.s = s_out;
    cert.p = p_out;
    {
        Colouring central;
        central.k = k;
        for (const auto& cp : central_parts)
            central.colour.insert(central.colour.end(), cp.colour.begin(), cp.colour.end());
        cert.central = central;
    }
    auto base_ord = cert.central.ord();

    Graph kk = complete_graph(k);
    for (const auto& d : enumerate_demands(k, s_out)) {
        // Net gain of class c must be -d(c).
        std::vector<long long> gain(k);
        for (int c = 0; c < k; ++c) gain[c] = -d[c];
        Flow flow = k >= 2 ? weights_to_flow(kk, gain) : Flow{};
        Colouring wit;
        wit.k = k;
        for (size_t pi = 0; pi < parts.size(); ++pi) {
            const Colouring* chosen = &central_parts[pi];
            if (static_cast<int>(pi) < active && k >= 2) {
                auto [i, j] = pairs[pi];
                long long y = flow.value(i - 1, j - 1);
                if (y > 0) {
                    if (y > static_cast<long long>(parts[pi].shifts.size()))
                        throw error(errc::precondition,
                                    "missing shift witness for y=" + std::to_string(y));
                    chosen = nullptr;
                    Colouring shifted = detail::permute_colouring(
                        parts[pi].shifts[static_cast<size_t>(y - 1)], sigmas[pi]);
                    wit.colour.insert(wit.colour.end(), shifted.colour.begin(),
                                      shifted.colour.end());
                }
            }
            if (chosen)
                wit.colour.insert(wit.colour.end(), chosen->colour.begin(), chosen->colour.end());
        }
        auto o = wit.ord();
        for (int c = 0; c < k; ++c)
            if (std::abs(base_ord[c] - o[c] - d[c]) > p_out)
                throw error(errc::construction_failed, "assembled witness deviates beyond kp");
        cert.witnesses[d] = std::move(wit);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Interval transversals.

struct IntervalResult {
    std::vector<int> x;  // chosen values, one per input set
    long long z = 0;     // [z, z+w] is contained in the subset sums, verified
    long long length = 0;  // longest verified run of consecutive sums
};

namespace detail {

inline std::set<long long> prime_factors(long long x) {
    std::set<long long> out;
    for (long long p = 2; p * p <= x; ++p)
        while (x % p == 0) {
            out.insert(p);
            x /= p;
        }
    if (x > 1) out.insert(x);
    return out;
}

// Chooses one value per set so the subset sums become interval-rich: blocks
// of three pairwise-distinct values extended by a prime-elimination chain
// (mixed case), or x1 + A blocks (identical case). Leftover sets contribute
// their minimum.
inline std::vector<int> choose_transversal(const std::vector<std::vector<int>>& sets,
                                           bool identical) {
    int s = static_cast<int>(sets.size());
    // A zero pick contributes nothing to the sumset, so defaults and block
    // anchors use the smallest positive element (gcd 1 guarantees one).
    auto min_pos = [](const std::vector<int>& a) {
        int best = 0;
        for (int v : a)
            if (v > 0 && (best == 0 || v < best)) best = v;
        return best;
    };
    std::vector<int> x(s);
    for (int i = 0; i < s; ++i) x[i] = min_pos(sets[i]);

    if (identical) {
        const auto& a = sets[0];
        std::vector<int> pos_a;
        for (int v : a)
            if (v > 0) pos_a.push_back(v);
        std::sort(pos_a.begin(), pos_a.end());
        if (pos_a.size() <= 1) return x;  // only {1} (up to zeros) has gcd 1
        int n = static_cast<int>(pos_a.size()) + 1;
        int q = s / n;
        int at = 0;
        for (int b = 0; b < q; ++b) {
            x[at++] = pos_a[0];
            for (int v : pos_a) x[at++] = v;
        }
        return x;
    }

    int next = 0;
    while (s - next >= 3) {
        int i1 = next, i2 = next + 1, i3 = next + 2;
        int a = -1, b = -1, c = -1;
        for (int va : sets[i1]) {
            for (int vb : sets[i2]) {
                if (vb == va) continue;
                for (int vc : sets[i3])
                    if (vc != va && vc != vb) {
                        a = va;
                        b = vb;
                        c = vc;
                        break;
                    }
                if (c >= 0) break;
            }
            if (c >= 0) break;
        }
        if (c < 0) {
            // Degenerate sets: either some set is (up to zeros) {1}, or all
            // three share two values; the positive minima already written
            // serve as the block.
            next += 3;
            continue;
        }
        x[i1] = a == 0 ? x[i1] : a;
        x[i2] = b == 0 ? x[i2] : b;
        x[i3] = c == 0 ? x[i3] : c;
        next += 3;
        auto common = prime_factors(c);
        while (!common.empty() && next < s) {
            int pick = -1;
            size_t best_left = common.size() + 1;
            for (int v : sets[next]) {
                if (v == 0) continue;
                auto pf = prime_factors(v);
                std::set<long long> inter;
                for (long long q2 : common)
                    if (pf.count(q2)) inter.insert(q2);
                if (inter.size() < common.size() && inter.size() < best_left) {
                    best_left = inter.size();
                    pick = v;
                }
            }
            if (pick < 0) break;
            x[next] = pick;
            auto pf = prime_factors(pick);
            std::set<long long> inter;
            for (long long q2 : common)
                if (pf.count(q2)) inter.insert(q2);
            common = inter;
            ++next;
        }
    }
    return x;
}

}  // namespace detail

// Transversal multiset whose subset sums contain an interval [z, z+w],
// verified by the subset-sum DP before returning.
inline IntervalResult interval_multiset(const std::vector<std::vector<int>>& sets, bool identical,
                                        int w) {
    int s = static_cast<int>(sets.size());
    if (w < 1) throw error(errc::precondition, "w must be >= 1");
    for (int i = 0; i < s; ++i) {
        if (sets[i].empty()) throw error(errc::precondition, "set " + std::to_string(i) + " empty");
        long long g = 0;
        for (int v : sets[i]) {
            if (v < 0 || v > w)
                throw error(errc::precondition, "set " + std::to_string(i) + " leaves [0,w]");
            g = std::gcd(g, static_cast<long long>(v));
        }
        if (g != 1)
            throw error(errc::precondition, "set " + std::to_string(i) + " has gcd != 1");
    }
    if (identical) {
        for (int i = 1; i < s; ++i)
            if (sets[i] != sets[0])
                throw error(errc::precondition, "identical mode requires equal sets");
        if (s < 10 * w) throw error(errc::precondition, "identical mode needs s >= 10w");
    } else {
        double need = 10.0 * w * std::log(static_cast<double>(w));
        if (static_cast<double>(s) < need)
            throw error(errc::precondition, "mixed mode needs s >= 10 w log w");
    }

    IntervalResult out;
    out.x = detail::choose_transversal(sets, identical);
    auto [z, len] = longest_sum_interval(out.x);
    if (len < w + 1)
        throw error(errc::construction_failed,
                    "subset sums contain no interval of length " + std::to_string(w));
    out.z = z;
    out.length = len;
    if (!subset_sum_dp(out.x, out.z, out.z + w))
        throw error(errc::construction_failed, "DP verification failed");
    return out;
}

// ---------------------------------------------------------------------------
// Wildcard constructions for guests.

namespace detail {

// Subset-sum backtrace over per-tile shift amounts: finds a subset of tiles
// whose x-values sum to target.
inline std::optional<std::vector<char>> subset_with_sum(const std::vector<int>& xs,
                                                        long long target) {
    long long total = std::accumulate(xs.begin(), xs.end(), 0LL);
    if (target < 0 || target > total) return std::nullopt;
    int m = static_cast<int>(xs.size());
    std::vector<std::vector<char>> reach(m + 1, std::vector<char>(total + 1, 0));
    reach[0][0] = 1;
    for (int i = 0; i < m; ++i)
        for (long long t = 0; t <= total; ++t)
            if (reach[i][t]) {
                reach[i + 1][t] = 1;
                if (t + xs[i] <= total) reach[i + 1][t + xs[i]] = 1;
            }
    if (!reach[m][target]) return std::nullopt;
    // Canonical backtrace: skip a tile whenever the remainder stays reachable.
    std::vector<char> pick(m, 0);
    long long t = target;
    for (int i = m; i-- > 0;) {
        if (reach[i][t]) continue;
        pick[i] = 1;
        t -= xs[i];
    }
    if (t != 0) return std::nullopt;
    return pick;
}

// Swap colours k-1 and k inside one tile's colouring.
inline void flip_pair(Colouring& col, int k) {
    for (auto& c : col.colour) {
        if (c == k - 1)
            c = k;
        else if (c == k)
            c = k - 1;
    }
}

}  // namespace detail

// A part whose shifts are realised by flipping tiles between colours k-1 and
// k: tile i flipped contributes x[i] extra vertices to class k. The base
// selection realises sum `base_target`; shift y realises `base_target + y`
// exactly.
inline ShiftPart make_flip_part(const std::vector<Graph>& tiles,
                                const std::vector<Colouring>& tile_cols,
                                const std::vector<int>& xs, int k, long long base_target,
                                int range) {
    ShiftPart part;
    part.guest = TiledGuest(tiles);
    part.tol = 0;

    auto selection_colouring = [&](const std::vector<char>& pick) {
        Colouring col;
        col.k = k;
        for (size_t i = 0; i < tiles.size(); ++i) {
            Colouring tc = tile_cols[i];
            if (pick[i]) detail::flip_pair(tc, k);
            col.colour.insert(col.colour.end(), tc.colour.begin(), tc.colour.end());
        }
        return col;
    };

    auto base_pick = detail::subset_with_sum(xs, base_target);
    if (!base_pick) throw error(errc::construction_failed, "no base selection for the part");
    part.base = selection_colouring(*base_pick);
    for (int y = 1; y <= range; ++y) {
        auto pick = detail::subset_with_sum(xs, base_target + y);
        if (!pick)
            throw error(errc::construction_failed,
                        "no shift selection for y=" + std::to_string(y));
        part.shifts.push_back(selection_colouring(*pick));
    }
    return part;
}

// Flip part with tolerance: shift y greedily unflips tiles until the
// accumulated gain reaches y, overshooting by less than max x.
inline ShiftPart make_greedy_flip_part(const std::vector<Graph>& tiles,
                                       const std::vector<Colouring>& tile_cols,
                                       const std::vector<int>& xs, int k, int range, int tol) {
    ShiftPart part;
    part.guest = TiledGuest(tiles);
    part.tol = tol;
    Colouring base;
    base.k = k;
    for (const auto& tc : tile_cols) base.colour.insert(base.colour.end(), tc.colour.begin(), tc.colour.end());
    part.base = base;
    for (int y = 1; y <= range; ++y) {
        long long acc = 0;
        Colouring col;
        col.k = k;
        for (size_t i = 0; i < tiles.size(); ++i) {
            Colouring tc = tile_cols[i];
            if (acc < y && xs[i] > 0) {
                detail::flip_pair(tc, k);
                acc += xs[i];
            }
            col.colour.insert(col.colour.end(), tc.colour.begin(), tc.colour.end());
        }
        if (acc < y)
            throw error(errc::construction_failed,
                        "part cannot reach shift y=" + std::to_string(y));
        part.shifts.push_back(std::move(col));
    }
    return part;
}

namespace detail {

inline std::optional<Colouring> any_proper_colouring(const Graph& g, int k, Budget& budget) {
    std::optional<Colouring> out;
    auto ords = graph_ord_vectors(g, k, ColourKind::proper, budget);
    if (ords.empty()) return std::nullopt;
    return colouring_with_ord(g, k, ords.front(), ColourKind::proper, budget);
}

// k-colouring of a tile realising difference d between classes k-1 and k
// (class k-1 the larger), classes 1..k-2 formed by the remaining original
// colours.
inline Colouring tile_d_witness(const Graph& tile, int k, int d, Budget& budget) {
    int chi = chromatic_number(tile, budget);
    if (chi < 2) chi = 2;  // difference pair needs two colours
    auto ords = graph_ord_vectors(tile, chi, ColourKind::proper, budget);
    for (const auto& o : ords) {
        if (std::abs(o[0] - o[1]) != d) continue;
        auto col = colouring_with_ord(tile, chi, o, ColourKind::proper, budget);
        if (!col) continue;
        // Source colour 1 -> bigger of (k-1, k); colour 2 -> smaller;
        // colours 3..chi -> 1..chi-2.
        std::vector<int> sigma(chi + 1, 0);
        sigma[1] = o[0] >= o[1] ? k - 1 : k;
        sigma[2] = o[0] >= o[1] ? k : k - 1;
        for (int c = 3; c <= chi; ++c) sigma[c] = c - 2;
        Colouring out;
        out.k = k;
        out.colour.resize(tile.n());
        for (int v = 0; v < tile.n(); ++v) out.colour[v] = sigma[col->colour[v]];
        return out;
    }
    throw error(errc::construction_failed, "tile lacks a colouring with difference " + std::to_string(d));
}

// Topological counterpart over component orders: classes l-1 and l only.
inline Colouring tile_dtop_witness(const Graph& tile, int l, int d) {
    auto comps = tile.components();
    std::vector<int> orders;
    for (const auto& c : comps) orders.push_back(static_cast<int>(c.size()));
    int v = tile.n();
    for (int target_small : {(v - d) / 2, (v + d) / 2}) {
        if (2 * target_small != v - d && 2 * target_small != v + d) continue;
        if (target_small < 0 || target_small > v) continue;
        auto pick = subset_with_sum(orders, target_small);
        if (!pick) continue;
        // Components in the subset take colour l, the rest l-1; ensure class
        // l-1 is the larger side.
        int small_sum = target_small;
        bool subset_is_l = small_sum <= v - small_sum;
        Colouring out;
        out.k = l;
        out.colour.assign(v, 0);
        for (size_t ci = 0; ci < comps.size(); ++ci) {
            int colour = ((*pick)[ci] != 0) == subset_is_l ? l : l - 1;
            for (Vertex u : comps[ci]) out.colour[u] = colour;
        }
        return out;
    }
    throw error(errc::construction_failed,
                "tile lacks a topological split with difference " + std::to_string(d));
}

// D(F): difference set over proper chi(F)-colourings, as sorted ints.
inline std::vector<int> tile_d_set(const Graph& tile, Budget& budget) {
    int chi = chromatic_number(tile, budget);
    if (chi < 2) chi = 2;
    auto ords = graph_ord_vectors(tile, chi, ColourKind::proper, budget);
    std::set<int> ds;
    for (const auto& o : ords) ds.insert(std::abs(o[0] - o[1]));
    return std::vector<int>(ds.begin(), ds.end());
}

// D_top(F): |v - 2m| over subset sums m of the component orders.
inline std::vector<int> tile_dtop_set(const Graph& tile) {
    std::vector<int> orders;
    for (const auto& c : tile.components()) orders.push_back(static_cast<int>(c.size()));
    std::set<int> ds;
    for (long long m : subset_sums(orders)) ds.insert(static_cast<int>(std::llabs(tile.n() - 2 * m)));
    return std::vector<int>(ds.begin(), ds.end());
}

// Builds one proper/topological shift part from a run of tiles via the
// transversal-interval machinery; returns the part and its achieved range.
inline std::pair<ShiftPart, int> make_interval_part(const std::vector<Graph>& tiles, int k,
                                                    ColourKind kind, int target_range,
                                                    Budget& budget) {
    std::vector<std::vector<int>> dsets;
    for (const auto& t : tiles)
        dsets.push_back(kind == ColourKind::proper ? tile_d_set(t, budget) : tile_dtop_set(t));
    bool identical = std::all_of(dsets.begin(), dsets.end(),
                                 [&](const std::vector<int>& s) { return s == dsets[0]; });
    auto xs = choose_transversal(dsets, identical);
    auto [z, len] = longest_sum_interval(xs);
    int range = static_cast<int>(std::min<long long>(len - 1, target_range));
    std::vector<Colouring> cols;
    for (size_t i = 0; i < tiles.size(); ++i)
        cols.push_back(kind == ColourKind::proper ? tile_d_witness(tiles[i], k, xs[i], budget)
                                                  : tile_dtop_witness(tiles[i], k, xs[i]));
    ShiftPart part = make_flip_part(tiles, cols, xs, k, z, range);
    return {part, range};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Guest-level wildcard constructions.

struct FcrWildcardsResult {
    std::vector<WildcardResult> proper;  // t certificates
    WildcardResult topological;          // one certificate
    int requested_proper_s = 0;
    int requested_topo_s = 0;
    bool met_request = false;
    bool proof_scale = false;  // stated size thresholds held on this instance
};

// Splits an F_cr(k,w)-tiling into t proper (k, kw) wildcard subtilings plus
// one topological (l, w) subtiling, each of order at most wprime. Below the
// stated thresholds the construction still runs at the achievable range and
// every certificate is re-verified before returning.
inline FcrWildcardsResult fcr_tiling_wildcards(const TiledGuest& h, const Rational& chi, int t,
                                               int l, int w, long long wprime,
                                               long long budget_limit = 50'000'000) {
    Budget budget{budget_limit, 0};
    int k = static_cast<int>(to_ll(rat_ceil(chi)));
    if (k < 2) throw error(errc::precondition, "needs ceil(chi) >= 2");
    if (t < 1 || l < 1) throw error(errc::precondition, "t and l must be >= 1");
    if (static_cast<long long>(h.order()) < static_cast<long long>(t + l) * wprime)
        throw error(errc::precondition, "guest order below (t+l) w'");

    bool all_same = true;
    for (int i = 0; i < h.tile_count(); ++i) {
        const Graph& tile = h.tile(i);
        if (tile.n() > w)
            throw error(errc::precondition, "tile " + std::to_string(i) + " exceeds order bound w");
        auto prof = chromatic_profile(tile, budget);
        if (prof.chi > k)
            throw error(errc::precondition,
                        "tile " + std::to_string(i) + " is not properly k-colourable");
        if (!is_fcr(prof))
            throw error(errc::precondition, "tile " + std::to_string(i) + " is not in F_cr");
        if (i > 0 && !h.tile(i).same_as(h.tile(0))) all_same = false;
    }

    FcrWildcardsResult out;
    out.requested_proper_s = k * w;
    out.requested_topo_s = w;
    {
        double kl = k + l;
        double thresh = std::pow(kl, 10) * static_cast<double>(w) * w;
        if (!all_same) thresh *= std::log(std::max(2.0, static_cast<double>(w)));
        out.proof_scale = static_cast<double>(wprime) >= thresh;
    }

    int ap = k * (k - 1);
    int topo_parts = l >= 2 ? l * (l - 1) : 0;
    int slots = t * ap + topo_parts;
    int q = h.tile_count();
    int fair = q / std::max(1, slots);
    long long order_cap_p = wprime / (static_cast<long long>(ap) * w);
    int s_p = static_cast<int>(std::min<long long>(fair, order_cap_p));
    if (s_p < 1) throw error(errc::precondition, "not enough tiles for the requested split");
    int s_t = s_p;
    if (topo_parts > 0) {
        long long order_cap_t = wprime / (static_cast<long long>(topo_parts) * w);
        s_t = static_cast<int>(std::min<long long>(fair, order_cap_t));
        if (s_t < 1) throw error(errc::precondition, "not enough tiles for the topological split");
    }

    int at = 0;
    auto take_tiles = [&](int count) {
        std::vector<Graph> ts;
        for (int i = 0; i < count; ++i) ts.push_back(h.tile(at++));
        return ts;
    };

    bool met = true;
    for (int ci = 0; ci < t; ++ci) {
        std::vector<ShiftPart> parts;
        int target = k * k * w;
        int w_eff = target;
        for (int pi = 0; pi < k * k; ++pi) {
            if (pi < ap) {
                auto [part, range] =
                    detail::make_interval_part(take_tiles(s_p), k, ColourKind::proper, target, budget);
                w_eff = std::min(w_eff, range);
                parts.push_back(std::move(part));
            } else {
                ShiftPart idle;
                idle.base.k = k;
                parts.push_back(std::move(idle));
            }
        }
        auto res = build_wildcards(parts, ColourKind::proper, k, w_eff, 0);
        auto check = verify_certificate(res.guest.flatten(), res.certificate);
        if (!check.ok) throw error(errc::construction_failed, "proper certificate: " + check.reason);
        if (res.certificate.s < out.requested_proper_s) met = false;
        out.proper.push_back(std::move(res));
    }

    if (l == 1) {
        // Any graph is (1, w)-flexi-chromatic: the single demand is zero.
        WildcardResult topo;
        topo.guest = TiledGuest(take_tiles(at < q ? 1 : 0));
        FlexiCertificate cert;
        cert.kind = ColourKind::topological;
        cert.k = 1;
        cert.s = w;
        cert.p = 0;
        cert.central = Colouring{std::vector<int>(topo.guest.order(), 1), 1};
        for (const auto& d : enumerate_demands(1, w)) cert.witnesses[d] = cert.central;
        topo.certificate = std::move(cert);
        auto check = verify_certificate(topo.guest.flatten(), topo.certificate);
        if (!check.ok) throw error(errc::construction_failed, "topological certificate: " + check.reason);
        out.topological = std::move(topo);
    } else {
        std::vector<ShiftPart> parts;
        int target = l * w;
        int w_eff = target;
        for (int pi = 0; pi < l * l; ++pi) {
            if (pi < topo_parts) {
                auto [part, range] = detail::make_interval_part(take_tiles(s_t), l,
                                                                ColourKind::topological, target, budget);
                w_eff = std::min(w_eff, range);
                parts.push_back(std::move(part));
            } else {
                ShiftPart idle;
                idle.base.k = l;
                parts.push_back(std::move(idle));
            }
        }
        auto res = build_wildcards(parts, ColourKind::topological, l, w_eff, 0);
        auto check = verify_certificate(res.guest.flatten(), res.certificate);
        if (!check.ok) throw error(errc::construction_failed, "topological certificate: " + check.reason);
        if (res.certificate.s < out.requested_topo_s) met = false;
        out.topological = std::move(res);
    }
    out.met_request = met;
    return out;
}

struct ApproxWildcardResult {
    WildcardResult result;
    int requested_s = 0;
    bool met_request = false;
    CertCheck check;
};

// Imbalanced-colouring construction for guests with crit(H) < k - tau:
// partitions the tiles into k^2 groups with balanced colour-gap mass and
// shifts by greedy tile flips, giving a (k, s, k w) certificate.
inline ApproxWildcardResult low_crit_wildcard(const TiledGuest& h, int k, const Rational& tau,
                                              int w_bound, long long budget_limit = 50'000'000) {
    Budget budget{budget_limit, 0};
    if (h.order() == 0) throw error(errc::precondition, "empty guest");
    if (h.max_tile_order() > w_bound)
        throw error(errc::precondition, "tile order exceeds the stated bound");
    auto prof = guest_profile(h, budget);
    if (!(prof.crit < Rational(Int(k)) - tau))
        throw error(errc::precondition, "crit(H) is not below k - tau");

    int n = h.order();
    // Ord with the smallest possible class, placed at k-1; largest at k.
    std::vector<std::vector<OrdVec>> piece_ords;
    for (const auto& tile : h.tiles())
        piece_ords.push_back(graph_ord_vectors(tile, k, ColourKind::proper, budget));
    auto dp = compose_ords(piece_ords, k, n);
    OrdVec best;
    int best_min = n + 1;
    dp.final_set().for_each([&](const OrdVec& o) {
        int mn = *std::min_element(o.begin(), o.end());
        if (mn < best_min) {
            best_min = mn;
            best = o;
        }
    });
    auto split = dp.decompose(best);
    if (!split) throw error(errc::construction_failed, "ord decomposition failed");

    // Tile colourings permuted so class k-1 is each tile's pair-small side.
    // Globally: smallest class at k-1, largest at k.
    std::vector<int> perm_src(best.size());
    std::iota(perm_src.begin(), perm_src.end(), 0);
    std::stable_sort(perm_src.begin(), perm_src.end(),
                     [&](int a, int b) { return best[a] < best[b]; });
    std::vector<int> sigma(k + 1, 0);  // old colour -> new colour
    // smallest -> k-1, largest -> k, the rest -> 1..k-2 ascending.
    sigma[perm_src[0] + 1] = k - 1;
    sigma[perm_src[k - 1] + 1] = k;
    int nxt = 1;
    for (int i = 1; i + 1 < k; ++i) sigma[perm_src[i] + 1] = nxt++;

    std::vector<Colouring> tile_cols;
    std::vector<int> gains;  // class(k-1) - class(k) after orientation, >= 0
    for (int i = 0; i < h.tile_count(); ++i) {
        auto col = colouring_with_ord(h.tile(i), k, (*split)[i], ColourKind::proper, budget);
        if (!col) throw error(errc::construction_failed, "tile colouring reconstruction failed");
        Colouring oriented = detail::permute_colouring(*col, sigma);
        auto o = oriented.ord();
        if (o[k - 2] < o[k - 1]) detail::flip_pair(oriented, k);
        o = oriented.ord();
        tile_cols.push_back(std::move(oriented));
        gains.push_back(o[k - 2] - o[k - 1]);
    }

    // Balance positive gain across k^2 parts: biggest gains first to the
    // lightest part.
    int parts_n = k * k;
    std::vector<std::vector<int>> member(parts_n);
    std::vector<long long> load(parts_n, 0);
    std::vector<int> order(h.tile_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return gains[a] > gains[b]; });
    for (int i : order) {
        int p = static_cast<int>(std::min_element(load.begin(), load.end()) - load.begin());
        member[p].push_back(i);
        load[p] += gains[i];
    }
    long long min_load = *std::min_element(load.begin(), load.end());

    std::vector<ShiftPart> parts;
    int w_eff = static_cast<int>(std::min<long long>(min_load, n));
    if (w_eff <= w_bound)
        throw error(errc::construction_failed, "colour gap too small for the tile-order slack");
    for (int p = 0; p < parts_n; ++p) {
        std::sort(member[p].begin(), member[p].end());
        std::vector<Graph> tiles;
        std::vector<Colouring> cols;
        std::vector<int> xs;
        for (int i : member[p]) {
            tiles.push_back(h.tile(i));
            cols.push_back(tile_cols[i]);
            xs.push_back(gains[i]);
        }
        parts.push_back(make_greedy_flip_part(tiles, cols, xs, k, w_eff, w_bound));
    }

    ApproxWildcardResult out;
    out.result = build_wildcards(parts, ColourKind::proper, k, w_eff, w_bound);
    Rational req = tau * Int(n) / (Rational(2) * Int(k) * Int(k) * Int(k) * Int(k) * Int(k));
    out.requested_s = static_cast<int>(to_ll(rat_floor(req)));
    out.met_request = out.result.certificate.s >= out.requested_s;
    out.check = verify_certificate_sampled(out.result.guest.flatten(), out.result.certificate, 512);
    if (!out.check.ok)
        throw error(errc::construction_failed, "re-certification failed: " + out.check.reason);
    return out;
}

// (k+1)-colour wildcard for k-colourable tilings: class k+1 starts empty and
// absorbs vertices recoloured out of the largest class, exactly.
inline ApproxWildcardResult kplus1_wildcard(const TiledGuest& h, int k,
                                            long long budget_limit = 50'000'000) {
    Budget budget{budget_limit, 0};
    if (h.order() == 0) throw error(errc::precondition, "empty guest");
    int kk = k + 1;
    for (int i = 0; i < h.tile_count(); ++i)
        if (chromatic_number(h.tile(i), budget) > k)
            throw error(errc::precondition, "tile " + std::to_string(i) + " is not k-colourable");

    int parts_n = kk * kk;
    std::vector<std::vector<int>> member(parts_n);
    std::vector<long long> load(parts_n, 0);
    for (int i = 0; i < h.tile_count(); ++i) {
        int p = static_cast<int>(std::min_element(load.begin(), load.end()) - load.begin());
        member[p].push_back(i);
        load[p] += h.tile(i).n();
    }

    // Per tile: any proper k-colouring, largest class permuted onto colour k,
    // read as a (k+1)-colouring with empty class k+1.
    std::vector<ShiftPart> parts;
    int w_eff = h.order();
    std::vector<std::vector<Colouring>> part_cols(parts_n);
    std::vector<std::vector<Graph>> part_tiles(parts_n);
    for (int p = 0; p < parts_n; ++p) {
        long long classk = 0;
        for (int i : member[p]) {
            auto col = detail::any_proper_colouring(h.tile(i), k, budget);
            if (!col) throw error(errc::precondition, "tile has no proper k-colouring");
            auto o = col->ord();
            int big = static_cast<int>(std::max_element(o.begin(), o.end()) - o.begin()) + 1;
            std::vector<int> sigma(k + 1, 0);
            int nxt = 1;
            for (int c = 1; c <= k; ++c) sigma[c] = (c == big) ? k : nxt++;
            Colouring oriented = detail::permute_colouring(*col, sigma);
            oriented.k = kk;
            classk += oriented.ord()[k - 1];
            part_tiles[p].push_back(h.tile(i));
            part_cols[p].push_back(std::move(oriented));
        }
        w_eff = static_cast<int>(std::min<long long>(w_eff, classk));
    }
    for (int p = 0; p < parts_n; ++p) {
        ShiftPart part;
        part.guest = TiledGuest(part_tiles[p]);
        part.tol = 0;
        Colouring base;
        base.k = kk;
        for (const auto& c : part_cols[p])
            base.colour.insert(base.colour.end(), c.colour.begin(), c.colour.end());
        part.base = base;
        for (int y = 1; y <= w_eff; ++y) {
            Colouring col = base;
            int moved = 0;
            for (auto& c : col.colour) {
                if (moved == y) break;
                if (c == k) {
                    c = kk;
                    ++moved;
                }
            }
            if (moved < y) throw error(errc::construction_failed, "class k too small for shift");
            part.shifts.push_back(std::move(col));
        }
        parts.push_back(std::move(part));
    }

    ApproxWildcardResult out;
    out.result = build_wildcards(parts, ColourKind::proper, kk, w_eff, 0);
    long long k5 = 1;
    for (int i = 0; i < 5; ++i) k5 *= kk;
    out.requested_s = static_cast<int>(h.order() / k5);
    out.met_request = out.result.certificate.s >= out.requested_s;
    out.check = verify_certificate_sampled(out.result.guest.flatten(), out.result.certificate, 512);
    if (!out.check.ok)
        throw error(errc::construction_failed, "re-certification failed: " + out.check.reason);
    return out;
}

// Bipartite max-degree bound: F bipartite with alpha(F) <= 1/(Delta+1) has
// at least v(F)(1 - (Delta+1) alpha(F)) isolated vertices.
inline bool bipartite_isolated_bound_holds(const Graph& f) {
    auto prof = chromatic_profile(f);
    if (prof.chi > 2) return true;  // vacuous
    int delta = f.max_degree();
    if (prof.alpha > Rational(Int(1), Int(delta + 1))) return true;  // hypothesis off
    int isolated = 0;
    for (Vertex v = 0; v < f.n(); ++v)
        if (f.degree(v) == 0) ++isolated;
    Rational bound = Int(f.n()) * (Rational(1) - Rational(Int(delta + 1)) * prof.alpha);
    return Rational(Int(isolated)) >= bound;
}

}  // namespace tiling
