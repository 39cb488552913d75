#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "tiling/chromatic.hpp"
#include "tiling/clique.hpp"
#include "tiling/error.hpp"
#include "tiling/flexi.hpp"
#include "tiling/flow.hpp"
#include "tiling/graph.hpp"
#include "tiling/guest.hpp"
#include "tiling/homomorphism.hpp"
#include "tiling/oracles.hpp"
#include "tiling/rational.hpp"

namespace tiling {

// Multiset of (tile class, homomorphism) assignments. Keys carry the hom's
// full map vector, so no global homomorphism enumeration is needed.
struct AllocationVector {
    using Key = std::pair<int, std::vector<Vertex>>;
    std::map<Key, long long> entries;

    long long count(int cls, const std::vector<Vertex>& hom) const {
        auto it = entries.find({cls, hom});
        return it == entries.end() ? 0 : it->second;
    }

    void add(int cls, const std::vector<Vertex>& hom, long long delta) {
        auto key = Key{cls, hom};
        long long next = (entries.count(key) ? entries[key] : 0) + delta;
        if (next < 0) throw error(errc::precondition, "allocation count went negative");
        if (next == 0)
            entries.erase(key);
        else
            entries[key] = next;
    }

    long long total_tiles() const {
        long long t = 0;
        for (const auto& [k, c] : entries) t += c;
        return t;
    }

    AllocationVector& operator+=(const AllocationVector& o) {
        for (const auto& [k, c] : o.entries) add(k.first, k.second, c);
        return *this;
    }
};

// Guest/host pairing for allocation work: tiles grouped into structural
// classes, with per-class order cached.
struct AllocationContext {
    TiledGuest guest;
    Graph host;
    std::vector<std::vector<int>> classes;  // tile indices per class

    AllocationContext(TiledGuest g, Graph r) : guest(std::move(g)), host(std::move(r)) {
        classes = guest.tile_classes();
    }

    int class_of_size(int cls) const { return guest.tile(classes[cls][0]).n(); }
    const Graph& class_tile(int cls) const { return guest.tile(classes[cls][0]); }
};

// A u: per-host-vertex load of an allocation (exact integer arithmetic).
inline std::vector<long long> apply_incidence(const AllocationContext& ctx,
                                              const AllocationVector& u) {
    std::vector<long long> load(ctx.host.n(), 0);
    for (const auto& [key, cnt] : u.entries)
        for (Vertex t : key.second) load[t] += cnt;
    return load;
}

inline std::vector<long long> load_difference(const AllocationContext& ctx,
                                               const AllocationVector& u,
                                               const AllocationVector& w) {
    auto lu = apply_incidence(ctx, u);
    auto lw = apply_incidence(ctx, w);
    for (size_t i = 0; i < lu.size(); ++i) lu[i] -= lw[i];
    return lu;
}

inline bool hom_valid_for(const AllocationContext& ctx, int cls, const std::vector<Vertex>& hom) {
    return Homomorphism{hom}.valid(ctx.class_tile(cls), ctx.host);
}

// One tight component of the host's clique hypergraph, with its reachability
// classes and, per reachability edge, a witnessing tight-adjacent edge pair.
struct TightComponent {
    int k = 0;
    std::vector<HyperEdge> edges;                 // sorted
    std::vector<Vertex> vertices;                 // sorted support
    std::vector<std::vector<Vertex>> reach;       // vertex classes
    // (x, y) -> (e, f) with x in e\f, y in f\e, |e cap f| = k-1
    std::map<std::pair<Vertex, Vertex>, std::pair<HyperEdge, HyperEdge>> reach_pairs;
};

inline TightComponent extract_tight_component(const CliqueHypergraph& j, int index) {
    auto d = decompose(j);
    if (index < 0 || index >= static_cast<int>(d.tight.size()))
        throw error(errc::precondition, "tight component index out of range");
    TightComponent t;
    t.k = j.k;
    for (int e : d.tight[index]) t.edges.push_back(j.edges[e]);
    std::sort(t.edges.begin(), t.edges.end());
    t.vertices = d.tight_vertices[index];
    t.reach = d.reach[index];
    // Witness pairs from the subset buckets restricted to this component.
    std::map<HyperEdge, std::vector<int>> buckets;
    for (size_t ei = 0; ei < t.edges.size(); ++ei)
        for (int drop = 0; drop < t.k; ++drop) {
            HyperEdge s;
            for (int i = 0; i < t.k; ++i)
                if (i != drop) s.push_back(t.edges[ei][i]);
            buckets[s].push_back(static_cast<int>(ei));
        }
    for (const auto& [s, ids] : buckets)
        for (size_t a = 0; a < ids.size(); ++a)
            for (size_t b = 0; b < ids.size(); ++b) {
                if (a == b) continue;
                Vertex x = -1, y = -1;
                for (Vertex v : t.edges[ids[a]])
                    if (!std::binary_search(s.begin(), s.end(), v)) x = v;
                for (Vertex v : t.edges[ids[b]])
                    if (!std::binary_search(s.begin(), s.end(), v)) y = v;
                if (x != y && !t.reach_pairs.count({x, y}))
                    t.reach_pairs[{x, y}] = {t.edges[ids[a]], t.edges[ids[b]]};
            }
    return t;
}

// Witnessed (s,T)-surjectivity: u = rest + sum of slot allocations, slot
// (e, v) putting at least s vertices on v with support inside e.
struct SurjectivityWitness {
    std::map<std::pair<int, Vertex>, AllocationVector> slots;  // (edge index, v)
    AllocationVector rest;
};

inline long long slot_level(const AllocationVector& slot, Vertex v) {
    long long level = 0;
    for (const auto& [key, cnt] : slot.entries)
        for (Vertex t : key.second)
            if (t == v) level += cnt;
    return level;
}

struct SurjectivityCheck {
    bool ok = false;
    bool greedy_failure = false;  // greedy failed; not a proof of impossibility
    SurjectivityWitness witness;
};

inline bool verify_surjective_witness(const AllocationContext& ctx, const AllocationVector& u,
                                      const TightComponent& t, long long s,
                                      const SurjectivityWitness& w) {
    AllocationVector sum = w.rest;
    for (const auto& [slot_key, slot] : w.slots) {
        auto [ei, v] = slot_key;
        if (ei < 0 || ei >= static_cast<int>(t.edges.size())) return false;
        const HyperEdge& e = t.edges[ei];
        if (!std::binary_search(e.begin(), e.end(), v)) return false;
        for (const auto& [key, cnt] : slot.entries)
            for (Vertex tv : key.second)
                if (!std::binary_search(e.begin(), e.end(), tv)) return false;
        if (slot_level(slot, v) < s) return false;
        sum += slot;
    }
    return sum.entries == u.entries;
}

// Greedy witness construction for (s,T)-surjectivity of a given allocation:
// slots in canonical order consume the lowest-keyed eligible entries.
inline SurjectivityCheck check_surjective(const AllocationContext& ctx, const AllocationVector& u,
                                          const TightComponent& t, long long s) {
    SurjectivityCheck out;
    AllocationVector pool = u;
    for (size_t ei = 0; ei < t.edges.size(); ++ei) {
        const HyperEdge& e = t.edges[ei];
        for (Vertex v : e) {
            AllocationVector slot;
            long long level = 0;
            for (const auto& [key, cnt] : pool.entries) {
                if (level >= s) break;
                if (cnt <= 0) continue;
                bool inside = true;
                long long at_v = 0;
                for (Vertex tv : key.second) {
                    if (!std::binary_search(e.begin(), e.end(), tv)) inside = false;
                    if (tv == v) ++at_v;
                }
                if (!inside || at_v == 0) continue;
                long long need = (s - level + at_v - 1) / at_v;
                long long take = std::min(cnt, need);
                slot.add(key.first, key.second, take);
                level += take * at_v;
            }
            if (level < s) {
                out.greedy_failure = true;
                return out;
            }
            for (const auto& [key, cnt] : slot.entries) pool.add(key.first, key.second, -cnt);
            out.witness.slots[{static_cast<int>(ei), v}] = slot;
        }
    }
    out.witness.rest = pool;
    out.ok = verify_surjective_witness(ctx, u, t, s, out.witness);
    return out;
}

// Greedy (s,T)-surjective allocation: reserves, per (edge, vertex) slot, a
// run of unused tiles mapped into the edge's clique with the largest colour
// class on the slot vertex.
struct BuildSurjectiveResult {
    AllocationVector u;
    SurjectivityWitness witness;
    std::vector<char> used_tiles;  // consumed guest tile indices
};

inline BuildSurjectiveResult build_surjective(const AllocationContext& ctx,
                                              const TightComponent& t, long long s,
                                              Budget& budget) {
    BuildSurjectiveResult out;
    out.used_tiles.assign(ctx.guest.tile_count(), 0);
    if (s == 0) return out;  // empty allocation is trivially surjective

    // Tiles ordered by index; class lookup per tile, one colouring per class.
    std::vector<int> class_of_tile(ctx.guest.tile_count(), -1);
    for (size_t c = 0; c < ctx.classes.size(); ++c)
        for (int ti : ctx.classes[c]) class_of_tile[ti] = static_cast<int>(c);
    std::map<int, Colouring> class_colouring;

    int next_tile = 0;
    for (size_t ei = 0; ei < t.edges.size(); ++ei) {
        const HyperEdge& e = t.edges[ei];
        int k = static_cast<int>(e.size());
        for (Vertex v : e) {
            AllocationVector slot;
            long long level = 0;
            while (level < s) {
                while (next_tile < ctx.guest.tile_count() && out.used_tiles[next_tile])
                    ++next_tile;
                if (next_tile >= ctx.guest.tile_count())
                    throw error(errc::precondition,
                                "insufficient guest mass: short by " + std::to_string(s - level) +
                                    " vertices at a slot");
                int ti = next_tile;
                const Graph& tile = ctx.guest.tile(ti);
                auto cit = class_colouring.find(class_of_tile[ti]);
                if (cit == class_colouring.end()) {
                    auto fresh = detail::any_proper_colouring(tile, k, budget);
                    if (!fresh)
                        throw error(errc::precondition,
                                    "tile " + std::to_string(ti) + " is not " + std::to_string(k) +
                                        "-colourable");
                    cit = class_colouring.emplace(class_of_tile[ti], *fresh).first;
                }
                auto col = cit->second;
                auto o = col.ord();
                int big = static_cast<int>(std::max_element(o.begin(), o.end()) - o.begin()) + 1;
                // Colour class `big` lands on v, the rest on e's other
                // vertices in order.
                std::vector<Vertex> target_of(k + 1, -1);
                target_of[big] = v;
                int at = 0;
                for (int c = 1; c <= k; ++c) {
                    if (c == big) continue;
                    while (e[at] == v) ++at;
                    target_of[c] = e[at++];
                }
                std::vector<Vertex> hom(tile.n());
                for (int u2 = 0; u2 < tile.n(); ++u2) hom[u2] = target_of[col.colour[u2]];
                slot.add(class_of_tile[ti], hom, 1);
                level += o[big - 1];
                out.used_tiles[ti] = 1;
            }
            out.u += slot;
            out.witness.slots[{static_cast<int>(ei), v}] = slot;
        }
    }
    return out;
}

// Alters a surjective allocation inside one reachability component so that
// A(u - w) = b exactly, consuming slot reservoirs and degrading the
// surjectivity level by at most a factor two.
struct FlowRepairResult {
    AllocationVector w;
    SurjectivityWitness witness;
};

inline FlowRepairResult flow_repair(const AllocationContext& ctx, const TightComponent& t,
                                    const std::vector<Vertex>& reach_class,
                                    const std::vector<long long>& b, const AllocationVector& u,
                                    const SurjectivityWitness& uw, long long s, long long sprime) {
    int r = ctx.host.n();
    long long w_max = ctx.guest.max_tile_order();
    if (static_cast<long long>(r) * (r * s + w_max) > sprime / 2)
        throw error(errc::precondition, "needs r (r s + w) <= s'/2");
    long long bsum = 0, bmax = 0;
    for (Vertex v = 0; v < r; ++v) {
        bsum += b[v];
        bmax = std::max(bmax, std::llabs(b[v]));
        if (b[v] != 0 && !std::binary_search(reach_class.begin(), reach_class.end(), v))
            throw error(errc::precondition, "b supported outside the reachability component");
    }
    if (bsum != 0) throw error(errc::precondition, "b must sum to zero");
    if (bmax > s) throw error(errc::precondition, "max-norm of b exceeds s");

    // Reachability graph restricted to the class.
    int m = static_cast<int>(reach_class.size());
    std::map<Vertex, int> local;
    for (int i = 0; i < m; ++i) local[reach_class[i]] = i;
    Graph rc(m);
    for (const auto& [xy, ef] : t.reach_pairs) {
        auto [x, y] = xy;
        if (local.count(x) && local.count(y) && x < y && !rc.has_edge(local[x], local[y]))
            rc.add_edge(local[x], local[y]);
    }
    std::vector<long long> bw(m);
    for (int i = 0; i < m; ++i) bw[i] = b[reach_class[i]];
    // Direction: moving load off x and onto x' lowers A w at x. To achieve
    // A(u - w) = b we must lower w's load at vertices with b > 0, so b(x)
    // units flow out of x.
    Flow flow = weights_to_flow(rc, std::vector<long long>(bw.begin(), bw.end()));

    FlowRepairResult out;
    out.w = u;
    out.witness = uw;

    // Edge index lookup for the slots.
    std::map<HyperEdge, int> edge_index;
    for (size_t ei = 0; ei < t.edges.size(); ++ei) edge_index[t.edges[ei]] = static_cast<int>(ei);

    for (int i = 0; i < m; ++i)
        for (int j2 = i + 1; j2 < m; ++j2) {
            if (!rc.has_edge(i, j2)) continue;
            long long c = flow.value(j2, i);  // units moving off x onto x'
            Vertex x = reach_class[i], xp = reach_class[j2];
            if (c < 0) {
                std::swap(x, xp);
                c = -c;
            }
            if (c == 0) continue;
            auto pit = t.reach_pairs.find({x, xp});
            if (pit == t.reach_pairs.end())
                throw error(errc::precondition, "missing reachability witness pair");
            const HyperEdge& K = pit->second.first;
            int kei = edge_index.at(K);
            AllocationVector& slot = out.witness.slots[{kei, x}];
            long long moved = 0;
            while (moved < c) {
                // Lowest-keyed entry with mass at x.
                const AllocationVector::Key* pick = nullptr;
                for (const auto& [key, cnt] : slot.entries) {
                    if (cnt <= 0) continue;
                    int at_x = 0;
                    for (Vertex tv : key.second)
                        if (tv == x) ++at_x;
                    if (at_x > 0) {
                        pick = &key;
                        break;
                    }
                }
                if (!pick)
                    throw error(errc::insufficient_reservoir,
                                "slot reservoir exhausted while transferring");
                auto [cls, hom] = *pick;
                long long at_x = 0;
                for (Vertex tv : hom)
                    if (tv == x) ++at_x;
                long long p = std::min(at_x, c - moved);
                std::vector<Vertex> hom2 = hom;
                long long done = 0;
                for (auto& tv : hom2) {
                    if (done == p) break;
                    if (tv == x) {
                        tv = xp;
                        ++done;
                    }
                }
                if (!hom_valid_for(ctx, cls, hom2))
                    throw error(errc::precondition, "transfer produced an invalid homomorphism");
                slot.add(cls, hom, -1);
                out.w.add(cls, hom, -1);
                out.w.add(cls, hom2, 1);
                out.witness.rest.add(cls, hom2, 1);
                moved += p;
            }
        }

    // Exactness and the degraded surjectivity level are both verified.
    auto diff = load_difference(ctx, u, out.w);
    for (Vertex v = 0; v < r; ++v)
        if (diff[v] != b[v])
            throw error(errc::construction_failed, "A(u-w) differs from b after repair");
    if (!verify_surjective_witness(ctx, out.w, t, sprime / 2, out.witness))
        throw error(errc::construction_failed, "repaired witness dropped below s'/2");
    return out;
}

// Allocation of a flexi subtiling W onto the clique R[e0], class i on the
// i-th labelled vertex of e0.
inline AllocationVector encode_colouring_on_clique(const AllocationContext& ctx,
                                                   const std::vector<int>& w_tiles,
                                                   const Colouring& col,
                                                   const std::vector<Vertex>& e0_order) {
    AllocationVector u;
    std::vector<int> class_of_tile(ctx.guest.tile_count(), -1);
    for (size_t c = 0; c < ctx.classes.size(); ++c)
        for (int ti : ctx.classes[c]) class_of_tile[ti] = static_cast<int>(c);
    int at = 0;
    for (int ti : w_tiles) {
        const Graph& tile = ctx.guest.tile(ti);
        std::vector<Vertex> hom(tile.n());
        for (int v = 0; v < tile.n(); ++v) {
            int c = col.colour[at + v];
            if (c < 1 || c > static_cast<int>(e0_order.size()))
                throw error(errc::precondition, "colouring leaves the clique");
            hom[v] = e0_order[c - 1];
        }
        if (!hom_valid_for(ctx, class_of_tile[ti], hom))
            throw error(errc::precondition, "colouring does not encode onto the clique");
        u.add(class_of_tile[ti], hom, 1);
        at += tile.n();
    }
    return u;
}

struct AllocateTightResult {
    AllocationVector u;  // u1 + u2 as used
    AllocationVector w;  // result with A(u - w) = c
    std::vector<Vertex> e0_order;  // colour i sits on e0_order[i-1]
};

// Splits the demand across reachability components, repairs each by a flow
// round, and fixes the residue at e0 with the flexi certificate's witness.
inline AllocateTightResult allocate_tight(const AllocationContext& ctx, const TightComponent& t,
                                          const HyperEdge& e0, const AllocationVector& u1,
                                          const SurjectivityWitness& u1w, long long sprime,
                                          const std::vector<int>& w_tiles,
                                          const FlexiCertificate& cert,
                                          const std::vector<long long>& c) {
    int r = ctx.host.n();
    int k = t.k;
    if (cert.p != 0) throw error(errc::precondition, "needs an exact flexi certificate");
    if (cert.k != k) throw error(errc::precondition, "certificate colour count differs from k");
    if (!std::binary_search(t.edges.begin(), t.edges.end(), e0))
        throw error(errc::precondition, "e0 is not an edge of the tight component");
    long long csum = 0, cmax = 0;
    for (Vertex v = 0; v < r; ++v) {
        csum += c[v];
        cmax = std::max(cmax, std::llabs(c[v]));
        if (c[v] != 0 && !std::binary_search(t.vertices.begin(), t.vertices.end(), v))
            throw error(errc::precondition, "c supported outside V(T)");
    }
    if (csum != 0) throw error(errc::precondition, "c must sum to zero");
    long long w_max = ctx.guest.max_tile_order();
    long long s = cmax;
    if (static_cast<long long>(r) * (static_cast<long long>(r) * r * s + w_max) >
        (sprime >> k))
        throw error(errc::precondition, "needs r (r^2 s + w) <= s'/2^k");

    // Reachability representatives inside e0.
    int kp = static_cast<int>(t.reach.size());
    std::vector<Vertex> reps;
    std::vector<int> class_of_vertex(r, -1);
    for (size_t ci = 0; ci < t.reach.size(); ++ci)
        for (Vertex v : t.reach[ci]) class_of_vertex[v] = static_cast<int>(ci);
    for (size_t ci = 0; ci < t.reach.size(); ++ci) {
        Vertex rep = -1;
        for (Vertex v : e0)
            if (class_of_vertex[v] == static_cast<int>(ci)) {
                rep = v;
                break;
            }
        if (rep < 0)
            throw error(errc::precondition, "e0 misses a reachability class");
        reps.push_back(rep);
    }
    // Colour labelling of e0: representatives first, remaining vertices after.
    std::vector<Vertex> e0_order = reps;
    for (Vertex v : e0)
        if (std::find(e0_order.begin(), e0_order.end(), v) == e0_order.end())
            e0_order.push_back(v);

    // Demand split: b_j transfers each class's imbalance onto its
    // representative.
    std::vector<std::vector<long long>> bs(kp, std::vector<long long>(r, 0));
    for (int j = 0; j < kp; ++j) {
        long long cls_sum = 0;
        for (Vertex v : t.reach[j]) cls_sum += c[v];
        for (Vertex v : t.reach[j]) bs[j][v] = c[v];
        bs[j][reps[j]] = c[reps[j]] - cls_sum;
    }

    AllocationVector cur = u1;
    SurjectivityWitness curw = u1w;
    for (int j = 0; j < kp; ++j) {
        long long round_s = static_cast<long long>(r) * s;
        auto rr = flow_repair(ctx, t, t.reach[j], bs[j], cur, curw, round_s, sprime >> j);
        cur = std::move(rr.w);
        curw = std::move(rr.witness);
    }

    // Residue at the representatives.
    std::vector<long long> residue(r, 0);
    for (Vertex v = 0; v < r; ++v) {
        long long moved = 0;
        for (int j = 0; j < kp; ++j) moved += bs[j][v];
        residue[v] = c[v] - moved;
    }
    std::vector<int> demand(k, 0);
    for (int i = 0; i < k; ++i) {
        Vertex v = e0_order[i];
        demand[i] = static_cast<int>(residue[v]);
        residue[v] = 0;
    }
    for (Vertex v = 0; v < r; ++v)
        if (residue[v] != 0)
            throw error(errc::construction_failed, "residue escaped e0");

    long long dmax = 0;
    for (int d : demand) dmax = std::max(dmax, static_cast<long long>(std::abs(d)));
    if (dmax > cert.s) {
        std::string ds = "(";
        for (int d : demand) ds += std::to_string(d) + ",";
        throw error(errc::precondition, "flexi certificate lacks demand witness " + ds + ")");
    }
    auto wit = cert.witnesses.find(demand);
    if (wit == cert.witnesses.end()) {
        std::string ds = "(";
        for (int d : demand) ds += std::to_string(d) + ",";
        throw error(errc::precondition, "flexi certificate lacks demand witness " + ds + ")");
    }

    AllocationVector u2 = encode_colouring_on_clique(ctx, w_tiles, cert.central, e0_order);
    AllocationVector u2p = encode_colouring_on_clique(ctx, w_tiles, wit->second, e0_order);

    AllocateTightResult out;
    out.e0_order = e0_order;
    out.u = u1;
    out.u += u2;
    out.w = cur;
    out.w += u2p;
    auto diff = load_difference(ctx, out.u, out.w);
    for (Vertex v = 0; v < r; ++v)
        if (diff[v] != c[v])
            throw error(errc::construction_failed, "A(u-w) differs from c after allocation");
    return out;
}

// ---------------------------------------------------------------------------
// Balanced partition of vectors.

struct BalancedPartition {
    std::vector<int> part_of;  // per vector
    Rational deviation;        // max-norm distance from the mean
    bool ok = false;
};

inline Rational partition_deviation(const std::vector<std::vector<long long>>& xs, int s,
                                    const std::vector<int>& part_of) {
    if (xs.empty()) return Rational(0);
    size_t k = xs[0].size();
    std::vector<long long> total(k, 0);
    for (const auto& x : xs)
        for (size_t c = 0; c < k; ++c) total[c] += x[c];
    Rational dev(0);
    for (int j = 0; j < s; ++j) {
        std::vector<long long> sum(k, 0);
        for (size_t i = 0; i < xs.size(); ++i)
            if (part_of[i] == j)
                for (size_t c = 0; c < k; ++c) sum[c] += xs[i][c];
        for (size_t c = 0; c < k; ++c) {
            Rational d = Rational(Int(sum[c])) - Rational(Int(total[c]), Int(s));
            if (d < Rational(0)) d = -d;
            if (dev < d) dev = d;
        }
    }
    return dev;
}

// Partition with max-norm deviation at most n/s^2 from the even split,
// seeded random retries on top of a deterministic largest-first pass. With
// strict=false the best split found is returned even when it misses the
// bound, for callers with their own feasibility repair.
inline BalancedPartition balanced_partition(const std::vector<std::vector<long long>>& xs, int s,
                                            unsigned long long seed, int retries = 200,
                                            bool strict = true) {
    if (s < 1) throw error(errc::precondition, "part count must be >= 1");
    BalancedPartition best;
    long long n = 0;
    for (const auto& x : xs)
        for (long long v : x) n += std::llabs(v);
    Rational target = Rational(Int(n), Int(static_cast<long long>(s) * s));

    auto consider = [&](const std::vector<int>& part_of) {
        Rational dev = partition_deviation(xs, s, part_of);
        if (!best.ok || dev < best.deviation) {
            best.part_of = part_of;
            best.deviation = dev;
            best.ok = true;
        }
        return dev <= target;
    };

    // Deterministic first pass: heaviest vectors first, each to the part
    // whose coordinate loads stay smallest (scaled by s so the running
    // comparison is the per-part share).
    {
        std::vector<size_t> order(xs.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            long long na = 0, nb = 0;
            for (long long v : xs[a]) na += std::llabs(v);
            for (long long v : xs[b]) nb += std::llabs(v);
            return na > nb;
        });
        size_t dims = xs.empty() ? 0 : xs[0].size();
        std::vector<int> part_of(xs.size(), 0);
        std::vector<std::vector<long long>> load(s, std::vector<long long>(dims, 0));
        for (size_t i : order) {
            int bestj = 0;
            long long best_peak = -1;
            for (int j = 0; j < s; ++j) {
                long long peak = 0;
                for (size_t c = 0; c < dims; ++c)
                    peak = std::max(peak, load[j][c] + std::llabs(xs[i][c]));
                if (best_peak < 0 || peak < best_peak) {
                    best_peak = peak;
                    bestj = j;
                }
            }
            part_of[i] = bestj;
            for (size_t c = 0; c < dims; ++c) load[bestj][c] += std::llabs(xs[i][c]);
        }
        if (consider(part_of)) return best;
    }
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < retries; ++attempt) {
        std::vector<int> part_of(xs.size());
        for (auto& p : part_of) p = static_cast<int>(rng() % static_cast<unsigned long long>(s));
        if (consider(part_of)) return best;
    }
    if (strict)
        throw error(errc::partition_failed,
                    "no partition within n/s^2 after retries; best deviation " +
                        rat_str(best.deviation));
    return best;
}

// ---------------------------------------------------------------------------
// Allocation into an explicit blow-up host.

struct BlowupHost {
    Graph reduced;
    int cluster_size = 1;

    int order() const { return reduced.n() * cluster_size; }
    Graph expand() const { return blow_up(reduced, cluster_size); }
};

struct BlowupAllocation {
    AllocationVector u;
    std::vector<long long> loads;  // per cluster
    EmbeddingWitness embedding;    // into the expanded host
};

namespace detail {

// Bottle-copy structure of the reduced graph: per component, the parts
// sorted ascending (smallest first).
inline std::vector<std::vector<std::vector<Vertex>>> bottle_copies(const Graph& reduced,
                                                                   const Rational& chi) {
    Graph bottle = bottle_for(chi);
    auto want_parts = multipartite_parts(bottle);
    std::vector<int> want = *want_parts;
    std::sort(want.begin(), want.end());
    std::vector<std::vector<std::vector<Vertex>>> out;
    for (const auto& cvs : reduced.components()) {
        Graph comp = reduced.induced(cvs);
        auto parts = multipartite_parts(comp);
        if (!parts) throw error(errc::precondition, "reduced component is not complete multipartite");
        // Recover the actual part vertex sets from the complement components.
        Graph co = comp.complement();
        auto ccs = co.components();
        std::vector<int> sizes;
        for (const auto& cc : ccs) sizes.push_back(static_cast<int>(cc.size()));
        auto sorted_sizes = sizes;
        std::sort(sorted_sizes.begin(), sorted_sizes.end());
        if (sorted_sizes != want)
            throw error(errc::precondition, "reduced component is not a copy of the bottle graph");
        std::vector<int> idx(ccs.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return ccs[a].size() < ccs[b].size(); });
        std::vector<std::vector<Vertex>> parts_global;
        for (int i : idx) {
            std::vector<Vertex> part;
            for (Vertex v : ccs[i]) part.push_back(cvs[v]);
            std::sort(part.begin(), part.end());
            parts_global.push_back(std::move(part));
        }
        out.push_back(std::move(parts_global));
    }
    return out;
}

}  // namespace detail

// Embeds a guest with crit <= chi into the m-blow-up of a disjoint union of
// bottle copies: recolour to the bottle's proportions, split the tiles
// across the copies in balance, then assign colour classes to cluster parts.
inline BlowupAllocation allocate_to_blowup(const TiledGuest& h, const BlowupHost& host,
                                           const Rational& chi, const Rational& rho,
                                           unsigned long long seed = 0,
                                           long long budget_limit = 50'000'000) {
    Budget budget{budget_limit, 0};
    int m = host.cluster_size;
    long long n = host.order();
    auto copies = detail::bottle_copies(host.reduced, chi);
    int k = static_cast<int>(to_ll(rat_ceil(chi)));
    auto prof = guest_profile(h, budget);
    if (prof.crit > chi)
        throw error(errc::precondition,
                    "crit(H) = " + rat_str(prof.crit) + " exceeds chi = " + rat_str(chi));
    if (Rational(Int(h.order())) > (Rational(1) - rho) * Int(n))
        throw error(errc::precondition, "guest order exceeds (1-rho) n");

    // Bottle class proportions: alpha(B) for class 1, balanced for 2..k.
    Graph bottle = bottle_for(chi);
    auto bparts = detail::multipartite_parts(bottle);
    std::vector<int> bsizes = *bparts;
    std::sort(bsizes.begin(), bsizes.end());
    Rational alpha_b(Int(bsizes[0]), Int(bottle.n()));

    // Initial per-tile colourings minimising colour 1.
    int w_max = std::max(1, h.max_tile_order());
    std::vector<Colouring> cols;
    for (int i = 0; i < h.tile_count(); ++i) {
        auto ords = graph_ord_vectors(h.tile(i), k, ColourKind::proper, budget);
        if (ords.empty()) throw error(errc::precondition, "tile is not k-colourable");
        OrdVec pick = ords[0];
        for (const auto& o : ords)
            if (o[0] < pick[0]) pick = o;
        auto col = colouring_with_ord(h.tile(i), k, pick, ColourKind::proper, budget);
        if (!col) throw error(errc::construction_failed, "tile colouring reconstruction failed");
        cols.push_back(*col);
    }
    auto ord_total = [&]() {
        std::vector<long long> x(k, 0);
        for (const auto& c : cols) {
            auto o = c.ord();
            for (int i = 0; i < k; ++i) x[i] += o[i];
        }
        return x;
    };
    // Raise class 1 to alpha(B) |H| within one tile order.
    {
        Rational t1 = alpha_b * Int(h.order());
        auto x = ord_total();
        int guard = h.order() * k + 10;
        while (Rational(Int(x[0])) < t1 - Int(w_max) && guard-- > 0) {
            bool swapped = false;
            for (int q = 0; q < h.tile_count() && !swapped; ++q) {
                auto o = cols[q].ord();
                for (int j = 2; j <= k && !swapped; ++j) {
                    if (o[j - 1] > o[0]) {
                        for (auto& cc : cols[q].colour) {
                            if (cc == 1)
                                cc = j;
                            else if (cc == j)
                                cc = 1;
                        }
                        swapped = true;
                    }
                }
            }
            if (!swapped) break;
            x = ord_total();
        }
        // Balance classes 2..k within one tile order of each other.
        guard = h.order() * k * k + 10;
        for (;;) {
            x = ord_total();
            int hi = 2, lo = 2;
            for (int i = 2; i <= k; ++i) {
                if (x[i - 1] > x[hi - 1]) hi = i;
                if (x[i - 1] < x[lo - 1]) lo = i;
            }
            if (k <= 2 || x[hi - 1] - x[lo - 1] <= w_max || guard-- <= 0) break;
            bool swapped = false;
            for (int q = 0; q < h.tile_count() && !swapped; ++q) {
                auto o = cols[q].ord();
                if (o[hi - 1] > o[lo - 1]) {
                    for (auto& cc : cols[q].colour) {
                        if (cc == hi)
                            cc = lo;
                        else if (cc == lo)
                            cc = hi;
                    }
                    swapped = true;
                }
            }
            if (!swapped) break;
        }
    }

    // Capacity-driven recolouring: the balancing tolerance is one tile
    // order, which can exceed the rho slack, so swap classes inside single
    // tiles until every global class total fits its total cluster capacity.
    int s = static_cast<int>(copies.size());
    {
        std::vector<long long> total_cap(k, 0);
        for (int i = 0; i < k && i < static_cast<int>(copies[0].size()); ++i)
            total_cap[i] = static_cast<long long>(copies[0][i].size()) * m * s;
        auto x = ord_total();
        long long guard = static_cast<long long>(h.tile_count()) * k * k + 16;
        for (;;) {
            int over = -1;
            for (int i = 0; i < k; ++i)
                if (x[i] > total_cap[i]) over = i;
            if (over < 0) break;
            if (guard-- <= 0)
                throw error(errc::allocation_failed, "class recolouring did not converge");
            bool swapped = false;
            for (int q = 0; q < h.tile_count() && !swapped; ++q) {
                auto o = cols[q].ord();
                for (int j = 1; j <= k && !swapped; ++j) {
                    if (j - 1 == over) continue;
                    long long d = o[over] - o[j - 1];
                    if (d <= 0) continue;
                    if (x[j - 1] + d > total_cap[j - 1]) continue;
                    for (auto& cc : cols[q].colour) {
                        if (cc == over + 1)
                            cc = j;
                        else if (cc == j)
                            cc = over + 1;
                    }
                    swapped = true;
                }
            }
            if (!swapped)
                throw error(errc::allocation_failed,
                            "no class recolouring fits the cluster capacities");
            x = ord_total();
        }
    }

    // Split tiles across the bottle copies.
    std::vector<std::vector<long long>> xs;
    for (const auto& c : cols) {
        auto o = c.ord();
        xs.emplace_back(o.begin(), o.end());
    }
    auto part = balanced_partition(xs, s, seed, 200, /*strict=*/false);

    // The n/s^2 deviation bound is coarser than the capacity slack at small
    // copy counts, so repair the split against the actual per-class
    // capacities by moving whole tiles between copies.
    {
        std::vector<long long> cap(k, 0);
        for (int i = 0; i < k && i < static_cast<int>(copies[0].size()); ++i)
            cap[i] = static_cast<long long>(copies[0][i].size()) * m;
        std::vector<std::vector<long long>> cls_load(s, std::vector<long long>(k, 0));
        for (size_t ti = 0; ti < xs.size(); ++ti)
            for (int i = 0; i < k; ++i) cls_load[part.part_of[ti]][i] += xs[ti][i];
        auto overflow = [&]() {
            long long o = 0;
            for (int j = 0; j < s; ++j)
                for (int i = 0; i < k; ++i) o += std::max<long long>(0, cls_load[j][i] - cap[i]);
            return o;
        };
        // Colour permutations of a single tile keep the colouring proper and
        // retarget its class chunks, possibly in a different copy.
        std::vector<std::vector<int>> perms;  // new colour of old colour c at [c-1]
        {
            std::vector<int> p(k);
            std::iota(p.begin(), p.end(), 1);
            do perms.push_back(p);
            while (std::next_permutation(p.begin(), p.end()));
        }
        auto permuted = [&](const std::vector<long long>& x, const std::vector<int>& sigma) {
            std::vector<long long> y(k, 0);
            for (int c = 1; c <= k; ++c) y[sigma[c - 1] - 1] = x[c - 1];
            return y;
        };
        long long guard = static_cast<long long>(xs.size()) * s * k * 4 + 16;
        long long cur = overflow();
        while (cur > 0) {
            if (guard-- <= 0)
                throw error(errc::allocation_failed, "capacity repair did not converge");
            // First improvement over: tile moved to another copy under any
            // colour permutation, else a pairwise tile swap; accepted only
            // when the total overflow strictly drops.
            long long best = cur;
            int mv_tile = -1, mv_dest = -1, mv_perm = -1, sw_a = -1, sw_b = -1;
            for (size_t ti = 0; ti < xs.size() && best == cur; ++ti) {
                int from = part.part_of[ti];
                for (int j = 0; j < s && best == cur; ++j)
                    for (size_t pi = 0; pi < perms.size(); ++pi) {
                        if (j == from && pi == 0) continue;  // identity no-op
                        auto moved = permuted(xs[ti], perms[pi]);
                        long long after = cur;
                        if (j == from) {
                            for (int i = 0; i < k; ++i) {
                                after -= std::max<long long>(0, cls_load[from][i] - cap[i]);
                                after += std::max<long long>(
                                    0, cls_load[from][i] - xs[ti][i] + moved[i] - cap[i]);
                            }
                        } else {
                            for (int i = 0; i < k; ++i) {
                                after -= std::max<long long>(0, cls_load[from][i] - cap[i]) +
                                         std::max<long long>(0, cls_load[j][i] - cap[i]);
                                after +=
                                    std::max<long long>(0, cls_load[from][i] - xs[ti][i] - cap[i]) +
                                    std::max<long long>(0, cls_load[j][i] + moved[i] - cap[i]);
                            }
                        }
                        if (after < best) {
                            best = after;
                            mv_tile = static_cast<int>(ti);
                            mv_dest = j;
                            mv_perm = static_cast<int>(pi);
                            break;
                        }
                    }
            }
            if (best == cur) {
                for (size_t a = 0; a < xs.size() && best == cur; ++a)
                    for (size_t b = a + 1; b < xs.size() && best == cur; ++b) {
                        int ja = part.part_of[a], jb = part.part_of[b];
                        if (ja == jb) continue;
                        long long after = cur;
                        for (int i = 0; i < k; ++i) {
                            after -= std::max<long long>(0, cls_load[ja][i] - cap[i]) +
                                     std::max<long long>(0, cls_load[jb][i] - cap[i]);
                            after += std::max<long long>(
                                         0, cls_load[ja][i] - xs[a][i] + xs[b][i] - cap[i]) +
                                     std::max<long long>(
                                         0, cls_load[jb][i] - xs[b][i] + xs[a][i] - cap[i]);
                        }
                        if (after < best) {
                            best = after;
                            sw_a = static_cast<int>(a);
                            sw_b = static_cast<int>(b);
                        }
                    }
            }
            if (best >= cur) {
                // Local search stalled: rebuild the whole split with a
                // capacity-aware first-fit-decreasing pass over (copy,
                // permutation) choices.
                std::vector<size_t> order(xs.size());
                std::iota(order.begin(), order.end(), 0);
                std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
                    long long na = 0, nb = 0;
                    for (long long v : xs[a]) na += v;
                    for (long long v : xs[b]) nb += v;
                    return na > nb;
                });
                for (auto& row : cls_load) row.assign(k, 0);
                bool built = true;
                for (size_t ti : order) {
                    int bestj = -1, bestp = -1;
                    long long best_peak = -1;
                    for (int j = 0; j < s; ++j)
                        for (size_t pi = 0; pi < perms.size(); ++pi) {
                            auto moved = permuted(xs[ti], perms[pi]);
                            bool fits = true;
                            long long peak = 0;
                            for (int i = 0; i < k; ++i) {
                                long long l = cls_load[j][i] + moved[i];
                                if (l > cap[i]) fits = false;
                                // Compare loads relative to capacity, scaled
                                // to a common denominator.
                                long long scaled = cap[i] > 0 ? l * 1000 / cap[i] : (l > 0 ? 2000 : 0);
                                peak = std::max(peak, scaled);
                            }
                            if (!fits) continue;
                            if (best_peak < 0 || peak < best_peak) {
                                best_peak = peak;
                                bestj = j;
                                bestp = static_cast<int>(pi);
                            }
                        }
                    if (bestj < 0) {
                        built = false;
                        break;
                    }
                    auto moved = permuted(xs[ti], perms[static_cast<size_t>(bestp)]);
                    for (int i = 0; i < k; ++i) cls_load[bestj][i] += moved[i];
                    const auto& sigma = perms[static_cast<size_t>(bestp)];
                    xs[ti] = moved;
                    for (auto& cc : cols[ti].colour) cc = sigma[cc - 1];
                    part.part_of[ti] = bestj;
                }
                if (!built)
                    throw error(errc::allocation_failed,
                                "cluster capacity exhausted and no repair move exists");
                cur = overflow();
                continue;
            }
            if (mv_tile >= 0) {
                int from = part.part_of[mv_tile];
                const auto& sigma = perms[static_cast<size_t>(mv_perm)];
                auto moved = permuted(xs[mv_tile], sigma);
                for (int i = 0; i < k; ++i) {
                    cls_load[from][i] -= xs[mv_tile][i];
                    cls_load[mv_dest][i] += moved[i];
                }
                xs[mv_tile] = moved;
                for (auto& cc : cols[mv_tile].colour) cc = sigma[cc - 1];
                part.part_of[mv_tile] = mv_dest;
            } else {
                int ja = part.part_of[sw_a], jb = part.part_of[sw_b];
                for (int i = 0; i < k; ++i) {
                    cls_load[ja][i] += xs[sw_b][i] - xs[sw_a][i];
                    cls_load[jb][i] += xs[sw_a][i] - xs[sw_b][i];
                }
                part.part_of[sw_a] = jb;
                part.part_of[sw_b] = ja;
            }
            cur = best;
        }
    }

    // Assign colour classes to cluster parts, splitting class chunks across
    // the clusters of a part first-fit.
    BlowupAllocation out;
    std::vector<long long> load(host.reduced.n(), 0);
    std::vector<int> class_of_tile(h.tile_count(), -1);
    auto classes = h.tile_classes();
    for (size_t c = 0; c < classes.size(); ++c)
        for (int ti : classes[c]) class_of_tile[ti] = static_cast<int>(c);

    for (int ti = 0; ti < h.tile_count(); ++ti) {
        const auto& copy = copies[part.part_of[ti]];
        const Graph& tile = h.tile(ti);
        std::vector<Vertex> hom(tile.n(), -1);
        for (int i = 1; i <= k; ++i) {
            // Class i of the tile goes into part i-1 of the copy (class 1
            // into the smallest part).
            if (i - 1 >= static_cast<int>(copy.size())) {
                // Colour beyond the bottle's parts: only legal if unused.
                bool used = false;
                for (int v = 0; v < tile.n(); ++v)
                    if (cols[ti].colour[v] == i) used = true;
                if (!used) continue;
                throw error(errc::allocation_failed, "colour class exceeds the bottle's parts");
            }
            const auto& clusters = copy[i - 1];
            for (int v = 0; v < tile.n(); ++v) {
                if (cols[ti].colour[v] != i) continue;
                Vertex placed = -1;
                for (Vertex cl : clusters)
                    if (load[cl] < m) {
                        placed = cl;
                        break;
                    }
                if (placed < 0)
                    throw error(errc::allocation_failed,
                                "cluster capacity exhausted in copy part");
                ++load[placed];
                hom[v] = placed;
            }
        }
        if (!Homomorphism{hom}.valid(tile, host.reduced))
            throw error(errc::allocation_failed, "allocation produced an invalid homomorphism");
        out.u.add(class_of_tile[ti], hom, 1);
    }
    out.loads = load;
    for (Vertex cl = 0; cl < host.reduced.n(); ++cl)
        if (load[cl] > m) throw error(errc::allocation_failed, "cluster over capacity");

    // Expand to concrete blow-up vertices: re-walk the same deterministic
    // first-fit placement, handing each vertex the next clone of its cluster.
    std::vector<int> next_clone(host.reduced.n(), 0);
    std::vector<long long> load2(host.reduced.n(), 0);
    out.embedding.map.assign(h.order(), -1);
    for (int ti = 0; ti < h.tile_count(); ++ti) {
        const auto& copy = copies[part.part_of[ti]];
        const Graph& tile = h.tile(ti);
        for (int i = 1; i <= k; ++i) {
            if (i - 1 >= static_cast<int>(copy.size())) continue;
            const auto& clusters = copy[i - 1];
            for (int v = 0; v < tile.n(); ++v) {
                if (cols[ti].colour[v] != i) continue;
                Vertex placed = -1;
                for (Vertex cl : clusters)
                    if (load2[cl] < m) {
                        placed = cl;
                        break;
                    }
                ++load2[placed];
                out.embedding.map[h.offset(ti) + v] = placed * m + next_clone[placed]++;
            }
        }
    }
    return out;
}

}  // namespace tiling
