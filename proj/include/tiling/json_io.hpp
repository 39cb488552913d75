#pragma once

#include <json.hpp>

#include "tiling/allocation.hpp"
#include "tiling/certifier.hpp"
#include "tiling/chromatic.hpp"
#include "tiling/clique.hpp"
#include "tiling/flexi.hpp"
#include "tiling/fractional.hpp"
#include "tiling/suites.hpp"

namespace tiling {

using nlohmann::json;

inline json to_json(const Rational& r) { return rat_str(r); }

inline json to_json(const ChromaticProfile& p) {
    json j;
    j["chi"] = p.chi;
    j["alpha"] = to_json(p.alpha);
    j["crit"] = to_json(p.crit);
    j["d_set"] = p.d_set;
    j["gcd_chi"] = p.gcd_chi ? json(*p.gcd_chi) : json("INFINITY");
    j["gcd_c"] = p.gcd_c;
    j["max_degree"] = p.max_degree;
    j["max_tile_order"] = p.max_tile_order;
    j["tile_count"] = p.tile_count;
    return j;
}

inline json to_json(const ComponentDecomposition& d) {
    json j;
    j["tight_count"] = d.tight.size();
    j["loose_count"] = d.loose.size();
    json tight = json::array();
    for (size_t c = 0; c < d.tight.size(); ++c) {
        json tc;
        tc["edges"] = d.tight[c].size();
        tc["vertices"] = d.tight_vertices[c];
        tc["reach_classes"] = d.reach[c];
        tight.push_back(tc);
    }
    j["tight"] = tight;
    j["loose"] = d.loose;
    return j;
}

inline json to_json(const FractionalTiling& t) {
    json j;
    j["tile_order"] = t.tile.n();
    j["weight"] = to_json(t.weight());
    json homs = json::array();
    for (size_t i = 0; i < t.homs.size(); ++i) {
        json h;
        h["map"] = t.homs[i].map;
        h["weight"] = to_json(t.weights[i]);
        homs.push_back(h);
    }
    j["support"] = homs;
    return j;
}

inline json to_json(const FractionalCover& c) {
    json j;
    j["size"] = to_json(c.size());
    json vals = json::array();
    for (const auto& v : c.values) vals.push_back(to_json(v));
    j["values"] = vals;
    return j;
}

inline json to_json(const TlConnectivity& t) {
    json j;
    j["connected"] = t.connected;
    j["exact"] = t.exact;
    j["tight_used"] = t.tight_used;
    j["loose_count"] = t.loose_count;
    j["chosen_tight"] = t.chosen_tight;
    return j;
}

inline json to_json(const FrameworkReport& r) {
    json j;
    j["chi"] = to_json(r.chi);
    j["rho"] = to_json(r.rho);
    j["t"] = r.t;
    j["l"] = r.l;
    j["f1"] = {{"pass", r.f1}, {"weight", to_json(r.f1_weight)}, {"perfect", r.f1_perfect}};
    j["f2"] = to_json(r.f2_witness);
    j["f2"]["pass"] = r.f2;
    j["f3"] = {{"pass", r.f3}, {"unlinked", r.unlinked}};
    j["pass"] = r.pass;
    j["hom_count"] = r.hom_count;
    return j;
}

inline json to_json(const Colouring& c) {
    json j;
    j["k"] = c.k;
    j["colour"] = c.colour;
    return j;
}

inline json to_json(const FlexiCertificate& cert, bool elide_witnesses = false) {
    json j;
    j["kind"] = cert.kind == ColourKind::proper ? "proper" : "topological";
    j["k"] = cert.k;
    j["s"] = cert.s;
    j["p"] = cert.p;
    j["central"] = to_json(cert.central);
    if (elide_witnesses) {
        j["witnesses"] = cert.witnesses.size();
    } else {
        json w = json::array();
        for (const auto& [d, col] : cert.witnesses)
            w.push_back({{"demand", d}, {"colouring", to_json(col)}});
        j["witnesses"] = w;
    }
    return j;
}

// Allocations serialise as {tile, images: [...]}: one record per allocated
// tile, expanded from the class counts in key order.
inline json to_json(const AllocationContext& ctx, const AllocationVector& u) {
    json arr = json::array();
    std::vector<int> next_in_class(ctx.classes.size(), 0);
    for (const auto& [key, cnt] : u.entries) {
        for (long long i = 0; i < cnt; ++i) {
            int cls = key.first;
            int tile = ctx.classes[cls][std::min<size_t>(next_in_class[cls],
                                                         ctx.classes[cls].size() - 1)];
            ++next_in_class[cls];
            arr.push_back({{"tile", tile}, {"images", key.second}});
        }
    }
    return arr;
}

inline json to_json(const EmbeddingWitness& w) {
    json j;
    j["map"] = w.map;
    return j;
}

inline json to_json(const SuiteResult& s) {
    json j;
    j["suite"] = s.suite;
    j["pass"] = s.pass;
    json inv = json::array();
    for (const auto& i : s.invariants) {
        json one;
        one["name"] = i.name;
        one["cases"] = i.cases;
        one["failures"] = i.failures;
        if (i.failures) one["first_failure"] = i.first_failure;
        inv.push_back(one);
    }
    j["invariants"] = inv;
    return j;
}

}  // namespace tiling
