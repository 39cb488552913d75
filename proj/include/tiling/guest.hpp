#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tiling/graph.hpp"

namespace tiling {

// Guest graph presented as an ordered list of tiles. Tile vertices carry a
// global index offset; tile boundaries are authoritative for subtilings even
// when a tile is disconnected.
class TiledGuest {
public:
    TiledGuest() = default;
    explicit TiledGuest(std::vector<Graph> tiles) : tiles_(std::move(tiles)) {
        offsets_.assign(1, 0);
        offsets_.reserve(tiles_.size() + 1);
        for (const auto& t : tiles_) offsets_.push_back(offsets_.back() + t.n());
    }

    int tile_count() const { return static_cast<int>(tiles_.size()); }
    const Graph& tile(int i) const { return tiles_[i]; }
    const std::vector<Graph>& tiles() const { return tiles_; }
    int offset(int i) const { return offsets_[i]; }
    int order() const { return offsets_.empty() ? 0 : offsets_.back(); }

    int max_tile_order() const {
        int w = 0;
        for (const auto& t : tiles_) w = std::max(w, t.n());
        return w;
    }

    int max_degree() const {
        int d = 0;
        for (const auto& t : tiles_) d = std::max(d, t.max_degree());
        return d;
    }

    Graph flatten() const {
        Graph g(order());
        for (int i = 0; i < tile_count(); ++i)
            for (auto [u, v] : tiles_[i].edges()) g.add_edge(u + offsets_[i], v + offsets_[i]);
        return g;
    }

    TiledGuest subtiling(const std::vector<int>& tile_indices) const {
        std::vector<Graph> ts;
        ts.reserve(tile_indices.size());
        for (int i : tile_indices) ts.push_back(tiles_[i]);
        return TiledGuest(std::move(ts));
    }

    // Tiles grouped by structural equality (identical vertex count and edge
    // set); classes ordered by first appearance, members in tile-index order.
    std::vector<std::vector<int>> tile_classes() const {
        std::vector<std::vector<int>> classes;
        std::map<std::pair<int, std::vector<Edge>>, int> index;
        for (int i = 0; i < tile_count(); ++i) {
            auto edges = tiles_[i].edges();
            std::sort(edges.begin(), edges.end());
            auto key = std::make_pair(tiles_[i].n(), std::move(edges));
            auto it = index.find(key);
            if (it == index.end()) {
                index.emplace(std::move(key), static_cast<int>(classes.size()));
                classes.push_back({i});
            } else {
                classes[it->second].push_back(i);
            }
        }
        return classes;
    }

private:
    std::vector<Graph> tiles_;
    std::vector<int> offsets_{0};
};

inline TiledGuest uniform_guest(const Graph& tile, int count) {
    return TiledGuest(std::vector<Graph>(count, tile));
}

// Guest file format: `tile` starts a new tile followed by its own n/e block;
// indices are tile-local.
inline TiledGuest parse_guest(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::vector<Graph> tiles;
    std::vector<std::string> blocks;
    std::string current;
    bool in_tile = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "tile") {
            if (in_tile) blocks.push_back(current);
            current.clear();
            in_tile = true;
        } else if (in_tile) {
            current += line + "\n";
        } else {
            throw error(errc::parse, "line " + std::to_string(line_no) + ": expected 'tile'");
        }
    }
    if (in_tile) blocks.push_back(current);
    if (blocks.empty()) throw error(errc::parse, "guest file has no tiles");
    for (const auto& b : blocks) tiles.push_back(parse_graph(b));
    return TiledGuest(std::move(tiles));
}

inline std::string format_guest(const TiledGuest& h) {
    std::ostringstream os;
    for (int i = 0; i < h.tile_count(); ++i) {
        os << "tile\n";
        os << format_graph(h.tile(i));
    }
    return os.str();
}

}  // namespace tiling
