#pragma once

#include <fstream>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "netid/disjoint_paths.hpp"
#include "netid/graph.hpp"

namespace test_helpers {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing test file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string fixture_path(const std::string& name) {
    return std::string(NETID_FIXTURE_DIR) + "/" + name;
}

inline netid::DiGraph load_graph(const std::string& name) {
    return netid::parse_graph(read_file(fixture_path(name)));
}

// Deterministic bounded draw; identical across platforms.
inline int draw(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

inline netid::DiGraph random_digraph(std::mt19937_64& rng, int max_n = 8, int edge_pct = 30) {
    int n = draw(rng, 1, max_n);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j && draw(rng, 0, 99) < edge_pct) edges.emplace_back(i, j);
    return netid::DiGraph(n, std::move(edges));
}

inline netid::NodeSet random_subset(std::mt19937_64& rng, int n, int pct = 35) {
    netid::NodeSet s;
    for (int v = 1; v <= n; ++v)
        if (draw(rng, 0, 99) < pct) s.push_back(v);
    return s;
}

// Is any vertex of `targets` reachable from `sources` through vertices
// outside `removed`? Endpoints inside `removed` do not count.
inline bool reachable_avoiding(const netid::DiGraph& g, const netid::NodeSet& sources,
                               const netid::NodeSet& targets, const netid::NodeSet& removed) {
    std::vector<bool> seen(static_cast<std::size_t>(g.n()) + 1, false);
    std::queue<int> q;
    for (int s : sources)
        if (!netid::contains(removed, s)) {
            seen[static_cast<std::size_t>(s)] = true;
            q.push(s);
        }
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        if (netid::contains(targets, u)) return true;
        for (int w : netid::out_edges(g, u)) {
            if (netid::contains(removed, w) || seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = true;
            q.push(w);
        }
    }
    return false;
}

// Brute-force minimum vertex cut between disjoint node sets: smallest S
// whose removal (endpoints included) leaves no path from sources to targets.
inline int brute_min_vertex_cut(const netid::DiGraph& g, const netid::NodeSet& sources,
                                const netid::NodeSet& targets) {
    const int n = g.n();
    if (!reachable_avoiding(g, sources, targets, {})) return 0;
    for (int size = 1; size <= n; ++size) {
        bool found = false;
        netid::detail::for_each_subset(netid::all_vertices(g), size, [&](const netid::NodeSet& s) {
            if (!reachable_avoiding(g, sources, targets, s)) {
                found = true;
                return false;
            }
            return true;
        });
        if (found) return size;
    }
    return n;
}

// Largest m for which some set of m vertex-disjoint paths exists, by
// exhaustive enumeration (subset start mode).
inline int brute_max_path_sets(const netid::DiGraph& g, const netid::NodeSet& v1,
                               const netid::NodeSet& v2) {
    int best = -1;
    for (int m = 0; m <= g.n(); ++m) {
        bool any = false;
        try {
            any = !netid::enumerate_path_sets(g, v1, v2, m, 2, netid::StartMode::Subset).empty();
        } catch (const netid::CapExceeded&) {
            any = true;
        }
        if (any) best = m;
    }
    return best;
}

}  // namespace test_helpers
