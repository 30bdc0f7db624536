#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "netid/config.hpp"
#include "netid/errors.hpp"
#include "netid/graph.hpp"

namespace netid {

// A path is its vertex sequence; a single vertex is a length-zero path
// (used for the overlap convention on shared start/end nodes).
struct Path {
    std::vector<int> vertices;

    int length() const { return static_cast<int>(vertices.size()) - 1; }
    int start() const { return vertices.front(); }
    int end() const { return vertices.back(); }

    // Edge set of the path, in traversal order.
    std::vector<std::pair<int, int>> edge_set() const {
        std::vector<std::pair<int, int>> e;
        for (std::size_t k = 0; k + 1 < vertices.size(); ++k)
            e.emplace_back(vertices[k], vertices[k + 1]);
        return e;
    }

    std::string str() const {
        std::string s;
        for (std::size_t k = 0; k < vertices.size(); ++k) {
            if (k) s += "->";
            s += std::to_string(vertices[k]);
        }
        return s;
    }

    friend bool operator==(const Path& a, const Path& b) { return a.vertices == b.vertices; }
    friend bool operator<(const Path& a, const Path& b) { return a.vertices < b.vertices; }
};

struct PathSet {
    std::vector<Path> paths;

    NodeSet start_nodes() const {
        NodeSet s;
        for (const auto& p : paths) s.push_back(p.start());
        return make_node_set(s);
    }
    NodeSet end_nodes() const {
        NodeSet s;
        for (const auto& p : paths) s.push_back(p.end());
        return make_node_set(s);
    }

    // Path sets compare equal iff their underlying edge sets are equal.
    // Vertex-disjointness makes the decomposition into paths unique, so
    // comparing sorted paths is equivalent for valid sets.
    friend bool operator==(const PathSet& a, const PathSet& b) {
        std::vector<Path> pa = a.paths, pb = b.paths;
        std::sort(pa.begin(), pa.end());
        std::sort(pb.begin(), pb.end());
        return pa == pb;
    }

    std::string str() const {
        std::string s = "{";
        for (std::size_t k = 0; k < paths.size(); ++k) {
            if (k) s += ", ";
            s += paths[k].str();
        }
        return s + "}";
    }
};

// Structural check of the PathSet invariants: every consecutive pair is an
// edge, vertices within a path are distinct, and paths are pairwise
// vertex-disjoint including endpoints.
inline void check_path_set(const DiGraph& g, const PathSet& ps) {
    std::vector<bool> used(static_cast<std::size_t>(g.n()) + 1, false);
    for (const auto& p : ps.paths) {
        if (p.vertices.empty()) throw InvariantError("empty path in path set");
        for (std::size_t k = 0; k < p.vertices.size(); ++k) {
            int v = p.vertices[k];
            g.check_vertex(v);
            if (used[static_cast<std::size_t>(v)])
                throw InvariantError("paths are not vertex-disjoint at " + std::to_string(v));
            used[static_cast<std::size_t>(v)] = true;
            if (k + 1 < p.vertices.size() && !g.has_edge(v, p.vertices[k + 1]))
                throw InvariantError("missing edge (" + std::to_string(v) + "," +
                                     std::to_string(p.vertices[k + 1]) + ") in path");
        }
    }
}

// Witness that a set of vertex-disjoint paths is constrained: it is the
// only set of its size between its exact start and end node sets. The
// shared nodes contribute length-zero paths under the overlap convention;
// enumeration_count refers to the reduced problem and must be 1.
struct ConstrainedWitness {
    PathSet path_set;       // includes the length-zero paths on `shared`
    NodeSet source_subset;  // start nodes, shared nodes included
    NodeSet target_subset;  // end nodes, shared nodes included
    NodeSet shared;         // v1 n v2, served by length-zero paths
    std::int64_t enumeration_count = 1;
};

namespace detail {

// Unit-capacity max flow on the node-split digraph: every vertex v becomes
// v_in -> v_out with capacity 1; graph edges and source/sink hookups get
// effectively infinite capacity, so every minimum cut consists of vertex
// arcs only.
class SplitFlow {
  public:
    SplitFlow(const DiGraph& g, const NodeSet& excluded, const NodeSet& sources,
              const NodeSet& targets)
        : g_(g) {
        const int n = g.n();
        adj_.assign(2 * static_cast<std::size_t>(n) + 2, {});
        const int big = n + 1;
        alive_.assign(static_cast<std::size_t>(n) + 1, true);
        for (int v : excluded) alive_[static_cast<std::size_t>(v)] = false;
        for (int v = 1; v <= n; ++v)
            if (alive_[static_cast<std::size_t>(v)]) add_arc(in(v), out(v), 1);
        for (int v : sources)
            if (alive_[static_cast<std::size_t>(v)]) add_arc(kSource, in(v), big);
        for (const auto& [u, v] : g.edges())
            if (alive_[static_cast<std::size_t>(u)] && alive_[static_cast<std::size_t>(v)])
                add_arc(out(u), in(v), big);
        for (int v : targets)
            if (alive_[static_cast<std::size_t>(v)]) add_arc(out(v), kSink, big);
    }

    int max_flow() {
        int total = 0;
        while (true) {
            // BFS shortest augmenting path; first-found tie-break keeps the
            // result deterministic (arcs are inserted in vertex order).
            std::vector<int> parent_arc(adj_.size(), -1);
            std::vector<bool> seen(adj_.size(), false);
            std::queue<int> q;
            q.push(kSource);
            seen[kSource] = true;
            while (!q.empty() && !seen[kSink]) {
                int u = q.front();
                q.pop();
                for (int a : adj_[static_cast<std::size_t>(u)]) {
                    const Arc& arc = arcs_[static_cast<std::size_t>(a)];
                    if (arc.cap > 0 && !seen[static_cast<std::size_t>(arc.to)]) {
                        seen[static_cast<std::size_t>(arc.to)] = true;
                        parent_arc[static_cast<std::size_t>(arc.to)] = a;
                        q.push(arc.to);
                    }
                }
            }
            if (!seen[kSink]) break;
            for (int v = kSink; v != kSource;) {
                int a = parent_arc[static_cast<std::size_t>(v)];
                arcs_[static_cast<std::size_t>(a)].cap -= 1;
                arcs_[static_cast<std::size_t>(a ^ 1)].cap += 1;
                v = arcs_[static_cast<std::size_t>(a ^ 1)].to;
            }
            ++total;
        }
        return total;
    }

    // Vertices v with v_in residually reachable from the source but v_out
    // not; by max-flow/min-cut these form a minimum vertex cut.
    NodeSet vertex_cut() const {
        std::vector<bool> seen(adj_.size(), false);
        std::queue<int> q;
        q.push(kSource);
        seen[kSource] = true;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int a : adj_[static_cast<std::size_t>(u)]) {
                const Arc& arc = arcs_[static_cast<std::size_t>(a)];
                if (arc.cap > 0 && !seen[static_cast<std::size_t>(arc.to)]) {
                    seen[static_cast<std::size_t>(arc.to)] = true;
                    q.push(arc.to);
                }
            }
        }
        NodeSet cut;
        for (int v = 1; v <= g_.n(); ++v)
            if (alive_[static_cast<std::size_t>(v)] && seen[static_cast<std::size_t>(in(v))] &&
                !seen[static_cast<std::size_t>(out(v))])
                cut.push_back(v);
        return cut;
    }

    // Decompose the flow into vertex-disjoint paths, one per saturated
    // source, walking saturated arcs with smallest-target preference.
    std::vector<Path> decompose(const NodeSet& sources) {
        std::vector<Path> paths;
        for (int s : sources) {
            if (!alive_[static_cast<std::size_t>(s)]) continue;
            int arc_sv = find_flow_arc(kSource, in(s));
            if (arc_sv < 0) continue;
            consume(arc_sv);
            Path p;
            int v = s;
            for (;;) {
                p.vertices.push_back(v);
                consume(find_flow_arc(in(v), out(v)));
                int to_sink = find_flow_arc(out(v), kSink);
                if (to_sink >= 0) {
                    consume(to_sink);
                    break;
                }
                int a = first_flow_arc_from(out(v));
                if (a < 0) throw Error("internal: flow decomposition stuck at " + std::to_string(v));
                consume(a);
                v = arcs_[static_cast<std::size_t>(a)].to / 2;  // in(w) = 2w
            }
            paths.push_back(std::move(p));
        }
        return paths;
    }

  private:
    struct Arc {
        int to;
        int cap;
        int initial;
    };

    static constexpr int kSource = 0;
    static constexpr int kSink = 1;
    static int in(int v) { return 2 * v; }
    static int out(int v) { return 2 * v + 1; }

    void add_arc(int from, int to, int cap) {
        adj_[static_cast<std::size_t>(from)].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({to, cap, cap});
        adj_[static_cast<std::size_t>(to)].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({from, 0, 0});
    }

    int flow_on(int a) const { return arcs_[static_cast<std::size_t>(a)].initial - arcs_[static_cast<std::size_t>(a)].cap; }

    int find_flow_arc(int from, int to) const {
        for (int a : adj_[static_cast<std::size_t>(from)]) {
            const Arc& arc = arcs_[static_cast<std::size_t>(a)];
            if (arc.to == to && a % 2 == 0 && flow_on(a) > 0) return a;
        }
        return -1;
    }

    int first_flow_arc_from(int from) const {
        for (int a : adj_[static_cast<std::size_t>(from)])
            if (a % 2 == 0 && flow_on(a) > 0) return a;
        return -1;
    }

    // Remove one unit from a forward arc while walking the decomposition.
    void consume(int a) {
        if (a < 0) throw Error("internal: missing flow arc in decomposition");
        arcs_[static_cast<std::size_t>(a)].cap += 1;
    }

    const DiGraph& g_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> adj_;
    std::vector<bool> alive_;
};

// Copy of the graph with all edges incident to `excluded` removed. The
// vertex numbering is preserved.
inline DiGraph remove_vertices(const DiGraph& g, const NodeSet& excluded) {
    if (excluded.empty()) return g;
    std::vector<std::pair<int, int>> edges;
    for (const auto& [u, v] : g.edges())
        if (!contains(excluded, u) && !contains(excluded, v)) edges.emplace_back(u, v);
    return DiGraph(g.n(), std::move(edges));
}

}  // namespace detail

struct MaxDisjointPaths {
    int count = 0;
    PathSet witness;
    // Overlap convention bookkeeping: shared nodes are served by length-zero
    // paths; reduced_cut is a minimum vertex cut for the residual problem
    // from v1\v2 to v2\v1 with the shared vertices removed, so
    // count = |shared| + |reduced_cut| certifies maximality.
    NodeSet shared;
    NodeSet reduced_cut;
};

// Maximum number of vertex-disjoint paths from v1 to v2 under the overlap
// convention: each shared vertex contributes a length-zero path occupying
// it, and the remainder is a unit-capacity max flow on the node-split
// digraph with the shared vertices removed.
inline MaxDisjointPaths max_disjoint_paths(const DiGraph& g, const NodeSet& v1, const NodeSet& v2) {
    g.check_node_set(v1);
    g.check_node_set(v2);
    MaxDisjointPaths res;
    res.shared = set_intersection(v1, v2);
    NodeSet sources = set_difference(v1, v2);
    NodeSet targets = set_difference(v2, v1);
    detail::SplitFlow net(g, res.shared, sources, targets);
    res.count = static_cast<int>(res.shared.size()) + net.max_flow();
    res.reduced_cut = net.vertex_cut();
    for (int v : res.shared) res.witness.paths.push_back(Path{{v}});
    for (auto& p : net.decompose(sources)) res.witness.paths.push_back(std::move(p));
    return res;
}

enum class StartMode {
    Exact,   // start nodes must be exactly v1 (requires m = |v1|)
    Subset,  // start nodes may be any size-m subset of v1
};

namespace detail {

// Exhaustive backtracking over sets of m vertex-disjoint paths. Sources are
// processed in ascending order; at a target vertex the walk branches into
// "end the path here" and "continue through". `emit` returning false stops
// the search early.
class PathSetEnumerator {
  public:
    PathSetEnumerator(const DiGraph& g, NodeSet targets, std::function<bool(const PathSet&)> emit)
        : g_(g), targets_(std::move(targets)), emit_(std::move(emit)),
          used_(static_cast<std::size_t>(g.n()) + 1, false) {}

    // All sources are pre-marked used, so no path may traverse another's
    // start node.
    bool run(const NodeSet& sources) {
        sources_ = sources;
        for (int s : sources_) used_[static_cast<std::size_t>(s)] = true;
        bool keep_going = next_path(0);
        for (int s : sources_) used_[static_cast<std::size_t>(s)] = false;
        return keep_going;
    }

  private:
    bool next_path(std::size_t idx) {
        if (idx == sources_.size()) {
            PathSet ps;
            ps.paths.reserve(current_.size());
            for (const auto& v : current_) ps.paths.push_back(Path{v});
            return emit_(ps);
        }
        current_.push_back({sources_[idx]});
        bool keep_going = walk(idx, sources_[idx]);
        current_.pop_back();
        return keep_going;
    }

    bool walk(std::size_t idx, int u) {
        if (contains(targets_, u)) {
            if (!next_path(idx + 1)) return false;
        }
        for (int w : out_edges(g_, u)) {
            if (used_[static_cast<std::size_t>(w)]) continue;
            used_[static_cast<std::size_t>(w)] = true;
            current_[idx].push_back(w);
            bool keep_going = walk(idx, w);
            current_[idx].pop_back();
            used_[static_cast<std::size_t>(w)] = false;
            if (!keep_going) return false;
        }
        return true;
    }

    const DiGraph& g_;
    NodeSet targets_;
    std::function<bool(const PathSet&)> emit_;
    std::vector<bool> used_;
    NodeSet sources_;
    std::vector<std::vector<int>> current_;
};

// Lexicographic size-k subsets of a sorted pool.
inline void for_each_subset(const NodeSet& pool, int k,
                            const std::function<bool(const NodeSet&)>& body) {
    if (k < 0 || k > static_cast<int>(pool.size())) return;
    std::vector<int> pick(static_cast<std::size_t>(k));
    std::function<bool(int, int)> rec = [&](int offset, int depth) {
        if (depth == k) {
            NodeSet subset;
            subset.reserve(static_cast<std::size_t>(k));
            for (int idx : pick) subset.push_back(pool[static_cast<std::size_t>(idx)]);
            return body(subset);
        }
        for (int i = offset; i <= static_cast<int>(pool.size()) - (k - depth); ++i) {
            pick[static_cast<std::size_t>(depth)] = i;
            if (!rec(i + 1, depth + 1)) return false;
        }
        return true;
    };
    rec(0, 0);
}

}  // namespace detail

// All distinct sets of exactly m vertex-disjoint paths from v1 to v2
// (v1 and v2 disjoint; callers apply the overlap convention first). In
// Exact mode the start nodes must be exactly v1; in Subset mode they range
// over all size-m subsets of v1. Raises CapExceeded once more than `cap`
// sets are found.
inline std::vector<PathSet> enumerate_path_sets(const DiGraph& g, const NodeSet& v1,
                                                const NodeSet& v2, int m,
                                                std::int64_t cap = default_config().enumeration_cap,
                                                StartMode mode = StartMode::Exact) {
    g.check_node_set(v1);
    g.check_node_set(v2);
    if (m < 0) throw PreconditionError("path-set size must be nonnegative");
    if (cap < 1) throw PreconditionError("enumeration cap must be positive");
    if (!set_intersection(v1, v2).empty())
        throw PreconditionError("enumerate_path_sets requires disjoint node sets");
    std::vector<PathSet> out;
    if (mode == StartMode::Exact && m != static_cast<int>(v1.size())) return out;
    auto emit = [&](const PathSet& ps) {
        if (static_cast<std::int64_t>(out.size()) >= cap)
            throw CapExceeded("more than " + std::to_string(cap) + " path sets from " +
                              node_set_str(v1) + " to " + node_set_str(v2));
        out.push_back(ps);
        return true;
    };
    if (mode == StartMode::Exact) {
        detail::PathSetEnumerator(g, v2, emit).run(v1);
    } else {
        detail::for_each_subset(v1, m, [&](const NodeSet& subset) {
            detail::PathSetEnumerator(g, v2, emit).run(subset);
            return true;
        });
    }
    return out;
}

// Search for a constrained set of m vertex-disjoint paths from v1 to v2:
// after reserving the shared vertices for length-zero paths, scan subset
// pairs of the reduced sets in lexicographic order (targets outer, sources
// inner) and return the first pair whose exact-mode enumeration yields
// exactly one set.
inline std::optional<ConstrainedWitness> exists_constrained_set(
    const DiGraph& g, const NodeSet& v1, const NodeSet& v2, int m,
    std::int64_t cap = default_config().enumeration_cap) {
    g.check_node_set(v1);
    g.check_node_set(v2);
    if (m < 0) throw PreconditionError("path count must be nonnegative");
    NodeSet shared = set_intersection(v1, v2);
    NodeSet src_pool = set_difference(v1, v2);
    NodeSet tgt_pool = set_difference(v2, v1);
    const int reduced_m = std::max(0, m - static_cast<int>(shared.size()));
    DiGraph reduced = detail::remove_vertices(g, shared);

    std::optional<ConstrainedWitness> found;
    detail::for_each_subset(tgt_pool, reduced_m, [&](const NodeSet& targets) {
        detail::for_each_subset(src_pool, reduced_m, [&](const NodeSet& sources) {
            auto sets = enumerate_path_sets(reduced, sources, targets, reduced_m, cap,
                                            StartMode::Exact);
            if (sets.size() == 1) {
                ConstrainedWitness w;
                for (int v : shared) w.path_set.paths.push_back(Path{{v}});
                for (auto& p : sets[0].paths) w.path_set.paths.push_back(std::move(p));
                w.source_subset = set_union(shared, sources);
                w.target_subset = set_union(shared, targets);
                w.shared = shared;
                w.enumeration_count = 1;
                found = std::move(w);
                return false;
            }
            return true;
        });
        return !found.has_value();
    });
    return found;
}

// Re-derives the reduced uniqueness statement behind a witness; used by
// certificate-soundness checks.
inline bool validate_witness(const DiGraph& g, const ConstrainedWitness& w,
                             std::int64_t cap = default_config().enumeration_cap) {
    try {
        check_path_set(g, w.path_set);
    } catch (const InvariantError&) {
        return false;
    }
    NodeSet sources = set_difference(w.source_subset, w.shared);
    NodeSet targets = set_difference(w.target_subset, w.shared);
    DiGraph reduced = detail::remove_vertices(g, w.shared);
    auto sets = enumerate_path_sets(reduced, sources, targets, static_cast<int>(sources.size()),
                                    cap, StartMode::Exact);
    if (sets.size() != 1 || w.enumeration_count != 1) return false;
    PathSet reduced_paths;
    for (const auto& p : w.path_set.paths)
        if (p.length() > 0) reduced_paths.paths.push_back(p);
    for (const auto& p : w.path_set.paths)
        if (p.length() == 0 && !contains(w.shared, p.start())) return false;
    return sets[0] == reduced_paths;
}

}  // namespace netid
