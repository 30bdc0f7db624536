#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netid/config.hpp"
#include "netid/disjoint_paths.hpp"
#include "netid/errors.hpp"
#include "netid/graph.hpp"

namespace netid {

// The graph test is sufficient only, so the absence of a constrained set
// must not be reported as non-identifiability.
enum class Status {
    Identifiable,
    NotIdentifiable,
    Inconclusive,
};

inline std::string status_str(Status s) {
    switch (s) {
        case Status::Identifiable: return "Identifiable";
        case Status::NotIdentifiable: return "NotIdentifiable";
        case Status::Inconclusive: return "Inconclusive";
    }
    return "?";
}

// Certificate for NotIdentifiable: fewer vertex-disjoint paths than out-
// neighbours exist, witnessed by a vertex cut of the reduced problem whose
// size caps every path collection at `achieved`.
struct PathDeficiency {
    int required = 0;  // |N_i|
    int achieved = 0;  // maximum vertex-disjoint paths from N_i to C
    NodeSet shared;    // N_i n C, served by length-zero paths
    NodeSet cut;       // minimum vertex cut for the reduced problem
};

struct Verdict {
    int node = 0;
    Status status = Status::Inconclusive;
    NodeSet out_neighbors;
    std::optional<ConstrainedWitness> witness;    // present iff Identifiable
    std::optional<PathDeficiency> deficiency;     // present iff NotIdentifiable
};

struct GraphVerdict {
    std::vector<Verdict> per_node;  // sorted by node index
    Status overall = Status::Inconclusive;
};

// Decide identifiability of (i, N_i) from the measured set c:
//   - |N_i| = 0: nothing to identify, trivially Identifiable.
//   - fewer than |N_i| vertex-disjoint paths from N_i to c: NotIdentifiable
//     (the rank of T_{C,N_i} stays below |N_i| for every admissible matrix).
//   - a constrained set of |N_i| vertex-disjoint paths exists: Identifiable.
//   - otherwise Inconclusive; the path condition is sufficient only.
inline Verdict decide_node(const DiGraph& g, int i, const NodeSet& c,
                           const Config& cfg = default_config()) {
    g.check_vertex(i);
    g.check_node_set(c);
    Verdict v;
    v.node = i;
    v.out_neighbors = out_neighbors(g, i);
    const int m = static_cast<int>(v.out_neighbors.size());
    if (m == 0) {
        v.status = Status::Identifiable;
        v.witness = ConstrainedWitness{};  // empty certificate
        return v;
    }
    MaxDisjointPaths flow = max_disjoint_paths(g, v.out_neighbors, c);
    if (flow.count < m) {
        v.status = Status::NotIdentifiable;
        v.deficiency = PathDeficiency{m, flow.count, flow.shared, flow.reduced_cut};
        return v;
    }
    if (auto w = exists_constrained_set(g, v.out_neighbors, c, m, cfg.enumeration_cap)) {
        v.status = Status::Identifiable;
        v.witness = std::move(w);
        return v;
    }
    v.status = Status::Inconclusive;
    return v;
}

inline GraphVerdict decide_graph(const DiGraph& g, const NodeSet& c,
                                 const Config& cfg = default_config()) {
    GraphVerdict gv;
    bool all_yes = true;
    bool any_no = false;
    for (int i = 1; i <= g.n(); ++i) {
        Verdict v = decide_node(g, i, c, cfg);
        all_yes = all_yes && v.status == Status::Identifiable;
        any_no = any_no || v.status == Status::NotIdentifiable;
        gv.per_node.push_back(std::move(v));
    }
    gv.overall = all_yes ? Status::Identifiable
                         : (any_no ? Status::NotIdentifiable : Status::Inconclusive);
    return gv;
}

// Brute-force search over all size-k measured sets, in lexicographic order,
// keeping those for which the whole graph is identifiable.
inline std::vector<NodeSet> suggest_measurement_sets(const DiGraph& g, int k,
                                                     const Config& cfg = default_config()) {
    if (k < 1 || k > g.n()) throw PreconditionError("measurement set size must be in {1..n}");
    if (g.n() > cfg.max_exact_n)
        throw SizeLimit("measurement-set search limited to n <= " +
                        std::to_string(cfg.max_exact_n));
    std::vector<NodeSet> result;
    detail::for_each_subset(all_vertices(g), k, [&](const NodeSet& c) {
        if (decide_graph(g, c, cfg).overall == Status::Identifiable) result.push_back(c);
        return true;
    });
    return result;
}

}  // namespace netid
