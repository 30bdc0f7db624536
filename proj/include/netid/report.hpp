#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netid/config.hpp"
#include "netid/graph.hpp"
#include "netid/identify.hpp"
#include "netid/oracle.hpp"

namespace netid {

inline constexpr const char* kToolVersion = "0.1.0";

inline nlohmann::json path_set_to_json(const PathSet& ps) {
    auto arr = nlohmann::json::array();
    for (const auto& p : ps.paths) arr.push_back(p.vertices);
    return arr;
}

inline nlohmann::json witness_to_json(const ConstrainedWitness& w) {
    nlohmann::json j;
    j["paths"] = path_set_to_json(w.path_set);
    j["sources"] = w.source_subset;
    j["targets"] = w.target_subset;
    j["shared"] = w.shared;
    j["enumeration_count"] = w.enumeration_count;
    return j;
}

inline nlohmann::json verdict_to_json(const Verdict& v) {
    nlohmann::json j;
    j["node"] = v.node;
    j["status"] = status_str(v.status);
    j["out_neighbors"] = v.out_neighbors;
    if (v.witness) j["witness"] = witness_to_json(*v.witness);
    if (v.deficiency) {
        nlohmann::json d;
        d["required"] = v.deficiency->required;
        d["achieved"] = v.deficiency->achieved;
        d["shared"] = v.deficiency->shared;
        d["cut"] = v.deficiency->cut;
        j["deficiency"] = d;
    }
    return j;
}

// Rank evidence from generic samples for one node: how often each rank of
// T_{C,N_i} was observed, and whether that is consistent with the verdict.
struct NodeOracleEvidence {
    int node = 0;
    int required = 0;
    std::map<int, int> rank_counts;
    bool consistent = true;
};

inline NodeOracleEvidence collect_rank_evidence(const DiGraph& g, const Verdict& v,
                                                const NodeSet& c, unsigned seed, int samples,
                                                const Config& cfg = default_config()) {
    NodeOracleEvidence ev;
    ev.node = v.node;
    ev.required = static_cast<int>(v.out_neighbors.size());
    for (int s = 0; s < samples; ++s) {
        NetworkMatrix nm = sample_admissible(g, seed + static_cast<unsigned>(s),
                                             SampleMode::Generic, {}, cfg);
        RankTest rt = rank_test(nm, v.node, c, cfg);
        ev.rank_counts[rt.rank] += 1;
        if (v.status == Status::Identifiable && !rt.full) ev.consistent = false;
        if (v.status == Status::NotIdentifiable && rt.full) ev.consistent = false;
    }
    return ev;
}

inline nlohmann::json evidence_to_json(const NodeOracleEvidence& ev) {
    nlohmann::json j;
    j["node"] = ev.node;
    j["required"] = ev.required;
    nlohmann::json counts;
    for (const auto& [rank, cnt] : ev.rank_counts) counts[std::to_string(rank)] = cnt;
    j["rank_counts"] = counts;
    j["consistent"] = ev.consistent;
    return j;
}

struct Report {
    std::string command;
    std::string graph_file;
    DiGraph graph;
    NodeSet measured;
    GraphVerdict verdict;
    std::vector<NodeOracleEvidence> evidence;
    unsigned seed = 0;
    int oracle_samples = 0;
    Config cfg;
};

inline nlohmann::json report_to_json(const Report& r) {
    nlohmann::json j;
    j["command"] = r.command;
    j["graph_file"] = r.graph_file;
    j["graph"] = graph_to_json(r.graph);
    j["measured"] = r.measured;
    j["overall"] = status_str(r.verdict.overall);
    auto nodes = nlohmann::json::array();
    for (const auto& v : r.verdict.per_node) nodes.push_back(verdict_to_json(v));
    j["per_node"] = nodes;
    if (r.oracle_samples > 0) {
        nlohmann::json oracle;
        oracle["samples"] = r.oracle_samples;
        auto per_node = nlohmann::json::array();
        for (const auto& ev : r.evidence) per_node.push_back(evidence_to_json(ev));
        oracle["per_node"] = per_node;
        j["oracle"] = oracle;
    }
    j["seed"] = r.seed;
    j["cap"] = r.cfg.enumeration_cap;
    j["max_exact_n"] = r.cfg.max_exact_n;
    j["version"] = kToolVersion;
    return j;
}

inline std::string witness_paths_str(const ConstrainedWitness& w) {
    std::string s;
    for (std::size_t k = 0; k < w.path_set.paths.size(); ++k) {
        if (k) s += ", ";
        s += w.path_set.paths[k].str();
    }
    return s;
}

inline std::string verdict_text(const Verdict& v) {
    std::string line = "node " + std::to_string(v.node) + ": " + status_str(v.status);
    if (v.status == Status::Identifiable && v.witness) {
        if (v.witness->path_set.paths.empty())
            line += "  (no out-neighbours, nothing to identify)";
        else
            line += "  (constrained paths: " + witness_paths_str(*v.witness) + ")";
    } else if (v.status == Status::NotIdentifiable && v.deficiency) {
        line += "  (only " + std::to_string(v.deficiency->achieved) + " of " +
                std::to_string(v.deficiency->required) + " vertex-disjoint paths; cut " +
                node_set_str(v.deficiency->cut) + ")";
    } else if (v.status == Status::Inconclusive) {
        line += "  (enough disjoint paths, but no constrained set found)";
    }
    return line;
}

inline std::string report_text(const Report& r) {
    std::string out;
    out += "graph: " + r.graph_file + "  (n=" + std::to_string(r.graph.n()) + ", " +
           std::to_string(r.graph.edges().size()) + " edges)\n";
    out += "measured: " + node_set_str(r.measured) + "\n";
    for (const auto& v : r.verdict.per_node) out += verdict_text(v) + "\n";
    for (const auto& ev : r.evidence) {
        out += "oracle node " + std::to_string(ev.node) + ": ranks";
        for (const auto& [rank, cnt] : ev.rank_counts)
            out += " " + std::to_string(rank) + "x" + std::to_string(cnt);
        out += " of required " + std::to_string(ev.required) +
               (ev.consistent ? " (consistent)" : " (INCONSISTENT)");
        out += "\n";
    }
    out += "overall: " + status_str(r.verdict.overall) + "\n";
    return out;
}

}  // namespace netid
