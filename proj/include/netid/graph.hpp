#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "netid/errors.hpp"

namespace netid {

// Sorted, duplicate-free set of 1-based vertex indices.
using NodeSet = std::vector<int>;

inline NodeSet make_node_set(std::vector<int> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return members;
}

inline bool contains(const NodeSet& s, int v) {
    return std::binary_search(s.begin(), s.end(), v);
}

inline NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    NodeSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
    NodeSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
    NodeSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline std::string node_set_str(const NodeSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

// Simple directed graph on vertices {1..n}: no self-loops, no duplicate
// edges. Immutable after construction. `measured` and `labels` are optional
// metadata carried through from the input file.
class DiGraph {
  public:
    DiGraph() : DiGraph(1, {}) {}  // trivial single-vertex graph
    DiGraph(int n, std::vector<std::pair<int, int>> edges,
            NodeSet measured = {}, std::vector<std::string> labels = {})
        : n_(n), edges_(std::move(edges)), measured_(std::move(measured)), labels_(std::move(labels)) {
        if (n_ < 1) throw InvariantError("vertex count must be positive");
        std::sort(edges_.begin(), edges_.end());
        std::set<std::pair<int, int>> seen;
        for (const auto& [i, j] : edges_) {
            if (i < 1 || i > n_ || j < 1 || j > n_)
                throw InvariantError("edge (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") has endpoint outside {1.." + std::to_string(n_) + "}");
            if (i == j) throw InvariantError("self-loop (" + std::to_string(i) + "," + std::to_string(j) + ")");
            if (!seen.insert({i, j}).second)
                throw InvariantError("duplicate edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
        for (int v : measured_)
            if (v < 1 || v > n_) throw InvariantError("measured node " + std::to_string(v) + " out of range");
        measured_ = make_node_set(measured_);
        if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
            throw InvariantError("labels array must have length n");
        out_.assign(static_cast<std::size_t>(n_) + 1, {});
        for (const auto& [i, j] : edges_) out_[static_cast<std::size_t>(i)].push_back(j);
    }

    int n() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const NodeSet& measured() const { return measured_; }
    const std::vector<std::string>& labels() const { return labels_; }

    bool has_edge(int i, int j) const {
        return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(i, j));
    }

    void check_vertex(int i) const {
        if (i < 1 || i > n_)
            throw InvariantError("vertex " + std::to_string(i) + " outside {1.." + std::to_string(n_) + "}");
    }

    void check_node_set(const NodeSet& s) const {
        for (std::size_t k = 0; k < s.size(); ++k) {
            check_vertex(s[k]);
            if (k > 0 && s[k] <= s[k - 1]) throw InvariantError("node set not sorted or has duplicates");
        }
    }

  private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    NodeSet measured_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> out_;

    friend const std::vector<int>& out_edges(const DiGraph& g, int i);
};

inline const std::vector<int>& out_edges(const DiGraph& g, int i) {
    g.check_vertex(i);
    return g.out_[static_cast<std::size_t>(i)];
}

inline NodeSet out_neighbors(const DiGraph& g, int i) {
    return make_node_set(out_edges(g, i));
}

inline NodeSet complement(const DiGraph& g, const NodeSet& s) {
    g.check_node_set(s);
    NodeSet r;
    r.reserve(static_cast<std::size_t>(g.n()) - s.size());
    for (int v = 1; v <= g.n(); ++v)
        if (!contains(s, v)) r.push_back(v);
    return r;
}

inline NodeSet all_vertices(const DiGraph& g) {
    NodeSet r(static_cast<std::size_t>(g.n()));
    for (int v = 1; v <= g.n(); ++v) r[static_cast<std::size_t>(v - 1)] = v;
    return r;
}

// --- JSON format -------------------------------------------------------------
// {"n": 5, "edges": [[1,2],[1,3]], "measured": [4,5], "labels": ["a",...]}

inline DiGraph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw SyntaxError("graph JSON must be an object");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw SyntaxError("graph JSON needs integer field 'n'");
    if (!j.contains("edges") || !j["edges"].is_array()) throw SyntaxError("graph JSON needs array field 'edges'");
    long long n_raw = j["n"].get<long long>();
    if (n_raw < 1 || n_raw > 1'000'000) throw InvariantError("vertex count out of supported range");
    int n = static_cast<int>(n_raw);
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw SyntaxError("each edge must be a 2-array of integers");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    NodeSet measured;
    if (j.contains("measured")) {
        if (!j["measured"].is_array()) throw SyntaxError("'measured' must be an array of integers");
        for (const auto& v : j["measured"]) {
            if (!v.is_number_integer()) throw SyntaxError("'measured' must be an array of integers");
            measured.push_back(v.get<int>());
        }
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array()) throw SyntaxError("'labels' must be an array of strings");
        for (const auto& s : j["labels"]) {
            if (!s.is_string()) throw SyntaxError("'labels' must be an array of strings");
            labels.push_back(s.get<std::string>());
        }
    }
    return DiGraph(n, std::move(edges), std::move(measured), std::move(labels));
}

inline nlohmann::json graph_to_json(const DiGraph& g) {
    nlohmann::json j;
    j["n"] = g.n();
    auto edges = nlohmann::json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
    j["edges"] = std::move(edges);
    if (!g.measured().empty()) j["measured"] = g.measured();
    if (!g.labels().empty()) j["labels"] = g.labels();
    return j;
}

inline std::string serialize_graph(const DiGraph& g) { return graph_to_json(g).dump(2) + "\n"; }

// --- restricted DOT ----------------------------------------------------------
// Accepts `digraph name? { 1 -> 2; 3; 2 [shape=doublecircle]; ... }` with
// integer node names; `->` chains are allowed. A node attribute
// shape=doublecircle marks the node as measured, mirroring the exporter.

namespace detail {

struct DotTokenizer {
    std::string_view text;
    std::size_t pos = 0;

    std::string next() {
        while (pos < text.size()) {
            char c = text[pos];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
                continue;
            }
            if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
                continue;
            }
            break;
        }
        if (pos >= text.size()) return "";
        char c = text[pos];
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            return std::string(text.substr(start, pos - start));
        }
        if (c == '-' && pos + 1 < text.size() && text[pos + 1] == '>') {
            pos += 2;
            return "->";
        }
        ++pos;
        return std::string(1, c);
    }
};

inline int dot_node_id(const std::string& tok) {
    if (tok.empty()) throw SyntaxError("unexpected end of DOT input");
    for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw SyntaxError("DOT node names must be integers, got '" + tok + "'");
    try {
        return std::stoi(tok);
    } catch (const std::out_of_range&) {
        throw SyntaxError("DOT node name out of range: '" + tok + "'");
    }
}

}  // namespace detail

inline DiGraph graph_from_dot(std::string_view text) {
    detail::DotTokenizer tz{text};
    if (tz.next() != "digraph") throw SyntaxError("DOT input must start with 'digraph'");
    std::string tok = tz.next();
    if (tok != "{") {
        tok = tz.next();  // optional graph name
        if (tok != "{") throw SyntaxError("expected '{' in DOT input");
    }
    int max_node = 0;
    std::vector<std::pair<int, int>> edges;
    NodeSet measured;
    for (;;) {
        tok = tz.next();
        if (tok == "}") break;
        if (tok.empty()) throw SyntaxError("unterminated DOT graph");
        if (tok == ";") continue;
        int v = detail::dot_node_id(tok);
        max_node = std::max(max_node, v);
        tok = tz.next();
        while (tok == "->") {
            int w = detail::dot_node_id(tz.next());
            max_node = std::max(max_node, w);
            edges.emplace_back(v, w);
            v = w;
            tok = tz.next();
        }
        if (tok == "[") {
            std::string attrs;
            for (tok = tz.next(); tok != "]"; tok = tz.next()) {
                if (tok.empty()) throw SyntaxError("unterminated attribute list in DOT input");
                attrs += tok;
            }
            if (attrs.find("shape=doublecircle") != std::string::npos) measured.push_back(v);
            tok = tz.next();
        }
        if (tok != ";" && tok != "}") throw SyntaxError("expected ';' in DOT input, got '" + tok + "'");
        if (tok == "}") break;
    }
    if (max_node == 0) throw SyntaxError("DOT graph has no nodes");
    return DiGraph(max_node, std::move(edges), std::move(measured));
}

inline std::string graph_to_dot(const DiGraph& g, const NodeSet& measured) {
    std::string out = "digraph G {\n";
    for (int v = 1; v <= g.n(); ++v) {
        out += "  " + std::to_string(v);
        if (contains(measured, v)) out += " [shape=doublecircle]";
        out += ";\n";
    }
    for (const auto& [a, b] : g.edges())
        out += "  " + std::to_string(a) + " -> " + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
}

// Accepts either the JSON object format or the restricted DOT format,
// dispatching on the first non-space character.
inline DiGraph parse_graph(std::string_view text) {
    std::size_t k = 0;
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    if (k == text.size()) throw SyntaxError("empty graph input");
    if (text[k] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw SyntaxError(std::string("invalid JSON: ") + e.what());
        }
        return graph_from_json(j);
    }
    return graph_from_dot(text);
}

}  // namespace netid
