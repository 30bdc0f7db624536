#include <doctest.h>

#include <random>

#include "netid/graph.hpp"
#include "helpers.hpp"

using namespace netid;
using namespace test_helpers;

TEST_CASE("parsing the bundled fixtures") {
    DiGraph fanout_full = load_graph("fanout_full.json");
    CHECK(fanout_full.n() == 5);
    CHECK(fanout_full.edges().size() == 6);
    CHECK(fanout_full.measured() == NodeSet{4, 5});

    DiGraph three_layer = load_graph("three_layer.json");
    CHECK(three_layer.n() == 8);
    CHECK(three_layer.edges().size() == 10);
}

TEST_CASE("single vertex graph with no edges") {
    DiGraph g = parse_graph(R"({"n":1,"edges":[]})");
    CHECK(g.n() == 1);
    CHECK(out_neighbors(g, 1).empty());
}

TEST_CASE("invalid graphs are rejected") {
    CHECK_THROWS_AS(parse_graph(R"({"n":2,"edges":[[1,1]]})"), InvariantError);
    CHECK_THROWS_AS(parse_graph(R"({"n":2,"edges":[[1,2],[1,2]]})"), InvariantError);
    CHECK_THROWS_AS(parse_graph(R"({"n":2,"edges":[[1,3]]})"), InvariantError);
    CHECK_THROWS_AS(parse_graph(R"({"n":0,"edges":[]})"), InvariantError);
    CHECK_THROWS_AS(parse_graph(R"({"n":2,"edges":[[1,2]],"measured":[7]})"), InvariantError);
    CHECK_THROWS_AS(parse_graph(R"({"n":2,"edges":[[1,2]],"labels":["a"]})"), InvariantError);
    CHECK_THROWS_AS(parse_graph(R"({"edges":[]})"), SyntaxError);
    CHECK_THROWS_AS(parse_graph("{nonsense"), SyntaxError);
    CHECK_THROWS_AS(parse_graph(""), SyntaxError);
}

TEST_CASE("out-neighbour queries") {
    DiGraph fanout_full = load_graph("fanout_full.json");
    CHECK(out_neighbors(fanout_full, 1) == NodeSet{2, 3});
    CHECK(out_neighbors(fanout_full, 4).empty());
    CHECK_THROWS_AS(out_neighbors(fanout_full, 0), InvariantError);
    CHECK_THROWS_AS(out_neighbors(fanout_full, 6), InvariantError);

    DiGraph three_layer = load_graph("three_layer.json");
    CHECK(out_neighbors(three_layer, 4) == NodeSet{6, 7, 8});
}

TEST_CASE("complements") {
    DiGraph fanout_full = load_graph("fanout_full.json");
    CHECK(complement(fanout_full, {4, 5}) == NodeSet{1, 2, 3});
    CHECK(complement(fanout_full, {}) == NodeSet{1, 2, 3, 4, 5});

    DiGraph three_layer = load_graph("three_layer.json");
    CHECK(complement(three_layer, {2, 3}) == NodeSet{1, 4, 5, 6, 7, 8});
}

TEST_CASE("complement is an involution and out-neighbours exclude the node") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 50; ++t) {
        DiGraph g = random_digraph(rng);
        NodeSet s = random_subset(rng, g.n());
        CHECK(complement(g, complement(g, s)) == s);
        for (int i = 1; i <= g.n(); ++i) CHECK_FALSE(contains(out_neighbors(g, i), i));
    }
}

TEST_CASE("serialize then parse is the identity") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 40; ++t) {
        DiGraph g = random_digraph(rng);
        DiGraph back = parse_graph(serialize_graph(g));
        CHECK(back.n() == g.n());
        CHECK(back.edges() == g.edges());
        CHECK(back.measured() == g.measured());
    }
    DiGraph fanout_full = load_graph("fanout_full.json");
    DiGraph back = parse_graph(serialize_graph(fanout_full));
    CHECK(back.edges() == fanout_full.edges());
    CHECK(back.measured() == fanout_full.measured());

    DiGraph labeled(2, {{1, 2}}, {2}, {"plant", "sensor"});
    DiGraph labeled_back = parse_graph(serialize_graph(labeled));
    CHECK(labeled_back.labels() == labeled.labels());
    CHECK(labeled_back.measured() == NodeSet{2});
}

TEST_CASE("DOT export marks measured nodes and re-imports losslessly") {
    DiGraph fanout_full = load_graph("fanout_full.json");
    std::string dot = graph_to_dot(fanout_full, fanout_full.measured());
    CHECK(dot.find("4 [shape=doublecircle]") != std::string::npos);
    DiGraph back = parse_graph(dot);
    CHECK(back.n() == fanout_full.n());
    CHECK(back.edges() == fanout_full.edges());
    CHECK(back.measured() == fanout_full.measured());
}

TEST_CASE("DOT export covers all nodes and edges") {
    DiGraph three_layer = load_graph("three_layer.json");
    std::string dot = graph_to_dot(three_layer, three_layer.measured());
    std::size_t arrows = 0;
    for (std::size_t pos = 0; (pos = dot.find("->", pos)) != std::string::npos; ++pos) ++arrows;
    CHECK(arrows == 10);
    for (int v = 1; v <= 8; ++v)
        CHECK(dot.find("  " + std::to_string(v)) != std::string::npos);

    DiGraph single(1, {});
    CHECK(parse_graph(graph_to_dot(single, {})).n() == 1);
}

TEST_CASE("restricted DOT import") {
    DiGraph g = parse_graph("digraph { 1 -> 2 -> 3; 4; 2 [shape=doublecircle]; }");
    CHECK(g.n() == 4);
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});
    CHECK(g.measured() == NodeSet{2});

    CHECK_THROWS_AS(parse_graph("graph { 1 -> 2; }"), SyntaxError);
    CHECK_THROWS_AS(parse_graph("digraph { a -> b; }"), SyntaxError);
    CHECK_THROWS_AS(parse_graph("digraph { 1 -> 2"), SyntaxError);
}

TEST_CASE("parser rejects junk with library errors only") {
    std::mt19937_64 rng(33);
    const std::string alphabet = "{}[](),:;->digraph0123456789 \"nedges\n";
    for (int t = 0; t < 300; ++t) {
        std::string junk;
        int len = draw(rng, 0, 40);
        for (int k = 0; k < len; ++k)
            junk += alphabet[static_cast<std::size_t>(draw(rng, 0, static_cast<int>(alphabet.size()) - 1))];
        try {
            DiGraph g = parse_graph(junk);
            CHECK(g.n() >= 1);  // parsed something coherent
        } catch (const Error&) {
            // expected for almost every draw
        }
    }
}

TEST_CASE("node set helpers") {
    CHECK(make_node_set({3, 1, 3, 2}) == NodeSet{1, 2, 3});
    CHECK(set_union({1, 3}, {2, 3}) == NodeSet{1, 2, 3});
    CHECK(set_intersection({1, 3}, {2, 3}) == NodeSet{3});
    CHECK(set_difference({1, 2, 3}, {2}) == NodeSet{1, 3});
    CHECK(node_set_str({4, 5}) == "{4,5}");
}
