#include <doctest.h>

#include <random>

#include "netid/identify.hpp"
#include "helpers.hpp"

using namespace netid;
using namespace test_helpers;

TEST_CASE("node 1 verdicts across the three fixture graphs") {
    DiGraph fanout_constrained = load_graph("fanout_constrained.json");
    Verdict v3 = decide_node(fanout_constrained, 1, {4, 5});
    CHECK(v3.status == Status::Identifiable);
    REQUIRE(v3.witness.has_value());
    PathSet expect{{Path{{2, 4}}, Path{{3, 5}}}};
    CHECK(v3.witness->path_set == expect);
    CHECK(validate_witness(fanout_constrained, *v3.witness));

    DiGraph fanout_full = load_graph("fanout_full.json");
    CHECK(decide_node(fanout_full, 1, {4, 5}).status == Status::Inconclusive);

    Verdict v1 = decide_node(fanout_full, 1, {4});
    CHECK(v1.status == Status::NotIdentifiable);
    REQUIRE(v1.deficiency.has_value());
    CHECK(v1.deficiency->required == 2);
    CHECK(v1.deficiency->achieved == 1);
    CHECK(v1.deficiency->cut.size() == 1);
}

TEST_CASE("sink nodes are trivially identifiable") {
    DiGraph fanout_full = load_graph("fanout_full.json");
    Verdict v = decide_node(fanout_full, 4, {1});
    CHECK(v.status == Status::Identifiable);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->path_set.paths.empty());
}

TEST_CASE("a measured node with measured out-neighbours needs no special casing") {
    DiGraph three_layer = load_graph("three_layer.json");
    Verdict v = decide_node(three_layer, 4, {4, 6, 7, 8});
    CHECK(v.status == Status::Identifiable);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->shared == NodeSet{6, 7, 8});
    for (const auto& p : v.witness->path_set.paths) CHECK(p.length() == 0);
}

TEST_CASE("whole-graph verdict on the three-layer graph") {
    DiGraph three_layer = load_graph("three_layer.json");
    GraphVerdict gv = decide_graph(three_layer, {6, 7, 8});
    CHECK(gv.overall == Status::Identifiable);
    REQUIRE(gv.per_node.size() == 8);
    for (const auto& v : gv.per_node) CHECK(v.status == Status::Identifiable);
    PathSet expect{{Path{{2, 4, 6}}, Path{{3, 5, 7}}}};
    CHECK(gv.per_node[0].witness->path_set == expect);
}

TEST_CASE("whole-graph verdict on the full fan-out graph is inconclusive for C={4,5}") {
    DiGraph fanout_full = load_graph("fanout_full.json");
    GraphVerdict gv = decide_graph(fanout_full, {4, 5});
    CHECK(gv.overall == Status::Inconclusive);
    CHECK(gv.per_node[0].status == Status::Inconclusive);
    for (int i = 1; i < 5; ++i) CHECK(gv.per_node[static_cast<std::size_t>(i)].status == Status::Identifiable);
}

TEST_CASE("measuring every node always identifies the graph") {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 30; ++t) {
        DiGraph g = random_digraph(rng);
        CHECK(decide_graph(g, all_vertices(g)).overall == Status::Identifiable);
    }
}

TEST_CASE("overall status aggregates the per-node statuses") {
    std::mt19937_64 rng(52);
    for (int t = 0; t < 40; ++t) {
        DiGraph g = random_digraph(rng);
        NodeSet c = random_subset(rng, g.n());
        GraphVerdict gv = decide_graph(g, c);
        bool all_yes = true, any_no = false;
        for (const auto& v : gv.per_node) {
            all_yes = all_yes && v.status == Status::Identifiable;
            any_no = any_no || v.status == Status::NotIdentifiable;
            CHECK((v.status == Status::Identifiable) == v.witness.has_value());
            CHECK((v.status == Status::NotIdentifiable) == v.deficiency.has_value());
            if (v.witness) CHECK(validate_witness(g, *v.witness));
            if (v.deficiency) CHECK(v.deficiency->achieved < v.deficiency->required);
        }
        Status expect = all_yes ? Status::Identifiable
                                : (any_no ? Status::NotIdentifiable : Status::Inconclusive);
        CHECK(gv.overall == expect);
    }
}

TEST_CASE("identifiable verdicts are monotone in the measured set") {
    std::mt19937_64 rng(53);
    int upgraded = 0;
    for (int t = 0; t < 60; ++t) {
        DiGraph g = random_digraph(rng, 6);
        NodeSet c = random_subset(rng, g.n());
        NodeSet bigger = set_union(c, random_subset(rng, g.n()));
        for (int i = 1; i <= g.n(); ++i) {
            if (decide_node(g, i, c).status != Status::Identifiable) continue;
            ++upgraded;
            CHECK(decide_node(g, i, bigger).status == Status::Identifiable);
        }
    }
    CHECK(upgraded > 50);
}

TEST_CASE("measurement-set suggestions") {
    DiGraph three_layer = load_graph("three_layer.json");
    auto sets3 = suggest_measurement_sets(three_layer, 3);
    bool has_678 = false;
    for (const auto& s : sets3) has_678 = has_678 || s == NodeSet{6, 7, 8};
    CHECK(has_678);
    for (std::size_t k = 1; k < sets3.size(); ++k) CHECK(sets3[k - 1] < sets3[k]);

    DiGraph fanout_full = load_graph("fanout_full.json");
    CHECK(suggest_measurement_sets(fanout_full, 1).empty());

    auto all = suggest_measurement_sets(fanout_full, 5);
    REQUIRE(all.size() == 1);
    CHECK(all[0] == all_vertices(fanout_full));

    CHECK_THROWS_AS(suggest_measurement_sets(fanout_full, 0), PreconditionError);
    CHECK_THROWS_AS(suggest_measurement_sets(fanout_full, 6), PreconditionError);
    Config tiny;
    tiny.max_exact_n = 4;
    CHECK_THROWS_AS(suggest_measurement_sets(fanout_full, 2, tiny), SizeLimit);
}

TEST_CASE("every suggested measurement set verifies") {
    std::mt19937_64 rng(54);
    for (int t = 0; t < 10; ++t) {
        DiGraph g = random_digraph(rng, 5);
        int k = draw(rng, 1, g.n());
        for (const auto& c : suggest_measurement_sets(g, k)) {
            CHECK(static_cast<int>(c.size()) == k);
            CHECK(decide_graph(g, c).overall == Status::Identifiable);
        }
    }
}
