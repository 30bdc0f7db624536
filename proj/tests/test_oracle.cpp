#include <doctest.h>

#include <random>

#include "netid/identify.hpp"
#include "netid/oracle.hpp"
#include "helpers.hpp"

using namespace netid;
using namespace test_helpers;

namespace {

OracleFixture load_fixture(const std::string& name) {
    return parse_fixture(read_file(fixture_path(name)));
}

RatMatrix constant_weights(const DiGraph& g, const RatFun& w) {
    RatMatrix m(g.n(), g.n());
    for (const auto& [i, j] : g.edges()) m.at(j - 1, i - 1) = w;
    return m;
}

}  // namespace

TEST_CASE("strictly proper weights satisfy P1-P3") {
    DiGraph fanout_full = load_graph("fanout_full.json");
    NetworkMatrix nm = validate_admissible(constant_weights(fanout_full, parse_ratfun("1/(z-2)")), fanout_full);
    CHECK(nm.adm.p1);
    CHECK(nm.adm.p2);
    CHECK(nm.adm.p3);
    CHECK(nm.adm.all());
    CHECK_FALSE(nm.adm.probabilistic);
}

TEST_CASE("admissibility diagnostics flag each violated property") {
    DiGraph fanout_full = load_graph("fanout_full.json");

    RatMatrix off_edge = constant_weights(fanout_full, parse_ratfun("1/(z-2)"));
    off_edge.at(0, 3) = parse_ratfun("1/z");  // G_14, but (4,1) is not an edge
    NetworkMatrix a = validate_admissible(off_edge, fanout_full);
    CHECK(a.adm.p1);
    CHECK_FALSE(a.adm.p2);

    RatMatrix improper_on_edge = constant_weights(fanout_full, parse_ratfun("1/(z-2)"));
    improper_on_edge.at(1, 0) = parse_ratfun("z^2/(z+1)");  // edge (1,2)
    NetworkMatrix b = validate_admissible(improper_on_edge, fanout_full);
    CHECK_FALSE(b.adm.p1);
    CHECK_FALSE(b.adm.p3);  // not evaluable without P1

    // entry z on a non-edge position trips both P1 and P2
    RatMatrix z_off_edge = constant_weights(fanout_full, parse_ratfun("1/(z-2)"));
    z_off_edge.at(0, 4) = parse_ratfun("z");
    NetworkMatrix c = validate_admissible(z_off_edge, fanout_full);
    CHECK_FALSE(c.adm.p2);

    // biproper feedback loop with unit limits kills a principal minor
    DiGraph loop(2, {{1, 2}, {2, 1}});
    NetworkMatrix d = validate_admissible(constant_weights(loop, parse_ratfun("(z+1)/z")), loop);
    CHECK(d.adm.p1);
    CHECK(d.adm.p2);
    CHECK_FALSE(d.adm.p3);
}

TEST_CASE("generic samples are admissible, deterministic, and supported on the edges") {
    DiGraph fanout_full = load_graph("fanout_full.json");
    NetworkMatrix a = sample_admissible(fanout_full, 42);
    CHECK(a.adm.all());
    int nonzero = 0;
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c)
            if (!a.g.at(r, c).is_zero()) ++nonzero;
    CHECK(nonzero == 6);

    NetworkMatrix b = sample_admissible(fanout_full, 42);
    CHECK(a.g == b.g);
    NetworkMatrix other = sample_admissible(fanout_full, 43);
    CHECK(a.g != other.g);
}

TEST_CASE("the empty-edge graph gets the zero matrix") {
    DiGraph isolated(3, {});
    NetworkMatrix nm = sample_admissible(isolated, 0);
    CHECK(nm.adm.all());
    CHECK(nm.g.is_zero());
}

TEST_CASE("adversarial fixtures reproduce the rank-deficient example") {
    OracleFixture fx = load_fixture("fanout_full_equal_weights.json");
    CHECK(fx.mode == SampleMode::Adversarial);
    NetworkMatrix nm = instantiate_fixture(fx);
    CHECK(nm.adm.all());
    RatFun inv_z = parse_ratfun("1/z");
    CHECK(nm.g.at(3, 1) == inv_z);  // G_42
    CHECK(nm.g.at(3, 2) == inv_z);  // G_43
    CHECK(nm.g.at(4, 1) == inv_z);  // G_52
    CHECK(nm.g.at(4, 2) == inv_z);  // G_53

    RankTest rt = rank_test(nm, 1, {4, 5});
    CHECK(rt.rank == 1);
    CHECK_FALSE(rt.full);

    JacobiCheck jc = jacobi_check(nm, 1, {4, 5});
    CHECK_FALSE(jc.lhs_nonzero);
    CHECK_FALSE(jc.rhs_nonzero);
    CHECK(jc.agree);
}

TEST_CASE("invalid adversarial assignments are rejected") {
    DiGraph fanout_full = load_graph("fanout_full.json");
    CHECK_THROWS_AS(sample_admissible(fanout_full, 0, SampleMode::Adversarial,
                                      {{{2, 4}, RatFun{}}}),
                    InvariantError);
    CHECK_THROWS_AS(sample_admissible(fanout_full, 0, SampleMode::Adversarial,
                                      {{{2, 4}, parse_ratfun("z^2/(z+1)")}}),
                    InvariantError);
    CHECK_THROWS_AS(sample_admissible(fanout_full, 0, SampleMode::Adversarial,
                                      {{{4, 2}, parse_ratfun("1/z")}}),
                    InvariantError);
    // biproper assignments that zero out a principal minor of the limit
    DiGraph loop(2, {{1, 2}, {2, 1}});
    CHECK_THROWS_AS(sample_admissible(loop, 0, SampleMode::Adversarial,
                                      {{{1, 2}, parse_ratfun("(z+1)/z")},
                                       {{2, 1}, parse_ratfun("(z+1)/z")}}),
                    InvariantError);
}

TEST_CASE("rank test on generic samples of the constrained fan-out graph") {
    DiGraph fanout_constrained = load_graph("fanout_constrained.json");
    NetworkMatrix nm = sample_admissible(fanout_constrained, 7);
    RankTest rt = rank_test(nm, 1, {4, 5});
    CHECK(rt.rank == 2);
    CHECK(rt.full);

    RankTest sink = rank_test(nm, 4, {4, 5});
    CHECK(sink.rank == 0);
    CHECK(sink.full);
}

TEST_CASE("rank test switches to sampled evaluation beyond the exact-size limit") {
    Config tiny;
    tiny.max_exact_n = 1;
    DiGraph fanout_full = load_graph("fanout_full.json");
    NetworkMatrix generic = sample_admissible(fanout_full, 7, SampleMode::Generic, {}, tiny);
    RankTest rt = rank_test(generic, 1, {4, 5}, tiny);
    CHECK(rt.probabilistic);
    CHECK(rt.rank == 2);
    CHECK(rt.full);

    OracleFixture fx = load_fixture("fanout_full_equal_weights.json");
    NetworkMatrix nm = sample_admissible(fx.graph, fx.seed, fx.mode, fx.assignments, tiny);
    RankTest deficient = rank_test(nm, 1, {4, 5}, tiny);
    CHECK(deficient.probabilistic);
    CHECK(deficient.rank == 1);
    CHECK_FALSE(deficient.full);
}

TEST_CASE("rank test requires admissibility") {
    DiGraph fanout_full = load_graph("fanout_full.json");
    RatMatrix bad = constant_weights(fanout_full, parse_ratfun("1/(z-2)"));
    bad.at(0, 3) = parse_ratfun("1/z");
    NetworkMatrix nm = validate_admissible(bad, fanout_full);
    CHECK_THROWS_AS(rank_test(nm, 1, {4, 5}), PreconditionError);
}

TEST_CASE("jacobi equivalence on a hand-checkable two-node graph") {
    DiGraph tiny(2, {{1, 2}});
    NetworkMatrix nm = sample_admissible(tiny, 5);
    JacobiCheck jc = jacobi_check(nm, 1, {2});
    CHECK(jc.lhs_nonzero);
    CHECK(jc.rhs_nonzero);
    CHECK(jc.agree);

    CHECK_THROWS_AS(jacobi_check(nm, 1, {1, 2}), PreconditionError);
}

TEST_CASE("jacobi equivalence holds on random square-case instances") {
    std::mt19937_64 rng(61);
    const char* names[] = {"fanout_full.json", "three_layer.json", "fanout_constrained.json"};
    int checked = 0;
    for (int t = 0; checked < 25 && t < 500; ++t) {
        DiGraph g = load_graph(names[t % 3]);
        int i = draw(rng, 1, g.n());
        NodeSet ni = out_neighbors(g, i);
        NodeSet c = random_subset(rng, g.n(), 50);
        if (c.size() != ni.size() || ni.empty()) continue;
        NetworkMatrix nm = sample_admissible(g, static_cast<unsigned>(1000 + t));
        CHECK(jacobi_check(nm, i, c).agree);
        ++checked;
    }
    CHECK(checked == 25);
}

TEST_CASE("counterexample construction on the adversarial instance") {
    OracleFixture fx = load_fixture("fanout_full_equal_weights.json");
    NetworkMatrix nm = instantiate_fixture(fx);
    Counterexample cx = build_counterexample(nm, 1, {4, 5});

    CHECK(cx.delay == 1);
    CHECK(cx.alpha != 0);
    // kernel direction (1,-1) on N_1 = {2,3}, zero elsewhere
    CHECK(cx.v[0].is_zero());
    CHECK(cx.v[3].is_zero());
    CHECK(cx.v[4].is_zero());
    CHECK_FALSE(cx.v[1].is_zero());
    CHECK(cx.v[2] == -cx.v[1]);

    CHECK(cx.g_bar.adm.all());
    CHECK(transfer_equal(cx.g, cx.g_bar, {4, 5}));
    bool column_differs = false;
    for (int r = 0; r < 5; ++r) column_differs = column_differs || cx.g.g.at(r, 0) != cx.g_bar.g.at(r, 0);
    CHECK(column_differs);
    for (int r = 0; r < 5; ++r)
        for (int c = 1; c < 5; ++c) CHECK(cx.g.g.at(r, c) == cx.g_bar.g.at(r, c));
}

TEST_CASE("counterexample preconditions") {
    DiGraph fanout_constrained = load_graph("fanout_constrained.json");
    NetworkMatrix full = sample_admissible(fanout_constrained, 9);
    CHECK_THROWS_AS(build_counterexample(full, 1, {4, 5}), PreconditionError);
    CHECK_THROWS_AS(build_counterexample(full, 4, {4, 5}), PreconditionError);
}

TEST_CASE("width-one zero row yields the trivial kernel") {
    // single out-neighbour unreachable from the measured set
    DiGraph g(3, {{1, 2}, {3, 2}});
    NetworkMatrix nm = sample_admissible(g, 11);
    RankTest rt = rank_test(nm, 3, {1});
    CHECK(rt.rank == 0);
    CHECK_FALSE(rt.full);
    Counterexample cx = build_counterexample(nm, 3, {1});
    CHECK(cx.g_bar.adm.all());
    CHECK(transfer_equal(cx.g, cx.g_bar, {1}));
}

TEST_CASE("transfer equality routes") {
    DiGraph fanout_full = load_graph("fanout_full.json");
    NetworkMatrix a = sample_admissible(fanout_full, 3);
    CHECK(transfer_equal(a, a, {4, 5}));
    CHECK(transfer_equal(a, a, all_vertices(fanout_full)));

    // perturb exactly one edge weight; full measurement must notice
    RatMatrix perturbed = a.g;
    perturbed.at(1, 0) = perturbed.at(1, 0) + parse_ratfun("1/(z-7)");
    NetworkMatrix b = validate_admissible(perturbed, fanout_full);
    REQUIRE(b.adm.all());
    CHECK_FALSE(transfer_equal(a, b, all_vertices(fanout_full)));
}

TEST_CASE("oracle evidence matches the graph verdicts on the fixtures") {
    struct Case {
        const char* file;
        NodeSet measured;
    };
    for (const Case& tc : {Case{"fanout_full.json", {4, 5}}, Case{"fanout_full.json", {4}},
                           Case{"fanout_constrained.json", {4, 5}}}) {
        DiGraph g = load_graph(tc.file);
        for (int i = 1; i <= g.n(); ++i) {
            Verdict v = decide_node(g, i, tc.measured);
            for (unsigned s = 0; s < 10; ++s) {
                NetworkMatrix nm = sample_admissible(g, s);
                RankTest rt = rank_test(nm, i, tc.measured);
                if (v.status == Status::Identifiable) CHECK(rt.full);
                if (v.status == Status::NotIdentifiable) CHECK_FALSE(rt.full);
            }
        }
    }
}

TEST_CASE("graph verdicts and exact ranks agree on random graphs") {
    std::mt19937_64 rng(71);
    int identifiable = 0, not_identifiable = 0;
    for (int t = 0; t < 25; ++t) {
        DiGraph g = random_digraph(rng, 5);
        NodeSet c = random_subset(rng, g.n(), 50);
        for (int i = 1; i <= g.n(); ++i) {
            Verdict v = decide_node(g, i, c);
            const int m = static_cast<int>(v.out_neighbors.size());
            for (unsigned s = 0; s < 5; ++s) {
                NetworkMatrix nm = sample_admissible(g, 100 * static_cast<unsigned>(t) + s);
                RankTest rt = rank_test(nm, i, c);
                if (v.status == Status::Identifiable) {
                    CHECK(rt.full);
                    ++identifiable;
                    // the witness pins a square submatrix whose complementary
                    // minor of I - G must be nonzero
                    if (m > 0) {
                        JacobiCheck jc = jacobi_check(nm, i, v.witness->target_subset);
                        CHECK(jc.lhs_nonzero);
                        CHECK(jc.rhs_nonzero);
                    }
                } else if (v.status == Status::NotIdentifiable) {
                    CHECK_FALSE(rt.full);
                    CHECK(rt.rank <= v.deficiency->achieved);
                    ++not_identifiable;
                }
            }
        }
    }
    // the generator has to exercise both decided branches
    CHECK(identifiable >= 100);
    CHECK(not_identifiable >= 100);
}

TEST_CASE("fixture parsing errors") {
    CHECK_THROWS_AS(parse_fixture("{}"), SyntaxError);
    CHECK_THROWS_AS(parse_fixture("not json"), SyntaxError);
    CHECK_THROWS_AS(parse_fixture(R"({"graph":{"n":2,"edges":[[1,2]]},"assignments":{"12":"1/z"}})"),
                    SyntaxError);
    CHECK_THROWS_AS(parse_fixture(R"({"graph":{"n":2,"edges":[[1,2]]},"mode":"weird"})"),
                    SyntaxError);
    CHECK_THROWS_AS(
        parse_fixture(R"({"graph":{"n":2,"edges":[[1,2]]},"mode":"generic","assignments":{"1->2":"1/z"}})"),
        SyntaxError);
}
