// netid - graph-theoretic identifiability analysis for dynamical networks,
// cross-checked by an exact rational-function oracle.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netid/config.hpp"
#include "netid/errors.hpp"
#include "netid/graph.hpp"
#include "netid/identify.hpp"
#include "netid/oracle.hpp"
#include "netid/report.hpp"

namespace {

using namespace netid;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

NodeSet parse_measured(const std::string& csv) {
    NodeSet out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw SyntaxError("bad node index in --measured: '" + item + "'");
        }
    }
    return make_node_set(out);
}

int exit_code_for(Status s) {
    switch (s) {
        case Status::Identifiable: return 0;
        case Status::Inconclusive: return 2;
        case Status::NotIdentifiable: return 3;
    }
    return 1;
}

struct CommonOpts {
    std::string file;
    std::string measured_csv;
    std::optional<unsigned> seed;
    bool json = false;
    std::int64_t cap = default_config().enumeration_cap;
    int max_exact_n = default_config().max_exact_n;

    Config config() const {
        Config cfg;
        cfg.enumeration_cap = cap;
        cfg.max_exact_n = max_exact_n;
        return cfg;
    }

    // NETIDENT_SEED applies only when --seed was not given.
    unsigned effective_seed() const {
        if (seed) return *seed;
        if (const char* env = std::getenv("NETIDENT_SEED")) {
            try {
                return static_cast<unsigned>(std::stoul(env));
            } catch (const std::exception&) {
                throw SyntaxError("NETIDENT_SEED is not an unsigned integer");
            }
        }
        return 0;
    }

    NodeSet measured_or_file_default(const DiGraph& g) const {
        if (!measured_csv.empty()) {
            NodeSet m = parse_measured(measured_csv);
            g.check_node_set(m);
            return m;
        }
        if (!g.measured().empty()) return g.measured();
        throw PreconditionError("no measured set: pass --measured or a graph file with 'measured'");
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_measured = true) {
    cmd->add_option("file", opts.file, "graph or fixture file (JSON or DOT)")->required();
    if (with_measured)
        cmd->add_option("--measured", opts.measured_csv, "comma-separated measured nodes, e.g. 4,5");
    cmd->add_option("--seed", opts.seed, "seed for sampled network matrices");
    cmd->add_flag("--json", opts.json, "machine-readable JSON output");
    cmd->add_option("--cap", opts.cap, "path-set enumeration cap");
    cmd->add_option("--max-exact-n", opts.max_exact_n, "size limit for exhaustive procedures");
}

int run_analyze(const CommonOpts& opts, int oracle_samples) {
    Config cfg = opts.config();
    DiGraph g = parse_graph(slurp(opts.file));
    NodeSet measured = opts.measured_or_file_default(g);
    Report rep;
    rep.command = "analyze";
    rep.graph_file = opts.file;
    rep.graph = g;
    rep.measured = measured;
    rep.verdict = decide_graph(g, measured, cfg);
    rep.seed = opts.effective_seed();
    rep.oracle_samples = oracle_samples;
    rep.cfg = cfg;
    if (oracle_samples > 0)
        for (const auto& v : rep.verdict.per_node)
            rep.evidence.push_back(collect_rank_evidence(g, v, measured, rep.seed, oracle_samples, cfg));
    if (opts.json)
        std::cout << report_to_json(rep).dump(2) << "\n";
    else
        std::cout << report_text(rep);
    return exit_code_for(rep.verdict.overall);
}

int run_check_node(const CommonOpts& opts, int node) {
    Config cfg = opts.config();
    DiGraph g = parse_graph(slurp(opts.file));
    NodeSet measured = opts.measured_or_file_default(g);
    Verdict v = decide_node(g, node, measured, cfg);
    if (opts.json) {
        nlohmann::json j = verdict_to_json(v);
        j["measured"] = measured;
        j["version"] = kToolVersion;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << verdict_text(v) << "\n";
    }
    return exit_code_for(v.status);
}

void print_matrix(const std::string& name, const RatMatrix& m) {
    std::cout << name << ":\n";
    for (int r = 0; r < m.rows(); ++r) {
        std::cout << "  [";
        for (int c = 0; c < m.cols(); ++c) {
            if (c) std::cout << ", ";
            std::cout << m.at(r, c).str();
        }
        std::cout << "]\n";
    }
}

int run_counterexample(const CommonOpts& opts, int node) {
    Config cfg = opts.config();
    OracleFixture fx = parse_fixture(slurp(opts.file));
    NodeSet measured = opts.measured_csv.empty() ? opts.measured_or_file_default(fx.graph)
                                                 : parse_measured(opts.measured_csv);
    fx.graph.check_node_set(measured);
    NetworkMatrix nm = instantiate_fixture(fx, opts.seed ? opts.seed : std::optional<unsigned>{}, cfg);
    NodeSet ni = out_neighbors(fx.graph, node);
    if (ni.empty()) {
        std::cerr << "error: node " << node << " has no out-neighbours, nothing to identify\n";
        return 1;
    }
    RankTest rt = rank_test(nm, node, measured, cfg);
    if (rt.full) {
        std::cerr << "error: T_{C,N_" << node << "} has full rank " << rt.rank
                  << ", the instance admits no counterexample\n";
        return 1;
    }
    Counterexample cx = build_counterexample(nm, node, measured, cfg);
    // the shared measured transfer rows, identical for G and G_bar
    RatMatrix t = mat_inverse(RatMatrix::identity(nm.g.rows()) - nm.g);
    std::vector<int> row_sel, col_sel;
    for (int v : measured) row_sel.push_back(v - 1);
    for (int c = 0; c < nm.g.cols(); ++c) col_sel.push_back(c);
    RatMatrix ct = t.submatrix(row_sel, col_sel);
    auto mat = [](const RatMatrix& m) {
        auto rows = nlohmann::json::array();
        for (int r = 0; r < m.rows(); ++r) {
            auto row = nlohmann::json::array();
            for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
            rows.push_back(row);
        }
        return rows;
    };
    if (opts.json) {
        nlohmann::json j;
        j["node"] = cx.node;
        j["alpha"] = to_string(cx.alpha);
        j["delay"] = cx.delay;
        auto vec = nlohmann::json::array();
        for (const auto& e : cx.v) vec.push_back(e.str());
        j["v"] = vec;
        j["G"] = mat(cx.g.g);
        j["G_bar"] = mat(cx.g_bar.g);
        j["transfer_rows"] = mat(ct);
        j["rank"] = rt.rank;
        j["measured"] = measured;
        j["version"] = kToolVersion;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "rank T_{C,N_" << node << "} = " << rt.rank << " < " << ni.size()
              << ", counterexample exists\n";
    print_matrix("G", cx.g.g);
    print_matrix("G_bar = G - v u^T", cx.g_bar.g);
    std::cout << "v(z):";
    for (const auto& e : cx.v) std::cout << " " << e.str();
    std::cout << "\nalpha = " << to_string(cx.alpha) << ", delay k = " << cx.delay << "\n";
    print_matrix("shared measured transfer rows C(I-G)^-1 = C(I-G_bar)^-1", ct);
    std::cout << "verified exactly; column " << node << " differs between G and G_bar\n";
    return 0;
}

int run_export_dot(const CommonOpts& opts) {
    DiGraph g = parse_graph(slurp(opts.file));
    NodeSet measured = opts.measured_csv.empty() ? g.measured() : parse_measured(opts.measured_csv);
    g.check_node_set(measured);
    std::cout << graph_to_dot(g, measured);
    return 0;
}

int run_oracle_test(const CommonOpts& opts, std::optional<int> node, int samples) {
    Config cfg = opts.config();
    std::string text = slurp(opts.file);
    OracleFixture fx = [&] {
        nlohmann::json probe = nlohmann::json::parse(text, nullptr, false);
        if (!probe.is_discarded() && probe.is_object() && probe.contains("graph"))
            return parse_fixture(text);
        return OracleFixture{parse_graph(text), {}, 0, SampleMode::Generic};
    }();
    NodeSet measured = opts.measured_csv.empty() ? opts.measured_or_file_default(fx.graph)
                                                 : parse_measured(opts.measured_csv);
    fx.graph.check_node_set(measured);
    unsigned seed = opts.seed ? *opts.seed : fx.seed;

    NodeSet nodes;
    if (node) nodes = {*node};
    else nodes = all_vertices(fx.graph);

    bool all_consistent = true;
    nlohmann::json out;
    out["per_node"] = nlohmann::json::array();
    for (int i : nodes) {
        Verdict v = decide_node(fx.graph, i, measured, cfg);
        NodeSet ni = v.out_neighbors;
        std::map<int, int> rank_counts;
        int jacobi_agree = 0, jacobi_total = 0;
        bool consistent = true;
        for (int s = 0; s < samples; ++s) {
            NetworkMatrix nm = sample_admissible(fx.graph, seed + static_cast<unsigned>(s),
                                                 fx.mode, fx.assignments, cfg);
            RankTest rt = rank_test(nm, i, measured, cfg);
            rank_counts[rt.rank] += 1;
            if (v.status == Status::Identifiable && !rt.full) consistent = false;
            if (v.status == Status::NotIdentifiable && rt.full) consistent = false;
            if (measured.size() == ni.size()) {
                JacobiCheck jc = jacobi_check(nm, i, measured);
                ++jacobi_total;
                if (jc.agree) ++jacobi_agree;
                else consistent = false;
            }
        }
        all_consistent = all_consistent && consistent;
        if (opts.json) {
            nlohmann::json nj = verdict_to_json(v);
            nlohmann::json counts;
            for (const auto& [rank, cnt] : rank_counts) counts[std::to_string(rank)] = cnt;
            nj["rank_counts"] = counts;
            if (jacobi_total) {
                nj["jacobi_checked"] = jacobi_total;
                nj["jacobi_agree"] = jacobi_agree;
            }
            nj["consistent"] = consistent;
            out["per_node"].push_back(nj);
        } else {
            std::cout << verdict_text(v) << "\n  oracle: ranks";
            for (const auto& [rank, cnt] : rank_counts)
                std::cout << " " << rank << "x" << cnt;
            std::cout << " of required " << ni.size();
            if (jacobi_total) std::cout << ", jacobi " << jacobi_agree << "/" << jacobi_total;
            std::cout << (consistent ? " (consistent)" : " (INCONSISTENT)") << "\n";
        }
    }
    if (opts.json) {
        out["samples"] = samples;
        out["seed"] = seed;
        out["consistent"] = all_consistent;
        out["version"] = kToolVersion;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (all_consistent ? "oracle evidence consistent with verdicts\n"
                                     : "ORACLE EVIDENCE INCONSISTENT\n");
    }
    return all_consistent ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"identifiability analysis of dynamical networks from partial node measurements"};
    app.require_subcommand(1);

    CommonOpts a_opts;
    int a_samples = 0;
    auto* analyze = app.add_subcommand("analyze", "decide identifiability of every node");
    add_common(analyze, a_opts);
    analyze->add_option("--oracle-samples", a_samples,
                        "attach exact rank evidence from this many generic samples");

    CommonOpts cn_opts;
    int cn_node = 0;
    auto* check_node = app.add_subcommand("check-node", "decide identifiability of one node");
    add_common(check_node, cn_opts);
    check_node->add_option("--node", cn_node, "node index (1-based)")->required();

    CommonOpts cx_opts;
    int cx_node = 0;
    auto* counterex = app.add_subcommand(
        "counterexample", "construct G_bar with equal measured transfer matrix from a fixture");
    add_common(counterex, cx_opts);
    counterex->add_option("--node", cx_node, "node index (1-based)")->required();

    CommonOpts dot_opts;
    auto* export_dot = app.add_subcommand("export-dot", "export the graph topology as DOT");
    add_common(export_dot, dot_opts);

    CommonOpts ot_opts;
    std::optional<int> ot_node;
    int ot_samples = 10;
    auto* oracle_test = app.add_subcommand(
        "oracle-test", "cross-check graph verdicts against exact rank and Jacobi computations");
    add_common(oracle_test, ot_opts);
    oracle_test->add_option("--node", ot_node, "restrict to one node");
    oracle_test->add_option("--oracle-samples", ot_samples, "samples per node");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return run_analyze(a_opts, a_samples);
        if (check_node->parsed()) return run_check_node(cn_opts, cn_node);
        if (counterex->parsed()) return run_counterexample(cx_opts, cx_node);
        if (export_dot->parsed()) return run_export_dot(dot_opts);
        if (oracle_test->parsed()) return run_oracle_test(ot_opts, ot_node, ot_samples);
    } catch (const netid::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
