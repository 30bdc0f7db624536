#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "netid/config.hpp"
#include "netid/errors.hpp"
#include "netid/graph.hpp"
#include "netid/matrix.hpp"
#include "netid/ratfun.hpp"

namespace netid {

// Admissibility of a network matrix with respect to its graph:
//   P1  every entry is a proper rational function,
//   P2  G_ji is nonzero exactly when (i,j) is an edge,
//   P3  every principal minor of lim_{z->inf}(I - G) is nonzero.
struct Admissibility {
    bool p1 = false;
    bool p2 = false;
    bool p3 = false;
    bool probabilistic = false;  // P3 checked on sampled minors only
    std::vector<std::string> violations;

    bool all() const { return p1 && p2 && p3; }
};

// n x n rational matrix tied to a graph; entry (j,i) carries the transfer
// function of edge (i,j). Matrix indices are 0-based, vertices 1-based.
struct NetworkMatrix {
    RatMatrix g;
    DiGraph graph;
    Admissibility adm;
};

namespace detail {

inline std::vector<int> to_indices(const NodeSet& s) {
    std::vector<int> idx;
    idx.reserve(s.size());
    for (int v : s) idx.push_back(v - 1);
    return idx;
}

inline RatMatrix i_minus(const RatMatrix& g) {
    return RatMatrix::identity(g.rows()) - g;
}

// Deterministic bounded draws; uniform_int_distribution is not portable
// across standard libraries, so reports stay byte-identical.
struct Sampler {
    std::mt19937_64 rng;

    explicit Sampler(unsigned seed) : rng(seed) {}

    int draw(int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<unsigned long long>(hi - lo + 1));
    }
    int draw_nonzero(int lo, int hi) {
        for (;;) {
            int x = draw(lo, hi);
            if (x != 0) return x;
        }
    }
};

}  // namespace detail

// Check P1-P3 and return the annotated matrix; failures land in the
// diagnostics rather than throwing. Beyond max_exact_n the principal-minor
// scan switches to sampled subsets and is flagged probabilistic.
inline NetworkMatrix validate_admissible(const RatMatrix& g, const DiGraph& graph,
                                         const Config& cfg = default_config(),
                                         unsigned minor_seed = 0) {
    const int n = graph.n();
    if (g.rows() != n || g.cols() != n)
        throw PreconditionError("network matrix must be n x n for the graph");
    NetworkMatrix nm{g, graph, {}};
    auto& adm = nm.adm;

    adm.p1 = true;
    for (int r = 0; r < n && adm.p1; ++r)
        for (int c = 0; c < n; ++c)
            if (!g.at(r, c).is_proper()) {
                adm.p1 = false;
                adm.violations.push_back("P1: entry (" + std::to_string(r + 1) + "," +
                                         std::to_string(c + 1) + ") = " + g.at(r, c).str() +
                                         " is improper");
                break;
            }

    adm.p2 = true;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            bool nonzero = !g.at(j - 1, i - 1).is_zero();
            bool edge = graph.has_edge(i, j);
            if (nonzero != edge) {
                adm.p2 = false;
                adm.violations.push_back(edge ? "P2: zero entry on edge (" + std::to_string(i) +
                                                    "," + std::to_string(j) + ")"
                                              : "P2: nonzero entry G_" + std::to_string(j) +
                                                    std::to_string(i) + " off the edge set");
            }
        }

    if (!adm.p1) {
        adm.p3 = false;
        adm.violations.push_back("P3: not evaluable, improper entries present");
        return nm;
    }
    auto lim = limit_at_infinity(detail::i_minus(g));
    auto minor_of = [&](const std::vector<int>& rows) {
        std::vector<std::vector<Rat>> sub(rows.size(), std::vector<Rat>(rows.size()));
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t b = 0; b < rows.size(); ++b)
                sub[a][b] = lim[static_cast<std::size_t>(rows[a])][static_cast<std::size_t>(rows[b])];
        return numeric_det(sub);
    };
    adm.p3 = true;
    if (n <= cfg.max_exact_n) {
        // all nonempty subsets of {0..n-1}, encoded as bitmasks
        for (unsigned long long mask = 1; mask < (1ULL << n); ++mask) {
            std::vector<int> rows;
            for (int b = 0; b < n; ++b)
                if (mask & (1ULL << b)) rows.push_back(b);
            if (minor_of(rows) == 0) {
                adm.p3 = false;
                adm.violations.push_back("P3: zero principal minor at rows " + [&] {
                    NodeSet s;
                    for (int r : rows) s.push_back(r + 1);
                    return node_set_str(s);
                }());
                break;
            }
        }
    } else {
        adm.probabilistic = true;
        detail::Sampler smp(minor_seed);
        for (int t = 0; t < 4 * n && adm.p3; ++t) {
            std::vector<int> rows;
            for (int b = 0; b < n; ++b)
                if (smp.draw(0, 1)) rows.push_back(b);
            if (rows.empty()) continue;
            if (minor_of(rows) == 0) {
                adm.p3 = false;
                adm.violations.push_back("P3: zero principal minor (sampled)");
            }
        }
    }
    return nm;
}

enum class SampleMode { Generic, Adversarial };

using EdgeAssignments = std::map<std::pair<int, int>, RatFun>;

// Draw an admissible network matrix for the graph. Generic mode gives each
// edge a first-order strictly proper weight a/(z-b) with small integer a, b;
// the limit of I - G is then the identity and P3 holds by construction.
// Adversarial mode pins selected edges to given functions and samples the
// rest, then validates the result.
inline NetworkMatrix sample_admissible(const DiGraph& graph, unsigned seed,
                                       SampleMode mode = SampleMode::Generic,
                                       const EdgeAssignments& assignments = {},
                                       const Config& cfg = default_config()) {
    if (mode == SampleMode::Generic && !assignments.empty())
        throw PreconditionError("generic mode takes no edge assignments");
    for (const auto& [edge, fun] : assignments) {
        if (!graph.has_edge(edge.first, edge.second))
            throw InvariantError("assignment on non-edge (" + std::to_string(edge.first) + "," +
                                 std::to_string(edge.second) + ")");
        if (fun.is_zero())
            throw InvariantError("zero assignment on edge (" + std::to_string(edge.first) + "," +
                                 std::to_string(edge.second) + ") violates P2");
        if (!fun.is_proper())
            throw InvariantError("improper assignment on edge (" + std::to_string(edge.first) +
                                 "," + std::to_string(edge.second) + ") violates P1");
    }
    detail::Sampler smp(seed);
    RatMatrix g(graph.n(), graph.n());
    for (const auto& [i, j] : graph.edges()) {
        auto it = assignments.find({i, j});
        if (it != assignments.end()) {
            g.at(j - 1, i - 1) = it->second;
            continue;
        }
        int a = smp.draw_nonzero(-9, 9);
        int b = smp.draw(-9, 9);
        g.at(j - 1, i - 1) =
            RatFun(Polynomial(Rat(a)), Polynomial::from_coeffs({Rat(-b), Rat(1)}));
    }
    NetworkMatrix nm = validate_admissible(g, graph, cfg, seed);
    if (!nm.adm.all()) {
        std::string why;
        for (const auto& v : nm.adm.violations) why += " " + v;
        if (mode == SampleMode::Adversarial)
            throw InvariantError("adversarial assignment yields inadmissible matrix:" + why);
        throw Error("internal: generic sample inadmissible:" + why);
    }
    return nm;
}

struct RankTest {
    int rank = 0;
    bool full = false;
    bool probabilistic = false;
};

// Rank criterion for identifiability of (i, N_i): extract T_{C,N_i} from
// the exact inverse T = (I-G)^{-1} and compare its normal rank with |N_i|.
inline RankTest rank_test(const NetworkMatrix& nm, int i, const NodeSet& c,
                          const Config& cfg = default_config()) {
    if (!nm.adm.all()) throw PreconditionError("rank_test requires an admissible network matrix");
    nm.graph.check_vertex(i);
    nm.graph.check_node_set(c);
    NodeSet ni = out_neighbors(nm.graph, i);
    RankTest rt;
    if (ni.empty()) {
        rt.rank = 0;
        rt.full = true;
        return rt;
    }
    RatMatrix t = mat_inverse(detail::i_minus(nm.g));
    RatMatrix sub = t.submatrix(detail::to_indices(c), detail::to_indices(ni));
    if (std::max(sub.rows(), sub.cols()) <= cfg.max_exact_n) {
        rt.rank = normal_rank(sub);
    } else {
        rt.rank = normal_rank_sampled(sub, /*seed=*/1);
        rt.probabilistic = true;
    }
    rt.full = rt.rank == static_cast<int>(ni.size());
    return rt;
}

struct JacobiCheck {
    bool lhs_nonzero = false;  // det T_{C,N_i} != 0
    bool rhs_nonzero = false;  // det (I-G)_{N_i^c, C^c} != 0
    bool agree = false;
};

// Jacobi-identity equivalence for the square case |C| = |N_i|: the minor of
// the inverse is nonzero iff the complementary minor of I - G is nonzero.
inline JacobiCheck jacobi_check(const NetworkMatrix& nm, int i, const NodeSet& c) {
    if (!nm.adm.all()) throw PreconditionError("jacobi_check requires an admissible network matrix");
    nm.graph.check_vertex(i);
    nm.graph.check_node_set(c);
    NodeSet ni = out_neighbors(nm.graph, i);
    if (c.size() != ni.size())
        throw PreconditionError("jacobi_check requires |C| = |N_i|, got " +
                                std::to_string(c.size()) + " vs " + std::to_string(ni.size()));
    RatMatrix t = mat_inverse(detail::i_minus(nm.g));
    JacobiCheck jc;
    jc.lhs_nonzero =
        !determinant(t.submatrix(detail::to_indices(c), detail::to_indices(ni))).is_zero();
    RatMatrix img = detail::i_minus(nm.g);
    jc.rhs_nonzero = !determinant(img.submatrix(detail::to_indices(complement(nm.graph, ni)),
                                                detail::to_indices(complement(nm.graph, c))))
                          .is_zero();
    jc.agree = jc.lhs_nonzero == jc.rhs_nonzero;
    return jc;
}

// Exact equality of the measured transfer rows C(I-G)^{-1} = C(I-Gbar)^{-1},
// computed twice: direct row comparison and the equivalent C T D = 0 with
// D = G - Gbar. The two routes agree for every input.
inline bool transfer_equal(const NetworkMatrix& a, const NetworkMatrix& b, const NodeSet& c) {
    if (a.graph.n() != b.graph.n())
        throw PreconditionError("transfer_equal requires matrices of the same dimension");
    a.graph.check_node_set(c);
    RatMatrix ta = mat_inverse(detail::i_minus(a.g));
    RatMatrix tb = mat_inverse(detail::i_minus(b.g));
    auto rows = detail::to_indices(c);
    std::vector<int> all_cols;
    for (int j = 0; j < a.g.cols(); ++j) all_cols.push_back(j);
    bool row_equal = ta.submatrix(rows, all_cols) == tb.submatrix(rows, all_cols);
    RatMatrix d = a.g - b.g;
    bool ctd_zero = (ta.submatrix(rows, all_cols) * d).is_zero();
    if (row_equal != ctd_zero)
        throw Error("internal: transfer_equal routes disagree");
    return row_equal;
}

// Constructive non-identifiability certificate from a rank-deficient
// instance: Gbar = G - v u^T agrees with G on the measured transfer matrix
// but differs in column i, and is itself admissible.
struct Counterexample {
    NetworkMatrix g;
    NetworkMatrix g_bar;
    int node = 0;
    std::vector<RatFun> v;  // length n, supported on N_i
    Rat alpha;
    int delay = 0;          // k with v = alpha z^{-k} w embedded
};

namespace detail {

// Kernel vector for the first free column of the reduced row echelon form,
// normalized so its first nonzero entry is 1; nullopt for full column rank.
inline std::optional<std::vector<RatFun>> kernel_vector(const RatMatrix& a) {
    const int rows = a.rows();
    const int cols = a.cols();
    RatMatrix m = a;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i) {
            if (!m.at(i, c).is_zero()) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        RatFun inv_pivot = RatFun(1) / m.at(r, c);
        for (int j = c; j < cols; ++j) m.at(r, j) *= inv_pivot;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            RatFun f = m.at(i, c);
            for (int j = c; j < cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    int free_col = -1;
    {
        std::size_t k = 0;
        for (int c = 0; c < cols; ++c) {
            if (k < pivot_col.size() && pivot_col[k] == c) {
                ++k;
                continue;
            }
            free_col = c;
            break;
        }
    }
    if (free_col < 0) return std::nullopt;
    std::vector<RatFun> x(static_cast<std::size_t>(cols));
    x[static_cast<std::size_t>(free_col)] = RatFun(1);
    for (std::size_t k = 0; k < pivot_col.size(); ++k)
        x[static_cast<std::size_t>(pivot_col[k])] = -m.at(static_cast<int>(k), free_col);
    for (auto& e : x) {
        if (!e.is_zero()) {
            RatFun lead = e;
            for (auto& f : x) f /= lead;
            break;
        }
    }
    return x;
}

}  // namespace detail

inline Counterexample build_counterexample(const NetworkMatrix& nm, int i, const NodeSet& c,
                                           const Config& cfg = default_config()) {
    if (!nm.adm.all())
        throw PreconditionError("build_counterexample requires an admissible network matrix");
    nm.graph.check_vertex(i);
    nm.graph.check_node_set(c);
    NodeSet ni = out_neighbors(nm.graph, i);
    if (ni.empty()) throw PreconditionError("node has no out-neighbours, nothing to identify");

    RatMatrix t = mat_inverse(detail::i_minus(nm.g));
    RatMatrix sub = t.submatrix(detail::to_indices(c), detail::to_indices(ni));
    auto w_hat = detail::kernel_vector(sub);
    if (!w_hat) throw PreconditionError("T_{C,N_i} has full column rank, no counterexample exists");

    // Smallest delay k making every nonzero entry of z^-k w strictly proper.
    int k = 0;
    for (const auto& e : *w_hat)
        if (!e.is_zero()) k = std::max(k, e.num().degree() - e.den().degree() + 1);
    RatFun z_pow_k_inv(Polynomial(Rat(1)), Polynomial::monomial(k));

    // First alpha in 1, -1, 2, -2, ... keeping all entries of
    // G_{N_i,i} - alpha z^-k w nonzero; each row rules out at most one value.
    const int m = static_cast<int>(ni.size());
    Rat alpha;
    bool alpha_found = false;
    for (int tix = 1; tix <= m + 1 && !alpha_found; ++tix) {
        Rat cand = tix % 2 == 1 ? Rat((tix + 1) / 2) : Rat(-(tix / 2));
        alpha_found = true;
        for (int r = 0; r < m; ++r) {
            RatFun v_entry = RatFun(cand) * z_pow_k_inv * (*w_hat)[static_cast<std::size_t>(r)];
            if ((nm.g.at(ni[static_cast<std::size_t>(r)] - 1, i - 1) - v_entry).is_zero()) {
                alpha_found = false;
                break;
            }
        }
        if (alpha_found) alpha = cand;
    }
    if (!alpha_found) throw Error("internal: no valid alpha among m+1 candidates");

    Counterexample cx;
    cx.g = nm;
    cx.node = i;
    cx.alpha = alpha;
    cx.delay = k;
    cx.v.assign(static_cast<std::size_t>(nm.graph.n()), RatFun{});
    for (int r = 0; r < m; ++r)
        cx.v[static_cast<std::size_t>(ni[static_cast<std::size_t>(r)] - 1)] =
            RatFun(alpha) * z_pow_k_inv * (*w_hat)[static_cast<std::size_t>(r)];

    RatMatrix g_bar = nm.g;
    for (int r = 0; r < nm.graph.n(); ++r)
        g_bar.at(r, i - 1) = g_bar.at(r, i - 1) - cx.v[static_cast<std::size_t>(r)];
    cx.g_bar = validate_admissible(g_bar, nm.graph, cfg);

    // The construction guarantees all three certificate invariants; verify
    // them exactly rather than trusting the derivation.
    if (!cx.g_bar.adm.all()) throw Error("internal: counterexample matrix not admissible");
    if (!transfer_equal(cx.g, cx.g_bar, c)) throw Error("internal: transfer rows differ");
    bool column_differs = false;
    for (int r = 0; r < nm.graph.n() && !column_differs; ++r)
        column_differs = nm.g.at(r, i - 1) != cx.g_bar.g.at(r, i - 1);
    if (!column_differs) throw Error("internal: counterexample column unchanged");
    return cx;
}

// --- oracle fixtures ----------------------------------------------------------
// {"graph": {...}, "assignments": {"2->4": "1/z"}, "seed": 0,
//  "mode": "generic"|"adversarial"}

struct OracleFixture {
    DiGraph graph;
    EdgeAssignments assignments;
    unsigned seed = 0;
    SampleMode mode = SampleMode::Generic;
};

inline OracleFixture parse_fixture(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SyntaxError(std::string("invalid fixture JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("graph"))
        throw SyntaxError("fixture JSON needs a 'graph' field");
    OracleFixture fx{graph_from_json(j["graph"]), {}, 0, SampleMode::Generic};
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
            throw SyntaxError("'seed' must be a nonnegative integer");
        fx.seed = j["seed"].get<unsigned>();
    }
    if (j.contains("assignments")) {
        if (!j["assignments"].is_object()) throw SyntaxError("'assignments' must be an object");
        for (const auto& [key, val] : j["assignments"].items()) {
            auto arrow = key.find("->");
            if (arrow == std::string::npos)
                throw SyntaxError("assignment key '" + key + "' is not of the form i->j");
            int from, to;
            try {
                from = std::stoi(key.substr(0, arrow));
                to = std::stoi(key.substr(arrow + 2));
            } catch (const std::exception&) {
                throw SyntaxError("assignment key '" + key + "' is not of the form i->j");
            }
            if (!val.is_string())
                throw SyntaxError("assignment value for '" + key + "' must be a rational literal string");
            fx.assignments[{from, to}] = parse_ratfun(val.get<std::string>());
        }
    }
    if (j.contains("mode")) {
        std::string mode = j["mode"].get<std::string>();
        if (mode == "generic") fx.mode = SampleMode::Generic;
        else if (mode == "adversarial") fx.mode = SampleMode::Adversarial;
        else throw SyntaxError("mode must be 'generic' or 'adversarial'");
    } else if (!fx.assignments.empty()) {
        fx.mode = SampleMode::Adversarial;
    }
    if (fx.mode == SampleMode::Generic && !fx.assignments.empty())
        throw SyntaxError("generic fixtures cannot carry assignments");
    return fx;
}

inline NetworkMatrix instantiate_fixture(const OracleFixture& fx,
                                         std::optional<unsigned> seed_override = std::nullopt,
                                         const Config& cfg = default_config()) {
    return sample_admissible(fx.graph, seed_override.value_or(fx.seed), fx.mode, fx.assignments,
                             cfg);
}

}  // namespace netid
