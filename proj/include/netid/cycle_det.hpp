#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "netid/config.hpp"
#include "netid/errors.hpp"
#include "netid/matrix.hpp"

namespace netid {

// Weighted digraph encoding of a square rational matrix M: vertices are the
// 0-based matrix indices, and an arc (k,l) with weight M[l][k] exists exactly
// when that entry is nonzero. Self-loops are allowed (diagonal entries).
struct WeightedDigraph {
    int p = 0;
    std::map<std::pair<int, int>, RatFun> arcs;

    void add_arc(int from, int to, RatFun weight) {
        if (from < 0 || from >= p || to < 0 || to >= p)
            throw InvariantError("arc endpoint out of range in weighted digraph");
        if (weight.is_zero()) throw InvariantError("zero weight on weighted digraph arc");
        if (!arcs.emplace(std::make_pair(from, to), std::move(weight)).second)
            throw InvariantError("duplicate arc in weighted digraph");
    }

    static WeightedDigraph from_matrix(const RatMatrix& m) {
        if (!m.is_square()) throw PreconditionError("weighted digraph requires a square matrix");
        WeightedDigraph g;
        g.p = m.rows();
        for (int k = 0; k < g.p; ++k)
            for (int l = 0; l < g.p; ++l)
                if (!m.at(l, k).is_zero()) g.add_arc(k, l, m.at(l, k));
        return g;
    }

    RatMatrix to_matrix() const {
        RatMatrix m(p, p);
        for (const auto& [arc, w] : arcs) m.at(arc.second, arc.first) = w;
        return m;
    }
};

namespace detail {

// Sums sign * weight over all spanning cycle families. Vertices of the cycle
// under construction are marked covered as the walk grows, so the family
// recursion only ever continues from fully disjoint remainders.
class CycleFamilySum {
  public:
    explicit CycleFamilySum(const WeightedDigraph& g) : covered_(static_cast<std::size_t>(g.p), false) {
        out_.resize(static_cast<std::size_t>(g.p));
        for (const auto& [arc, w] : g.arcs)
            out_[static_cast<std::size_t>(arc.first)].emplace_back(arc.second, w);
    }

    RatFun run() {
        next_family_member(RatFun(1));
        return total_;
    }

  private:
    // Pick the smallest uncovered vertex and grow the cycle that must
    // contain it; a family is complete when everything is covered.
    void next_family_member(const RatFun& acc) {
        int v = -1;
        for (std::size_t i = 0; i < covered_.size(); ++i) {
            if (!covered_[i]) {
                v = static_cast<int>(i);
                break;
            }
        }
        if (v < 0) {
            total_ += acc;
            return;
        }
        covered_[static_cast<std::size_t>(v)] = true;
        extend_cycle(v, v, acc, 0);
        covered_[static_cast<std::size_t>(v)] = false;
    }

    // A cycle with L arcs contributes (-1)^(L-1) * product of arc weights;
    // `parity` is the number of arcs walked so far mod 2.
    void extend_cycle(int root, int cur, const RatFun& weight, int parity) {
        for (const auto& [next, w] : out_[static_cast<std::size_t>(cur)]) {
            if (next == root) {
                RatFun closed = weight * w;
                if (parity != 0) closed = -closed;
                next_family_member(closed);
            } else if (!covered_[static_cast<std::size_t>(next)]) {
                covered_[static_cast<std::size_t>(next)] = true;
                extend_cycle(root, next, weight * w, parity ^ 1);
                covered_[static_cast<std::size_t>(next)] = false;
            }
        }
    }

    std::vector<std::vector<std::pair<int, RatFun>>> out_;
    std::vector<bool> covered_;
    RatFun total_;
};

}  // namespace detail

// Determinant of the encoded matrix by summing over spanning cycle families.
// The sign convention makes the all-self-loops family of a diagonal matrix
// contribute +(product of diagonal entries), so the result equals the
// elimination determinant exactly, not merely up to sign.
inline RatFun det_via_cycle_families(const WeightedDigraph& g,
                                     const Config& cfg = default_config()) {
    if (g.p > cfg.max_exact_n)
        throw SizeLimit("cycle-family determinant limited to " + std::to_string(cfg.max_exact_n) +
                        " vertices, got " + std::to_string(g.p));
    if (g.p == 0) return RatFun(1);
    return detail::CycleFamilySum(g).run();
}

}  // namespace netid
