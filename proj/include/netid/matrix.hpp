#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "netid/errors.hpp"
#include "netid/polynomial.hpp"
#include "netid/ratfun.hpp"

namespace netid {

// Dense matrix over the field of rational functions.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw PreconditionError("negative matrix dimension");
    }

    static RatMatrix identity(int n) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = RatFun(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    RatFun& at(int i, int j) { return data_[idx(i, j)]; }
    const RatFun& at(int i, int j) const { return data_[idx(i, j)]; }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw PreconditionError("matrix dimension mismatch in subtraction");
        RatMatrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
        return r;
    }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        if (a.cols_ != b.rows_) throw PreconditionError("matrix dimension mismatch in product");
        RatMatrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    r.at(i, j) += a.at(i, k) * b.at(k, j);
                }
            }
        return r;
    }

    bool is_zero() const {
        for (const auto& e : data_) if (!e.is_zero()) return false;
        return true;
    }

    // Row/column selections are 0-based and must be strictly increasing.
    RatMatrix submatrix(const std::vector<int>& row_sel, const std::vector<int>& col_sel) const {
        RatMatrix r(static_cast<int>(row_sel.size()), static_cast<int>(col_sel.size()));
        for (std::size_t i = 0; i < row_sel.size(); ++i)
            for (std::size_t j = 0; j < col_sel.size(); ++j) {
                if (row_sel[i] < 0 || row_sel[i] >= rows_ || col_sel[j] < 0 || col_sel[j] >= cols_)
                    throw PreconditionError("submatrix selection out of range");
                r.at(static_cast<int>(i), static_cast<int>(j)) = at(row_sel[i], col_sel[j]);
            }
        return r;
    }

  private:
    std::size_t idx(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw PreconditionError("matrix index out of range");
        return static_cast<std::size_t>(i) * cols_ + j;
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<RatFun> data_;
};

namespace detail {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

// Scale each row by the lcm of its entry denominators, turning the matrix
// into a polynomial matrix. Row scales are nonzero, so rank is preserved
// and det picks up the product of the scales.
struct ClearedRows {
    PolyMatrix mat;
    std::vector<Polynomial> row_scale;
};

inline ClearedRows clear_denominators(const RatMatrix& a) {
    ClearedRows out;
    out.mat.assign(static_cast<std::size_t>(a.rows()), std::vector<Polynomial>(static_cast<std::size_t>(a.cols())));
    out.row_scale.assign(static_cast<std::size_t>(a.rows()), Polynomial(Rat(1)));
    for (int i = 0; i < a.rows(); ++i) {
        Polynomial lcm(Rat(1));
        for (int j = 0; j < a.cols(); ++j) {
            const Polynomial& d = a.at(i, j).den();
            lcm = Polynomial::divexact(lcm * d, Polynomial::gcd(lcm, d));
        }
        for (int j = 0; j < a.cols(); ++j) {
            const RatFun& e = a.at(i, j);
            out.mat[i][j] = e.num() * Polynomial::divexact(lcm, e.den());
        }
        out.row_scale[i] = lcm;
    }
    return out;
}

struct BareissResult {
    int rank = 0;
    Polynomial det;  // meaningful for square inputs only
};

// Fraction-free elimination (Bareiss). Pivots are chosen as the first
// nonzero entry in each column; zero columns are skipped, which keeps the
// exact-division property on the remaining block.
inline BareissResult bareiss_eliminate(PolyMatrix m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    Polynomial prev(Rat(1));
    int sign = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i) {
            if (!m[i][c].is_zero()) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        if (p != r) {
            std::swap(m[p], m[r]);
            sign = -sign;
        }
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j)
                m[i][j] = Polynomial::divexact(m[r][c] * m[i][j] - m[i][c] * m[r][j], prev);
            m[i][c] = Polynomial{};
        }
        prev = m[r][c];
        ++r;
    }
    BareissResult res;
    res.rank = r;
    if (rows == cols) {
        if (r < rows) res.det = Polynomial{};
        else res.det = sign < 0 ? -prev : prev;
    }
    return res;
}

inline Polynomial poly_det(const PolyMatrix& m) {
    if (m.empty()) return Polynomial(Rat(1));  // det of the empty matrix
    return bareiss_eliminate(m).det;
}

// Fraction-free Gauss-Jordan elimination on [B | I]: the same two-term
// update as Bareiss, dividing by the previous pivot, applied to every row.
// Processed diagonals all equal the current pivot (the pivot-row entries
// left of the pivot are zero, so the update multiplies earlier diagonals
// by pivot/prev), hence at the end the left block is p*I with p the final
// pivot, and row i of the right block R satisfies R_i B = p e_i^T.
struct GaussJordanResult {
    Polynomial denom;  // the final pivot p; +-det of the input
    PolyMatrix right;  // R = p B^{-1}
};

inline GaussJordanResult bareiss_gauss_jordan(PolyMatrix m) {
    const int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i) {
        m[i].resize(2 * static_cast<std::size_t>(n));
        m[i][static_cast<std::size_t>(n + i)] = Polynomial(Rat(1));
    }
    Polynomial prev(Rat(1));
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i) {
            if (!m[i][k].is_zero()) {
                p = i;
                break;
            }
        }
        if (p < 0) throw Singular("matrix has identically zero determinant");
        if (p != k) std::swap(m[p], m[k]);
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            for (int j = k + 1; j < 2 * n; ++j)
                m[i][j] = Polynomial::divexact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = Polynomial{};
        }
        prev = m[k][k];
    }
    GaussJordanResult res;
    res.denom = prev;
    res.right.assign(static_cast<std::size_t>(n), {});
    for (int i = 0; i < n; ++i) res.right[i].assign(m[i].begin() + n, m[i].end());
    return res;
}

}  // namespace detail

// Normal rank = rank over the rational-function field, by fraction-free
// elimination after clearing row denominators.
inline int normal_rank(const RatMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    return detail::bareiss_eliminate(detail::clear_denominators(a).mat).rank;
}

inline RatFun determinant(const RatMatrix& a) {
    if (!a.is_square()) throw PreconditionError("determinant requires a square matrix");
    if (a.rows() == 0) return RatFun(1);
    auto cleared = detail::clear_denominators(a);
    Polynomial det_scaled = detail::poly_det(cleared.mat);
    Polynomial scale(Rat(1));
    for (const auto& d : cleared.row_scale) scale *= d;
    return RatFun(std::move(det_scaled), std::move(scale));
}

// Exact inverse through the denominator-cleared matrix B = diag(d) A:
// A^{-1}[i][j] = B^{-1}[i][j] d_j, with B^{-1} from fraction-free
// Gauss-Jordan elimination over the polynomial ring.
inline RatMatrix mat_inverse(const RatMatrix& a) {
    if (!a.is_square()) throw PreconditionError("inverse requires a square matrix");
    const int n = a.rows();
    if (n == 0) return a;
    auto cleared = detail::clear_denominators(a);
    auto gj = detail::bareiss_gauss_jordan(std::move(cleared.mat));
    RatMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv.at(i, j) = RatFun(gj.right[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                                      cleared.row_scale[static_cast<std::size_t>(j)],
                                  gj.denom);
    return inv;
}

// Adjugate over the rational-function field: a * adj(a) = det(a) * I,
// including singular inputs. adj of a 1x1 matrix is [1], of 0x0 is 0x0.
inline RatMatrix adjugate(const RatMatrix& a) {
    if (!a.is_square()) throw PreconditionError("adjugate requires a square matrix");
    const int n = a.rows();
    RatMatrix adj(n, n);
    if (n == 0) return adj;
    if (n == 1) {
        adj.at(0, 0) = RatFun(1);
        return adj;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<int> rs, cs;
            for (int k = 0; k < n; ++k) {
                if (k != j) rs.push_back(k);
                if (k != i) cs.push_back(k);
            }
            RatFun cof = determinant(a.submatrix(rs, cs));
            adj.at(i, j) = ((i + j) % 2 == 0) ? cof : -cof;
        }
    }
    return adj;
}

// Entrywise limit as z -> infinity; requires every entry proper.
inline std::vector<std::vector<Rat>> limit_at_infinity(const RatMatrix& a) {
    std::vector<std::vector<Rat>> lim(static_cast<std::size_t>(a.rows()),
                                      std::vector<Rat>(static_cast<std::size_t>(a.cols())));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            lim[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a.at(i, j).limit_at_infinity();
    return lim;
}

// Exact evaluation at z = x; nullopt if x is a pole of some entry.
inline std::optional<std::vector<std::vector<Rat>>> evaluate(const RatMatrix& a, const Rat& x) {
    std::vector<std::vector<Rat>> out(static_cast<std::size_t>(a.rows()),
                                      std::vector<Rat>(static_cast<std::size_t>(a.cols())));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            auto v = a.at(i, j).eval(x);
            if (!v) return std::nullopt;
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *v;
        }
    return out;
}

// Exact determinant of a rational-number matrix by Gaussian elimination.
inline Rat numeric_det(std::vector<std::vector<Rat>> m) {
    const int n = static_cast<int>(m.size());
    Rat det{1};
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i) {
            if (m[i][c] != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) return Rat(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / m[c][c];
            for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

// Plain Gaussian rank of a rational-number matrix.
inline int numeric_rank(std::vector<std::vector<Rat>> m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i) {
            if (m[i][c] != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        std::swap(m[p], m[r]);
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

// Probabilistic rank for matrices beyond the exact-size limit: the maximum
// rank of exact evaluations at a few random integer points. Evaluation rank
// never exceeds the normal rank, so this is a lower bound that is tight for
// generic points.
inline int normal_rank_sampled(const RatMatrix& a, unsigned seed, int points = 3) {
    std::mt19937_64 rng(seed);
    int best = 0;
    const int limit = std::min(a.rows(), a.cols());
    for (int k = 0; k < points && best < limit; ++k) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            long long x = static_cast<long long>(rng() % 2'000'001) - 1'000'000;
            auto m = evaluate(a, Rat(x));
            if (!m) continue;  // hit a pole, resample
            best = std::max(best, numeric_rank(*m));
            break;
        }
    }
    return best;
}

}  // namespace netid
