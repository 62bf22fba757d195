#pragma once

#include <optional>
#include <vector>

#include "ellcov/numeric.hpp"

namespace ellcov {

// Dense row-major integer matrix, sized for group-theory bookkeeping
// (dimensions stay in the single digits; entries may grow during
// elimination, hence cpp_int throughout).
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline Mat mat_mul(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw std::logic_error("mat_mul: shape mismatch");
    Mat z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Int& v = x.at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
        }
    return z;
}

inline std::vector<Int> mat_apply(const Mat& m, const std::vector<Int>& v) {
    if (m.cols != v.size()) throw std::logic_error("mat_apply: shape mismatch");
    std::vector<Int> out(m.rows, Int(0));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out[i] += m.at(i, j) * v[j];
    return out;
}

// Exact determinant by fraction-free Bareiss elimination.
inline Int det(Mat m) {
    if (m.rows != m.cols) throw std::logic_error("det: square matrix required");
    std::size_t n = m.rows;
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (std::size_t t = 0; t + 1 < n; ++t) {
        if (m.at(t, t) == 0) {
            std::size_t p = t + 1;
            while (p < n && m.at(p, t) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(t, j), m.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = t + 1; i < n; ++i) {
            for (std::size_t j = t + 1; j < n; ++j)
                m.at(i, j) = (m.at(t, t) * m.at(i, j) - m.at(i, t) * m.at(t, j)) / prev;
            m.at(i, t) = 0;
        }
        prev = m.at(t, t);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

// U * A * V = D with U, V unimodular and D diagonal with d1 | d2 | ...
struct SmithForm {
    Mat U, D, V;
};

inline SmithForm smith_normal_form(const Mat& input) {
    SmithForm s;
    s.D = input;
    s.U = Mat::identity(input.rows);
    s.V = Mat::identity(input.cols);
    Mat& D = s.D;
    Mat& U = s.U;
    Mat& V = s.V;
    const std::size_t r = D.rows, c = D.cols;
    const std::size_t rank_bound = std::min(r, c);

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t t = 0; t < c; ++t) std::swap(D.at(i, t), D.at(j, t));
        for (std::size_t t = 0; t < r; ++t) std::swap(U.at(i, t), U.at(j, t));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t t = 0; t < r; ++t) std::swap(D.at(t, i), D.at(t, j));
        for (std::size_t t = 0; t < c; ++t) std::swap(V.at(t, i), V.at(t, j));
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t t = 0; t < c; ++t) D.at(dst, t) += f * D.at(src, t);
        for (std::size_t t = 0; t < r; ++t) U.at(dst, t) += f * U.at(src, t);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t t = 0; t < r; ++t) D.at(t, dst) += f * D.at(t, src);
        for (std::size_t t = 0; t < c; ++t) V.at(t, dst) += f * V.at(t, src);
    };

    for (std::size_t t = 0; t < rank_bound; ++t) {
        // move the smallest nonzero entry of the trailing block to (t,t)
        for (;;) {
            std::size_t pi = t, pj = t;
            bool found = false;
            Int best = 0;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    if (D.at(i, j) == 0) continue;
                    Int v = abs(D.at(i, j));
                    if (!found || v < best) {
                        best = v;
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            if (!found) {
                t = rank_bound;  // trailing block is zero
                break;
            }
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (D.at(i, t) == 0) continue;
                Int q = D.at(i, t) / D.at(t, t);
                add_row(i, t, -q);
                if (D.at(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (D.at(t, j) == 0) continue;
                Int q = D.at(t, j) / D.at(t, t);
                add_col(j, t, -q);
                if (D.at(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // pivot must divide the whole trailing block for the chain
            bool chain_ok = true;
            for (std::size_t i = t + 1; i < r && chain_ok; ++i)
                for (std::size_t j = t + 1; j < c && chain_ok; ++j)
                    if (D.at(i, j) % D.at(t, t) != 0) {
                        add_row(t, i, 1);
                        chain_ok = false;
                    }
            if (chain_ok) break;
        }
        if (t >= rank_bound) break;
        if (D.at(t, t) < 0) {
            for (std::size_t j = 0; j < c; ++j) D.at(t, j) = -D.at(t, j);
            for (std::size_t j = 0; j < r; ++j) U.at(t, j) = -U.at(t, j);
        }
    }
    return s;
}

// Inverse of a unimodular integer matrix (exact; throws if not unimodular).
inline Mat unimodular_inverse(const Mat& m) {
    if (m.rows != m.cols) throw std::logic_error("unimodular_inverse: square required");
    std::size_t n = m.rows;
    std::vector<std::vector<Rat>> w(n, std::vector<Rat>(2 * n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w[i][j] = Rat(m.at(i, j));
        w[i][n + i] = 1;
    }
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t p = t;
        while (p < n && w[p][t] == 0) ++p;
        if (p == n) throw std::logic_error("unimodular_inverse: singular matrix");
        std::swap(w[p], w[t]);
        Rat inv = Rat(1) / w[t][t];
        for (std::size_t j = 0; j < 2 * n; ++j) w[t][j] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == t || w[i][t] == 0) continue;
            Rat f = w[i][t];
            for (std::size_t j = 0; j < 2 * n; ++j) w[i][j] -= f * w[t][j];
        }
    }
    Mat out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rat& v = w[i][n + j];
            if (boost::multiprecision::denominator(v) != 1)
                throw std::logic_error("unimodular_inverse: matrix is not unimodular");
            out.at(i, j) = boost::multiprecision::numerator(v);
        }
    return out;
}

// One integer solution x of A x ≡ b modulo per-row moduli (each > 0),
// i.e. A x + diag(mod) s = b for some integer s. Empty optional when the
// congruence system has no solution.
inline std::optional<std::vector<Int>> solve_congruences(const Mat& A,
                                                         const std::vector<Int>& b,
                                                         const std::vector<Int>& row_mod) {
    const std::size_t l = A.rows, m = A.cols;
    if (b.size() != l || row_mod.size() != l) throw std::logic_error("solve_congruences: shape");
    Mat W(l, m + l);
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = 0; j < m; ++j) W.at(i, j) = A.at(i, j);
        W.at(i, m + i) = row_mod[i];
    }
    SmithForm s = smith_normal_form(W);
    std::vector<Int> ub = mat_apply(s.U, b);
    std::vector<Int> w(m + l, Int(0));
    for (std::size_t i = 0; i < l; ++i) {
        Int d = i < std::min(l, m + l) ? s.D.at(i, i) : Int(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            w[i] = ub[i] / d;
        }
    }
    std::vector<Int> y = mat_apply(s.V, w);
    return std::vector<Int>(y.begin(), y.begin() + m);
}

}  // namespace ellcov
