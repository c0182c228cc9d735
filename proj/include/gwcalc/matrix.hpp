#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gwcalc/rational.hpp"

namespace gwcalc {

// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, mpz_class(0)) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    mpz_class& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    IntMatrix transposed() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return c;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<mpz_class> entries_;
};

// Dense row-major rational matrix.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> entries_;
};

struct SmithNormalForm {
    IntMatrix D;  // diagonal, each entry dividing the next
    IntMatrix U;  // unimodular, rows x rows
    IntMatrix V;  // unimodular, cols x cols; U*m*V = D
};

// Smith normal form by pivot-and-clear with magnitude-minimal pivot selection.
inline SmithNormalForm smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);

    auto swap_rows = [&](std::size_t r1, std::size_t r2) {
        if (r1 == r2) return;
        for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(r1, j), a.at(r2, j));
        for (std::size_t j = 0; j < rows; ++j) std::swap(u.at(r1, j), u.at(r2, j));
    };
    auto swap_cols = [&](std::size_t c1, std::size_t c2) {
        if (c1 == c2) return;
        for (std::size_t i = 0; i < rows; ++i) std::swap(a.at(i, c1), a.at(i, c2));
        for (std::size_t i = 0; i < cols; ++i) std::swap(v.at(i, c1), v.at(i, c2));
    };
    // row_r -= q * row_s ; col_c -= q * col_s
    auto row_sub = [&](std::size_t r, const mpz_class& q, std::size_t s) {
        for (std::size_t j = 0; j < cols; ++j) a.at(r, j) -= q * a.at(s, j);
        for (std::size_t j = 0; j < rows; ++j) u.at(r, j) -= q * u.at(s, j);
    };
    auto col_sub = [&](std::size_t c, const mpz_class& q, std::size_t s) {
        for (std::size_t i = 0; i < rows; ++i) a.at(i, c) -= q * a.at(i, s);
        for (std::size_t i = 0; i < cols; ++i) v.at(i, c) -= q * v.at(i, s);
    };
    auto row_add = [&](std::size_t r, std::size_t s) {
        for (std::size_t j = 0; j < cols; ++j) a.at(r, j) += a.at(s, j);
        for (std::size_t j = 0; j < rows; ++j) u.at(r, j) += u.at(s, j);
    };

    const std::size_t nmin = rows < cols ? rows : cols;
    for (std::size_t t = 0; t < nmin; ++t) {
        for (;;) {
            // magnitude-minimal nonzero pivot in the trailing submatrix
            bool found = false;
            std::size_t pi = t, pj = t;
            mpz_class best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (a.at(i, j) == 0) continue;
                    mpz_class mag = ::abs(a.at(i, j));
                    if (!found || mag < best) {
                        found = true;
                        best = mag;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) {
                t = nmin;  // all remaining entries are zero
                break;
            }
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool clear = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a.at(i, t) == 0) continue;
                mpz_class q = a.at(i, t) / a.at(t, t);  // truncated quotient
                if (q != 0) row_sub(i, q, t);
                if (a.at(i, t) != 0) clear = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a.at(t, j) == 0) continue;
                mpz_class q = a.at(t, j) / a.at(t, t);
                if (q != 0) col_sub(j, q, t);
                if (a.at(t, j) != 0) clear = false;
            }
            if (!clear) continue;

            // pivot must divide the trailing submatrix for the divisibility chain
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a.at(i, j) % a.at(t, t) != 0) {
                        row_add(t, i);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (t >= nmin) break;
    }
    // nonnegative diagonal
    for (std::size_t t = 0; t < nmin; ++t) {
        if (a.at(t, t) < 0) {
            for (std::size_t j = 0; j < cols; ++j) a.at(t, j) = -a.at(t, j);
            for (std::size_t j = 0; j < rows; ++j) u.at(t, j) = -u.at(t, j);
        }
    }
    return {std::move(a), std::move(u), std::move(v)};
}

struct RowReduction {
    RatMatrix rref;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
    std::vector<std::vector<Rational>> kernel;  // basis of the right kernel
};

// Exact reduced row echelon form. Pivot rule: leftmost column, first
// nonzero row from the top; fully deterministic.
inline RowReduction rational_row_reduce(const RatMatrix& m) {
    RowReduction out;
    RatMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && a.at(sel, c).is_zero()) ++sel;
        if (sel == rows) continue;
        if (sel != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(r, j), a.at(sel, j));
        Rational inv = Rational(1) / a.at(r, c);
        for (std::size_t j = 0; j < cols; ++j) a.at(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            Rational f = a.at(i, c);
            for (std::size_t j = 0; j < cols; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : out.pivot_cols) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> vec(cols, Rational(0));
        vec[f] = Rational(1);
        for (std::size_t i = 0; i < out.pivot_cols.size(); ++i) vec[out.pivot_cols[i]] = -a.at(i, f);
        out.kernel.push_back(std::move(vec));
    }
    out.rref = std::move(a);
    return out;
}

}  // namespace gwcalc
