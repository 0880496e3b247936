#pragma once

#include <optional>
#include <vector>

#include "cla/rational.hpp"

namespace cla {

// Dense exact matrices; enough for the small graded pieces that show up
// here.  Pivot selection is always "first nonzero", which pins every
// computed basis deterministically.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Rat> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}

    Rat& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols != y.rows) throw internal_error("matrix shape mismatch");
        Matrix r(x.rows, y.cols);
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t k = 0; k < x.cols; ++k) {
                if (x.at(i, k) == 0) continue;
                for (std::size_t j = 0; j < y.cols; ++j)
                    r.at(i, j) += x.at(i, k) * y.at(k, j);
            }
        return r;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw internal_error("matrix shape mismatch");
        Matrix r = x;
        for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
        return r;
    }

    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw internal_error("matrix shape mismatch");
        Matrix r = x;
        for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
        return r;
    }

    bool operator==(const Matrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }

    std::vector<Rat> apply(const std::vector<Rat>& v) const {
        if (v.size() != cols) throw internal_error("matrix apply shape mismatch");
        std::vector<Rat> r(rows, Rat(0));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (at(i, j) != 0) r[i] += at(i, j) * v[j];
        return r;
    }
};

// Row reduction to reduced echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t sel = row;
        while (sel < m.rows && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j)
            std::swap(m.at(sel, j), m.at(row, j));
        Rat inv = Rat(1) / m.at(row, col);
        for (std::size_t j = 0; j < m.cols; ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            Rat f = m.at(i, col);
            for (std::size_t j = 0; j < m.cols; ++j)
                m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

// Basis of the null space (column vectors).
inline std::vector<std::vector<Rat>> kernel_basis(Matrix m) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rat>> out;
    for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rat> v(m.cols, Rat(0));
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m.at(r, free_col);
        out.push_back(std::move(v));
    }
    return out;
}

// Solves A x = b; empty when inconsistent.
inline std::optional<std::vector<Rat>> solve(const Matrix& A,
                                             const std::vector<Rat>& b) {
    if (b.size() != A.rows) throw internal_error("solve shape mismatch");
    Matrix aug(A.rows, A.cols + 1);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
    std::vector<Rat> x(A.cols, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug.at(r, A.cols);
    return x;
}

inline std::optional<Matrix> inverse(const Matrix& A) {
    if (A.rows != A.cols) throw internal_error("inverse of non-square matrix");
    Matrix aug(A.rows, 2 * A.cols);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols + i) = 1;
    }
    auto pivots = rref(aug);
    if (pivots.size() != A.rows || (!pivots.empty() && pivots.back() >= A.cols))
        return std::nullopt;
    Matrix inv(A.rows, A.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j)
            inv.at(i, j) = aug.at(i, A.cols + j);
    return inv;
}

} // namespace cla
