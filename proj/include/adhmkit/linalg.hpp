#pragma once

#include <optional>
#include <vector>

#include "adhmkit/matrix.hpp"
#include "adhmkit/polynomial.hpp"

namespace adhm {

// Reduced row echelon form, in place. Pivot rule is fixed for determinism:
// scan columns left to right, take the first remaining row with a nonzero
// entry. Returns the pivot column per pivot row.
template <class K>
std::vector<std::size_t> rref_in_place(Matrix<K>& m)
{
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < m.cols() && pr < m.rows(); ++c) {
        std::size_t sel = pr;
        while (sel < m.rows() && m(sel, c) == K(0))
            ++sel;
        if (sel == m.rows())
            continue;
        if (sel != pr)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(sel, j), m(pr, j));
        K inv = K(1) / m(pr, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(pr, j) = inv * m(pr, j);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == pr || m(r, c) == K(0))
                continue;
            K f = m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(r, j) -= f * m(pr, j);
        }
        pivots.push_back(c);
        ++pr;
    }
    return pivots;
}

template <class K>
std::size_t rank(Matrix<K> m)
{
    return rref_in_place(m).size();
}

// One solution of A x = b, or absent when inconsistent. Free variables are
// set to zero, so the answer is deterministic.
template <class K>
std::optional<Matrix<K>> solve_linear(const Matrix<K>& a, const Matrix<K>& b)
{
    require(a.rows() == b.rows(), ErrorKind::DimensionMismatch, "solve_linear shape");
    require(b.cols() == 1, ErrorKind::DimensionMismatch, "right side must be a column");
    Matrix<K> aug = Matrix<K>::hstack(a, b);
    auto pivots = rref_in_place(aug);
    // Inconsistent iff a pivot lands in the appended column.
    if (!pivots.empty() && pivots.back() == a.cols())
        return std::nullopt;
    Matrix<K> x(a.cols(), 1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x(pivots[r], 0) = aug(r, a.cols());
    return x;
}

// Reduced-echelon basis of the right kernel {x : A x = 0}, one row per basis
// vector.
template <class K>
Matrix<K> kernel_basis(const Matrix<K>& a)
{
    Matrix<K> m = a;
    auto pivots = rref_in_place(m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);

    Matrix<K> basis(free_cols.size(), a.cols());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t fc = free_cols[k];
        basis(k, fc) = K(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis(k, pivots[r]) = -m(r, fc);
    }
    // The rows above are already independent; echelonize for the canonical
    // representative.
    rref_in_place(basis);
    return basis;
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& a)
{
    require(a.is_square(), ErrorKind::DimensionMismatch, "inverse of non-square");
    Matrix<K> aug = Matrix<K>::hstack(a, Matrix<K>::identity(a.rows()));
    auto pivots = rref_in_place(aug);
    // Singular iff some pivot escapes the left block ([A | I] always has
    // full row rank).
    if (pivots.size() != a.rows() || (!pivots.empty() && pivots.back() >= a.cols()))
        return std::nullopt;
    return aug.submatrix(0, a.cols(), a.rows(), a.cols());
}

// Characteristic polynomial det(x I - A) by the Samuelson-Berkowitz scheme;
// division-free, so it works verbatim over Q, Q(t) and F_p.
template <class K>
Poly<K> charpoly(const Matrix<K>& a)
{
    require(a.is_square(), ErrorKind::DimensionMismatch, "charpoly of non-square");
    std::size_t n = a.rows();
    if (n == 0)
        return Poly<K>::one();

    // Vector of coefficients, degree high to low; starts as (1, -a00).
    std::vector<K> c{K(1), -a(0, 0)};
    for (std::size_t k = 1; k < n; ++k) {
        // Principal k+1 x k+1 block pieces.
        Matrix<K> block = a.submatrix(0, 0, k, k);
        std::vector<K> row(k), colv(k);
        for (std::size_t j = 0; j < k; ++j) {
            row[j] = a(k, j);
            colv[j] = a(j, k);
        }
        // Toeplitz column: 1, -a_kk, -row*col, -row*block*col, ...
        std::vector<K> tcol(k + 2, K(0));
        tcol[0] = K(1);
        tcol[1] = -a(k, k);
        std::vector<K> w = colv;
        for (std::size_t s = 0; s + 2 < tcol.size(); ++s) {
            K dot(0);
            for (std::size_t j = 0; j < k; ++j)
                dot += row[j] * w[j];
            tcol[s + 2] = -dot;
            if (s + 3 < tcol.size()) {
                std::vector<K> w2(k, K(0));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        w2[i] += block(i, j) * w[j];
                w = w2;
            }
        }
        // Multiply: new_c = Toeplitz(tcol) * c.
        std::vector<K> nc(k + 2, K(0));
        for (std::size_t i = 0; i < nc.size(); ++i)
            for (std::size_t j = 0; j <= i && j < c.size(); ++j)
                nc[i] += tcol[i - j] * c[j];
        c = nc;
    }
    // c holds coefficients from x^n down to x^0.
    std::vector<K> low_first(c.rbegin(), c.rend());
    return Poly<K>(low_first);
}

template <class K>
K determinant(const Matrix<K>& a)
{
    Poly<K> cp = charpoly(a);
    K d = cp.coeff(0);
    if (a.rows() % 2 == 1)
        d = -d;
    return d;
}

} // namespace adhm
