#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "adhmkit/errors.hpp"

namespace adhm {

// Dense row-major matrix over a field K. Zero-sized dimensions are legal and
// behave as the empty matrix (needed by degenerate tensor factors).
template <class K>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, K(0))
    {
    }
    Matrix(std::size_t rows, std::size_t cols, std::vector<K> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries))
    {
        require(e_.size() == rows_ * cols_, ErrorKind::DimensionMismatch,
                "entry count does not match shape");
    }
    Matrix(std::initializer_list<std::initializer_list<K>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        e_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            require(row.size() == cols_, ErrorKind::DimensionMismatch, "ragged initializer");
            for (const auto& x : row)
                e_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = K(1);
        return m;
    }
    static Matrix zero(std::size_t r, std::size_t c) { return Matrix(r, c); }
    static Matrix column(const std::vector<K>& v)
    {
        return Matrix(v.size(), 1, std::vector<K>(v));
    }
    static Matrix row_vector(const std::vector<K>& v)
    {
        return Matrix(1, v.size(), std::vector<K>(v));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    const K& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    K& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const std::vector<K>& entries() const { return e_; }

    std::vector<K> row(std::size_t r) const
    {
        return std::vector<K>(e_.begin() + r * cols_, e_.begin() + (r + 1) * cols_);
    }
    std::vector<K> col(std::size_t c) const
    {
        std::vector<K> v(rows_, K(0));
        for (std::size_t r = 0; r < rows_; ++r)
            v[r] = (*this)(r, c);
        return v;
    }

    bool is_zero() const
    {
        for (const auto& x : e_)
            if (!(x == K(0)))
                return false;
        return true;
    }
    bool is_square() const { return rows_ == cols_; }

    Matrix transpose() const
    {
        Matrix m(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                m(c, r) = (*this)(r, c);
        return m;
    }

    Matrix operator-() const
    {
        Matrix m = *this;
        for (auto& x : m.e_)
            x = -x;
        return m;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b)
    {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::DimensionMismatch,
                "matrix add shape");
        Matrix m = a;
        for (std::size_t i = 0; i < m.e_.size(); ++i)
            m.e_[i] += b.e_[i];
        return m;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }
    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        require(a.cols_ == b.rows_, ErrorKind::DimensionMismatch, "matrix mul shape");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const K& aik = a(i, k);
                if (aik == K(0))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    m(i, j) += aik * b(k, j);
            }
        return m;
    }
    friend Matrix operator*(const K& c, const Matrix& a)
    {
        Matrix m = a;
        for (auto& x : m.e_)
            x = c * x;
        return m;
    }
    Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
    Matrix& operator-=(const Matrix& o) { return *this = *this - o; }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    K trace() const
    {
        require(is_square(), ErrorKind::DimensionMismatch, "trace of non-square");
        K t(0);
        for (std::size_t i = 0; i < rows_; ++i)
            t += (*this)(i, i);
        return t;
    }

    static Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

    // Kronecker product, row-major index convention (i1*r2+i2, j1*c2+j2).
    static Matrix kron(const Matrix& a, const Matrix& b)
    {
        Matrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (std::size_t i1 = 0; i1 < a.rows_; ++i1)
            for (std::size_t j1 = 0; j1 < a.cols_; ++j1) {
                const K& x = a(i1, j1);
                if (x == K(0))
                    continue;
                for (std::size_t i2 = 0; i2 < b.rows_; ++i2)
                    for (std::size_t j2 = 0; j2 < b.cols_; ++j2)
                        m(i1 * b.rows_ + i2, j1 * b.cols_ + j2) = x * b(i2, j2);
            }
        return m;
    }

    Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        Matrix m(nr, nc);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c)
                m(r, c) = (*this)(r0 + r, c0 + c);
        return m;
    }
    void paste(std::size_t r0, std::size_t c0, const Matrix& block)
    {
        require(r0 + block.rows_ <= rows_ && c0 + block.cols_ <= cols_,
                ErrorKind::DimensionMismatch, "paste out of range");
        for (std::size_t r = 0; r < block.rows_; ++r)
            for (std::size_t c = 0; c < block.cols_; ++c)
                (*this)(r0 + r, c0 + c) = block(r, c);
    }

    static Matrix vstack(const Matrix& a, const Matrix& b)
    {
        require(a.cols_ == b.cols_ || a.rows_ == 0 || b.rows_ == 0, ErrorKind::DimensionMismatch,
                "vstack shape");
        std::size_t cols = a.rows_ ? a.cols_ : b.cols_;
        Matrix m(a.rows_ + b.rows_, cols);
        if (a.rows_)
            m.paste(0, 0, a);
        if (b.rows_)
            m.paste(a.rows_, 0, b);
        return m;
    }
    static Matrix hstack(const Matrix& a, const Matrix& b)
    {
        require(a.rows_ == b.rows_ || a.cols_ == 0 || b.cols_ == 0, ErrorKind::DimensionMismatch,
                "hstack shape");
        std::size_t rows = a.cols_ ? a.rows_ : b.rows_;
        Matrix m(rows, a.cols_ + b.cols_);
        if (a.cols_)
            m.paste(0, 0, a);
        if (b.cols_)
            m.paste(0, a.cols_, b);
        return m;
    }
    static Matrix block_diag(const Matrix& a, const Matrix& b)
    {
        Matrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
        m.paste(0, 0, a);
        m.paste(a.rows_, a.cols_, b);
        return m;
    }

    // Entry-wise map into another scalar type.
    template <class K2>
    Matrix<K2> map(const std::function<K2(const K&)>& f) const
    {
        std::vector<K2> v;
        v.reserve(e_.size());
        for (const auto& x : e_)
            v.push_back(f(x));
        return Matrix<K2>(rows_, cols_, std::move(v));
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m)
    {
        os << "[";
        for (std::size_t r = 0; r < m.rows_; ++r) {
            os << (r ? "; " : "");
            for (std::size_t c = 0; c < m.cols_; ++c)
                os << (c ? ", " : "") << m(r, c);
        }
        return os << "]";
    }

private:
    std::size_t rows_, cols_;
    std::vector<K> e_;
};

} // namespace adhm
