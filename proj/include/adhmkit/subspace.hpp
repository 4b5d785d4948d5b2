#pragma once

#include <vector>

#include "adhmkit/linalg.hpp"
#include "adhmkit/matrix.hpp"

namespace adhm {

// Linear subspace of K^n held as a reduced row-echelon basis (rows = basis
// vectors, pivots strictly increasing). The representation is canonical, so
// subspace equality is matrix equality.
template <class K>
class Subspace {
public:
    Subspace() : ambient_(0) {}
    explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

    static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim); }
    static Subspace full(std::size_t ambient_dim)
    {
        Subspace s(ambient_dim);
        s.basis_ = Matrix<K>::identity(ambient_dim);
        return s;
    }
    // Rows of `vectors` span the subspace.
    static Subspace span(const Matrix<K>& vectors)
    {
        Subspace s(vectors.cols());
        Matrix<K> m = vectors;
        auto pivots = rref_in_place(m);
        s.basis_ = m.submatrix(0, 0, pivots.size(), m.cols());
        return s;
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix<K>& basis() const { return basis_; }

    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_; }

    bool contains(const std::vector<K>& v) const
    {
        require(v.size() == ambient_, ErrorKind::DimensionMismatch, "vector/ambient mismatch");
        std::vector<K> w = v;
        for (std::size_t r = 0; r < basis_.rows(); ++r) {
            // Pivot column of row r = first nonzero entry (leading one).
            std::size_t pc = 0;
            while (pc < ambient_ && basis_(r, pc) == K(0))
                ++pc;
            if (pc == ambient_)
                continue;
            const K& f = w[pc];
            if (f == K(0))
                continue;
            for (std::size_t c = pc; c < ambient_; ++c)
                w[c] -= f * basis_(r, c);
        }
        for (const auto& x : w)
            if (!(x == K(0)))
                return false;
        return true;
    }

    bool contains(const Subspace& other) const
    {
        for (std::size_t r = 0; r < other.basis_.rows(); ++r)
            if (!contains(other.basis_.row(r)))
                return false;
        return true;
    }

    friend Subspace operator+(const Subspace& a, const Subspace& b)
    {
        require(a.ambient_ == b.ambient_, ErrorKind::DimensionMismatch, "ambient mismatch");
        return span(Matrix<K>::vstack(a.basis_, b.basis_));
    }

    friend bool operator==(const Subspace& a, const Subspace& b)
    {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    // Image of the subspace under a square operator.
    Subspace image(const Matrix<K>& op) const
    {
        require(op.rows() == op.cols() && op.cols() == ambient_, ErrorKind::DimensionMismatch,
                "operator/ambient mismatch");
        return span(basis_ * op.transpose());
    }

private:
    std::size_t ambient_;
    Matrix<K> basis_;
};

// Smallest subspace containing `seed` and stable under each operator:
// iterate image spans until the dimension stops growing.
template <class K>
Subspace<K> invariant_closure(const Subspace<K>& seed, const std::vector<Matrix<K>>& operators)
{
    for (const auto& op : operators)
        require(op.rows() == op.cols() && op.rows() == seed.ambient_dim(),
                ErrorKind::DimensionMismatch, "closure operator shape");
    Subspace<K> cur = seed;
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& op : operators) {
            Subspace<K> next = cur + cur.image(op);
            if (next.dim() > cur.dim()) {
                cur = next;
                grew = true;
            }
        }
    }
    return cur;
}

// Kernel of a (rows x cols) matrix as a subspace of K^cols.
template <class K>
Subspace<K> kernel_subspace(const Matrix<K>& a)
{
    Subspace<K> s = Subspace<K>::span(kernel_basis(a));
    return s;
}

} // namespace adhm
