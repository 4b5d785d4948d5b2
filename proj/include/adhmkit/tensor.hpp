#pragma once

#include <vector>

#include "adhmkit/adhm.hpp"
#include "adhmkit/sylvester.hpp"

namespace adhm {

// Index bookkeeping for the tensor target: Vt = V (x) W' + W (x) V' with the
// V (x) W' block first, Wt = W (x) W'. Indices are row-major pairs.
struct TensorShape {
    std::size_t dim_v, dim_w, dim_v2, dim_w2;

    std::size_t vt_dim() const { return dim_v * dim_w2 + dim_w * dim_v2; }
    std::size_t wt_dim() const { return dim_w * dim_w2; }
    std::size_t block1_dim() const { return dim_v * dim_w2; }

    std::size_t idx_vw2(std::size_t v, std::size_t w2) const { return v * dim_w2 + w2; }
    std::size_t idx_wv2(std::size_t w, std::size_t v2) const
    {
        return block1_dim() + w * dim_v2 + v2;
    }
    std::size_t idx_ww2(std::size_t w, std::size_t w2) const { return w * dim_w2 + w2; }
};

namespace detail {

template <class K>
bool is_diagonal(const Matrix<K>& m)
{
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (r != c && !(m(r, c) == K(0)))
                return false;
    return true;
}

// A X - X B + C = 0 with the diagonal fast path (entrywise division by the
// eigenvalue gaps).
template <class K>
Matrix<K> sylvester_or_diag(const Matrix<K>& a, const Matrix<K>& b, const Matrix<K>& c)
{
    if (is_diagonal(a) && is_diagonal(b)) {
        Matrix<K> x(c.rows(), c.cols());
        for (std::size_t r = 0; r < c.rows(); ++r)
            for (std::size_t cc = 0; cc < c.cols(); ++cc) {
                K gap = a(r, r) - b(cc, cc);
                require(!(gap == K(0)), ErrorKind::CommonEigenvalue,
                        "sylvester: shared diagonal eigenvalue");
                x(r, cc) = -(c(r, cc) / gap);
            }
        return x;
    }
    return sylvester_solve(a, b, c);
}

} // namespace detail

// Tensor product of ADHM data. Preconditions: B1 and B1' have disjoint
// spectra, or both cross sources i (x) j' and j (x) i' vanish (the
// set-theoretic extension, which assigns zero cross blocks; note this
// extension is not continuous in the data).
template <class K>
AdhmDatum<K> tensor(const AdhmDatum<K>& x, const AdhmDatum<K>& x2)
{
    x.validate_shapes();
    x2.validate_shapes();
    TensorShape sh{x.dim_v(), x.dim_w(), x2.dim_v(), x2.dim_w()};

    Matrix<K> iw2 = Matrix<K>::identity(sh.dim_w2);
    Matrix<K> iw = Matrix<K>::identity(sh.dim_w);

    Matrix<K> a = Matrix<K>::kron(x.b1, iw2);  // on V (x) W'
    Matrix<K> b = Matrix<K>::kron(iw, x2.b1);  // on W (x) V'
    Matrix<K> cx = Matrix<K>::kron(x.i, x2.j); // W (x) V' -> V (x) W'
    Matrix<K> cy = Matrix<K>::kron(x.j, x2.i); // V (x) W' -> W (x) V'

    Matrix<K> xblk, yblk;
    if (cx.is_zero() && cy.is_zero()) {
        xblk = Matrix<K>(a.rows(), b.rows());
        yblk = Matrix<K>(b.rows(), a.rows());
    } else {
        xblk = detail::sylvester_or_diag(a, b, cx);
        yblk = detail::sylvester_or_diag(b, a, cy);
    }

    AdhmDatum<K> out;
    out.b1 = Matrix<K>::block_diag(a, b);
    out.b2 = Matrix<K>::block_diag(Matrix<K>::kron(x.b2, iw2), Matrix<K>::kron(iw, x2.b2));
    out.b2.paste(0, sh.block1_dim(), xblk);
    out.b2.paste(sh.block1_dim(), 0, yblk);
    out.i = Matrix<K>::vstack(Matrix<K>::kron(x.i, iw2), Matrix<K>::kron(iw, x2.i));
    out.j = Matrix<K>::hstack(Matrix<K>::kron(x.j, iw2), Matrix<K>::kron(iw, x2.j));
    return out;
}

// T(x^vee, x'^vee) = T(x, x')^vee, as exact matrix equality under the
// canonical coordinate identifications of the dual spaces.
template <class K>
bool tensor_dual_check(const AdhmDatum<K>& x, const AdhmDatum<K>& x2)
{
    AdhmDatum<K> lhs = tensor(dual(x), dual(x2));
    AdhmDatum<K> rhs = dual(tensor(x, x2));
    return lhs == rhs;
}

} // namespace adhm
