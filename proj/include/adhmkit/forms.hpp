#pragma once

#include <vector>

#include "adhmkit/linalg.hpp"
#include "adhmkit/matrix.hpp"

namespace adhm {

enum class FormKind { Symmetric, Alternating };

// Nondegenerate bilinear form held by its Gram matrix.
template <class K>
struct BilinearForm {
    FormKind kind = FormKind::Symmetric;
    Matrix<K> gram;

    std::size_t dim() const { return gram.rows(); }

    void validate() const
    {
        require(gram.is_square(), ErrorKind::InvariantViolation, "gram must be square");
        Matrix<K> gt = gram.transpose();
        if (kind == FormKind::Symmetric)
            require(gt == gram, ErrorKind::InvariantViolation, "gram not symmetric");
        else
            require(gt == -gram, ErrorKind::InvariantViolation, "gram not alternating");
        require(inverse(gram).has_value(), ErrorKind::InvariantViolation, "gram singular");
    }

    // (u, v) = u^T G v.
    K pair(const std::vector<K>& u, const std::vector<K>& v) const
    {
        require(u.size() == dim() && v.size() == dim(), ErrorKind::DimensionMismatch,
                "form pairing shape");
        K acc(0);
        for (std::size_t r = 0; r < dim(); ++r) {
            if (u[r] == K(0))
                continue;
            for (std::size_t c = 0; c < dim(); ++c)
                acc += u[r] * gram(r, c) * v[c];
        }
        return acc;
    }

    Matrix<K> gram_inverse() const
    {
        auto gi = inverse(gram);
        require(gi.has_value(), ErrorKind::InvariantViolation, "gram singular");
        return *gi;
    }
};

// Standard symplectic form J = [[0, I],[-I, 0]] on K^{2m}.
template <class K>
BilinearForm<K> standard_symplectic(std::size_t dim)
{
    require(dim % 2 == 0, ErrorKind::DimensionMismatch, "symplectic dim must be even");
    std::size_t m = dim / 2;
    Matrix<K> g(dim, dim);
    for (std::size_t i = 0; i < m; ++i) {
        g(i, m + i) = K(1);
        g(m + i, i) = -K(1);
    }
    return {FormKind::Alternating, g};
}

// Symplectic form on K^2 with (e1, e2) = 1; equals standard_symplectic(2).
template <class K>
BilinearForm<K> symplectic2()
{
    return standard_symplectic<K>(2);
}

template <class K>
BilinearForm<K> standard_orthogonal(std::size_t dim)
{
    return {FormKind::Symmetric, Matrix<K>::identity(dim)};
}

// W = C^3 with hyperbolic pair (e1,e1)=(e2,e2)=0, (e1,e2)=1 plus a unit
// vector (e3,e3)=1.
template <class K>
BilinearForm<K> hyperbolic_unit_form3()
{
    Matrix<K> g(3, 3);
    g(0, 1) = K(1);
    g(1, 0) = K(1);
    g(2, 2) = K(1);
    return {FormKind::Symmetric, g};
}

template <class K>
BilinearForm<K> direct_sum_forms(const BilinearForm<K>& a, const BilinearForm<K>& b)
{
    require(a.kind == b.kind, ErrorKind::DimensionMismatch, "direct sum of mixed form kinds");
    return {a.kind, Matrix<K>::block_diag(a.gram, b.gram)};
}

// Right adjoint of an endomorphism: (Bv, w) = (v, B*w), so B* = G^{-1} B^T G.
template <class K>
Matrix<K> adjoint_endo(const Matrix<K>& b, const BilinearForm<K>& form)
{
    require(b.is_square() && b.rows() == form.dim(), ErrorKind::DimensionMismatch,
            "adjoint_endo shape");
    return form.gram_inverse() * b.transpose() * form.gram;
}

// Right adjoint of i : W -> V, defined by (i(w), v)_V = (w, i*(v))_W; in
// coordinates i* = G_W^{-1} i^T G_V.
template <class K>
Matrix<K> adjoint_hom(const Matrix<K>& i, const BilinearForm<K>& form_w,
                      const BilinearForm<K>& form_v)
{
    require(i.rows() == form_v.dim() && i.cols() == form_w.dim(), ErrorKind::DimensionMismatch,
            "adjoint_hom shape");
    return form_w.gram_inverse() * i.transpose() * form_v.gram;
}

template <class K>
bool is_self_adjoint(const Matrix<K>& b, const BilinearForm<K>& form)
{
    return adjoint_endo(b, form) == b;
}

template <class K>
bool is_anti_self_adjoint(const Matrix<K>& b, const BilinearForm<K>& form)
{
    return adjoint_endo(b, form) == -b;
}

// g preserves the form iff g^T G g = G; these are the allowed datum
// symmetries (Sp(V) or O(V) depending on the kind).
template <class K>
bool preserves_form(const Matrix<K>& g, const BilinearForm<K>& form)
{
    return g.transpose() * form.gram * g == form.gram;
}

// Gram of the restriction to the row span of `basis` (rows = vectors).
template <class K>
BilinearForm<K> restrict_form(const BilinearForm<K>& form, const Matrix<K>& basis)
{
    Matrix<K> g = basis * form.gram * basis.transpose();
    return {form.kind, g};
}

} // namespace adhm
