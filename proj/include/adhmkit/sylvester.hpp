#pragma once

#include "adhmkit/linalg.hpp"
#include "adhmkit/matrix.hpp"

namespace adhm {

// Disjoint-spectrum test over the algebraic closure: gcd of characteristic
// polynomials is constant.
template <class K>
bool spectra_disjoint(const Matrix<K>& a, const Matrix<K>& b)
{
    if (a.rows() == 0 || b.rows() == 0)
        return true;
    Poly<K> g = Poly<K>::gcd(charpoly(a), charpoly(b));
    return g.degree() == 0;
}

// Unique X with A X - X B + C = 0, via the Kronecker-vectorized system
// (I_b ⊗ A - Bᵀ ⊗ I_a) vec(X) = -vec(C), with vec stacking X row-major.
//
// Throws CommonEigenvalue when gcd(char A, char B) is non-constant.
template <class K>
Matrix<K> sylvester_solve(const Matrix<K>& a, const Matrix<K>& b, const Matrix<K>& c)
{
    require(a.is_square() && b.is_square(), ErrorKind::DimensionMismatch,
            "sylvester: A, B must be square");
    require(c.rows() == a.rows() && c.cols() == b.rows(), ErrorKind::DimensionMismatch,
            "sylvester: C shape");
    require(spectra_disjoint(a, b), ErrorKind::CommonEigenvalue,
            "sylvester: A and B share an eigenvalue");

    std::size_t m = a.rows(), n = b.rows();
    if (m == 0 || n == 0)
        return Matrix<K>(m, n);

    // Row-major vec: X_{ij} at index i*n + j. Then (AX)_{ij} = sum_k A_ik X_kj
    // and (XB)_{ij} = sum_k X_ik B_kj give M = A ⊗ I_n - I_m ⊗ Bᵀ.
    Matrix<K> big = Matrix<K>::kron(a, Matrix<K>::identity(n))
        - Matrix<K>::kron(Matrix<K>::identity(m), b.transpose());
    std::vector<K> rhs(m * n, K(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rhs[i * n + j] = -c(i, j);
    auto x = solve_linear(big, Matrix<K>::column(rhs));
    require(x.has_value(), ErrorKind::Inconsistent, "sylvester: vectorized system inconsistent");

    Matrix<K> out(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = (*x)(i * n + j, 0);
    return out;
}

} // namespace adhm
