#pragma once

#include <array>
#include <vector>

#include "adhmkit/adhm.hpp"
#include "adhmkit/forms.hpp"
#include "adhmkit/linalg.hpp"
#include "adhmkit/matrix.hpp"
#include "adhmkit/subspace.hpp"

namespace adhm {
namespace current {

// Degree-truncated current vectors and matrices: elements of
// V_d = T ⊗ K[z]/(z^{d+1}) with T = K^2, and of g_d = sl_2 ⊗ K[z]/(z^{d+1}).

template <class K>
struct CurrentVec {
    int d = 0;
    std::vector<std::array<K, 2>> coeffs; // length d+1

    static CurrentVec zero(int d)
    {
        CurrentVec v;
        v.d = d;
        v.coeffs.assign(static_cast<std::size_t>(d) + 1, {K(0), K(0)});
        return v;
    }
    // e_c z^n (c = 0 or 1).
    static CurrentVec basis(int d, int c, int n)
    {
        CurrentVec v = zero(d);
        v.coeffs[static_cast<std::size_t>(n)][static_cast<std::size_t>(c)] = K(1);
        return v;
    }

    bool is_zero() const
    {
        for (const auto& c : coeffs)
            if (!(c[0] == K(0)) || !(c[1] == K(0)))
                return false;
        return true;
    }

    std::vector<K> flat() const
    {
        std::vector<K> out;
        out.reserve(2 * coeffs.size());
        for (const auto& c : coeffs) {
            out.push_back(c[0]);
            out.push_back(c[1]);
        }
        return out;
    }
    static CurrentVec from_flat(int d, const std::vector<K>& v)
    {
        CurrentVec out = zero(d);
        require(v.size() == 2 * out.coeffs.size(), ErrorKind::DimensionMismatch, "flat size");
        for (std::size_t m = 0; m < out.coeffs.size(); ++m)
            out.coeffs[m] = {v[2 * m], v[2 * m + 1]};
        return out;
    }

    friend bool operator==(const CurrentVec& a, const CurrentVec& b)
    {
        return a.d == b.d && a.coeffs == b.coeffs;
    }
};

template <class K>
struct CurrentMat {
    int d = 0;
    std::vector<Matrix<K>> coeffs; // length d+1, each 2x2 traceless

    static CurrentMat zero(int d)
    {
        CurrentMat m;
        m.d = d;
        m.coeffs.assign(static_cast<std::size_t>(d) + 1, Matrix<K>(2, 2));
        return m;
    }

    void validate() const
    {
        require(static_cast<int>(coeffs.size()) == d + 1, ErrorKind::DimensionMismatch,
                "coefficient count");
        for (const auto& c : coeffs)
            require(c.trace() == K(0), ErrorKind::InvariantViolation, "coefficient not traceless");
    }

    bool is_zero() const
    {
        for (const auto& c : coeffs)
            if (!c.is_zero())
                return false;
        return true;
    }

    // Action on V_d: (xi . v)_m = sum_{a+b=m} xi_a v_b (z^{d+1} truncated).
    CurrentVec<K> apply(const CurrentVec<K>& v) const
    {
        require(v.d == d, ErrorKind::DimensionMismatch, "degree mismatch");
        CurrentVec<K> out = CurrentVec<K>::zero(d);
        for (int a = 0; a <= d; ++a) {
            const Matrix<K>& xa = coeffs[static_cast<std::size_t>(a)];
            if (xa.is_zero())
                continue;
            for (int b = 0; a + b <= d; ++b) {
                const auto& vb = v.coeffs[static_cast<std::size_t>(b)];
                auto& om = out.coeffs[static_cast<std::size_t>(a + b)];
                om[0] += xa(0, 0) * vb[0] + xa(0, 1) * vb[1];
                om[1] += xa(1, 0) * vb[0] + xa(1, 1) * vb[1];
            }
        }
        return out;
    }
};

// Standard sl_2 triple.
template <class K>
Matrix<K> sl2_E()
{
    Matrix<K> m(2, 2);
    m(0, 1) = K(1);
    return m;
}
template <class K>
Matrix<K> sl2_F()
{
    Matrix<K> m(2, 2);
    m(1, 0) = K(1);
    return m;
}
template <class K>
Matrix<K> sl2_H()
{
    Matrix<K> m(2, 2);
    m(0, 0) = K(1);
    m(1, 1) = -K(1);
    return m;
}

// Residue pairing (f, g) = sum_{a+b=d} (f_a, g_b)_T with (e1, e2)_T = 1.
template <class K>
K residue_form(const CurrentVec<K>& f, const CurrentVec<K>& g)
{
    require(f.d == g.d, ErrorKind::DimensionMismatch, "degree mismatch");
    K acc(0);
    for (int a = 0; a <= f.d; ++a) {
        const auto& fa = f.coeffs[static_cast<std::size_t>(a)];
        const auto& gb = g.coeffs[static_cast<std::size_t>(f.d - a)];
        acc += fa[0] * gb[1] - fa[1] * gb[0];
    }
    return acc;
}

// Gram of the residue form on the monomial basis (e_c z^m ordering: flat()).
template <class K>
Matrix<K> residue_gram(int d)
{
    std::size_t n = 2 * (static_cast<std::size_t>(d) + 1);
    Matrix<K> g(n, n);
    for (int m = 0; m <= d; ++m)
        for (int c = 0; c < 2; ++c)
            for (int m2 = 0; m2 <= d; ++m2)
                for (int c2 = 0; c2 < 2; ++c2) {
                    auto u = CurrentVec<K>::basis(d, c, m);
                    auto v = CurrentVec<K>::basis(d, c2, m2);
                    g(static_cast<std::size_t>(2 * m + c), static_cast<std::size_t>(2 * m2 + c2)) =
                        residue_form(u, v);
                }
    return g;
}

template <class K>
int min_deg(const CurrentVec<K>& x)
{
    for (int n = 0; n <= x.d; ++n)
        if (!(x.coeffs[static_cast<std::size_t>(n)][0] == K(0)) ||
            !(x.coeffs[static_cast<std::size_t>(n)][1] == K(0)))
            return n;
    return x.d + 1;
}

// Basis {E z^m, F z^m, H z^m} of g_d, flattened index 3m + (0,1,2).
template <class K>
std::vector<CurrentMat<K>> gd_basis(int d)
{
    std::vector<CurrentMat<K>> out;
    for (int m = 0; m <= d; ++m)
        for (int which = 0; which < 3; ++which) {
            CurrentMat<K> cm = CurrentMat<K>::zero(d);
            cm.coeffs[static_cast<std::size_t>(m)] =
                which == 0 ? sl2_E<K>() : which == 1 ? sl2_F<K>() : sl2_H<K>();
            out.push_back(cm);
        }
    return out;
}

// Matrix of the action map g_d -> V_d, xi -> xi.x, in the flat bases
// (rows: V_d coordinates, cols: g_d basis).
template <class K>
Matrix<K> action_matrix(const CurrentVec<K>& x)
{
    auto basis = gd_basis<K>(x.d);
    Matrix<K> m(2 * (static_cast<std::size_t>(x.d) + 1), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        auto img = basis[c].apply(x).flat();
        for (std::size_t r = 0; r < img.size(); ++r)
            m(r, c) = img[r];
    }
    return m;
}

template <class K>
struct StabilizerBasis {
    int d = 0;
    int min_degree = 0;                  // n = min.deg(x)
    std::vector<CurrentMat<K>> basis;    // (d+1-n) + 3n elements; ordered:
                                         // xi z^m (m = 0..d-n) then sl2 z^m tails
    CurrentMat<K> leading;               // xi with min.deg 0 (zero matrix when x = 0)

    std::size_t dim() const { return basis.size(); }
};

// Rank-1 traceless annihilator of (a, b) != 0: [[-ab, a^2], [-b^2, ab]].
template <class K>
Matrix<K> sl2_annihilator(const K& a, const K& b)
{
    Matrix<K> m(2, 2);
    m(0, 0) = -(a * b);
    m(0, 1) = a * a;
    m(1, 0) = -(b * b);
    m(1, 1) = a * b;
    return m;
}

// Stabilizer subalgebra g_d^x by the constructive lifting: find xi with
// min.deg 0 coefficient annihilating x_n, lift degree by degree (the 2x3
// linear system xi_{m+1} x_n = -(lower terms) is always solvable since sl_2
// moves x_n onto any vector), then append the full sl_2 tail z^{d+1-n}g_d.
// Coefficients beyond the reach of the equations are set to zero.
template <class K>
StabilizerBasis<K> stabilizer(const CurrentVec<K>& x)
{
    int d = x.d;
    StabilizerBasis<K> out;
    out.d = d;
    int n = min_deg(x);
    out.min_degree = n;
    out.leading = CurrentMat<K>::zero(d);

    if (n == d + 1) { // x = 0: everything annihilates
        out.basis = gd_basis<K>(d);
        return out;
    }

    const auto& xn = x.coeffs[static_cast<std::size_t>(n)];
    CurrentMat<K> xi = CurrentMat<K>::zero(d);
    xi.coeffs[0] = sl2_annihilator(xn[0], xn[1]);

    // Inductive lifting: for m >= 1 (with m + n <= d) solve
    //   xi_m x_n = -(xi_{m-1} x_{n+1} + ... + xi_0 x_{n+m}).
    for (int m = 1; m + n <= d; ++m) {
        std::array<K, 2> rhs{K(0), K(0)};
        for (int l = 0; l < m; ++l) {
            const Matrix<K>& xl = xi.coeffs[static_cast<std::size_t>(l)];
            const auto& xc = x.coeffs[static_cast<std::size_t>(n + m - l)];
            rhs[0] -= xl(0, 0) * xc[0] + xl(0, 1) * xc[1];
            rhs[1] -= xl(1, 0) * xc[0] + xl(1, 1) * xc[1];
        }
        // Solve for traceless xi_m = alpha E + beta F + gamma H with
        // xi_m (a,b)^T = rhs; deterministic: first echelon solution.
        Matrix<K> sys(2, 3);
        // E(a,b) = (b,0); F(a,b) = (0,a); H(a,b) = (a,-b)
        sys(0, 0) = xn[1];
        sys(1, 1) = xn[0];
        sys(0, 2) = xn[0];
        sys(1, 2) = -xn[1];
        auto sol = solve_linear(sys, Matrix<K>::column({rhs[0], rhs[1]}));
        require(sol.has_value(), ErrorKind::Inconsistent, "stabilizer lifting failed");
        Matrix<K> xm(2, 2);
        xm = (*sol)(0, 0) * sl2_E<K>() + (*sol)(1, 0) * sl2_F<K>() + (*sol)(2, 0) * sl2_H<K>();
        xi.coeffs[static_cast<std::size_t>(m)] = xm;
    }
    out.leading = xi;

    // xi z^m for m = 0..d-n (shift truncates).
    for (int m = 0; m <= d - n; ++m) {
        CurrentMat<K> sh = CurrentMat<K>::zero(d);
        for (int a = 0; a + m <= d; ++a)
            sh.coeffs[static_cast<std::size_t>(a + m)] = xi.coeffs[static_cast<std::size_t>(a)];
        out.basis.push_back(sh);
    }
    // sl_2 z^m for m = d+1-n .. d.
    for (int m = d + 1 - n; m <= d; ++m)
        for (int which = 0; which < 3; ++which) {
            CurrentMat<K> cm = CurrentMat<K>::zero(d);
            cm.coeffs[static_cast<std::size_t>(m)] =
                which == 0 ? sl2_E<K>() : which == 1 ? sl2_F<K>() : sl2_H<K>();
            out.basis.push_back(cm);
        }
    return out;
}

// Stabilizer as a subspace of g_d in the flat (E,F,H) z^m coordinates.
template <class K>
Subspace<K> stabilizer_subspace(const StabilizerBasis<K>& st)
{
    std::size_t cols = 3 * (static_cast<std::size_t>(st.d) + 1);
    Matrix<K> rows(st.basis.size(), cols);
    for (std::size_t r = 0; r < st.basis.size(); ++r)
        for (int m = 0; m <= st.d; ++m) {
            const Matrix<K>& c = st.basis[r].coeffs[static_cast<std::size_t>(m)];
            rows(r, static_cast<std::size_t>(3 * m + 0)) = c(0, 1);  // E coefficient
            rows(r, static_cast<std::size_t>(3 * m + 1)) = c(1, 0);  // F coefficient
            rows(r, static_cast<std::size_t>(3 * m + 2)) = c(0, 0);  // H coefficient
        }
    return Subspace<K>::span(rows);
}

struct StratumData {
    int min_degree;
    std::size_t orbit_dim;
    std::size_t stratum_dim;
};

// Orbit dimension = rank of the action map; the min.deg stratum has the
// same dimension (modality 0).
template <class K>
StratumData stratum_data(const CurrentVec<K>& x)
{
    int n = min_deg(x);
    std::size_t r = rank(action_matrix(x));
    std::size_t expected = 2 * (static_cast<std::size_t>(x.d) + 1 - static_cast<std::size_t>(n));
    require(r == expected, ErrorKind::InvariantViolation, "orbit rank != 2(d+1-n)");
    return {n, r, expected};
}

template <class K>
std::size_t orbit_tangent_rank(const CurrentVec<K>& x)
{
    return rank(action_matrix(x));
}

// Moment values (1/2 (xi_a . v, v))_a over the stabilizer basis of x.
template <class K>
std::vector<K> mu_x_eval(const StabilizerBasis<K>& st, const CurrentVec<K>& v)
{
    require(st.d == v.d, ErrorKind::DimensionMismatch, "degree mismatch");
    std::vector<K> out;
    out.reserve(st.basis.size());
    K half = K(1) / K(2);
    for (const auto& xi : st.basis)
        out.push_back(half * residue_form(xi.apply(v), v));
    return out;
}

template <class K>
std::vector<K> mu_x_eval(const CurrentVec<K>& x, const CurrentVec<K>& v)
{
    return mu_x_eval(stabilizer(x), v);
}

// The subspace z^{floor((n-1)/2)+1} K[z] e1 + z^{floor(d/2)+1} V_d  of V_d
// (for n = 0 the first exponent is 0).
template <class K>
Subspace<K> claimed_fiber(int d, int n)
{
    require(0 <= n && n <= d + 1, ErrorKind::DimensionMismatch, "n out of range");
    int e1_start = n == 0 ? 0 : (n - 1) / 2 + 1;
    int full_start = d / 2 + 1;
    std::vector<std::vector<K>> rows;
    for (int m = e1_start; m <= d; ++m)
        rows.push_back(CurrentVec<K>::basis(d, 0, m).flat());
    for (int m = full_start; m <= d; ++m)
        rows.push_back(CurrentVec<K>::basis(d, 1, m).flat());
    Matrix<K> mat(rows.size(), 2 * (static_cast<std::size_t>(d) + 1));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            mat(r, c) = rows[r][c];
    return Subspace<K>::span(mat);
}

template <class K>
struct NilpotentEmbedding {
    Matrix<K> b;                      // multiplication by z on V_d
    BilinearForm<K> form;             // residue symplectic form
    std::vector<Matrix<K>> images;    // action matrices of the g_d basis
    std::size_t commutant_sp_dim = 0; // dim of Lie(Sp(V)^B)
};

// V = V_d with the residue form; B = z-multiplication. Asserts that the
// anti-self-adjoint commutant of B equals the embedded g_d.
template <class K>
NilpotentEmbedding<K> generic_nilpotent_embedding(int d)
{
    std::size_t n = 2 * (static_cast<std::size_t>(d) + 1);
    NilpotentEmbedding<K> out;
    out.form = BilinearForm<K>{FormKind::Alternating, residue_gram<K>(d)};
    out.form.validate();

    // z-multiplication in the flat basis.
    Matrix<K> b(n, n);
    for (int m = 0; m + 1 <= d; ++m)
        for (int c = 0; c < 2; ++c)
            b(static_cast<std::size_t>(2 * (m + 1) + c), static_cast<std::size_t>(2 * m + c)) =
                K(1);
    out.b = b;
    require(is_self_adjoint(b, out.form), ErrorKind::InvariantViolation,
            "z-multiplication must be self-adjoint");

    // Embedded g_d basis as V_d-endomorphisms.
    auto basis = gd_basis<K>(d);
    Matrix<K> embedded(basis.size(), n * n);
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
        Matrix<K> m(n, n);
        for (int mm = 0; mm <= d; ++mm)
            for (int c = 0; c < 2; ++c) {
                auto img = basis[idx].apply(CurrentVec<K>::basis(d, c, mm)).flat();
                for (std::size_t r = 0; r < n; ++r)
                    m(r, static_cast<std::size_t>(2 * mm + c)) = img[r];
            }
        out.images.push_back(m);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c2 = 0; c2 < n; ++c2)
                embedded(idx, r * n + c2) = m(r, c2);
    }

    // Linear system for M: [M, B] = 0 and M + M* = 0.
    Matrix<K> gi = out.form.gram_inverse();
    Matrix<K> sys(2 * n * n, n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t col = r * n + c;
            // [M,B]_{a,b} = sum M_{a,c} B_{c,b} - B_{a,r} M_{r,b}
            for (std::size_t bcol = 0; bcol < n; ++bcol) {
                if (!(b(c, bcol) == K(0)))
                    sys(r * n + bcol, col) += b(c, bcol);
                if (!(b(bcol, r) == K(0)))
                    sys(bcol * n + c, col) -= b(bcol, r);
            }
            // (M + G^-1 M^T G)_{a,b}
            sys(n * n + r * n + c, col) += K(1);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t bb = 0; bb < n; ++bb)
                    sys(n * n + a * n + bb, col) += gi(a, c) * out.form.gram(r, bb);
        }
    Matrix<K> comm = kernel_basis(sys);
    out.commutant_sp_dim = comm.rows();
    Subspace<K> commutant = Subspace<K>::span(comm);
    Subspace<K> image = Subspace<K>::span(embedded);
    require(commutant == image, ErrorKind::InvariantViolation,
            "Lie(Sp(V)^B) differs from the embedded current algebra");
    return out;
}

} // namespace current
} // namespace adhm
