#pragma once

#include <vector>

#include "adhmkit/adhm.hpp"
#include "adhmkit/prng.hpp"

namespace adhm {

using QMat = Matrix<Rational>;

// Cayley transform of a form-compatible generator: for A with A^T G = -G A
// (so A in the Lie algebra), (I - A)(I + A)^{-1} preserves the form. Used to
// produce rational elements of O(V) and Sp(V).
inline std::optional<QMat> cayley_form_preserving(const QMat& a, const BilinearForm<Rational>& form)
{
    QMat id = QMat::identity(a.rows());
    auto inv_part = inverse(id + a);
    if (!inv_part)
        return std::nullopt;
    QMat g = (id - a) * *inv_part;
    if (!preserves_form(g, form))
        return std::nullopt;
    return g;
}

// Random Lie-algebra element for the form: X with X* = -X.
inline QMat random_anti_self_adjoint(SplitMix64& rng, const BilinearForm<Rational>& form, long mag)
{
    std::size_t n = form.dim();
    QMat raw(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            raw(r, c) = rng.small_rational(mag);
    // Project: X = (raw - raw*) / 2.
    QMat x = raw - adjoint_endo(raw, form);
    QMat half = Rational(1, 2) * x;
    return half;
}

inline QMat random_form_preserving(SplitMix64& rng, const BilinearForm<Rational>& form, long mag = 1)
{
    for (int attempt = 0; attempt < 32; ++attempt) {
        QMat a = random_anti_self_adjoint(rng, form, mag);
        auto g = cayley_form_preserving(a, form);
        if (g)
            return *g;
    }
    raise(ErrorKind::GenericityFailure, "no invertible Cayley candidate");
}

// Regular USp-type sample: k one-dimensional blocks with distinct rational
// B1 eigenvalues, random B2 scalars, random nonzero framing rows, j = i*;
// every such block solves the moment equation, and the assembled datum is
// regular. Optionally conjugated by a random orthogonal matrix.
inline SoDatum<Rational> random_regular_usp(std::size_t k, std::size_t dim_w, SplitMix64& rng,
                                            bool conjugate = false)
{
    require(dim_w % 2 == 0, ErrorKind::DimensionMismatch, "USp data need even dimW");
    BilinearForm<Rational> fw = standard_symplectic<Rational>(dim_w);
    std::vector<SoDatum<Rational>> blocks;
    // Distinct small integers, deterministically spread.
    std::vector<long> eig;
    long cur = rng.small_int(3);
    for (std::size_t l = 0; l < k; ++l) {
        eig.push_back(cur);
        cur += 1 + static_cast<long>(rng.below(2));
    }

    for (std::size_t l = 0; l < k; ++l) {
        QMat b1{{Rational(eig[l])}};
        QMat b2{{rng.small_rational(3)}};
        QMat i(1, dim_w);
        bool nonzero = false;
        while (!nonzero) {
            for (std::size_t c = 0; c < dim_w; ++c) {
                i(0, c) = Rational(rng.small_int(2));
                if (!i(0, c).is_zero())
                    nonzero = true;
            }
        }
        blocks.push_back(SoDatum<Rational>::make(b1, b2, i, standard_orthogonal<Rational>(1), fw));
    }
    SoDatum<Rational> out = direct_sum(blocks);
    if (conjugate) {
        QMat g = random_form_preserving(rng, out.form_v);
        out = act(g, out);
    }
    return out;
}

// Regular GL-type sample built the same way (j rows chosen in the kernel of
// the i row so each 1-dim block solves the moment equation).
inline AdhmDatum<Rational> random_regular_gl(std::size_t k, std::size_t dim_w, SplitMix64& rng,
                                             long eigen_offset = 0)
{
    require(dim_w >= 2, ErrorKind::DimensionMismatch, "need dimW >= 2");
    std::vector<AdhmDatum<Rational>> blocks;
    for (std::size_t l = 0; l < k; ++l) {
        QMat b1{{Rational(eigen_offset + static_cast<long>(l))}};
        QMat b2{{rng.small_rational(3)}};
        QMat i(1, dim_w), j(dim_w, 1);
        while (true) {
            bool inz = false;
            for (std::size_t c = 0; c < dim_w; ++c) {
                i(0, c) = Rational(rng.small_int(2));
                inz = inz || !i(0, c).is_zero();
            }
            if (!inz)
                continue;
            // j column in Ker(i), nonzero: random kernel combination.
            Matrix<Rational> kb = kernel_basis(i);
            QMat col(dim_w, 1);
            bool jnz = false;
            for (std::size_t r = 0; r < kb.rows(); ++r) {
                Rational c = Rational(rng.small_int(2));
                if (!c.is_zero())
                    jnz = true;
                for (std::size_t cc = 0; cc < dim_w; ++cc)
                    col(cc, 0) += c * kb(r, cc);
            }
            if (!jnz)
                continue;
            j = col;
            break;
        }
        blocks.push_back({b1, b2, i, j});
    }
    return direct_sum(blocks);
}

} // namespace adhm
