#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "adhmkit/selftensor.hpp"

namespace adhm {

// --- S^2 W and Lambda^2 W inside Wt = W (x) W ---------------------------------

// Basis rows of S^2 W (pairs a <= b: w_a w_b + w_b w_a, diagonal w_a w_a) and
// Lambda^2 W (pairs a < b: w_a w_b - w_b w_a) in Wt coordinates.
inline QMatrix sym2_basis(const TensorShape& sh)
{
    std::size_t n = sh.dim_w;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            pairs.push_back({a, b});
    QMatrix m(pairs.size(), sh.wt_dim());
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        auto [a, b] = pairs[r];
        if (a == b) {
            m(r, sh.idx_ww2(a, a)) = Rational(1);
        } else {
            m(r, sh.idx_ww2(a, b)) = Rational(1);
            m(r, sh.idx_ww2(b, a)) = Rational(1);
        }
    }
    return m;
}

inline QMatrix ext2_basis(const TensorShape& sh)
{
    std::size_t n = sh.dim_w;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            pairs.push_back({a, b});
    QMatrix m(pairs.size(), sh.wt_dim());
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        auto [a, b] = pairs[r];
        m(r, sh.idx_ww2(a, b)) = Rational(1);
        m(r, sh.idx_ww2(b, a)) = Rational(-1);
    }
    return m;
}

// --- V_S and V_E -------------------------------------------------------------

// Invariant closures of the symmetric and antisymmetric framing images,
// checked against their closed forms: in the frame basis V_S is spanned by
// the four plane columns plus Delta^+ W_0 per block, V_E by the Delta^- W_0
// columns.
inline std::pair<Subspace<Rational>, Subspace<Rational>> vs_ve(const SelfTensorResult& r)
{
    std::size_t vt = r.shape.vt_dim();
    auto closure_of = [&](const QMatrix& wbasis) {
        QMatrix seeds = r.datum.i * wbasis.transpose(); // columns = images
        Subspace<Rational> seed = Subspace<Rational>::span(seeds.transpose());
        return invariant_closure(seed, {r.datum.b1, r.datum.b2});
    };
    Subspace<Rational> vs = closure_of(sym2_basis(r.shape));
    Subspace<Rational> ve = closure_of(ext2_basis(r.shape));

    auto coord_subspace = [&](const std::vector<std::size_t>& cols) {
        QMatrix rows(cols.size(), vt);
        for (std::size_t k = 0; k < cols.size(); ++k)
            rows(k, cols[k]) = Rational(1);
        return Subspace<Rational>::span(rows);
    };
    require(vs == coord_subspace(r.vs_columns()), ErrorKind::ClosedFormMismatch,
            "V_S closure differs from its closed form");
    require(ve == coord_subspace(r.ve_columns()), ErrorKind::ClosedFormMismatch,
            "V_E closure differs from its closed form");
    return {vs, ve};
}

// --- restrictions -------------------------------------------------------------

// Restriction of the limit datum to (span of frame columns `v_cols`, span of
// `w_basis` rows in Wt). Containment failures throw.
inline AdhmDatum<Rational> restrict_datum(const SelfTensorResult& r,
                                          const std::vector<std::size_t>& v_cols,
                                          const QMatrix& w_basis)
{
    std::size_t vt = r.shape.vt_dim();
    std::vector<long> pos(vt, -1);
    for (std::size_t k = 0; k < v_cols.size(); ++k)
        pos[v_cols[k]] = static_cast<long>(k);

    auto restrict_endo = [&](const QMatrix& m) {
        QMatrix out(v_cols.size(), v_cols.size());
        for (std::size_t c = 0; c < v_cols.size(); ++c)
            for (std::size_t row = 0; row < vt; ++row) {
                const Rational& val = m(row, v_cols[c]);
                if (val.is_zero())
                    continue;
                require(pos[row] >= 0, ErrorKind::ContainmentViolation,
                        "endomorphism leaves the subspace");
                out(static_cast<std::size_t>(pos[row]), c) = val;
            }
        return out;
    };

    AdhmDatum<Rational> out;
    out.b1 = restrict_endo(r.datum.b1);
    out.b2 = restrict_endo(r.datum.b2);

    QMatrix img = r.datum.i * w_basis.transpose();
    out.i = QMatrix(v_cols.size(), w_basis.rows());
    for (std::size_t c = 0; c < w_basis.rows(); ++c)
        for (std::size_t row = 0; row < vt; ++row) {
            const Rational& val = img(row, c);
            if (val.is_zero())
                continue;
            require(pos[row] >= 0, ErrorKind::ContainmentViolation,
                    "framing image escapes the subspace");
            out.i(static_cast<std::size_t>(pos[row]), c) = val;
        }

    out.j = QMatrix(w_basis.rows(), v_cols.size());
    for (std::size_t c = 0; c < v_cols.size(); ++c) {
        QMatrix y(r.shape.wt_dim(), 1);
        for (std::size_t row = 0; row < r.shape.wt_dim(); ++row)
            y(row, 0) = r.datum.j(row, v_cols[c]);
        auto coords = solve_linear(w_basis.transpose(), y);
        require(coords.has_value(), ErrorKind::ContainmentViolation,
                "co-framing image escapes the W-subspace");
        for (std::size_t row = 0; row < w_basis.rows(); ++row)
            out.j(row, c) = (*coords)(row, 0);
    }
    return out;
}

inline AdhmDatum<Rational> restrict_sym(const SelfTensorResult& r)
{
    vs_ve(r); // asserts the closed forms first
    return restrict_datum(r, r.vs_columns(), sym2_basis(r.shape));
}

inline AdhmDatum<Rational> restrict_ext(const SelfTensorResult& r)
{
    vs_ve(r);
    return restrict_datum(r, r.ve_columns(), ext2_basis(r.shape));
}

// The limit datum is the direct sum of its two restrictions after the block
// base change (frame columns reordered to V_S then V_E, Wt re-expressed in
// the S^2 + Lambda^2 basis).
inline bool reconstructs_from_restrictions(const SelfTensorResult& r)
{
    AdhmDatum<Rational> s = restrict_sym(r);
    AdhmDatum<Rational> e = restrict_ext(r);
    // Two-sided direct sum (V and W both split): block diagonals with no
    // cross terms.
    AdhmDatum<Rational> sum;
    sum.b1 = QMatrix::block_diag(s.b1, e.b1);
    sum.b2 = QMatrix::block_diag(s.b2, e.b2);
    sum.i = QMatrix::block_diag(s.i, e.i);
    sum.j = QMatrix::block_diag(s.j, e.j);

    std::vector<std::size_t> order = r.vs_columns();
    for (auto c : r.ve_columns())
        order.push_back(c);
    QMatrix pv(r.shape.vt_dim(), r.shape.vt_dim());
    for (std::size_t k = 0; k < order.size(); ++k)
        pv(order[k], k) = Rational(1);
    QMatrix mw = Matrix<Rational>::vstack(sym2_basis(r.shape), ext2_basis(r.shape)).transpose();

    auto pvi = inverse(pv);
    auto mwi = inverse(mw);
    if (!pvi || !mwi)
        return false;
    AdhmDatum<Rational> reexpressed;
    reexpressed.b1 = *pvi * r.datum.b1 * pv;
    reexpressed.b2 = *pvi * r.datum.b2 * pv;
    reexpressed.i = *pvi * r.datum.i * mw;
    reexpressed.j = *mwi * r.datum.j * pv;
    return reexpressed == sum;
}

// --- intertwiners -------------------------------------------------------------

// Invertible g with g B_a = B'_a g, g i = i', j = j' g: solves the affine
// intertwiner system and searches the solution space for an invertible
// element. Used for frame-independence checks.
inline std::optional<QMatrix> find_intertwiner(const AdhmDatum<Rational>& a,
                                               const AdhmDatum<Rational>& b,
                                               std::uint64_t seed = 1)
{
    if (a.dim_v() != b.dim_v() || a.dim_w() != b.dim_w())
        return std::nullopt;
    std::size_t k = a.dim_v(), n = a.dim_w();
    std::size_t rows = 2 * k * k + k * n + n * k;
    QMatrix sys(rows, k * k);
    QMatrix rhs(rows, 1);
    std::size_t r0 = 0;
    // g B - B' g = 0 for B in {B1, B2}.
    auto add_commute = [&](const QMatrix& ba, const QMatrix& bb) {
        for (std::size_t rr = 0; rr < k; ++rr)
            for (std::size_t cc = 0; cc < k; ++cc) {
                for (std::size_t s = 0; s < k; ++s) {
                    sys(r0 + rr * k + cc, rr * k + s) += ba(s, cc);
                    sys(r0 + rr * k + cc, s * k + cc) -= bb(rr, s);
                }
            }
        r0 += k * k;
    };
    add_commute(a.b1, b.b1);
    add_commute(a.b2, b.b2);
    // g i_a = i_b.
    for (std::size_t v = 0; v < k; ++v)
        for (std::size_t w = 0; w < n; ++w) {
            for (std::size_t s = 0; s < k; ++s)
                sys(r0 + v * n + w, v * k + s) += a.i(s, w);
            rhs(r0 + v * n + w, 0) = b.i(v, w);
        }
    r0 += k * n;
    // j_b g = j_a.
    for (std::size_t w = 0; w < n; ++w)
        for (std::size_t v = 0; v < k; ++v) {
            for (std::size_t s = 0; s < k; ++s)
                sys(r0 + w * k + v, s * k + v) += b.j(w, s);
            rhs(r0 + w * k + v, 0) = a.j(w, v);
        }

    auto particular = solve_linear(sys, rhs);
    if (!particular)
        return std::nullopt;
    QMatrix null = kernel_basis(sys);
    auto assemble = [&](const std::vector<Rational>& coeffs) {
        QMatrix g(k, k);
        for (std::size_t idx = 0; idx < k * k; ++idx)
            g(idx / k, idx % k) = (*particular)(idx, 0);
        for (std::size_t nb = 0; nb < null.rows(); ++nb)
            for (std::size_t idx = 0; idx < k * k; ++idx)
                g(idx / k, idx % k) += coeffs[nb] * null(nb, idx);
        return g;
    };
    std::vector<Rational> zero(null.rows(), Rational(0));
    QMatrix g = assemble(zero);
    if (inverse(g))
        return g;
    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<Rational> c(null.rows());
        for (auto& x : c)
            x = Rational(rng.small_int(3));
        g = assemble(c);
        if (inverse(g))
            return g;
    }
    return std::nullopt;
}

// --- the exceptional isomorphism pipelines ------------------------------------

namespace detail {

inline BilinearForm<Rational> frame_form_on_columns(const SelfTensorResult& r,
                                                    const std::vector<std::size_t>& cols)
{
    QMatrix g(cols.size(), cols.size());
    for (std::size_t a = 0; a < cols.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b)
            g(a, b) = r.form_vt.gram(cols[a], cols[b]);
    BilinearForm<Rational> f{FormKind::Alternating, g};
    f.validate();
    return f;
}

} // namespace detail

// rank-2 symplectic input -> rank-3 orthogonal output via the symmetric
// square: restriction of the self-tensor limit to (V_S, S^2 W).
inline SoDatum<Rational> iso_so3(const SoDatum<Rational>& y)
{
    require(y.dim_w() == 2 && y.form_w.kind == FormKind::Alternating, ErrorKind::Unsupported,
            "so3 pipeline needs dimW = 2 symplectic");
    SelfTensorResult r = self_tensor(y);
    AdhmDatum<Rational> sym = restrict_sym(r);
    BilinearForm<Rational> form_vs = detail::frame_form_on_columns(r, r.vs_columns());
    BilinearForm<Rational> form_s2 = restrict_form(r.form_wt, sym2_basis(r.shape));
    form_s2.validate();
    SoDatum<Rational> out{sym, form_vs, form_s2};
    out.validate();
    return out;
}

// rank-4 symplectic input -> rank-5 orthogonal output: restriction to
// (V_E, Ker omega) where omega : Lambda^2 W -> C is the symplectic form.
inline SoDatum<Rational> iso_so5(const SoDatum<Rational>& y)
{
    require(y.dim_w() == 4 && y.form_w.kind == FormKind::Alternating, ErrorKind::Unsupported,
            "so5 pipeline needs dimW = 4 symplectic");
    require(y.form_v.kind == FormKind::Symmetric, ErrorKind::Unsupported,
            "so5 pipeline needs an orthogonal V");
    SelfTensorResult r = self_tensor(y);
    vs_ve(r);

    // omega as a functional on the Lambda^2 basis rows (a < b) -> G_W(a, b).
    QMatrix eb = ext2_basis(r.shape);
    QMatrix omega_row(1, eb.rows());
    {
        std::size_t idx = 0;
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = a + 1; b < 4; ++b)
                omega_row(0, idx++) = r.form_w.gram(a, b);
    }
    QMatrix ker = kernel_basis(omega_row); // rows = coords in the ext2 basis
    require(ker.rows() == 5, ErrorKind::InvariantViolation, "Ker(omega) must be 5-dim");
    QMatrix ker_wt = ker * eb; // rows = Wt coordinates

    AdhmDatum<Rational> restricted = restrict_datum(r, r.ve_columns(), ker_wt);
    BilinearForm<Rational> form_ve = detail::frame_form_on_columns(r, r.ve_columns());
    BilinearForm<Rational> form_ker = restrict_form(r.form_wt, ker_wt);
    form_ker.validate();
    SoDatum<Rational> out{restricted, form_ve, form_ker};
    out.validate();
    return out;
}

// rank-4 input -> rank-6 orthogonal output: restriction to (V_E, Lambda^2 W)
// for a seeded symplectic form omega on W compatible with the framing
// (omega(f_l, .) = -i_l(.), which pins omega(e_l, f_l) = 1 alongside
// i_l(e_l) = 1). For USp-type inputs the input W-form solves the constraints;
// the seed explores the residual affine freedom. Draws failing nondegeneracy
// or the framed checks are retried; GenericityFailure after 32 attempts.
struct So6Result {
    SoDatum<Rational> output;
    QMatrix omega;        // the W-form used
    std::uint64_t seed;   // seed that produced it
    int attempts = 0;
    Rational pfaffian;    // of omega (volume normalization is recorded, not forced)
};

namespace detail {

// Core of the rank-6 pipeline; expects B1 already diagonal in coordinates
// where the fixed orthogonal structure on V is the standard one (that
// normalization is what makes the omega constraints solvable).
inline So6Result iso_so6_core(const AdhmDatum<Rational>& x, std::uint64_t seed)
{
    require(moment_map_gl(x).is_zero(), ErrorKind::InvariantViolation,
            "so6 pipeline needs a moment-fiber datum");
    require(is_regular(x), ErrorKind::NotStable, "so6 pipeline needs a regular datum");
    std::size_t k = x.dim_v();

    // Linear constraints on the alternating form: omega(f_l, w) = -i_l(w).
    // Unknowns: omega_{ab}, a < b (6 of them).
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b)
            slots.push_back({a, b});
    QMatrix sys(4 * k, 6), rhs(4 * k, 1);
    for (std::size_t l = 0; l < k; ++l)
        for (std::size_t c = 0; c < 4; ++c) {
            for (std::size_t s = 0; s < slots.size(); ++s) {
                auto [a, b] = slots[s];
                // omega(f, w_c) = sum_a f_a omega_{a c}; omega_{ba} = -omega_{ab}.
                if (b == c)
                    sys(l * 4 + c, s) += x.j(a, l);
                if (a == c)
                    sys(l * 4 + c, s) -= x.j(b, l);
            }
            rhs(l * 4 + c, 0) = -x.i(l, c);
        }
    auto particular = solve_linear(sys, rhs);
    require(particular.has_value(), ErrorKind::GenericityFailure,
            "framing constraints on omega are inconsistent");
    QMatrix freedom = kernel_basis(sys);

    SplitMix64 rng(seed == 0 ? 0x50f6u : seed);
    Error last(ErrorKind::GenericityFailure, "unset");
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<Rational> coeff(freedom.rows());
        for (auto& cc : coeff)
            cc = attempt == 0 ? Rational(0) : Rational(rng.small_int(3));
        QMatrix omega(4, 4);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            Rational v = (*particular)(s, 0);
            for (std::size_t fr = 0; fr < freedom.rows(); ++fr)
                v += coeff[fr] * freedom(fr, s);
            auto [a, b] = slots[s];
            omega(a, b) = v;
            omega(b, a) = -v;
        }
        BilinearForm<Rational> fw{FormKind::Alternating, omega};
        if (!inverse(omega)) {
            last = Error(ErrorKind::GenericityFailure, "degenerate omega candidate");
            continue;
        }
        try {
            SelfTensorResult r = self_tensor_core(x, &fw);
            vs_ve(r);
            AdhmDatum<Rational> restricted = restrict_datum(r, r.ve_columns(),
                                                            ext2_basis(r.shape));
            BilinearForm<Rational> form_ve = detail::frame_form_on_columns(r, r.ve_columns());
            BilinearForm<Rational> form_l2 = restrict_form(r.form_wt, ext2_basis(r.shape));
            form_l2.validate();
            SoDatum<Rational> out{restricted, form_ve, form_l2};
            out.validate();
            // Pf(omega) from the 4x4 alternating matrix.
            Rational pf = omega(0, 1) * omega(2, 3) - omega(0, 2) * omega(1, 3)
                + omega(0, 3) * omega(1, 2);
            return So6Result{out, omega, seed, attempt + 1, pf};
        } catch (const Error& e) {
            last = e;
        }
    }
    throw Error(ErrorKind::GenericityFailure,
                std::string("no admissible omega after 32 draws (last: ") + last.what() + ")");
}

} // namespace detail

// Plain input: B1 is diagonalized by the bare eigen split and the standard
// orthogonal structure is imposed in those coordinates. The framing
// constraints on omega can be inconsistent for such data (the eigenvector
// scalings are not form-normalized); the framed overload below avoids that.
inline So6Result iso_so6(const AdhmDatum<Rational>& x_in, std::uint64_t seed = 0)
{
    require(x_in.dim_w() == 4, ErrorKind::Unsupported, "so6 pipeline needs dimW = 4");
    auto split = split_distinct(x_in);
    return detail::iso_so6_core(split.datum, seed);
}

// Framed (USp-type) input: the form-normalized split keeps j = i*, so the
// input W-form itself solves the omega constraints and the seed explores the
// residual affine family.
inline So6Result iso_so6(const SoDatum<Rational>& y, std::uint64_t seed = 0)
{
    require(y.dim_w() == 4 && y.form_w.kind == FormKind::Alternating, ErrorKind::Unsupported,
            "so6 pipeline needs dimW = 4 symplectic");
    require(y.form_v.kind == FormKind::Symmetric, ErrorKind::Unsupported,
            "so6 pipeline needs an orthogonal V");
    auto split = split_distinct(y);
    return detail::iso_so6_core(split.datum.datum, seed);
}

} // namespace adhm
