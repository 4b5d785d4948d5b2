#pragma once

#include <optional>
#include <vector>

#include "adhmkit/prng.hpp"
#include "adhmkit/ratfunc.hpp"
#include "adhmkit/tensor.hpp"

namespace adhm {

using QMatrix = Matrix<Rational>;
using FMatrix = Matrix<RatFunc>;

// --- eigenvalue splitting ---------------------------------------------------

// Base change to B1-eigencoordinates (ascending eigenvalues, deterministic
// eigenvectors). For framed data the eigenbasis is rescaled so the V-form
// becomes the standard orthogonal one; the eigenvector norms must be
// rational squares for that, which holds on the O(V)-orbit of standard
// block data.
template <class D>
struct SplitResult {
    D datum;       // B1 diagonal, eigenvalues ascending
    QMatrix g;     // the applied base change, new = act(g, old)
    std::vector<Rational> eigenvalues;
};

inline SplitResult<AdhmDatum<Rational>> split_distinct(const AdhmDatum<Rational>& x)
{
    auto spec = b1_spectrum(x);
    require(spec.distinct, ErrorKind::NotSplitOverBase,
            "B1 must have distinct rational eigenvalues");
    std::size_t k = x.dim_v();
    QMatrix p(k, k);
    std::vector<Rational> eig;
    for (std::size_t l = 0; l < spec.eigenvalues.size(); ++l) {
        Rational lam = spec.eigenvalues[l].first;
        eig.push_back(lam);
        QMatrix shifted = x.b1;
        for (std::size_t r = 0; r < k; ++r)
            shifted(r, r) -= lam;
        Matrix<Rational> kb = kernel_basis(shifted);
        require(kb.rows() == 1, ErrorKind::NotSplitOverBase, "eigenvalue multiplicity != 1");
        for (std::size_t r = 0; r < k; ++r)
            p(r, l) = kb(0, r);
    }
    auto pinv = inverse(p);
    require(pinv.has_value(), ErrorKind::Inconsistent, "eigenbasis singular");
    SplitResult<AdhmDatum<Rational>> out;
    out.g = *pinv;
    out.datum = act(out.g, x);
    out.eigenvalues = eig;
    return out;
}

inline SplitResult<SoDatum<Rational>> split_distinct(const SoDatum<Rational>& y)
{
    require(y.form_v.kind == FormKind::Symmetric, ErrorKind::Unsupported,
            "splitting needs an orthogonal V-form (self-adjoint B1 on a "
            "symplectic V never has distinct eigenvalues)");
    auto base = split_distinct(y.datum);
    std::size_t k = y.dim_v();
    // Transformed gram P^T G P is diagonal (distinct eigenvalues pair to
    // zero); normalize each eigenvector by the square root of its norm.
    auto pinv = inverse(base.g);
    QMatrix p = *pinv;
    QMatrix gram = p.transpose() * y.form_v.gram * p;
    for (std::size_t l = 0; l < k; ++l)
        for (std::size_t m = 0; m < k; ++m)
            if (l != m)
                require(gram(l, m).is_zero(), ErrorKind::InvariantViolation,
                        "eigenvectors not form-orthogonal");
    for (std::size_t l = 0; l < k; ++l) {
        auto root = gram(l, l).sqrt_exact();
        require(root.has_value() && !root->is_zero(), ErrorKind::NotSplitOverBase,
                "eigenvector norm is not a nonzero rational square");
        for (std::size_t r = 0; r < k; ++r)
            p(r, l) = p(r, l) / *root;
    }
    SplitResult<SoDatum<Rational>> out;
    out.g = *inverse(p);
    out.eigenvalues = base.eigenvalues;
    out.datum = SoDatum<Rational>{act(out.g, y.datum), standard_orthogonal<Rational>(k), y.form_w};
    out.datum.validate();
    return out;
}

// --- block frames ------------------------------------------------------------

// Per-eigenvalue frame (e_l, f_l, W_0^l) of W for a split datum:
// i_l(e_l) = 1, f_l = j(eps_l), and W_0^l a complement of <e_l, f_l> inside
// Ker(i_l) (the form-orthogonal complement in the framed case).
struct BlockFrame {
    std::vector<Rational> eigenvalues;
    std::vector<std::vector<Rational>> e, f; // per block, W-coordinates
    std::vector<QMatrix> w0;                 // per block, rows = basis of W_0^l
    bool framed = false;                     // built with a W-form (j = i*)

    std::size_t blocks() const { return eigenvalues.size(); }
};

namespace detail {

// Deterministic complement of span{f} inside the row space of `kernel`.
inline QMatrix greedy_complement(const std::vector<Rational>& f, const QMatrix& kernel)
{
    std::size_t n = f.size();
    QMatrix acc(1, n);
    for (std::size_t c = 0; c < n; ++c)
        acc(0, c) = f[c];
    std::vector<std::size_t> chosen;
    for (std::size_t r = 0; r < kernel.rows(); ++r) {
        QMatrix trial = Matrix<Rational>::vstack(acc, QMatrix(1, n));
        for (std::size_t c = 0; c < n; ++c)
            trial(trial.rows() - 1, c) = kernel(r, c);
        if (rank(trial) > rank(acc)) {
            acc = trial;
            chosen.push_back(r);
        }
    }
    QMatrix out(chosen.size(), n);
    for (std::size_t idx = 0; idx < chosen.size(); ++idx)
        for (std::size_t c = 0; c < n; ++c)
            out(idx, c) = kernel(chosen[idx], c);
    return out;
}

} // namespace detail

// Frame for a split GL-type datum. `form_w`, when present, switches the
// complement rule to the form-orthogonal one and checks (e_l, f_l)_W = 1.
inline BlockFrame block_frame_split(const AdhmDatum<Rational>& x,
                                    const std::vector<Rational>& eigenvalues,
                                    const BilinearForm<Rational>* form_w)
{
    std::size_t k = x.dim_v(), n = x.dim_w();
    require(moment_map_gl(x).is_zero(), ErrorKind::InvariantViolation,
            "frame needs a moment-fiber datum");
    BlockFrame fr;
    fr.eigenvalues = eigenvalues;
    fr.framed = form_w != nullptr;
    for (std::size_t l = 0; l < k; ++l) {
        QMatrix irow(1, n);
        for (std::size_t c = 0; c < n; ++c)
            irow(0, c) = x.i(l, c);
        require(!irow.is_zero(), ErrorKind::NotStable, "block framing row i_l vanishes");
        std::vector<Rational> f(n);
        bool fnz = false;
        for (std::size_t c = 0; c < n; ++c) {
            f[c] = x.j(c, l);
            fnz = fnz || !f[c].is_zero();
        }
        require(fnz, ErrorKind::DegenerateFrame, "j(eps_l) = 0: no frame");
        auto e = solve_linear(irow, QMatrix{{Rational(1)}});
        require(e.has_value(), ErrorKind::NotStable, "i_l(e) = 1 unsolvable");
        std::vector<Rational> evec = e->col(0);

        // i_l(f_l) = (i j)_{ll} = 0 on the moment fiber; e and f are then
        // independent automatically.
        Rational ifl(0);
        for (std::size_t c = 0; c < n; ++c)
            ifl += irow(0, c) * f[c];
        require(ifl.is_zero(), ErrorKind::DegenerateFrame, "i_l(f_l) != 0");

        QMatrix w0;
        if (form_w) {
            require(form_w->pair(evec, f) == Rational(1), ErrorKind::DegenerateFrame,
                    "(e_l, f_l)_W != 1");
            QMatrix pairings(2, n);
            for (std::size_t c = 0; c < n; ++c) {
                std::vector<Rational> unit(n, Rational(0));
                unit[c] = Rational(1);
                pairings(0, c) = form_w->pair(evec, unit);
                pairings(1, c) = form_w->pair(f, unit);
            }
            w0 = kernel_basis(pairings);
            // W_0 must avoid the plane and sit inside Ker i_l.
            for (std::size_t r = 0; r < w0.rows(); ++r) {
                Rational iw(0);
                for (std::size_t c = 0; c < n; ++c)
                    iw += irow(0, c) * w0(r, c);
                require(iw.is_zero(), ErrorKind::DegenerateFrame,
                        "form complement escapes Ker i_l");
            }
        } else {
            QMatrix keri = kernel_basis(irow);
            w0 = detail::greedy_complement(f, keri);
        }
        require(w0.rows() == n - 2, ErrorKind::DegenerateFrame, "W_0 has wrong dimension");
        fr.e.push_back(evec);
        fr.f.push_back(f);
        fr.w0.push_back(w0);
    }
    return fr;
}

// --- the t -> 0 limit of T(x_t, x) -------------------------------------------

struct SelfTensorResult {
    AdhmDatum<Rational> datum;    // the limit, in the frame basis of Vt
    AdhmDatum<RatFunc> family;    // the conjugated family before evaluation
    BlockFrame frame;
    TensorShape shape;
    QMatrix frame_basis;          // columns = frame vectors in Vt coordinates
    std::vector<int> weights;     // Phi-weight per frame column
    QMatrix split_g;              // base change applied to the input
    AdhmDatum<Rational> split_datum;
    // Filled for framed (USp-type) inputs:
    bool framed = false;
    BilinearForm<Rational> form_vt; // symplectic form on Vt, frame coordinates
    BilinearForm<Rational> form_wt; // orthogonal form on Wt = W (x) W
    BilinearForm<Rational> form_w;  // the W-form used (input's or constructed)

    std::size_t block_col(std::size_t l, std::size_t inner) const
    {
        std::size_t per_block = shape.dim_w * 2;
        return l * per_block + inner;
    }
    std::vector<std::size_t> vs_columns() const
    {
        std::vector<std::size_t> cols;
        std::size_t n0 = shape.dim_w - 2;
        for (std::size_t l = 0; l < shape.dim_v; ++l) {
            for (std::size_t q = 0; q < 4; ++q)
                cols.push_back(block_col(l, q));
            for (std::size_t s = 0; s < n0; ++s)
                cols.push_back(block_col(l, 4 + s)); // Delta^+ columns
        }
        return cols;
    }
    std::vector<std::size_t> ve_columns() const
    {
        std::vector<std::size_t> cols;
        std::size_t n0 = shape.dim_w - 2;
        for (std::size_t l = 0; l < shape.dim_v; ++l)
            for (std::size_t s = 0; s < n0; ++s)
                cols.push_back(block_col(l, 4 + n0 + s)); // Delta^- columns
        return cols;
    }
};

namespace detail {

inline RatFunc tpow(int e)
{
    if (e == 0)
        return RatFunc::one();
    if (e > 0)
        return RatFunc(Poly<Rational>::monomial(e, Rational(1)));
    return RatFunc(Poly<Rational>::one(), Poly<Rational>::monomial(-e, Rational(1)));
}

inline FMatrix to_ratfunc(const QMatrix& m)
{
    return m.map<RatFunc>([](const Rational& r) { return RatFunc(r); });
}

inline QMatrix eval_at_zero_or_throw(const FMatrix& m)
{
    return m.map<Rational>([](const RatFunc& f) {
        auto v = f.eval_at_zero();
        require(v.has_value(), ErrorKind::PoleAtZero, "family entry has a pole at t = 0");
        return *v;
    });
}

// Frame basis as Vt columns plus the per-column weights.
inline std::pair<QMatrix, std::vector<int>> frame_basis_matrix(const BlockFrame& fr,
                                                               const TensorShape& sh)
{
    std::size_t k = sh.dim_v, n = sh.dim_w;
    QMatrix p(sh.vt_dim(), sh.vt_dim());
    std::vector<int> wt(sh.vt_dim(), 0);
    std::size_t col = 0;
    auto put_pair = [&](std::size_t l, const std::vector<Rational>& first,
                        const std::vector<Rational>& second) {
        for (std::size_t w = 0; w < n; ++w) {
            p(sh.idx_vw2(l, w), col) = first[w];
            p(sh.idx_wv2(w, l), col) = second[w];
        }
    };
    auto negate = [](std::vector<Rational> v) {
        for (auto& x : v)
            x = -x;
        return v;
    };
    for (std::size_t l = 0; l < k; ++l) {
        put_pair(l, fr.e[l], negate(fr.e[l]));
        wt[col] = -1;
        ++col;
        put_pair(l, fr.f[l], negate(fr.f[l]));
        wt[col] = 1;
        ++col;
        put_pair(l, fr.e[l], fr.e[l]);
        ++col;
        put_pair(l, fr.f[l], fr.f[l]);
        ++col;
        for (std::size_t s = 0; s < fr.w0[l].rows(); ++s) {
            put_pair(l, fr.w0[l].row(s), fr.w0[l].row(s));
            ++col;
        }
        for (std::size_t s = 0; s < fr.w0[l].rows(); ++s) {
            put_pair(l, fr.w0[l].row(s), negate(fr.w0[l].row(s)));
            ++col;
        }
    }
    return {p, wt};
}

} // namespace detail

// The t -> 0 limit of Phi(t) . T(translate_b1(x, t), x) in the frame basis.
// The input must be regular, on the moment fiber, with distinct rational B1
// eigenvalues. `form_w` (optional) marks the framed case: the W-form is used
// for the frame complements and induces the symplectic/orthogonal structures
// on Vt and Wt; the limit is then checked to satisfy the framed invariants.
inline SelfTensorResult self_tensor_core(const AdhmDatum<Rational>& x_in,
                                         const BilinearForm<Rational>* form_w)
{
    require(is_regular(x_in), ErrorKind::NotStable, "self tensor needs a regular datum");
    auto split = split_distinct(x_in);
    const AdhmDatum<Rational>& x = split.datum;
    require(moment_map_gl(x).is_zero(), ErrorKind::InvariantViolation,
            "self tensor needs a moment-fiber datum");

    SelfTensorResult out;
    out.shape = TensorShape{x.dim_v(), x.dim_w(), x.dim_v(), x.dim_w()};
    out.frame = block_frame_split(x, split.eigenvalues, form_w);
    out.split_g = split.g;
    out.split_datum = x;
    auto [p, wt] = detail::frame_basis_matrix(out.frame, out.shape);
    out.frame_basis = p;
    out.weights = wt;

    // T(x_t, x) over Q(t); B1 blocks are diagonal so the Sylvester blocks
    // are entrywise divisions.
    AdhmDatum<RatFunc> xt{detail::to_ratfunc(x.b1), detail::to_ratfunc(x.b2),
                          detail::to_ratfunc(x.i), detail::to_ratfunc(x.j)};
    AdhmDatum<RatFunc> x0 = xt;
    for (std::size_t r = 0; r < x.dim_v(); ++r)
        xt.b1(r, r) += RatFunc::t();
    AdhmDatum<RatFunc> ten = tensor(xt, x0);

    // Conjugate by Phi(t) = P diag(t^w) P^-1 and pass to the frame basis.
    FMatrix pf = detail::to_ratfunc(p);
    auto pinv_q = inverse(p);
    require(pinv_q.has_value(), ErrorKind::DegenerateFrame, "frame basis singular");
    FMatrix pfi = detail::to_ratfunc(*pinv_q);

    auto conj_endo = [&](const FMatrix& m) {
        FMatrix base = pfi * m * pf;
        for (std::size_t r = 0; r < base.rows(); ++r)
            for (std::size_t c = 0; c < base.cols(); ++c) {
                int shift = wt[r] - wt[c];
                if (shift != 0)
                    base(r, c) = detail::tpow(shift) * base(r, c);
            }
        return base;
    };
    AdhmDatum<RatFunc> fam;
    fam.b1 = conj_endo(ten.b1);
    fam.b2 = conj_endo(ten.b2);
    fam.i = pfi * ten.i;
    for (std::size_t r = 0; r < fam.i.rows(); ++r)
        if (wt[r] != 0)
            for (std::size_t c = 0; c < fam.i.cols(); ++c)
                fam.i(r, c) = detail::tpow(wt[r]) * fam.i(r, c);
    fam.j = ten.j * pf;
    for (std::size_t c = 0; c < fam.j.cols(); ++c)
        if (wt[c] != 0)
            for (std::size_t r = 0; r < fam.j.rows(); ++r)
                fam.j(r, c) = detail::tpow(-wt[c]) * fam.j(r, c);
    out.family = fam;

    out.datum.b1 = detail::eval_at_zero_or_throw(fam.b1);
    out.datum.b2 = detail::eval_at_zero_or_throw(fam.b2);
    out.datum.i = detail::eval_at_zero_or_throw(fam.i);
    out.datum.j = detail::eval_at_zero_or_throw(fam.j);

    if (form_w) {
        out.framed = true;
        out.form_w = *form_w;
        std::size_t k = x.dim_v();
        // Gram on Vt in ambient coordinates, then in the frame basis.
        QMatrix gvt = QMatrix::block_diag(
            QMatrix::kron(QMatrix::identity(k), form_w->gram),
            QMatrix::kron(form_w->gram, QMatrix::identity(k)));
        QMatrix gf = p.transpose() * gvt * p;
        out.form_vt = BilinearForm<Rational>{FormKind::Alternating, gf};
        out.form_vt.validate();
        // Phi preserves the form: nonzero gram entries pair opposite weights.
        for (std::size_t r = 0; r < gf.rows(); ++r)
            for (std::size_t c = 0; c < gf.cols(); ++c)
                require(gf(r, c).is_zero() || wt[r] + wt[c] == 0, ErrorKind::InvariantViolation,
                        "Phi does not preserve the Vt symplectic form");
        out.form_wt =
            BilinearForm<Rational>{FormKind::Symmetric, QMatrix::kron(form_w->gram, form_w->gram)};
        out.form_wt.validate();
    }
    return out;
}

inline SelfTensorResult self_tensor(const AdhmDatum<Rational>& x)
{
    return self_tensor_core(x, nullptr);
}

// Framed (USp-type) case: the limit is additionally a valid framed datum on
// (Vt, Wt) with the induced forms.
inline SelfTensorResult self_tensor(const SoDatum<Rational>& y)
{
    y.validate();
    require(y.form_v.kind == FormKind::Symmetric, ErrorKind::Unsupported,
            "self tensor of framed data needs the USp orientation");
    auto split = split_distinct(y);
    SelfTensorResult out = self_tensor_core(split.datum.datum, &split.datum.form_w);
    // Compose the split transforms (split_distinct runs again inside, on an
    // already diagonal datum, so the inner transform is a diagonal sign fix).
    out.split_g = out.split_g * split.g;
    SoDatum<Rational> check{out.datum, out.form_vt, out.form_wt};
    check.validate();
    return out;
}

} // namespace adhm
