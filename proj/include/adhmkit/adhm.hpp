#pragma once

#include <optional>
#include <vector>

#include "adhmkit/forms.hpp"
#include "adhmkit/linalg.hpp"
#include "adhmkit/matrix.hpp"
#include "adhmkit/subspace.hpp"
#include "adhmkit/sylvester.hpp"

namespace adhm {

// GL-type ADHM datum (B1, B2, i, j) on (V, W). Only shape consistency is an
// invariant; membership in the moment-map fiber, stability etc. are checked
// by operations.
template <class K>
struct AdhmDatum {
    Matrix<K> b1, b2; // dimV x dimV
    Matrix<K> i;      // dimV x dimW
    Matrix<K> j;      // dimW x dimV

    std::size_t dim_v() const { return b1.rows(); }
    std::size_t dim_w() const { return i.cols(); }

    void validate_shapes() const
    {
        std::size_t k = dim_v(), n = dim_w();
        require(b1.rows() == k && b1.cols() == k && b2.rows() == k && b2.cols() == k,
                ErrorKind::DimensionMismatch, "B1/B2 must be dimV x dimV");
        require(i.rows() == k && i.cols() == n, ErrorKind::DimensionMismatch,
                "i must be dimV x dimW");
        require(j.rows() == n && j.cols() == k, ErrorKind::DimensionMismatch,
                "j must be dimW x dimV");
    }

    static AdhmDatum zero(std::size_t k, std::size_t n)
    {
        return {Matrix<K>(k, k), Matrix<K>(k, k), Matrix<K>(k, n), Matrix<K>(n, k)};
    }

    friend bool operator==(const AdhmDatum& a, const AdhmDatum& b)
    {
        return a.b1 == b.b1 && a.b2 == b.b2 && a.i == b.i && a.j == b.j;
    }
};

// Framed datum with forms: B1, B2 self-adjoint for formV and j = i*. Covers
// both orientations:
//   formV alternating / formW symmetric  (SO(N)-type, dimV even), and
//   formV symmetric  / formW alternating (USp-type, symplectic bundles).
template <class K>
struct SoDatum {
    AdhmDatum<K> datum;
    BilinearForm<K> form_v;
    BilinearForm<K> form_w;

    std::size_t dim_v() const { return datum.dim_v(); }
    std::size_t dim_w() const { return datum.dim_w(); }

    bool is_so_type() const { return form_v.kind == FormKind::Alternating; }

    void validate() const
    {
        datum.validate_shapes();
        form_v.validate();
        form_w.validate();
        require(form_v.dim() == dim_v() && form_w.dim() == dim_w(), ErrorKind::DimensionMismatch,
                "form dims");
        require(form_v.kind != form_w.kind, ErrorKind::InvariantViolation,
                "formV and formW must have opposite kinds");
        if (is_so_type())
            require(dim_v() % 2 == 0, ErrorKind::InvariantViolation,
                    "SO-type data need even dimV");
        require(is_self_adjoint(datum.b1, form_v), ErrorKind::InvariantViolation,
                "B1 not self-adjoint");
        require(is_self_adjoint(datum.b2, form_v), ErrorKind::InvariantViolation,
                "B2 not self-adjoint");
        require(datum.j == adjoint_hom(datum.i, form_w, form_v), ErrorKind::InvariantViolation,
                "j != i*");
    }

    bool invariants_hold() const
    {
        try {
            validate();
            return true;
        } catch (const Error&) {
            return false;
        }
    }

    // (B1, B2, i) with j derived as the adjoint.
    static SoDatum make(Matrix<K> b1, Matrix<K> b2, Matrix<K> i, BilinearForm<K> form_v,
                        BilinearForm<K> form_w)
    {
        Matrix<K> j = adjoint_hom(i, form_w, form_v);
        SoDatum out{{std::move(b1), std::move(b2), std::move(i), std::move(j)},
                    std::move(form_v), std::move(form_w)};
        return out;
    }
};

// mu(x) = [B1, B2] + i j, an endomorphism of V (gl(V)^vee via trace pairing).
template <class K>
Matrix<K> moment_map_gl(const AdhmDatum<K>& x)
{
    x.validate_shapes();
    return Matrix<K>::commutator(x.b1, x.b2) + x.i * x.j;
}

// mu_N(y) = [B1, B2] + i i*; lands in sp(V) (anti-self-adjoint part), which
// is asserted.
template <class K>
Matrix<K> moment_map_sp(const SoDatum<K>& y)
{
    y.validate();
    Matrix<K> m = moment_map_gl(y.datum);
    require(is_anti_self_adjoint(m, y.form_v), ErrorKind::InvariantViolation,
            "moment map escaped sp(V)");
    return m;
}

template <class K>
Subspace<K> image_subspace(const Matrix<K>& m)
{
    return Subspace<K>::span(m.transpose());
}

// Stable: the B-invariant closure of Im(i) is all of V.
template <class K>
bool is_stable(const AdhmDatum<K>& x)
{
    Subspace<K> seed = image_subspace(x.i);
    return invariant_closure(seed, {x.b1, x.b2}).is_full();
}

template <class K>
AdhmDatum<K> dual(const AdhmDatum<K>& x)
{
    return {x.b1.transpose(), x.b2.transpose(), -x.j.transpose(), x.i.transpose()};
}

// Costable: no nonzero B-invariant subspace inside Ker(j); equivalently the
// dual datum is stable.
template <class K>
bool is_costable(const AdhmDatum<K>& x)
{
    return is_stable(dual(x));
}

template <class K>
bool is_regular(const AdhmDatum<K>& x)
{
    return is_stable(x) && is_costable(x);
}

// g . x = (g B1 g^-1, g B2 g^-1, g i, j g^-1).
template <class K>
AdhmDatum<K> act(const Matrix<K>& g, const AdhmDatum<K>& x)
{
    auto gi = inverse(g);
    require(gi.has_value(), ErrorKind::Inconsistent, "act: singular g");
    return {g * x.b1 * *gi, g * x.b2 * *gi, g * x.i, x.j * *gi};
}

// Form-preserving action on a framed datum (g in Sp(V) or O(V)).
template <class K>
SoDatum<K> act(const Matrix<K>& g, const SoDatum<K>& y)
{
    require(preserves_form(g, y.form_v), ErrorKind::InvariantViolation,
            "act: g does not preserve formV");
    return {act(g, y.datum), y.form_v, y.form_w};
}

template <class K>
AdhmDatum<K> translate_b1(const AdhmDatum<K>& x, const K& t)
{
    AdhmDatum<K> out = x;
    for (std::size_t r = 0; r < x.dim_v(); ++r)
        out.b1(r, r) += t;
    return out;
}

// Decreasing positive even parts summing to dimV; the shape of an SO-data
// direct-sum assembly.
struct Partition {
    std::vector<std::size_t> parts;

    std::size_t total() const
    {
        std::size_t s = 0;
        for (auto p : parts)
            s += p;
        return s;
    }

    void validate_even() const
    {
        for (std::size_t idx = 0; idx < parts.size(); ++idx) {
            require(parts[idx] > 0 && parts[idx] % 2 == 0, ErrorKind::InvariantViolation,
                    "partition parts must be positive even");
            if (idx > 0)
                require(parts[idx - 1] >= parts[idx], ErrorKind::InvariantViolation,
                        "partition parts must be decreasing");
        }
    }
};

namespace detail {

// Cross-block corrections making the direct sum land in the moment fiber:
// for blocks with disjoint B1-spectra, the unique C_lm solving
// B1^l C - C B1^m + i_l j_m = 0 kills the mixed ij terms; when i_l j_m and
// j-side products vanish no correction is needed.
template <class K>
std::optional<Matrix<K>> cross_correction(const AdhmDatum<K>& xl, const AdhmDatum<K>& xm)
{
    Matrix<K> cross = xl.i * xm.j;
    if (cross.is_zero())
        return Matrix<K>(xl.dim_v(), xm.dim_v());
    require(spectra_disjoint(xl.b1, xm.b1), ErrorKind::CommonEigenvalue,
            "direct_sum: shared B1 eigenvalue with nonzero cross products");
    return sylvester_solve(xl.b1, xm.b1, cross);
}

} // namespace detail

// Assembles the summands into one datum on (V_1 + ... + V_e, W): block
// B1, stacked i, concatenated j, and B2 with block diagonal plus the
// cross-block corrections above. The moment map of the result equals the
// block diagonal of the summand moment maps.
template <class K>
AdhmDatum<K> direct_sum(const std::vector<AdhmDatum<K>>& data)
{
    require(!data.empty(), ErrorKind::DimensionMismatch, "direct_sum of nothing");
    std::size_t n = data.front().dim_w();
    std::size_t k = 0;
    for (const auto& x : data) {
        x.validate_shapes();
        require(x.dim_w() == n, ErrorKind::DimensionMismatch, "direct_sum: mismatched W");
        k += x.dim_v();
    }

    AdhmDatum<K> out = AdhmDatum<K>::zero(k, n);
    std::vector<std::size_t> off(data.size() + 1, 0);
    for (std::size_t l = 0; l < data.size(); ++l)
        off[l + 1] = off[l] + data[l].dim_v();

    for (std::size_t l = 0; l < data.size(); ++l) {
        out.b1.paste(off[l], off[l], data[l].b1);
        out.b2.paste(off[l], off[l], data[l].b2);
        out.i.paste(off[l], 0, data[l].i);
        for (std::size_t c = 0; c < data[l].dim_v(); ++c)
            for (std::size_t r = 0; r < n; ++r)
                out.j(r, off[l] + c) = data[l].j(r, c);
        for (std::size_t m = 0; m < data.size(); ++m) {
            if (m == l)
                continue;
            auto corr = detail::cross_correction(data[l], data[m]);
            out.b2.paste(off[l], off[m], *corr);
        }
    }
    return out;
}

template <class K>
SoDatum<K> direct_sum(const std::vector<SoDatum<K>>& data)
{
    require(!data.empty(), ErrorKind::DimensionMismatch, "direct_sum of nothing");
    const BilinearForm<K>& fw = data.front().form_w;
    std::vector<AdhmDatum<K>> plain;
    BilinearForm<K> fv = data.front().form_v;
    for (std::size_t l = 0; l < data.size(); ++l) {
        require(data[l].form_w.kind == fw.kind && data[l].form_w.gram == fw.gram,
                ErrorKind::DimensionMismatch, "direct_sum: mismatched formW");
        plain.push_back(data[l].datum);
        if (l > 0)
            fv = direct_sum_forms(fv, data[l].form_v);
    }
    SoDatum<K> out{direct_sum(plain), fv, fw};
    out.validate();
    return out;
}

// Rational eigenvalue data of B1.
struct SpectrumReport {
    std::vector<std::pair<Rational, int>> eigenvalues; // sorted, with multiplicity
    bool split = false;                                // char poly splits over Q
    bool distinct = false;                             // split with all multiplicities 1
};

inline SpectrumReport b1_spectrum(const AdhmDatum<Rational>& x)
{
    auto rr = rational_roots(charpoly(x.b1));
    SpectrumReport rep;
    rep.eigenvalues = rr.roots;
    rep.split = rr.fully_split;
    rep.distinct = rr.fully_split;
    for (const auto& [v, m] : rr.roots) {
        (void)v;
        if (m != 1)
            rep.distinct = false;
    }
    require(rep.split, ErrorKind::NotSplitOverBase,
            "char(B1) has an irreducible factor of degree >= 2 over Q");
    return rep;
}

} // namespace adhm
