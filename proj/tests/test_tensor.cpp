#include <doctest.h>

#include "adhmkit/products.hpp"
#include "adhmkit/samples.hpp"

using namespace adhm;
using Q = Rational;
using M = Matrix<Q>;

TEST_CASE("tensor: 1x1 Sylvester block by hand")
{
    // x: V = C, W = C^2, b1 = 0; x': b1' = 1. The cross block solves
    // (b1) X - X (b1') + i (x) j' = 0, so X = i (x) j'.
    AdhmDatum<Q> x{M{{Q(0)}}, M{{Q(2)}}, M{{Q(1), Q(0)}}, M{{Q(0)}, {Q(1)}}};
    AdhmDatum<Q> y{M{{Q(1)}}, M{{Q(3)}}, M{{Q(0), Q(1)}}, M{{Q(1)}, {Q(0)}}};
    auto t = tensor(x, y);
    TensorShape sh{1, 2, 1, 2};
    CHECK(t.dim_v() == 4);
    CHECK(t.dim_w() == 4);
    M expected_x = M::kron(x.i, y.j);
    for (std::size_t w2 = 0; w2 < 2; ++w2)
        for (std::size_t w = 0; w < 2; ++w)
            CHECK(t.b2(sh.idx_vw2(0, w2), sh.idx_wv2(w, 0)) == expected_x(w2, w));
    CHECK(moment_map_gl(t).is_zero());
}

TEST_CASE("tensor: common eigenvalue rejected, extension case accepted")
{
    AdhmDatum<Q> x{M{{Q(1)}}, M{{Q(0)}}, M{{Q(1), Q(0)}}, M{{Q(0)}, {Q(1)}}};
    CHECK_THROWS_AS(tensor(x, x), Error);

    // i (x) j' = 0 = j (x) i' extension: zero framing on one side.
    AdhmDatum<Q> z{M{{Q(1)}}, M{{Q(0)}}, M(1, 2), M(2, 1)};
    auto t = tensor(x, z);
    CHECK(t.b2(0, 2).is_zero());
    CHECK(t.dim_v() == 4);
}

TEST_CASE("tensor with a zero-dimensional factor pads by identity blocks")
{
    SplitMix64 rng(3);
    auto x = random_regular_gl(2, 2, rng);
    AdhmDatum<Q> empty{M(0, 0), M(0, 0), M(0, 3), M(3, 0)};
    auto t = tensor(x, empty);
    CHECK(t.dim_v() == 6);
    CHECK(t.dim_w() == 6);
    CHECK(moment_map_gl(t).is_zero());
    CHECK(t.b1 == M::kron(x.b1, M::identity(3)));

    // The padded moment map vanishes iff the input one does.
    AdhmDatum<Q> off = x;
    off.j(0, 0) += Q(1);
    CHECK(!moment_map_gl(off).is_zero());
    CHECK(!moment_map_gl(tensor(off, empty)).is_zero());
}

TEST_CASE("tensor laws on seeded regular pairs")
{
    SplitMix64 rng(101);
    for (int it = 0; it < 12; ++it) {
        std::size_t k1 = 1 + rng.below(3), k2 = 1 + rng.below(3);
        auto x = random_regular_gl(k1, 2, rng, 0);
        auto y = random_regular_gl(k2, 3, rng, 10); // disjoint spectra by offset
        auto t = tensor(x, y);
        CHECK(moment_map_gl(t).is_zero());
        CHECK(is_stable(t));
        CHECK(is_costable(t));
        CHECK(tensor_dual_check(x, y));
    }
}

TEST_CASE("tensor_dual_check detects corruption")
{
    SplitMix64 rng(7);
    auto x = random_regular_gl(1, 2, rng, 0);
    auto y = random_regular_gl(1, 2, rng, 5);
    auto t = tensor(x, y);
    auto td = dual(t);
    auto lhs = tensor(dual(x), dual(y));
    CHECK(lhs == td);
    td.b2(0, 2) += Q(1); // corrupt one cross entry
    CHECK(!(lhs == td));

    // Degenerate zero-V factor still satisfies the dual law.
    AdhmDatum<Q> empty{M(0, 0), M(0, 0), M(0, 2), M(2, 0)};
    CHECK(tensor_dual_check(x, empty));
}

TEST_CASE("split_distinct diagonalizes and normalizes framed data")
{
    SplitMix64 rng(11);
    auto y = random_regular_usp(3, 4, rng);
    M g = random_form_preserving(rng, y.form_v);
    auto conj = act(g, y);
    auto split = split_distinct(conj);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            if (r != c)
                CHECK(split.datum.datum.b1(r, c).is_zero());
    CHECK(split.datum.form_v.gram == M::identity(3));
    split.datum.validate();
    CHECK(split.eigenvalues[0] < split.eigenvalues[1]);
}

TEST_CASE("block frames: definitions and framed pairing")
{
    SplitMix64 rng(13);
    auto y = random_regular_usp(2, 4, rng);
    auto split = split_distinct(y);
    auto fr = block_frame_split(split.datum.datum, split.eigenvalues, &split.datum.form_w);
    for (std::size_t l = 0; l < 2; ++l) {
        Q ie(0);
        for (std::size_t c = 0; c < 4; ++c)
            ie += split.datum.datum.i(l, c) * fr.e[l][c];
        CHECK(ie == Q(1));
        for (std::size_t c = 0; c < 4; ++c)
            CHECK(fr.f[l][c] == split.datum.datum.j(c, l));
        CHECK(split.datum.form_w.pair(fr.e[l], fr.f[l]) == Q(1));
        CHECK(fr.w0[l].rows() == 2);
    }

    auto broken = split.datum.datum;
    for (std::size_t c = 0; c < 4; ++c)
        broken.i(0, c) = Q(0);
    CHECK_THROWS_AS(block_frame_split(broken, split.eigenvalues, nullptr), Error);
}

TEST_CASE("self-tensor limit at k=1 matches the closed-form table")
{
    // USp-type k=1 fixture: b1 = 0, b2 = 5, i = (1 0), W = C^2 symplectic.
    auto fw = standard_symplectic<Q>(2);
    auto y = SoDatum<Q>::make(M{{Q(0)}}, M{{Q(5)}}, M{{Q(1), Q(0)}},
                              standard_orthogonal<Q>(1), fw);
    y.validate();
    auto r = self_tensor(y);
    REQUIRE(r.shape.vt_dim() == 4);
    REQUIRE(r.shape.wt_dim() == 4);

    // Frame columns: q1 = (e,-e), q2 = (f,-f), q3 = (e,e), q4 = (f,f).
    const Q h(1, 2);
    M b1_expected{{Q(0), Q(0), h, Q(0)},
                  {Q(0), Q(0), Q(0), Q(0)},
                  {Q(0), Q(0), Q(0), Q(0)},
                  {Q(0), h, Q(0), Q(0)}};
    CHECK(r.datum.b1 == b1_expected);

    // (B2)_0 - b2: the moment-fiber-consistent signs send q1 -> +q4 and
    // q3 -> -q2 (cross blocks solve (b1+t) X - X b1 + i (x) j = 0); all
    // other images vanish.
    M b2_shift = r.datum.b2 - Q(5) * M::identity(4);
    M b2_expected{{Q(0), Q(0), Q(0), Q(0)},
                  {Q(0), Q(0), Q(-1), Q(0)},
                  {Q(0), Q(0), Q(0), Q(0)},
                  {Q(1), Q(0), Q(0), Q(0)}};
    CHECK(b2_shift == b2_expected);

    // i_0: e(x)e -> q3, e(x)f and f(x)e -> q4/2, f(x)f -> 0. Wt index
    // (w, w') = 2w + w'; e = w_0, f = w_1.
    M i_expected(4, 4);
    i_expected(2, 0) = Q(1);
    i_expected(3, 1) = h;
    i_expected(3, 2) = h;
    CHECK(r.datum.i == i_expected);

    // j_0: q1, q2 -> 0; q3 -> f(x)e + e(x)f; q4 -> 2 f(x)f.
    M j_expected(4, 4);
    j_expected(1, 2) = Q(1);
    j_expected(2, 2) = Q(1);
    j_expected(3, 3) = Q(2);
    CHECK(r.datum.j == j_expected);

    // Full t-dependent table entries for B1 and j.
    RatFunc t = RatFunc::t();
    CHECK(r.family.b1(0, 0) == t * RatFunc(Q(1, 2)));
    CHECK(r.family.b1(2, 0) == t * t * RatFunc(Q(1, 2)));
    CHECK(r.family.b1(1, 1) == t * RatFunc(Q(1, 2)));
    CHECK(r.family.b1(3, 1) == RatFunc(Q(1, 2)));
    CHECK(r.family.b1(0, 2) == RatFunc(Q(1, 2)));
    CHECK(r.family.b1(2, 2) == t * RatFunc(Q(1, 2)));
    CHECK(r.family.b1(1, 3) == t * t * RatFunc(Q(1, 2)));
    CHECK(r.family.b1(3, 3) == t * RatFunc(Q(1, 2)));
    CHECK(r.family.j(2, 0) == t);
    CHECK(r.family.j(1, 0) == -t);

    CHECK(moment_map_gl(r.datum).is_zero());
    CHECK(is_regular(r.datum));
    SoDatum<Q> out{r.datum, r.form_vt, r.form_wt};
    out.validate();
}

TEST_CASE("self-tensor for larger k: fiber, regularity, framed invariants")
{
    SplitMix64 rng(17);
    for (std::size_t k : {2u, 3u}) {
        auto y = random_regular_usp(k, 4, rng);
        auto r = self_tensor(y);
        CHECK(moment_map_gl(r.datum).is_zero());
        CHECK(is_regular(r.datum));
        SoDatum<Q> out{r.datum, r.form_vt, r.form_wt};
        out.validate();
        CHECK(moment_map_sp(out).is_zero());
    }

    auto x = random_regular_gl(2, 3, rng);
    auto r = self_tensor(x);
    CHECK(moment_map_gl(r.datum).is_zero());
    CHECK(is_regular(r.datum));
}

TEST_CASE("V_S and V_E closures match the closed forms and dimensions")
{
    SplitMix64 rng(19);
    for (std::size_t k : {1u, 2u}) {
        auto y = random_regular_usp(k, 4, rng);
        auto r = self_tensor(y);
        auto [vs, ve] = vs_ve(r);
        CHECK(vs.dim() == (4 + 2) * k);
        CHECK(ve.dim() == (4 - 2) * k);
    }
    // dimW = 2: V_E = 0.
    auto y2 = random_regular_usp(2, 2, rng);
    auto r2 = self_tensor(y2);
    auto [vs2, ve2] = vs_ve(r2);
    CHECK(vs2.dim() == 4 * 2);
    CHECK(ve2.dim() == 0);
}

TEST_CASE("restrictions: moment fiber, dimensions, reconstruction")
{
    SplitMix64 rng(23);
    auto y = random_regular_usp(2, 4, rng);
    auto r = self_tensor(y);
    auto s = restrict_sym(r);
    auto e = restrict_ext(r);
    CHECK(s.dim_v() == 6 * 2);
    CHECK(s.dim_w() == 10);
    CHECK(e.dim_v() == 2 * 2);
    CHECK(e.dim_w() == 6);
    CHECK(moment_map_gl(s).is_zero());
    CHECK(moment_map_gl(e).is_zero());
    CHECK(is_regular(s));
    CHECK(is_regular(e));
    CHECK(reconstructs_from_restrictions(r));
}

TEST_CASE("frame choice changes the output only by an intertwiner")
{
    SplitMix64 rng(29);
    auto y = random_regular_usp(2, 4, rng);
    auto r1 = self_tensor(y);
    M g = random_form_preserving(rng, y.form_v);
    auto y2 = act(g, y);
    auto r2 = self_tensor(y2);
    auto gi = find_intertwiner(r1.datum, r2.datum, 5);
    REQUIRE(gi.has_value());
    CHECK(act(*gi, r1.datum) == r2.datum);
    // For framed data the intertwiner is symplectic up to scalar: g* g is
    // a scalar matrix.
    M adj = adjoint_endo(*gi, r1.form_vt);
    M prod = adj * *gi;
    for (std::size_t a = 0; a < prod.rows(); ++a)
        for (std::size_t b = 0; b < prod.cols(); ++b)
            if (a != b)
                CHECK(prod(a, b).is_zero());
    CHECK(prod(0, 0) == prod(1, 1));

    // Plain GL-type inputs: any invertible conjugation of the input moves
    // the output by an intertwiner as well.
    auto x = random_regular_gl(2, 3, rng);
    auto rx = self_tensor(x);
    M h(2, 2);
    do {
        for (auto a = 0u; a < 2; ++a)
            for (auto b = 0u; b < 2; ++b)
                h(a, b) = rng.small_rational(2);
    } while (!inverse(h));
    auto rx2 = self_tensor(act(h, x));
    auto hi = find_intertwiner(rx.datum, rx2.datum, 9);
    REQUIRE(hi.has_value());
    CHECK(act(*hi, rx.datum) == rx2.datum);
}

TEST_CASE("iso_so3: SO(3)-type outputs")
{
    SplitMix64 rng(31);
    for (std::size_t k : {1u, 2u, 3u}) {
        auto y = random_regular_usp(k, 2, rng);
        auto out = iso_so3(y);
        CHECK(out.dim_v() == 4 * k);
        CHECK(out.dim_w() == 3);
        CHECK(out.is_so_type());
        CHECK(moment_map_sp(out).is_zero());
        CHECK(is_regular(out.datum));
    }
}

TEST_CASE("iso_so5: SO(5)-type outputs")
{
    SplitMix64 rng(37);
    for (std::size_t k : {1u, 2u}) {
        auto y = random_regular_usp(k, 4, rng);
        auto out = iso_so5(y);
        CHECK(out.dim_v() == 2 * k);
        CHECK(out.dim_w() == 5);
        CHECK(out.is_so_type());
        CHECK(moment_map_sp(out).is_zero());
        CHECK(is_regular(out.datum));
    }
}

TEST_CASE("iso_so6: SO(6)-type outputs with seeded omega")
{
    SplitMix64 rng(41);
    for (std::size_t k : {1u, 2u}) {
        auto y = random_regular_usp(k, 4, rng);
        auto res = iso_so6(y, 7 + k);
        CHECK(res.output.dim_v() == 2 * k);
        CHECK(res.output.dim_w() == 6);
        CHECK(res.output.is_so_type());
        CHECK(moment_map_sp(res.output).is_zero());
        CHECK(is_regular(res.output.datum));
        CHECK(!res.pfaffian.is_zero());
    }
}
