#include <doctest.h>

#include "adhmkit/current.hpp"
#include "adhmkit/prng.hpp"

using namespace adhm;
using namespace adhm::current;
using Q = Rational;
using CV = CurrentVec<Q>;

namespace {

CV random_vec(int d, SplitMix64& rng, int force_min_deg = -1)
{
    CV v = CV::zero(d);
    int start = force_min_deg < 0 ? 0 : force_min_deg;
    for (int m = start; m <= d; ++m) {
        v.coeffs[m][0] = Q(rng.small_int(3));
        v.coeffs[m][1] = Q(rng.small_int(3));
    }
    if (force_min_deg >= 0 && force_min_deg <= d) {
        while (v.coeffs[force_min_deg][0].is_zero() && v.coeffs[force_min_deg][1].is_zero()) {
            v.coeffs[force_min_deg][0] = Q(rng.small_int(3));
            v.coeffs[force_min_deg][1] = Q(rng.small_int(3));
        }
    }
    return v;
}

} // namespace

TEST_CASE("residue form: surviving term, alternating, nondegenerate")
{
    for (int d = 0; d <= 6; ++d) {
        auto e1zd = CV::basis(d, 0, d);
        auto e2 = CV::basis(d, 1, 0);
        CHECK(residue_form(e1zd, e2) == Q(1));

        SplitMix64 rng(100 + d);
        auto f = random_vec(d, rng);
        CHECK(residue_form(f, f).is_zero());

        auto gram = residue_gram<Q>(d);
        CHECK(inverse(gram).has_value());
        CHECK(gram.transpose() == -gram);
    }
}

TEST_CASE("min_deg basics")
{
    CHECK(min_deg(CV::zero(3)) == 4);
    CHECK(min_deg(CV::basis(3, 0, 0)) == 0);
    CHECK(min_deg(CV::basis(3, 1, 3)) == 3);
}

TEST_CASE("stabilizer structure and dimensions")
{
    // x = 0: full algebra.
    CHECK(stabilizer(CV::zero(2)).dim() == 9);

    // x = e1: C[z] E, dimension d+1.
    for (int d = 0; d <= 6; ++d) {
        auto st = stabilizer(CV::basis(d, 0, 0));
        CHECK(st.dim() == static_cast<std::size_t>(d) + 1);
        for (const auto& xi : st.basis) {
            xi.validate();
            for (const auto& c : xi.coeffs) {
                CHECK(c(0, 0).is_zero());
                CHECK(c(1, 0).is_zero());
                CHECK(c(1, 1).is_zero());
            }
        }
    }

    // x = e1 z^d: dimension 1 + 3d.
    for (int d = 1; d <= 6; ++d)
        CHECK(stabilizer(CV::basis(d, 0, d)).dim() == static_cast<std::size_t>(1 + 3 * d));
}

TEST_CASE("stabilizer annihilates and matches the kernel of the action map")
{
    for (int d = 0; d <= 6; ++d) {
        SplitMix64 rng(500 + d);
        for (int n = 0; n <= d + 1; ++n) {
            for (int rep = 0; rep < 5; ++rep) {
                CV x = n == d + 1 ? CV::zero(d) : random_vec(d, rng, n);
                auto st = stabilizer(x);
                int realized = min_deg(x);
                CHECK(realized == n);
                CHECK(st.dim() ==
                      static_cast<std::size_t>((d + 1 - realized) + 3 * realized));
                for (const auto& xi : st.basis)
                    CHECK(xi.apply(x).is_zero());
                if (!x.is_zero())
                    CHECK(!st.leading.coeffs[0].is_zero());
                CHECK(stabilizer_subspace(st) == kernel_subspace(action_matrix(x)));
            }
        }
    }
}

TEST_CASE("stratum data and tangent ranks")
{
    CHECK(stratum_data(CV::basis(2, 0, 0)).orbit_dim == 6);
    CHECK(stratum_data(CV::basis(2, 0, 0)).stratum_dim == 6);
    CHECK(stratum_data(CV::zero(2)).orbit_dim == 0);
    CHECK(stratum_data(CV::basis(1, 1, 1)).orbit_dim == 2);

    SplitMix64 rng(7);
    for (int d = 0; d <= 5; ++d)
        for (int n = 0; n <= d; ++n) {
            CV x = random_vec(d, rng, n);
            CHECK(orbit_tangent_rank(x) == static_cast<std::size_t>(2 * (d + 1 - n)));
            CHECK(orbit_tangent_rank(x) == orbit_tangent_rank(CV::basis(d, 0, n)));
        }
    CHECK(orbit_tangent_rank(CV::zero(4)) == 0);
}

TEST_CASE("mu_x values: zero vector, quadratic scaling, b^2 witness")
{
    SplitMix64 rng(21);
    for (int d = 0; d <= 4; ++d) {
        CV x = random_vec(d, rng, 0);
        auto st = stabilizer(x);
        for (const auto& v : mu_x_eval(st, CV::zero(d)))
            CHECK(v.is_zero());

        CV v = random_vec(d, rng);
        auto mv = mu_x_eval(st, v);
        CV v3 = v;
        for (auto& c : v3.coeffs) {
            c[0] = Q(3) * c[0];
            c[1] = Q(3) * c[1];
        }
        auto mv3 = mu_x_eval(st, v3);
        for (std::size_t a = 0; a < mv.size(); ++a)
            CHECK(mv3[a] == Q(9) * mv[a]);
    }

    // d = 0, x = e1, v = a e1 + b e2: the single moment value is a nonzero
    // multiple of b^2.
    auto st0 = stabilizer(CV::basis(0, 0, 0));
    REQUIRE(st0.dim() == 1);
    CV v0 = CV::zero(0);
    v0.coeffs[0] = {Q(5), Q(3)};
    auto val = mu_x_eval(st0, v0);
    CHECK(val[0] == Q(1, 2) * residue_form(st0.basis[0].apply(v0), v0));
    CHECK(!val[0].is_zero());
    v0.coeffs[0] = {Q(5), Q(0)};
    CHECK(mu_x_eval(st0, v0)[0].is_zero());
    v0.coeffs[0] = {Q(0), Q(2)};
    CHECK(!mu_x_eval(st0, v0)[0].is_zero());
}

TEST_CASE("claimed fibers: dimensions and mu_x vanishing on them")
{
    CHECK(claimed_fiber<Q>(0, 0).dim() == 1);
    CHECK(claimed_fiber<Q>(1, 0).dim() == 3);
    CHECK(claimed_fiber<Q>(2, 3).dim() == 2);
    CHECK_THROWS_AS(claimed_fiber<Q>(2, 4), Error);

    SplitMix64 rng(33);
    for (int d = 0; d <= 4; ++d)
        for (int n = 0; n <= d + 1; ++n) {
            auto fib = claimed_fiber<Q>(d, n);
            auto st = n == d + 1 ? stabilizer(CV::zero(d)) : stabilizer(CV::basis(d, 0, n));
            for (int rep = 0; rep < 8; ++rep) {
                std::vector<Q> flat(2 * (d + 1), Q(0));
                for (std::size_t r = 0; r < fib.dim(); ++r) {
                    Q c = Q(rng.small_int(3));
                    for (std::size_t cc = 0; cc < flat.size(); ++cc)
                        flat[cc] += c * fib.basis()(r, cc);
                }
                CV v = CV::from_flat(d, flat);
                for (const auto& val : mu_x_eval(st, v))
                    CHECK(val.is_zero());
            }
        }
}

TEST_CASE("residue pairings of stabilizer images are antisymmetric")
{
    SplitMix64 rng(55);
    for (int d = 1; d <= 3; ++d) {
        auto x = CV::basis(d, 0, 0);
        auto st = stabilizer(x);
        auto fib = claimed_fiber<Q>(d, 0);
        std::vector<Q> flat(2 * (d + 1), Q(0));
        for (std::size_t r = 0; r < fib.dim(); ++r) {
            Q c = Q(rng.small_int(2));
            for (std::size_t cc = 0; cc < flat.size(); ++cc)
                flat[cc] += c * fib.basis()(r, cc);
        }
        CV v = CV::from_flat(d, flat);
        for (const auto& xi : st.basis)
            for (const auto& eta : st.basis) {
                Q mixed = residue_form(xi.apply(v), eta.apply(v));
                Q swapped = residue_form(eta.apply(v), xi.apply(v));
                CHECK(mixed == -swapped);
            }
    }
}

TEST_CASE("generic nilpotent embedding")
{
    auto e0 = generic_nilpotent_embedding<Q>(0);
    CHECK(e0.commutant_sp_dim == 3);
    CHECK(e0.b.is_zero());

    auto e1 = generic_nilpotent_embedding<Q>(1);
    CHECK(e1.commutant_sp_dim == 6);

    for (int d = 1; d <= 3; ++d) {
        auto e = generic_nilpotent_embedding<Q>(d);
        CHECK(e.commutant_sp_dim == static_cast<std::size_t>(3 * (d + 1)));
        // B^2 has rank 2(d+1) - 4 (two Jordan blocks of size d+1).
        CHECK(rank(e.b * e.b) == static_cast<std::size_t>(2 * (d + 1) - 4));
    }
}
