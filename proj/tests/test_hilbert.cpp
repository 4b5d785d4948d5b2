#include <doctest.h>

#include "adhmkit/hilbert.hpp"

using namespace adhm;
using namespace adhm::hilbert;

TEST_CASE("geometric_inverse")
{
    auto s = geometric_inverse(LaurentPoly::one(), 1, 2);
    CHECK(s.at(0) == LaurentPoly::one());
    CHECK(s.at(1) == LaurentPoly::one());
    CHECK(s.at(2) == LaurentPoly::one());

    auto tz = LaurentPoly::term(1, 1, 1);
    auto s2 = geometric_inverse(tz, 1, 2);
    CHECK(s2.at(1) == tz);
    CHECK(s2.at(2) == LaurentPoly::term(1, 2, 2));

    // Defining identity: (1 - m u^a) * expansion = 1 up to the truncation.
    TruncSeries lhs(5);
    lhs.at(0) = LaurentPoly::one();
    lhs.at(1) -= tz;
    CHECK(lhs * geometric_inverse(tz, 1, 5) == TruncSeries::one(5));

    CHECK_THROWS_AS(geometric_inverse(tz, 0, 3), Error);
}

TEST_CASE("char_coordinate_ring low orders")
{
    auto s = char_coordinate_ring(4);
    CHECK(s.at(0) == LaurentPoly::one());
    // u^1: (1 + t + t^-1)(z + z^-1).
    LaurentPoly expect1;
    for (int te : {0, 1, -1})
        for (int ze : {1, -1})
            expect1.add_term(1, te, ze);
    CHECK(s.at(1) == expect1);
    // u^2: complete homogeneous degree 2 in the six weights.
    LaurentPoly expect2;
    std::vector<std::pair<int, int>> ws;
    for (int te : {0, 1, -1})
        for (int ze : {1, -1})
            ws.push_back({te, ze});
    for (std::size_t a = 0; a < ws.size(); ++a)
        for (std::size_t b = a; b < ws.size(); ++b)
            expect2.add_term(1, ws[a].first + ws[b].first, ws[a].second + ws[b].second);
    CHECK(s.at(2) == expect2);
}

TEST_CASE("koszul_character")
{
    auto k = koszul_character(4);
    CHECK(k.at(0) == LaurentPoly::one());
    // Dimension count at t = z = 1 in u^2: Sym^2(C^6) minus the 3 relations.
    CHECK(k.at(2).eval_t1_z1() == 21 - 3);
    // Multiplying back by the geometric inverses of the Koszul factors
    // recovers the coordinate-ring character.
    auto recovered = k;
    for (int zexp : {0, 2, -2})
        recovered = recovered * geometric_inverse(LaurentPoly::term(1, 0, zexp), 2, 4);
    CHECK(recovered == char_coordinate_ring(4));
}

TEST_CASE("weyl_integrate_sp1 on finite characters")
{
    // chi = 1 -> invariants 1.
    TruncSeries one = TruncSeries::one(2);
    CHECK(weyl_integrate_sp1(one).at(0) == LaurentPoly::one());

    // Vector rep z + z^-1 -> no invariants.
    TruncSeries vec(2);
    vec.at(0) = LaurentPoly::term(1, 0, 1) + LaurentPoly::term(1, 0, -1);
    CHECK(weyl_integrate_sp1(vec).at(0).is_zero());

    // (z + z^-1)^2 -> one invariant (the symplectic form).
    TruncSeries sq(2);
    sq.at(0) = LaurentPoly::term(1, 0, 2) + LaurentPoly::term(2, 0, 0)
        + LaurentPoly::term(1, 0, -2);
    CHECK(weyl_integrate_sp1(sq).at(0) == LaurentPoly::one());

    // Adjoint rep z^2 + 1 + z^-2: no invariant vectors; its symmetric
    // square contains exactly one (the Killing form).
    TruncSeries ad(2);
    ad.at(0) = LaurentPoly::term(1, 0, 2) + LaurentPoly::term(1, 0, 0)
        + LaurentPoly::term(1, 0, -2);
    CHECK(weyl_integrate_sp1(ad).at(0).is_zero());
    LaurentPoly s2;
    std::vector<int> w{2, 0, -2};
    for (std::size_t a = 0; a < w.size(); ++a)
        for (std::size_t b = a; b < w.size(); ++b)
            s2.add_term(1, 0, w[a] + w[b]);
    TruncSeries s2s(2);
    s2s.at(0) = s2;
    CHECK(weyl_integrate_sp1(s2s).at(0).eval_t1_z1() == 1);
}

TEST_CASE("weyl integration counts trivial summands in tensor products")
{
    // chi(V_a) = z^a + z^{a-2} + ... + z^-a; V_a (x) V_b contains the
    // trivial representation exactly once iff a = b.
    auto chi = [](int a) {
        LaurentPoly p;
        for (int w = -a; w <= a; w += 2)
            p.add_term(1, 0, w);
        return p;
    };
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
            TruncSeries s(0);
            s.at(0) = chi(a) * chi(b);
            CHECK(weyl_integrate_sp1(s).at(0).eval_t1_z1() == (a == b ? 1 : 0));
        }
}

TEST_CASE("hilbert_rho pins the closed form and is truncation stable")
{
    auto h8 = hilbert_rho(8);
    CHECK(h8.at(0) == LaurentPoly::one());
    CHECK(h8.at(1).is_zero());
    LaurentPoly t101 = LaurentPoly::term(1, 1, 0) + LaurentPoly::term(1, 0, 0)
        + LaurentPoly::term(1, -1, 0);
    CHECK(h8.at(2) == t101);
    for (int k = 3; k <= 8; ++k)
        CHECK(h8.at(k).is_zero());
    CHECK(h8.at(2).eval_t1_z1() + h8.at(0).eval_t1_z1() == 4);

    auto h3 = hilbert_rho(3);
    for (int k = 0; k <= 3; ++k)
        CHECK(h3.at(k) == h8.at(k));
    CHECK_THROWS_AS(hilbert_rho(2), Error);

    CHECK(h8.str() == "1 + (t + 1 + t^-1) u^2");
}

TEST_CASE("series identity against the o(3) quotient character")
{
    // char(C[o(3)]) - char(m^2) = hilbert_rho, with the ideal character
    // enumerated monomial by monomial.
    int trunc = 8;
    auto diff = char_o3_series(trunc) - char_o3_msquared(trunc);
    CHECK(diff == hilbert_rho(trunc));
}

TEST_CASE("invariants oracle through degree 6")
{
    auto rep = invariants_oracle(6);
    REQUIRE(rep.characters.size() == 7);
    CHECK(rep.characters[0] == LaurentPoly::one());
    LaurentPoly t101 = LaurentPoly::term(1, 1, 0) + LaurentPoly::term(1, 0, 0)
        + LaurentPoly::term(1, -1, 0);
    CHECK(rep.characters[2] == t101);
    for (int d : {1, 3, 4, 5, 6})
        CHECK(rep.characters[d].is_zero());

    // Degree-by-degree agreement with the series route.
    auto h = hilbert_rho(8);
    for (int d = 0; d <= 6; ++d)
        CHECK(rep.characters[d] == h.at(d));
}
