#include <doctest.h>

#include "adhmkit/json_io.hpp"
#include "adhmkit/samples.hpp"

using namespace adhm;
using adhm::io::json;
using Q = Rational;

TEST_CASE("matrix JSON round trip with rational strings")
{
    Matrix<Q> m{{Q(1, 2), Q(-3)}, {Q(0), Q(22, 7)}};
    json j = io::to_json(m);
    CHECK(j["entries"][0] == "1/2");
    CHECK(j["entries"][3] == "22/7");
    CHECK(io::matrix_from_json(j) == m);

    // Plain integers are accepted too.
    json alt = {{"rows", 1}, {"cols", 2}, {"entries", {3, -4}}};
    CHECK(io::matrix_from_json(alt) == Matrix<Q>{{Q(3), Q(-4)}});

    json bad = {{"rows", 2}, {"cols", 2}, {"entries", {"1"}}};
    CHECK_THROWS_AS(io::matrix_from_json(bad), Error);
}

TEST_CASE("datum JSON: framed data derive j = i*")
{
    SplitMix64 rng(3);
    auto y = random_regular_usp(2, 4, rng);
    json j = io::to_json(y);
    CHECK(!j.contains("j"));
    auto parsed = io::datum_from_json(j);
    REQUIRE(parsed.framed);
    CHECK(parsed.datum == y.datum); // includes the derived j
    parsed.framed_datum().validate();

    auto x = random_regular_gl(2, 3, rng);
    auto back = io::datum_from_json(io::to_json(x));
    CHECK(!back.framed);
    CHECK(back.datum == x);
}

TEST_CASE("rational function JSON")
{
    RatFunc f = (RatFunc::t() + RatFunc(Q(1, 2))) / (RatFunc::t() - RatFunc(1));
    json j = io::to_json(f);
    CHECK(j["num"].size() == 2);
    CHECK(j["num"][0] == "1/2");
    CHECK(j["den"][1] == "1");
}

TEST_CASE("current vector JSON")
{
    json j = {{"d", 2}, {"coeffs", {{1, 0}, {0, "1/3"}, {0, 0}}}};
    auto v = io::current_vec_from_json(j);
    CHECK(v.d == 2);
    CHECK(v.coeffs[0][0] == Q(1));
    CHECK(v.coeffs[1][1] == Q(1, 3));
    CHECK(current::min_deg(v) == 0);

    json bad = {{"d", 1}, {"coeffs", {{1, 0}}}};
    CHECK_THROWS_AS(io::current_vec_from_json(bad), Error);
}

TEST_CASE("count report JSON carries the partition metadata")
{
    count::CountReport r;
    r.kind = "mux";
    r.parameter = 1;
    r.sub_parameter = 0;
    r.prime = 3;
    r.count = 27;
    r.log_p_count = 3.0;
    r.workers = 4;
    json j = io::to_json(r);
    CHECK(j["count"] == 27);
    CHECK(j["n"] == 0);
    CHECK(j["set_equality"] == true);
    CHECK(j["workers"] == 4);
}
