// Acceptance suite: nine numbered criteria, one pass/fail line each. Every
// tolerance is pinned here in code. Run with no arguments for the whole
// suite or with a single number to run one criterion (the ctest harness
// registers them individually).
//
// Criterion 8 compares measured point-count slopes against the reference
// constants (3, 5, 9); the exhaustive counts give slopes near (3, 7, 10),
// reproducible from the stratified dimension formula checked by criterion 9,
// so criterion 8 is expected red for d = 1, 2 and is registered as such in
// the harness. See the README note on the dimension discrepancy.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "adhmkit/counting.hpp"
#include "adhmkit/hilbert.hpp"
#include "adhmkit/products.hpp"
#include "adhmkit/samples.hpp"

using namespace adhm;
using Q = Rational;
using M = Matrix<Q>;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

bool criterion1()
{
    Timer t;
    auto s = hilbert::hilbert_rho(8); // throws on any mismatch
    hilbert::LaurentPoly t101 = hilbert::LaurentPoly::term(1, 1, 0)
        + hilbert::LaurentPoly::term(1, 0, 0) + hilbert::LaurentPoly::term(1, -1, 0);
    bool ok = s.at(0) == hilbert::LaurentPoly::one() && s.at(2) == t101;
    for (int k : {1, 3, 4, 5, 6, 7, 8})
        ok = ok && s.at(k).is_zero();
    double el = t.seconds();
    ok = ok && el < 1.0;
    std::printf("[%s] criterion 1: series == 1 + (t+1+t^-1) u^2 at trunc 8 (%.3fs)\n",
                ok ? "PASS" : "FAIL", el);
    return ok;
}

bool criterion2()
{
    Timer t;
    auto rep = hilbert::invariants_oracle(6);
    auto s = hilbert::hilbert_rho(8);
    bool ok = true;
    for (int d = 0; d <= 6; ++d)
        ok = ok && rep.characters[static_cast<std::size_t>(d)] == s.at(d);
    double el = t.seconds();
    ok = ok && el < 120.0;
    std::printf("[%s] criterion 2: brute-force invariants match degree-by-degree to 6 (%.3fs)\n",
                ok ? "PASS" : "FAIL", el);
    return ok;
}

bool criterion3()
{
    Timer t;
    // dimV = 1 symplectic fixture; frame columns q1..q4.
    auto y = SoDatum<Q>::make(M{{Q(0)}}, M{{Q(7)}}, M{{Q(1), Q(0)}},
                              standard_orthogonal<Q>(1), standard_symplectic<Q>(2));
    auto r = self_tensor(y);
    const Q h(1, 2);
    M b1_exp{{Q(0), Q(0), h, Q(0)},
             {Q(0), Q(0), Q(0), Q(0)},
             {Q(0), Q(0), Q(0), Q(0)},
             {Q(0), h, Q(0), Q(0)}};
    // B2 cross images with the moment-consistent signs: q1 -> +q4,
    // q3 -> -q2 (the displayed table's signs on these two entries violate
    // the moment equation; see the notes).
    M b2_exp{{Q(7), Q(0), Q(0), Q(0)},
             {Q(0), Q(7), Q(-1), Q(0)},
             {Q(0), Q(0), Q(7), Q(0)},
             {Q(1), Q(0), Q(0), Q(7)}};
    M i_exp(4, 4);
    i_exp(2, 0) = Q(1);
    i_exp(3, 1) = h;
    i_exp(3, 2) = h;
    M j_exp(4, 4);
    j_exp(1, 2) = Q(1);
    j_exp(2, 2) = Q(1);
    j_exp(3, 3) = Q(2);
    bool ok = r.datum.b1 == b1_exp && r.datum.b2 == b2_exp && r.datum.i == i_exp
        && r.datum.j == j_exp;

    // Negative control: flipping those two signs (the literal display)
    // breaks the moment equation, witnessing why the corrected signs are
    // forced.
    AdhmDatum<Q> flipped = r.datum;
    flipped.b2(3, 0) = Q(-1);
    flipped.b2(1, 2) = Q(1);
    ok = ok && moment_map_gl(r.datum).is_zero() && !moment_map_gl(flipped).is_zero();

    double el = t.seconds();
    ok = ok && el < 1.0;
    std::printf("[%s] criterion 3: k=1 self-tensor limit matches the closed-form table "
                "(moment-consistent signs; %.3fs)\n",
                ok ? "PASS" : "FAIL", el);
    return ok;
}

bool criterion4()
{
    Timer t;
    bool ok = true;
    int count_so3 = 0, count_so5 = 0, count_so6 = 0;
    Timer t3;
    for (std::uint64_t s = 0; s < 50 && ok; ++s) {
        SplitMix64 rng(1000 + s);
        std::size_t k = 1 + s % 3;
        auto y = random_regular_usp(k, 2, rng, s % 5 == 4);
        auto out = iso_so3(y);
        ok = ok && out.is_so_type() && moment_map_sp(out).is_zero()
            && is_regular(out.datum) && out.dim_v() == 4 * k && out.dim_w() == 3;
        ++count_so3;
    }
    double el3 = t3.seconds();
    ok = ok && el3 < 60.0;

    Timer t5;
    for (std::uint64_t s = 0; s < 50 && ok; ++s) {
        SplitMix64 rng(2000 + s);
        std::size_t k = 1 + s % 3;
        auto y = random_regular_usp(k, 4, rng, s % 5 == 4);
        auto out = iso_so5(y);
        ok = ok && out.is_so_type() && moment_map_sp(out).is_zero()
            && is_regular(out.datum) && out.dim_v() == 2 * k && out.dim_w() == 5;
        ++count_so5;
    }
    double el5 = t5.seconds();
    ok = ok && el5 < 60.0;

    Timer t6;
    for (std::uint64_t s = 0; s < 50 && ok; ++s) {
        SplitMix64 rng(3000 + s);
        std::size_t k = 1 + s % 3;
        auto y = random_regular_usp(k, 4, rng, s % 5 == 4);
        auto res = iso_so6(y, 777 + s);
        ok = ok && res.output.is_so_type() && moment_map_sp(res.output).is_zero()
            && is_regular(res.output.datum) && res.output.dim_v() == 2 * k
            && res.output.dim_w() == 6;
        ++count_so6;
    }
    double el6 = t6.seconds();
    ok = ok && el6 < 60.0;

    std::printf("[%s] criterion 4: %d so3 / %d so5 / %d so6 pipelines: moment fiber, framed "
                "invariants, regular, dims 4k and 2k (%.1fs / %.1fs / %.1fs)\n",
                ok ? "PASS" : "FAIL", count_so3, count_so5, count_so6, el3, el5, el6);
    (void)t;
    return ok;
}

bool criterion5()
{
    Timer t;
    bool ok = true;
    int pairs = 0;
    for (std::uint64_t s = 0; s < 50 && ok; ++s) {
        SplitMix64 rng(4000 + s);
        std::size_t k1 = 1 + rng.below(3), k2 = 1 + rng.below(3);
        auto x = random_regular_gl(k1, 2, rng, 0);
        auto y = random_regular_gl(k2, 3, rng, 10);
        auto ten = tensor(x, y);
        ok = ok && moment_map_gl(ten).is_zero();
        ok = ok && is_stable(ten) && is_costable(ten);
        ok = ok && tensor_dual_check(x, y);
        ++pairs;
    }
    double el = t.seconds();
    std::printf("[%s] criterion 5: %d tensor pairs: moment fiber, stability/costability, "
                "dual compatibility (%.1fs)\n",
                ok ? "PASS" : "FAIL", pairs, el);
    return ok;
}

bool criterion6()
{
    Timer t;
    using CV = current::CurrentVec<Q>;
    bool ok = true;
    int checked = 0;
    for (int d = 0; d <= 6 && ok; ++d) {
        SplitMix64 rng(600 + static_cast<std::uint64_t>(d));
        int per_n = 200 / (d + 2) + 1;
        for (int n = 0; n <= d + 1 && ok; ++n) {
            for (int rep = 0; rep < per_n && ok; ++rep) {
                CV x = CV::zero(d);
                if (n <= d) {
                    for (int m = n; m <= d; ++m) {
                        x.coeffs[m][0] = Q(rng.small_int(3));
                        x.coeffs[m][1] = Q(rng.small_int(3));
                    }
                    while (x.coeffs[n][0].is_zero() && x.coeffs[n][1].is_zero()) {
                        x.coeffs[n][0] = Q(rng.small_int(3));
                        x.coeffs[n][1] = Q(rng.small_int(3));
                    }
                }
                auto st = current::stabilizer(x);
                std::size_t expect = static_cast<std::size_t>((d + 1 - n) + 3 * n);
                ok = ok && st.dim() == expect;
                ok = ok && current::stabilizer_subspace(st)
                        == kernel_subspace(current::action_matrix(x));
                ++checked;
            }
        }
    }
    double el = t.seconds();
    ok = ok && el < 60.0;
    std::printf("[%s] criterion 6: %d stabilizers equal the action-map kernel with "
                "dimension (d+1-n) + 3n (%.1fs)\n",
                ok ? "PASS" : "FAIL", checked, el);
    return ok;
}

bool criterion7()
{
    Timer t;
    bool ok = true;
    int configs = 0;
    for (int d = 0; d <= 3 && ok; ++d)
        for (int n = 0; n <= d + 1 && ok; ++n)
            for (std::uint32_t p : {3u, 5u, 7u}) {
                auto rep = count::count_mux_fiber(d, n, p, 2);
                ok = ok && rep.set_equality;
                // The count must be the full claimed subspace.
                std::uint64_t expect = 1;
                for (double i = 0; i < rep.predicted_dim; ++i)
                    expect *= p;
                ok = ok && rep.count == expect;
                ++configs;
                if (!ok)
                    break;
            }
    double el = t.seconds();
    ok = ok && el < 300.0;
    std::printf("[%s] criterion 7: mu_x fiber set equality over F_p for %d configurations "
                "(d <= 3, all n, p in {3,5,7}) (%.1fs)\n",
                ok ? "PASS" : "FAIL", configs, el);
    return ok;
}

std::vector<std::vector<count::CountReport>> homw_counts()
{
    std::vector<std::vector<count::CountReport>> all;
    for (int d = 0; d <= 2; ++d) {
        std::vector<count::CountReport> row;
        for (std::uint32_t p : {3u, 5u, 7u})
            row.push_back(count::count_homw_fiber(d, p, 2));
        all.push_back(row);
    }
    return all;
}

bool criterion8()
{
    Timer t;
    const double expected[3] = {3.0, 5.0, 9.0}; // reference constants under test
    auto counts = homw_counts();
    bool ok = true;
    std::string detail;
    for (int d = 0; d <= 2; ++d) {
        for (std::size_t i = 0; i + 1 < counts[d].size(); ++i) {
            double s = count::slope(counts[d][i], counts[d][i + 1]);
            char buf[96];
            std::snprintf(buf, sizeof buf, " d=%d p=%u->%u slope=%.3f vs %.0f;", d,
                          counts[d][i].prime, counts[d][i + 1].prime, s, expected[d]);
            detail += buf;
            if (std::abs(s - expected[d]) > 0.5)
                ok = false;
        }
    }
    auto s3 = count::count_so3_fiber(2, 3, 2);
    auto s5 = count::count_so3_fiber(2, 5, 2);
    auto s7 = count::count_so3_fiber(2, 7, 2);
    double sl35 = count::slope(s3, s5), sl57 = count::slope(s5, s7);
    char buf[96];
    std::snprintf(buf, sizeof buf, " so3 k=2 slopes %.3f, %.3f vs 5;", sl35, sl57);
    detail += buf;
    if (std::abs(sl35 - 5.0) > 0.5 || std::abs(sl57 - 5.0) > 0.5)
        ok = false;
    double el = t.seconds();
    ok = ok && el < 1800.0;
    std::printf("[%s] criterion 8: slope targets (3,5,9)/5:%s (%.1fs)\n", ok ? "PASS" : "FAIL",
                detail.c_str(), el);
    return ok;
}

bool criterion9()
{
    Timer t;
    bool ok = true;
    std::string detail;
    for (int d = 0; d <= 2; ++d) {
        auto rep = count::verify_dim_formula(d, {3, 5, 7}, 2);
        char buf[128];
        std::snprintf(buf, sizeof buf, " d=%d predicted=%.0f slopes=", d, rep.predicted);
        detail += buf;
        for (double s : rep.slopes) {
            std::snprintf(buf, sizeof buf, "%.3f,", s);
            detail += buf;
        }
        ok = ok && rep.agrees;
    }
    double el = t.seconds();
    std::printf("[%s] criterion 9: stratified dimension formula matches measured slopes "
                "within 0.5:%s (%.1fs)\n",
                ok ? "PASS" : "FAIL", detail.c_str(), el);
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<std::function<bool()>> criteria{
        criterion1, criterion2, criterion3, criterion4, criterion5,
        criterion6, criterion7, criterion8, criterion9};

    auto run = [&](int which) {
        try {
            return criteria[static_cast<std::size_t>(which - 1)]();
        } catch (const std::exception& e) {
            std::printf("[FAIL] criterion %d: exception: %s\n", which, e.what());
            return false;
        }
    };

    if (argc > 1) {
        int which = std::atoi(argv[1]);
        if (which < 1 || which > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "criterion number must be 1..9\n");
            return 2;
        }
        return run(which) ? 0 : 1;
    }

    int failures = 0;
    for (int which = 1; which <= static_cast<int>(criteria.size()); ++which)
        failures += run(which) ? 0 : 1;
    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
