#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "adhmkit/errors.hpp"
#include "adhmkit/linalg.hpp"
#include "adhmkit/matrix.hpp"
#include "adhmkit/rational.hpp"

namespace adhm {
namespace hilbert {

// Integer Laurent polynomial in (t, z). Canonical sorted storage keyed by
// (t-exponent, z-exponent); characters of honest representations stay
// integral, so any non-integer coefficient upstream is a bug.
class LaurentPoly {
public:
    using Key = std::pair<int, int>;

    LaurentPoly() = default;
    static LaurentPoly term(std::int64_t c, int et, int ez)
    {
        LaurentPoly p;
        if (c != 0)
            p.c_[{et, ez}] = c;
        return p;
    }
    static LaurentPoly one() { return term(1, 0, 0); }

    bool is_zero() const { return c_.empty(); }
    const std::map<Key, std::int64_t>& terms() const { return c_; }

    std::int64_t coeff(int et, int ez) const
    {
        auto it = c_.find({et, ez});
        return it == c_.end() ? 0 : it->second;
    }

    LaurentPoly& add_term(std::int64_t c, int et, int ez)
    {
        if (c == 0)
            return *this;
        auto [it, inserted] = c_.try_emplace({et, ez}, 0);
        (void)inserted;
        it->second += c;
        if (it->second == 0)
            c_.erase(it);
        return *this;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly out = a;
        for (const auto& [k, v] : b.c_)
            out.add_term(v, k.first, k.second);
        return out;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly out = a;
        for (const auto& [k, v] : b.c_)
            out.add_term(-v, k.first, k.second);
        return out;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly out;
        for (const auto& [ka, va] : a.c_)
            for (const auto& [kb, vb] : b.c_)
                out.add_term(va * vb, ka.first + kb.first, ka.second + kb.second);
        return out;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    // Coefficient of z^0 (constant-term extraction in z), as a poly in t.
    LaurentPoly z_constant_term() const
    {
        LaurentPoly out;
        for (const auto& [k, v] : c_)
            if (k.second == 0)
                out.add_term(v, k.first, 0);
        return out;
    }

    bool depends_on_z() const
    {
        for (const auto& [k, v] : c_) {
            (void)v;
            if (k.second != 0)
                return true;
        }
        return false;
    }

    std::int64_t eval_t1_z1() const
    {
        std::int64_t s = 0;
        for (const auto& [k, v] : c_) {
            (void)k;
            s += v;
        }
        return s;
    }

    std::string str() const
    {
        if (c_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        // Print highest t-power first ("t + 1 + t^-1").
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            const auto& k = it->first;
            std::int64_t a = it->second;
            if (!first)
                os << (a >= 0 ? " + " : " - ");
            else if (a < 0)
                os << "-";
            first = false;
            std::int64_t mag = a >= 0 ? a : -a;
            bool has_var = k.first != 0 || k.second != 0;
            if (mag != 1 || !has_var)
                os << mag;
            auto var = [&](const char* name, int e) {
                if (e == 0)
                    return;
                os << name;
                if (e != 1)
                    os << "^" << e;
            };
            var("t", k.first);
            var("z", k.second);
        }
        return os.str();
    }

private:
    std::map<Key, std::int64_t> c_;
};

// Truncated power series in u with LaurentPoly coefficients, orders 0..U.
class TruncSeries {
public:
    explicit TruncSeries(int trunc) : u_(static_cast<std::size_t>(trunc) + 1) {}

    static TruncSeries one(int trunc)
    {
        TruncSeries s(trunc);
        s.u_[0] = LaurentPoly::one();
        return s;
    }

    int trunc() const { return static_cast<int>(u_.size()) - 1; }
    const LaurentPoly& at(int k) const { return u_[static_cast<std::size_t>(k)]; }
    LaurentPoly& at(int k) { return u_[static_cast<std::size_t>(k)]; }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b)
    {
        require(a.trunc() == b.trunc(), ErrorKind::DimensionMismatch, "series trunc mismatch");
        TruncSeries out(a.trunc());
        for (int k = 0; k <= a.trunc(); ++k)
            out.at(k) = a.at(k) + b.at(k);
        return out;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b)
    {
        require(a.trunc() == b.trunc(), ErrorKind::DimensionMismatch, "series trunc mismatch");
        TruncSeries out(a.trunc());
        for (int k = 0; k <= a.trunc(); ++k)
            out.at(k) = a.at(k) - b.at(k);
        return out;
    }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b)
    {
        require(a.trunc() == b.trunc(), ErrorKind::DimensionMismatch, "series trunc mismatch");
        TruncSeries out(a.trunc());
        for (int i = 0; i <= a.trunc(); ++i) {
            if (a.at(i).is_zero())
                continue;
            for (int j = 0; i + j <= a.trunc(); ++j)
                out.at(i + j) += a.at(i) * b.at(j);
        }
        return out;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b)
    {
        if (a.trunc() != b.trunc())
            return false;
        for (int k = 0; k <= a.trunc(); ++k)
            if (!(a.at(k) == b.at(k)))
                return false;
        return true;
    }

    std::string str() const
    {
        std::string out;
        for (int k = 0; k <= trunc(); ++k) {
            if (at(k).is_zero())
                continue;
            if (!out.empty())
                out += " + ";
            std::string c = at(k).str();
            bool needs_parens = c.find(' ') != std::string::npos;
            if (k == 0)
                out += needs_parens ? "(" + c + ")" : c;
            else {
                std::string up = k == 1 ? "u" : "u^" + std::to_string(k);
                if (c == "1")
                    out += up;
                else
                    out += (needs_parens ? "(" + c + ")" : c) + " " + up;
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    std::vector<LaurentPoly> u_;
};

// Expansion of 1 / (1 - m u^a) up to order U, for a monomial m.
inline TruncSeries geometric_inverse(const LaurentPoly& m, int a, int trunc)
{
    require(a >= 1, ErrorKind::DimensionMismatch, "u-power must be >= 1");
    require(m.terms().size() == 1, ErrorKind::DimensionMismatch, "need a single monomial");
    TruncSeries out(trunc);
    LaurentPoly pow = LaurentPoly::one();
    for (int s = 0; s * a <= trunc; ++s) {
        out.at(s * a) += pow;
        pow = pow * m;
    }
    return out;
}

// Character of C[Hom(C^3, C^2)]: product of the six geometric inverses of
// the factors of P(z u) P(z^-1 u), P(x) = (1-x)(1-tx)(1-t^-1 x).
inline TruncSeries char_coordinate_ring(int trunc)
{
    TruncSeries out = TruncSeries::one(trunc);
    for (int zexp : {1, -1})
        for (int texp : {0, 1, -1})
            out = out * geometric_inverse(LaurentPoly::term(1, texp, zexp), 1, trunc);
    return out;
}

// Koszul numerator factors (1-u^2)(1-z^2 u^2)(1-z^-2 u^2) applied to the
// coordinate-ring character: alternating sum over the exterior powers of
// the three quadratic equations.
inline TruncSeries koszul_character(int trunc)
{
    TruncSeries out = char_coordinate_ring(trunc);
    for (int zexp : {0, 2, -2}) {
        TruncSeries fac = TruncSeries::one(trunc);
        if (trunc >= 2)
            fac.at(2) -= LaurentPoly::term(1, 0, zexp);
        out = out * fac;
    }
    return out;
}

// Sp(1) Weyl integration as constant-term extraction: per u-order,
// 1/2 * CT_z[(1 - z^2)(1 - z^-2) * coefficient].
inline TruncSeries weyl_integrate_sp1(const TruncSeries& s)
{
    LaurentPoly jac = LaurentPoly::term(2, 0, 0) - LaurentPoly::term(1, 0, 2)
        - LaurentPoly::term(1, 0, -2);
    TruncSeries out(s.trunc());
    for (int k = 0; k <= s.trunc(); ++k) {
        LaurentPoly ct = (jac * s.at(k)).z_constant_term();
        LaurentPoly half;
        for (const auto& [key, v] : ct.terms()) {
            require(v % 2 == 0, ErrorKind::InvariantViolation,
                    "Weyl integrand constant term must be even");
            half.add_term(v / 2, key.first, key.second);
        }
        out.at(k) = half;
    }
    return out;
}

// Invariant character of the quadric fiber ring: must equal
// 1 + (t + 1 + t^-1) u^2 for every truncation >= 3.
inline TruncSeries hilbert_rho(int trunc)
{
    require(trunc >= 3, ErrorKind::DimensionMismatch, "truncation must be >= 3");
    TruncSeries inv = weyl_integrate_sp1(koszul_character(trunc));
    TruncSeries expected(trunc);
    expected.at(0) = LaurentPoly::one();
    expected.at(2) = LaurentPoly::term(1, 1, 0) + LaurentPoly::term(1, 0, 0)
        + LaurentPoly::term(1, -1, 0);
    require(inv == expected, ErrorKind::MismatchWithReference,
            "invariant series differs from the reference value");
    return inv;
}

// --- Brute-force invariants oracle -----------------------------------------
//
// Independent route: polynomial ring on Hom(C^3, C^2)^vee (6 variables),
// ideal generated by the 3 quadratic moment entries, per-degree quotient by
// exact linear algebra, then invariants as the joint kernel of the E and F
// action operators; reports the torus character in t per degree.

namespace detail {

// Variables x_{r,c} for the 2x3 matrix entry functionals, index 3r + c.
// sl2 acts on row index (vector rep of Sp(1)); SO(3)-torus acts on column
// index with weights (1, 0, -1) after a change to the weight basis of C^3;
// we work directly in a weight basis, so i has column weights +1, 0, -1.
struct Mono {
    std::array<int, 6> e{}; // exponents
    int degree() const
    {
        int s = 0;
        for (int v : e)
            s += v;
        return s;
    }
};

inline std::vector<Mono> monomials_of_degree(int deg)
{
    std::vector<Mono> out;
    Mono m;
    // Lexicographic enumeration over 6 exponents summing to deg.
    std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == 5) {
            m.e[5] = left;
            out.push_back(m);
            return;
        }
        for (int v = left; v >= 0; --v) {
            m.e[idx] = v;
            rec(idx + 1, left - v);
        }
    };
    rec(0, deg);
    return out;
}

} // namespace detail

struct OracleReport {
    // Torus character (poly in t) of the invariant subspace per degree.
    std::vector<LaurentPoly> characters;
};

// Degrees 0..max_degree of the invariant ring of C[Hom(C^3, C^2)] modulo the
// three moment quadrics, computed without any series arithmetic.
inline OracleReport invariants_oracle(int max_degree)
{
    require(max_degree <= 8, ErrorKind::Unsupported, "oracle degree capped at 8");
    using detail::Mono;
    using Q = Rational;

    // Variable idx = 3r + c: row r in {0,1} (z-weight +1/-1), column c in
    // {0,1,2} with t-weights +1, -1, 0 (hyperbolic pair + unit vector).
    auto t_weight = [](const Mono& m) {
        static const int wc[6] = {1, -1, 0, 1, -1, 0};
        int w = 0;
        for (int k = 0; k < 6; ++k)
            w += m.e[k] * wc[k];
        return w;
    };

    // The three moment quadrics N_ab = x_{a,0} x_{b,1} + x_{a,1} x_{b,0}
    // + x_{a,2} x_{b,2} for ab = 00, 01, 11, as exponent-map polynomials.
    using Expanded = std::map<std::array<int, 6>, Q>;
    auto add_mono_product = [](Expanded& p, int v1, int v2, const Q& coeff) {
        std::array<int, 6> e{};
        e[v1] += 1;
        e[v2] += 1;
        auto [it, ok] = p.try_emplace(e, Q(0));
        (void)ok;
        it->second += coeff;
        if (it->second.is_zero())
            p.erase(it);
    };
    auto quadric = [&](int a, int b) {
        Expanded p;
        add_mono_product(p, 3 * a + 0, 3 * b + 1, Q(1));
        add_mono_product(p, 3 * a + 1, 3 * b + 0, Q(1));
        add_mono_product(p, 3 * a + 2, 3 * b + 2, Q(1));
        return p;
    };
    std::vector<Expanded> gens{quadric(0, 0), quadric(0, 1), quadric(1, 1)};

    OracleReport rep;
    for (int deg = 0; deg <= max_degree; ++deg) {
        auto monos = detail::monomials_of_degree(deg);
        std::map<std::array<int, 6>, std::size_t> index;
        for (std::size_t k = 0; k < monos.size(); ++k)
            index[monos[k].e] = k;

        // Degree piece of the ideal: m * q over all degree-(deg-2) monomials.
        Matrix<Q> ideal_rows(0, monos.size());
        if (deg >= 2) {
            auto lower = detail::monomials_of_degree(deg - 2);
            Matrix<Q> rows(lower.size() * gens.size(), monos.size());
            std::size_t r = 0;
            for (const auto& m : lower)
                for (const auto& g : gens) {
                    for (const auto& [ge, gc] : g) {
                        std::array<int, 6> e = m.e;
                        for (int k = 0; k < 6; ++k)
                            e[k] += ge[k];
                        rows(r, index.at(e)) += gc;
                    }
                    ++r;
                }
            ideal_rows = rows;
        }
        auto pivots = rref_in_place(ideal_rows);
        std::vector<bool> is_pivot(monos.size(), false);
        for (auto p : pivots)
            is_pivot[p] = true;
        std::vector<std::size_t> basis_cols;
        for (std::size_t c = 0; c < monos.size(); ++c)
            if (!is_pivot[c])
                basis_cols.push_back(c);

        // Reduce a coefficient vector modulo the ideal RREF rows.
        auto reduce = [&](std::vector<Q>& v) {
            for (std::size_t r = 0; r < pivots.size(); ++r) {
                Q f = v[pivots[r]];
                if (f.is_zero())
                    continue;
                for (std::size_t c = 0; c < monos.size(); ++c)
                    v[c] -= f * ideal_rows(r, c);
            }
        };

        // Derivation matrices for E (x_{0,c} -> x_{1,c}) and F (x_{1,c} ->
        // x_{0,c}) on the quotient basis.
        auto derivation = [&](bool lower_to_upper) {
            Matrix<Q> d(basis_cols.size(), basis_cols.size());
            std::map<std::size_t, std::size_t> col_of;
            for (std::size_t k = 0; k < basis_cols.size(); ++k)
                col_of[basis_cols[k]] = k;
            for (std::size_t k = 0; k < basis_cols.size(); ++k) {
                const Mono& m = monos[basis_cols[k]];
                std::vector<Q> img(monos.size(), Q(0));
                for (int c = 0; c < 3; ++c) {
                    int src = lower_to_upper ? 0 * 3 + c : 1 * 3 + c;
                    int dst = lower_to_upper ? 1 * 3 + c : 0 * 3 + c;
                    if (m.e[src] == 0)
                        continue;
                    std::array<int, 6> e = m.e;
                    e[src] -= 1;
                    e[dst] += 1;
                    img[index.at(e)] += Q(m.e[src]);
                }
                reduce(img);
                for (std::size_t c = 0; c < monos.size(); ++c)
                    if (!img[c].is_zero())
                        d(col_of.at(c), k) = img[c];
            }
            return d;
        };
        Matrix<Q> de = derivation(true);
        Matrix<Q> df = derivation(false);
        Matrix<Q> stacked = Matrix<Q>::vstack(de, df);
        Matrix<Q> ker = kernel_basis(stacked);

        // Character: the kernel is t-homogeneous; split basis vectors by the
        // t-weight of their support (mixed support would indicate a bug).
        LaurentPoly chi;
        for (std::size_t r = 0; r < ker.rows(); ++r) {
            int w = 0;
            bool seen = false;
            for (std::size_t c = 0; c < basis_cols.size(); ++c) {
                if (ker(r, c).is_zero())
                    continue;
                int wc = t_weight(monos[basis_cols[c]]);
                require(!seen || wc == w, ErrorKind::InvariantViolation,
                        "invariant vector mixes torus weights");
                w = wc;
                seen = true;
            }
            require(seen, ErrorKind::InvariantViolation, "zero kernel basis vector");
            chi.add_term(1, w, 0);
        }
        rep.characters.push_back(chi);
    }
    return rep;
}

// Character of C[o(3)] with variables of u-degree 2 and t-weights 1, 0, -1,
// and of the square of its maximal ideal (direct monomial enumeration).
// Their difference reproduces the invariant series; used as a cross-check.
inline TruncSeries char_o3_series(int trunc)
{
    TruncSeries out = TruncSeries::one(trunc);
    for (int texp : {1, 0, -1})
        out = out * geometric_inverse(LaurentPoly::term(1, texp, 0), 2, trunc);
    return out;
}

inline TruncSeries char_o3_msquared(int trunc)
{
    // Monomials x^a y^b z^c with a+b+c >= 2, u-degree 2(a+b+c), t-weight a-c.
    TruncSeries out(trunc);
    int max_total = trunc / 2;
    for (int a = 0; a <= max_total; ++a)
        for (int b = 0; a + b <= max_total; ++b)
            for (int c = 0; a + b + c <= max_total; ++c) {
                int total = a + b + c;
                if (total < 2)
                    continue;
                out.at(2 * total).add_term(1, a - c, 0);
            }
    return out;
}

} // namespace hilbert
} // namespace adhm
