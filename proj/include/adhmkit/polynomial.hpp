#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "adhmkit/errors.hpp"
#include "adhmkit/rational.hpp"

namespace adhm {

// Dense univariate polynomial over a field K. Coefficients are stored from
// degree 0 upward with no trailing zeros; the zero polynomial has an empty
// coefficient vector and degree -1.
template <class K>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Poly(const K& c0) : c_{c0} { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(K(1)); }
    static Poly t()
    {
        return Poly(std::vector<K>{K(0), K(1)});
    }
    static Poly monomial(int deg, const K& c)
    {
        std::vector<K> v(static_cast<size_t>(deg) + 1, K(0));
        v.back() = c;
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == K(1); }

    const std::vector<K>& coeffs() const { return c_; }
    K coeff(int i) const
    {
        if (i < 0 || i >= static_cast<int>(c_.size()))
            return K(0);
        return c_[static_cast<size_t>(i)];
    }
    const K& leading() const
    {
        require(!is_zero(), ErrorKind::Inconsistent, "leading coefficient of zero poly");
        return c_.back();
    }

    K eval(const K& x) const
    {
        K acc(0);
        for (size_t i = c_.size(); i-- > 0;)
            acc = acc * x + c_[i];
        return acc;
    }

    Poly operator-() const
    {
        std::vector<K> v(c_);
        for (auto& x : v)
            x = -x;
        return Poly(std::move(v));
    }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        std::vector<K> v(std::max(a.c_.size(), b.c_.size()), K(0));
        for (size_t i = 0; i < v.size(); ++i)
            v[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero())
            return Poly();
        std::vector<K> v(a.c_.size() + b.c_.size() - 1, K(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                v[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(v));
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator*(const K& c, const Poly& p)
    {
        std::vector<K> v(p.c_);
        for (auto& x : v)
            x = c * x;
        return Poly(std::move(v));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Euclidean division: returns (quotient, remainder).
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
    {
        require(!b.is_zero(), ErrorKind::Inconsistent, "polynomial division by zero");
        Poly r = a, q;
        K lb = b.leading();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int d = r.degree() - b.degree();
            K c = r.leading() / lb;
            Poly m = monomial(d, c);
            q += m;
            r -= m * b;
        }
        return {q, r};
    }

    Poly monic() const
    {
        if (is_zero())
            return *this;
        K inv = K(1) / leading();
        return inv * *this;
    }

    static Poly gcd(Poly a, Poly b)
    {
        while (!b.is_zero()) {
            Poly r = divmod(a, b).second;
            a = b;
            b = r;
        }
        return a.monic();
    }

    std::string str(const std::string& var = "t") const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == K(0))
                continue;
            if (!out.empty())
                out += " + ";
            std::string cs;
            {
                std::ostringstream os;
                os << c_[i];
                cs = os.str();
            }
            if (i == 0)
                out += cs;
            else if (i == 1)
                out += cs + "*" + var;
            else
                out += cs + "*" + var + "^" + std::to_string(i);
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == K(0))
            c_.pop_back();
    }

    std::vector<K> c_;
};

// Rational roots of a Q-polynomial, with multiplicities, via the rational
// root theorem on the primitive integer model plus repeated deflation.
// Returns roots sorted ascending; `fully_split` reports whether the poly
// factors into linear terms over Q.
struct RationalRoots {
    std::vector<std::pair<Rational, int>> roots;
    bool fully_split = false;
    int residual_degree = 0;
};

inline RationalRoots rational_roots(const Poly<Rational>& f)
{
    RationalRoots out;
    if (f.is_zero()) {
        out.fully_split = false;
        out.residual_degree = -1;
        return out;
    }
    Poly<Rational> g = f;

    // Strip roots at zero first.
    int zero_mult = 0;
    while (!g.is_zero() && g.coeff(0).is_zero()) {
        std::vector<Rational> shifted(g.coeffs().begin() + 1, g.coeffs().end());
        g = Poly<Rational>(shifted);
        ++zero_mult;
    }
    if (zero_mult > 0)
        out.roots.push_back({Rational(0), zero_mult});

    while (g.degree() >= 1) {
        // Primitive integer model.
        mpz_class lcm_den(1);
        for (const auto& c : g.coeffs())
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.den().get_mpz_t());
        std::vector<mpz_class> ic;
        for (const auto& c : g.coeffs())
            ic.push_back(c.num() * (lcm_den / c.den()));
        mpz_class a0 = abs(ic.front()), an = abs(ic.back());

        auto divisors = [](const mpz_class& n) {
            std::vector<mpz_class> ds;
            if (n == 0)
                return ds;
            for (mpz_class d(1); d * d <= n; ++d) {
                if (n % d == 0) {
                    ds.push_back(d);
                    if (d * d != n)
                        ds.push_back(n / d);
                }
            }
            return ds;
        };
        std::vector<Rational> candidates;
        for (const auto& p : divisors(a0))
            for (const auto& q : divisors(an)) {
                candidates.push_back(Rational(mpq_class(p, q)));
                candidates.push_back(Rational(mpq_class(-p, q)));
            }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        bool found = false;
        for (const auto& r : candidates) {
            if (g.eval(r).is_zero()) {
                int mult = 0;
                Poly<Rational> lin(std::vector<Rational>{-r, Rational(1)});
                while (true) {
                    auto [q, rem] = Poly<Rational>::divmod(g, lin);
                    if (!rem.is_zero())
                        break;
                    g = q;
                    ++mult;
                }
                out.roots.push_back({r, mult});
                found = true;
                break;
            }
        }
        if (!found)
            break;
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.residual_degree = std::max(g.degree(), 0);
    out.fully_split = g.degree() <= 0;
    return out;
}

} // namespace adhm
