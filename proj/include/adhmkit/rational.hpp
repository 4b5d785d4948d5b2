#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "adhmkit/errors.hpp"

namespace adhm {

// Arbitrary-precision rational scalar. Wraps GMP's mpq_class, which keeps
// values in lowest terms with positive denominator.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(long num, long den) : v_(num, den)
    {
        require(den != 0, ErrorKind::Parse, "zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const mpz_class& z) : v_(z) {}

    // Parses "n" or "n/d".
    static Rational parse(const std::string& s)
    {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            raise(ErrorKind::Parse, "bad rational literal '" + s + "'");
        require(q.get_den() != 0, ErrorKind::Parse, "zero denominator in '" + s + "'");
        q.canonicalize();
        return Rational(q);
    }

    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o)
    {
        require(!o.is_zero(), ErrorKind::Inconsistent, "division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inv() const
    {
        require(!is_zero(), ErrorKind::Inconsistent, "inverse of zero");
        return Rational(mpq_class(1) / v_);
    }

    bool is_integer() const { return v_.get_den() == 1; }

    // Exact square root when the value is a perfect square of a rational.
    std::optional<Rational> sqrt_exact() const
    {
        if (sign() < 0)
            return std::nullopt;
        mpz_class n = v_.get_num(), d = v_.get_den();
        if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0)
            return std::nullopt;
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        return Rational(mpq_class(rn, rd));
    }

    double to_double() const { return v_.get_d(); }

    std::string str() const
    {
        if (is_integer())
            return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    // Value mod an odd prime p; fails when the denominator vanishes mod p.
    std::optional<std::uint32_t> mod_p(std::uint32_t p) const
    {
        mpz_class n = v_.get_num(), d = v_.get_den();
        mpz_class pz(static_cast<unsigned long>(p));
        mpz_class dm = d % pz;
        if (dm == 0)
            return std::nullopt;
        mpz_class di;
        if (mpz_invert(di.get_mpz_t(), dm.get_mpz_t(), pz.get_mpz_t()) == 0)
            return std::nullopt;
        mpz_class nm = n % pz;
        if (nm < 0)
            nm += pz;
        mpz_class r = (nm * di) % pz;
        return static_cast<std::uint32_t>(r.get_ui());
    }

private:
    mpq_class v_;
};

} // namespace adhm
