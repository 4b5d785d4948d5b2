#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "adhmkit/polynomial.hpp"
#include "adhmkit/rational.hpp"

namespace adhm {

// Rational function in one variable t over Q, kept as a reduced fraction
// num/den with gcd(num, den) = 1 and den monic.
class RatFunc {
public:
    RatFunc() : num_(), den_(Poly<Rational>::one()) {}
    RatFunc(int n) : num_(Poly<Rational>(Rational(n))), den_(Poly<Rational>::one()) {}
    RatFunc(const Rational& r) : num_(Poly<Rational>(r)), den_(Poly<Rational>::one()) {}
    explicit RatFunc(Poly<Rational> num) : num_(std::move(num)), den_(Poly<Rational>::one()) {}
    RatFunc(Poly<Rational> num, Poly<Rational> den) : num_(std::move(num)), den_(std::move(den))
    {
        require(!den_.is_zero(), ErrorKind::Inconsistent, "zero denominator");
        normalize();
    }

    static RatFunc t() { return RatFunc(Poly<Rational>::t()); }
    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(1); }

    const Poly<Rational>& num() const { return num_; }
    const Poly<Rational>& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.is_one(); }

    RatFunc operator-() const { return RatFunc(-num_, den_, no_normalize{}); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b)
    {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b)
    {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b)
    {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b)
    {
        require(!b.is_zero(), ErrorKind::Inconsistent, "division by zero rational function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    bool regular_at_zero() const { return !den_.coeff(0).is_zero(); }

    // Value at t = 0; absent on a pole.
    std::optional<Rational> eval_at_zero() const
    {
        if (!regular_at_zero())
            return std::nullopt;
        return num_.coeff(0) / den_.coeff(0);
    }

    Rational eval(const Rational& x) const
    {
        Rational d = den_.eval(x);
        require(!d.is_zero(), ErrorKind::Inconsistent, "pole at evaluation point");
        return num_.eval(x) / d;
    }

    std::string str() const
    {
        if (den_.is_one())
            return "(" + num_.str() + ")";
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.str(); }

private:
    struct no_normalize {};
    RatFunc(Poly<Rational> num, Poly<Rational> den, no_normalize)
        : num_(std::move(num)), den_(std::move(den))
    {
    }

    void normalize()
    {
        if (num_.is_zero()) {
            den_ = Poly<Rational>::one();
            return;
        }
        Poly<Rational> g = Poly<Rational>::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly<Rational>::divmod(num_, g).first;
            den_ = Poly<Rational>::divmod(den_, g).first;
        }
        Rational lead = den_.leading();
        if (!(lead == Rational(1))) {
            Rational inv = lead.inv();
            num_ = inv * num_;
            den_ = inv * den_;
        }
    }

    Poly<Rational> num_;
    Poly<Rational> den_;
};

} // namespace adhm
