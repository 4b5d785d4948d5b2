#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "adhmkit/errors.hpp"

namespace adhm {

// Prime-field element with runtime modulus. A modulus of 0 marks a "bare"
// integer constant (0 or ±1 style values from generic code); arithmetic
// promotes it to the other operand's modulus. Within one computation all
// set moduli must agree.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(long v, std::uint32_t p) : p_(p)
    {
        if (p == 0) {
            v_ = static_cast<std::int64_t>(v);
        } else {
            long m = v % static_cast<long>(p);
            if (m < 0)
                m += p;
            v_ = m;
        }
    }
    explicit Fp(int v) : v_(v), p_(0) {}
    explicit Fp(long v) : v_(v), p_(0) {}

    static Fp zero() { return Fp(); }
    static Fp one() { return Fp(1); }

    std::uint32_t modulus() const { return p_; }
    std::int64_t value() const { return v_; }

    bool is_zero() const { return v_ == 0; }

    Fp reduced(std::uint32_t p) const { return Fp(static_cast<long>(v_), p); }

    friend Fp operator+(const Fp& a, const Fp& b)
    {
        std::uint32_t p = join(a.p_, b.p_);
        return Fp(static_cast<long>(a.v_ + b.v_), p);
    }
    friend Fp operator-(const Fp& a, const Fp& b)
    {
        std::uint32_t p = join(a.p_, b.p_);
        return Fp(static_cast<long>(a.v_ - b.v_), p);
    }
    friend Fp operator*(const Fp& a, const Fp& b)
    {
        std::uint32_t p = join(a.p_, b.p_);
        return Fp(static_cast<long>(a.v_ * b.v_), p);
    }
    Fp operator-() const { return Fp(static_cast<long>(-v_), p_); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    Fp inv() const
    {
        require(p_ != 0, ErrorKind::Inconsistent, "inverse needs a set modulus");
        require(v_ % p_ != 0, ErrorKind::Inconsistent, "inverse of zero mod p");
        // Fermat; p is prime.
        std::int64_t r = 1, b = v_ % p_, e = p_ - 2;
        while (e) {
            if (e & 1)
                r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return Fp(static_cast<long>(r), p_);
    }
    friend Fp operator/(const Fp& a, const Fp& b)
    {
        std::uint32_t p = join(a.p_, b.p_);
        require(p != 0, ErrorKind::Inconsistent, "division needs a set modulus");
        return a.reduced(p) * b.reduced(p).inv();
    }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    friend bool operator==(const Fp& a, const Fp& b)
    {
        std::uint32_t p = join(a.p_, b.p_);
        if (p == 0)
            return a.v_ == b.v_;
        return a.reduced(p).v_ == b.reduced(p).v_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    std::string str() const { return std::to_string(v_); }
    friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

private:
    static std::uint32_t join(std::uint32_t a, std::uint32_t b)
    {
        if (a == 0)
            return b;
        if (b == 0)
            return a;
        require(a == b, ErrorKind::DimensionMismatch, "mixed prime moduli");
        return a;
    }

    std::int64_t v_;
    std::uint32_t p_;
};

} // namespace adhm
