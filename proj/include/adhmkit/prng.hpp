#pragma once

#include <cstdint>

#include "adhmkit/rational.hpp"

namespace adhm {

// SplitMix64: small, fast, reproducible across platforms. All randomized
// choices in the library flow through one of these, seeded explicitly.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    // Integer in [-m, m].
    long small_int(long m) { return static_cast<long>(below(2 * m + 1)) - m; }

    // Small rational with numerator in [-m, m] and denominator in {1, 2, 3}.
    Rational small_rational(long m)
    {
        long num = small_int(m);
        long den = 1 + static_cast<long>(below(3));
        return Rational(num, den);
    }

    std::uint64_t state() const { return s_; }

private:
    std::uint64_t s_;
};

} // namespace adhm
