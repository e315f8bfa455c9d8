#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace et14 {

// Exact rational arithmetic, backed by GMP. mpq_class keeps values reduced
// with a positive denominator, which is exactly the canonical form we need.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "n" or "n/d". Throws std::invalid_argument on malformed input.
Rational rat_from_string(const std::string& s);

// Canonical text form: "n" when the denominator is 1, else "n/d".
inline std::string rat_to_string(const Rational& r) { return r.get_str(); }

// r^e for integer e; e < 0 requires r != 0.
Rational rat_pow(const Rational& r, long e);

// n! for n >= 0.
Rational factorial(long n);

// Double factorial n(n-2)(n-4)..., with (-1)!! = 1!! = 1.
Rational double_factorial(long n);

// SplitMix64: tiny deterministic generator, stable across platforms, so that
// reports with a recorded seed are byte-identical everywhere.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // Random rational with numerator in [-max_num, max_num] and denominator
    // in [1, max_den]. Bounded denominators keep exact arithmetic fast.
    Rational rational(long max_num, long max_den = 64) {
        long num = static_cast<long>(below(2 * max_num + 1)) - max_num;
        long den = static_cast<long>(below(max_den)) + 1;
        return rat(num, den);
    }

    // Like rational() but never zero.
    Rational nonzero_rational(long max_num, long max_den = 64) {
        for (;;) {
            Rational r = rational(max_num, max_den);
            if (r != 0) return r;
        }
    }
};

}  // namespace et14
