#pragma once

// Test-side oracles written directly from the series definitions, sharing
// nothing with the library evaluators beyond scalar arithmetic.

#include <ostream>
#include <random>
#include <vector>

#include "qseries/scalar.hpp"

namespace oracle {

using qs::Exact;

inline Exact power(Exact a, long k) {
    Exact r(1L);
    if (k < 0) {
        a = Exact(1L) / a;
        k = -k;
    }
    for (long i = 0; i < k; ++i) r = r * a;
    return r;
}

inline Exact poch(const Exact& a, const Exact& q, long k) {
    Exact r(1L);
    for (long j = 0; j < k; ++j) r = r * (Exact(1L) - a * power(q, j));
    return r;
}

// [(-1)^k q^{binom(k,2)}]^e
inline Exact signed_q(const Exact& q, long k, long e) {
    Exact t = power(q, k * (k - 1) / 2 * e);
    return (k * e) % 2 != 0 ? -t : t;
}

/// r phi s with `num` already including any q^{-n}; zero entries counted
/// through `extra_zero_den` (p > 0) or `extra_zero_num` (p < 0).
inline Exact phi_sum(const std::vector<Exact>& num, const std::vector<Exact>& den, const Exact& q, const Exact& z,
                     long kmax, int p) {
    long r = static_cast<long>(num.size()) + (p < 0 ? -p : 0);
    long s = static_cast<long>(den.size()) + (p > 0 ? p : 0);
    Exact sum(0L);
    for (long k = 0; k <= kmax; ++k) {
        Exact t(1L);
        for (const Exact& a : num) t = t * poch(a, q, k);
        for (const Exact& b : den) t = t / poch(b, q, k);
        t = t / poch(q, q, k);
        t = t * signed_q(q, k, 1 + s - r) * power(z, k);
        sum = sum + t;
    }
    return sum;
}

/// W^p(a; tail; q, z), tail including q^{-n}, via the very-well-poised factor.
inline Exact w_sum(const Exact& a, const std::vector<Exact>& tail, const Exact& q, const Exact& z, long kmax, int p) {
    Exact sum(0L);
    for (long k = 0; k <= kmax; ++k) {
        Exact t = (Exact(1L) - a * power(q, 2 * k)) / (Exact(1L) - a) * poch(a, q, k) / poch(q, q, k);
        for (const Exact& b : tail) t = t * poch(b, q, k) / poch(q * a / b, q, k);
        t = t * signed_q(q, k, p) * power(z, k);
        sum = sum + t;
    }
    return sum;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    Exact rational(long h = 16) {
        std::uniform_int_distribution<long> d(1, h);
        long p = d(g_), r = d(g_);
        return Exact::ratio(std::bernoulli_distribution(0.5)(g_) ? -p : p, r);
    }
    Exact gaussian(long h = 9) { return Exact(rational(h).re(), rational(h).re()); }
    /// A base off the unit circle and away from small roots of unity.
    Exact base(long h = 16) {
        for (;;) {
            Exact q = rational(h);
            if (q.abs2() != 1) return q;
        }
    }
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g_); }
    std::mt19937_64& engine() { return g_; }

private:
    std::mt19937_64 g_;
};

}  // namespace oracle

namespace qs {
// Readable gtest failure messages.
inline void PrintTo(const Exact& x, std::ostream* os) { *os << x.to_string(); }
inline void PrintTo(const Float& x, std::ostream* os) { *os << x.to_string(); }
}  // namespace qs
