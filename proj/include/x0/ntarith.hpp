#pragma once

// Elementary multiplicative number theory on small positive integers.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "types.hpp"

namespace x0
{

struct PrimePower
{
    std::int64_t prime;
    int exponent;

    friend bool operator==(const PrimePower &, const PrimePower &) = default;
};

/// Prime factorization with strictly increasing primes. Empty for 1.
using Factorization = std::vector<PrimePower>;

namespace detail
{

inline void require_positive(std::int64_t n, const char *what)
{
    if (n < 1) {
        throw std::invalid_argument(std::string(what) + ": argument must be positive, got " + std::to_string(n));
    }
}

} // namespace detail

/// Trial division.
inline Factorization factor(std::int64_t n)
{
    detail::require_positive(n, "factor");
    Factorization f;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) {
            continue;
        }
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.push_back({p, e});
    }
    if (n > 1) {
        f.push_back({n, 1});
    }
    return f;
}

/// All positive divisors in ascending order.
inline std::vector<std::int64_t> divisors(std::int64_t n)
{
    detail::require_positive(n, "divisors");
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) {
                large.push_back(n / d);
            }
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline Integer sigma3(std::int64_t n)
{
    Integer s = 0;
    for (std::int64_t d : divisors(n)) {
        Integer c = d;
        s += c * c * c;
    }
    return s;
}

/// sigma3(n) for n = 0..limit (index 0 unused, set to 0), by a divisor sieve.
inline std::vector<Integer> sigma3_table(std::int64_t limit)
{
    std::vector<Integer> t(static_cast<std::size_t>(std::max<std::int64_t>(limit, 0) + 1));
    for (std::int64_t d = 1; d <= limit; ++d) {
        Integer cube = d;
        cube = cube * cube * cube;
        for (std::int64_t m = d; m <= limit; m += d) {
            t[static_cast<std::size_t>(m)] += cube;
        }
    }
    return t;
}

inline std::int64_t euler_phi(std::int64_t n)
{
    std::int64_t r = n;
    for (const auto &[p, e] : factor(n)) {
        r = r / p * (p - 1);
    }
    return r;
}

/// Index of Gamma_0(n) in SL_2(Z): n * prod_{p | n} (1 + 1/p).
inline std::int64_t dedekind_psi(std::int64_t n)
{
    std::int64_t r = n;
    for (const auto &[p, e] : factor(n)) {
        r = r / p * (p + 1);
    }
    return r;
}

} // namespace x0
