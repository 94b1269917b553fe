#pragma once

// Word-size prime field arithmetic, Gaussian elimination mod p, and the
// lifting steps (CRT, rational reconstruction) of the multi-modular solver.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "types.hpp"

namespace x0::modp
{

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

inline u64 powmod(u64 a, u64 e, u64 p)
{
    u64 r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1U) {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1U;
    }
    return r;
}

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(u64 n)
{
    if (n < 2) {
        return false;
    }
    for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) {
            return n == small;
        }
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

/// Primes below 2^62 in descending order, generated on demand.
class PrimeSequence
{
public:
    static constexpr u64 kLimit = u64{1} << 62;

    /// Skips the first `offset` primes of the sequence.
    explicit PrimeSequence(std::size_t offset = 0)
    {
        for (std::size_t i = 0; i < offset; ++i) {
            next();
        }
    }

    u64 next()
    {
        do {
            cursor_ -= 1;
        } while (!is_prime(cursor_));
        return cursor_;
    }

private:
    u64 cursor_ = kLimit;
};

inline u64 inverse(u64 a, u64 p)
{
    if (a % p == 0) {
        throw std::domain_error("modp::inverse of zero");
    }
    return powmod(a, p - 2, p);
}

/// Shoup's precomputation for repeated multiplication by the fixed operand w < p < 2^62.
inline u64 shoup_precompute(u64 w, u64 p) { return static_cast<u64>((static_cast<u128>(w) << 64U) / p); }

inline u64 mul_shoup(u64 w, u64 w_pre, u64 x, u64 p)
{
    const u64 q = static_cast<u64>((static_cast<u128>(w_pre) * x) >> 64U);
    const u64 r = w * x - q * p;
    return r >= p ? r - p : r;
}

/// Row-major dense matrix over Z/p.
struct Matrix
{
    std::size_t rows = 0;
    std::size_t cols = 0;
    u64 p = 0;
    std::vector<u64> data;

    u64 *row(std::size_t r) { return data.data() + r * cols; }
    const u64 *row(std::size_t r) const { return data.data() + r * cols; }
};

/// Reduces a row-major integer matrix modulo p.
inline Matrix reduce(std::span<const Integer> entries, std::size_t rows, std::size_t cols, u64 p)
{
    Matrix m{rows, cols, p, std::vector<u64>(rows * cols)};
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m.data[i] = sgn(entries[i]) == 0 ? 0 : mpz_fdiv_ui(entries[i].get_mpz_t(), p);
    }
    return m;
}

struct KernelModP
{
    std::size_t rank = 0;
    /// cols - rank.
    std::size_t dimension = 0;
    /// A nonzero kernel vector when dimension >= 1: the first free column is
    /// set to 1 and every other free column to 0.
    std::vector<u64> generator;
};

/// Row echelon form by Gaussian elimination, then one kernel vector by back substitution.
inline KernelModP kernel(Matrix m)
{
    const u64 p = m.p;
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols && row < m.rows; ++c) {
        std::size_t piv = row;
        while (piv < m.rows && m.row(piv)[c] == 0) {
            ++piv;
        }
        if (piv == m.rows) {
            continue;
        }
        if (piv != row) {
            std::swap_ranges(m.row(piv) + c, m.row(piv) + m.cols, m.row(row) + c);
        }
        u64 *prow = m.row(row);
        const u64 inv = inverse(prow[c], p);
        const u64 inv_pre = shoup_precompute(inv, p);
        for (std::size_t k = c; k < m.cols; ++k) {
            prow[k] = mul_shoup(inv, inv_pre, prow[k], p);
        }
        for (std::size_t r = row + 1; r < m.rows; ++r) {
            u64 *cur = m.row(r);
            const u64 x = cur[c];
            if (x == 0) {
                continue;
            }
            const u64 x_pre = shoup_precompute(x, p);
            for (std::size_t k = c; k < m.cols; ++k) {
                const u64 t = mul_shoup(x, x_pre, prow[k], p);
                cur[k] = cur[k] >= t ? cur[k] - t : cur[k] + p - t;
            }
        }
        pivot_cols.push_back(c);
        ++row;
    }

    KernelModP out;
    out.rank = pivot_cols.size();
    out.dimension = m.cols - out.rank;
    if (out.dimension == 0) {
        return out;
    }
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivot_cols) {
        is_pivot[c] = true;
    }
    const auto free_col = static_cast<std::size_t>(std::find(is_pivot.begin(), is_pivot.end(), false) - is_pivot.begin());
    out.generator.assign(m.cols, 0);
    out.generator[free_col] = 1;
    for (std::size_t i = pivot_cols.size(); i-- > 0;) {
        const std::size_t c = pivot_cols[i];
        const u64 *r = m.row(i);
        u64 s = 0;
        for (std::size_t k = c + 1; k < m.cols; ++k) {
            if (out.generator[k] != 0 && r[k] != 0) {
                s = static_cast<u64>((static_cast<u128>(r[k]) * out.generator[k] + s) % p);
            }
        }
        out.generator[c] = s == 0 ? 0 : p - s;
    }
    return out;
}

/// Incremental Chinese remaindering of a vector of residues.
class CrtAccumulator
{
public:
    std::size_t size() const { return residues_.size(); }
    const Integer &modulus() const { return modulus_; }
    const std::vector<Integer> &residues() const { return residues_; }

    void add(std::span<const u64> r, u64 p)
    {
        if (residues_.empty()) {
            residues_.resize(r.size());
            for (std::size_t i = 0; i < r.size(); ++i) {
                residues_[i] = Integer(static_cast<unsigned long>(r[i]));
            }
            modulus_ = Integer(static_cast<unsigned long>(p));
            return;
        }
        if (r.size() != residues_.size()) {
            throw std::invalid_argument("CrtAccumulator: size mismatch");
        }
        const u64 m_mod_p = mpz_fdiv_ui(modulus_.get_mpz_t(), p);
        const u64 m_inv = inverse(m_mod_p, p);
        for (std::size_t i = 0; i < r.size(); ++i) {
            const u64 cur = mpz_fdiv_ui(residues_[i].get_mpz_t(), p);
            const u64 diff = r[i] >= cur ? r[i] - cur : r[i] + p - cur;
            const u64 t = mulmod(diff, m_inv, p);
            if (t != 0) {
                mpz_addmul_ui(residues_[i].get_mpz_t(), modulus_.get_mpz_t(), t);
            }
        }
        modulus_ *= static_cast<unsigned long>(p);
    }

private:
    std::vector<Integer> residues_;
    Integer modulus_ = 1;
};

/// Representative of r modulo m in (-m/2, m/2].
inline Integer symmetric_lift(const Integer &r, const Integer &m)
{
    Integer x = r % m;
    if (sgn(x) < 0) {
        x += m;
    }
    if (2 * x > m) {
        x -= m;
    }
    return x;
}

struct Fraction
{
    Integer num;
    Integer den;

    friend bool operator==(const Fraction &, const Fraction &) = default;
};

/// Wang's rational reconstruction: the unique a/b with |a|, b <= sqrt(m/2)
/// and a = b u (mod m), if it exists.
inline std::optional<Fraction> rational_reconstruction(const Integer &u, const Integer &m)
{
    Integer bound;
    Integer half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    Integer r0 = m, r1 = u % m;
    if (sgn(r1) < 0) {
        r1 += m;
    }
    Integer t0 = 0, t1 = 1, q, tmp;
    while (r1 > bound) {
        mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
        tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (sgn(t1) == 0 || abs(t1) > bound) {
        return std::nullopt;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1) {
        return std::nullopt;
    }
    if (sgn(t1) < 0) {
        return Fraction{-r1, -t1};
    }
    return Fraction{r1, t1};
}

} // namespace x0::modp
