#pragma once

// Dense truncated products of integer coefficient vectors.
//
// Three kernels share one entry point: schoolbook, Karatsuba and Kronecker
// substitution (pack both operands into one big integer, let GMP multiply,
// unpack the signed digits). The automatic policy uses schoolbook for short
// operands and Kronecker otherwise.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "types.hpp"

namespace x0
{

struct MulPolicy
{
    enum class Algorithm
    {
        Automatic,
        Schoolbook,
        Karatsuba,
        Kronecker
    };

    Algorithm algorithm = Algorithm::Automatic;
    /// Automatic: operands whose shorter side is at most this long use schoolbook.
    std::size_t schoolbook_limit = 24;
    /// Karatsuba recursion bottoms out at this length.
    std::size_t karatsuba_base = 16;
};

namespace detail
{

using CoeffSpan = std::span<const Integer>;

inline std::vector<Integer> mul_schoolbook(CoeffSpan a, CoeffSpan b, std::size_t out_len)
{
    std::vector<Integer> out(out_len);
    if (a.empty() || b.empty()) {
        return out;
    }
    for (std::size_t i = 0; i < a.size() && i < out_len; ++i) {
        if (sgn(a[i]) == 0) {
            continue;
        }
        const std::size_t jmax = std::min(b.size(), out_len - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    return out;
}

inline void add_into(std::vector<Integer> &dst, std::size_t offset, const std::vector<Integer> &src)
{
    for (std::size_t i = 0; i < src.size() && offset + i < dst.size(); ++i) {
        dst[offset + i] += src[i];
    }
}

// Full (untruncated) product.
inline std::vector<Integer> karatsuba_full(CoeffSpan a, CoeffSpan b, std::size_t base)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    const std::size_t full = a.size() + b.size() - 1;
    if (std::min(a.size(), b.size()) <= base) {
        return mul_schoolbook(a, b, full);
    }
    const std::size_t m = (std::max(a.size(), b.size()) + 1) / 2;
    if (a.size() <= m || b.size() <= m) {
        // Unbalanced: split only the longer operand.
        CoeffSpan s = a.size() <= m ? a : b;
        CoeffSpan l = a.size() <= m ? b : a;
        std::vector<Integer> out(full);
        add_into(out, 0, karatsuba_full(s, l.first(m), base));
        add_into(out, m, karatsuba_full(s, l.subspan(m), base));
        return out;
    }
    CoeffSpan a0 = a.first(m), a1 = a.subspan(m);
    CoeffSpan b0 = b.first(m), b1 = b.subspan(m);
    auto z0 = karatsuba_full(a0, b0, base);
    auto z2 = karatsuba_full(a1, b1, base);

    std::vector<Integer> sa(a0.begin(), a0.end()), sb(b0.begin(), b0.end());
    for (std::size_t i = 0; i < a1.size(); ++i) {
        sa[i] += a1[i];
    }
    for (std::size_t i = 0; i < b1.size(); ++i) {
        sb[i] += b1[i];
    }
    auto z1 = karatsuba_full(sa, sb, base);
    for (std::size_t i = 0; i < z0.size(); ++i) {
        z1[i] -= z0[i];
    }
    for (std::size_t i = 0; i < z2.size(); ++i) {
        z1[i] -= z2[i];
    }

    std::vector<Integer> out(full);
    add_into(out, 0, z0);
    add_into(out, m, z1);
    add_into(out, 2 * m, z2);
    return out;
}

inline std::size_t max_bits(CoeffSpan a)
{
    std::size_t bits = 0;
    for (const auto &c : a) {
        if (sgn(c) != 0) {
            bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
        }
    }
    return bits;
}

// Packs sum c_i 2^(64*slot*i) into a signed big integer.
inline Integer kronecker_pack(CoeffSpan a, std::size_t slot)
{
    std::vector<std::uint64_t> pos(a.size() * slot, 0), neg(a.size() * slot, 0);
    bool any_neg = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int s = sgn(a[i]);
        if (s == 0) {
            continue;
        }
        auto &dst = s > 0 ? pos : neg;
        any_neg = any_neg || s < 0;
        std::size_t count = 0;
        mpz_export(dst.data() + i * slot, &count, -1, sizeof(std::uint64_t), 0, 0, a[i].get_mpz_t());
    }
    Integer p, n;
    mpz_import(p.get_mpz_t(), pos.size(), -1, sizeof(std::uint64_t), 0, 0, pos.data());
    if (any_neg) {
        mpz_import(n.get_mpz_t(), neg.size(), -1, sizeof(std::uint64_t), 0, 0, neg.data());
        p -= n;
    }
    return p;
}

inline std::vector<Integer> mul_kronecker(CoeffSpan a, CoeffSpan b, std::size_t out_len)
{
    std::vector<Integer> out(out_len);
    if (a.empty() || b.empty() || out_len == 0) {
        return out;
    }
    a = a.first(std::min(a.size(), out_len));
    b = b.first(std::min(b.size(), out_len));
    const std::size_t ba = max_bits(a), bb = max_bits(b);
    if (ba == 0 || bb == 0) {
        return out;
    }
    const std::size_t terms = std::min(a.size(), b.size());
    const std::size_t need = ba + bb + static_cast<std::size_t>(std::bit_width(terms)) + 2;
    const std::size_t slot = (need + 63) / 64;
    const std::size_t slot_bits = slot * 64;

    Integer prod = kronecker_pack(a, slot) * kronecker_pack(b, slot);

    // Offset every digit by 2^(slot_bits-1) so all digits become nonnegative.
    const std::size_t full = a.size() + b.size() - 1;
    std::vector<std::uint64_t> offset(full * slot, 0);
    for (std::size_t i = 0; i < full; ++i) {
        offset[i * slot + slot - 1] = std::uint64_t{1} << 63;
    }
    Integer off;
    mpz_import(off.get_mpz_t(), offset.size(), -1, sizeof(std::uint64_t), 0, 0, offset.data());
    prod += off;

    std::vector<std::uint64_t> limbs(full * slot + 1, 0);
    std::size_t count = 0;
    mpz_export(limbs.data(), &count, -1, sizeof(std::uint64_t), 0, 0, prod.get_mpz_t());

    Integer half;
    mpz_ui_pow_ui(half.get_mpz_t(), 2, slot_bits - 1);
    const std::size_t n = std::min(out_len, full);
    for (std::size_t i = 0; i < n; ++i) {
        mpz_import(out[i].get_mpz_t(), slot, -1, sizeof(std::uint64_t), 0, 0, limbs.data() + i * slot);
        out[i] -= half;
    }
    return out;
}

/// Coefficients 0..out_len-1 of the product of a and b.
inline std::vector<Integer> mul_dense(CoeffSpan a, CoeffSpan b, std::size_t out_len, const MulPolicy &policy = {})
{
    using Alg = MulPolicy::Algorithm;
    if (a.empty() || b.empty() || out_len == 0) {
        return std::vector<Integer>(out_len);
    }
    Alg alg = policy.algorithm;
    if (alg == Alg::Automatic) {
        alg = std::min(a.size(), b.size()) <= policy.schoolbook_limit ? Alg::Schoolbook : Alg::Kronecker;
    }
    switch (alg) {
    case Alg::Schoolbook:
        return mul_schoolbook(a, b, out_len);
    case Alg::Karatsuba: {
        auto full = karatsuba_full(a.first(std::min(a.size(), out_len)), b.first(std::min(b.size(), out_len)),
                                   std::max<std::size_t>(policy.karatsuba_base, 1));
        full.resize(out_len);
        return full;
    }
    default:
        return mul_kronecker(a, b, out_len);
    }
}

} // namespace detail
} // namespace x0
