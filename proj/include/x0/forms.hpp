#pragma once

// q-expansions of Delta, E4, E4^3, Delta(N z), j = E4^3 / Delta and
// f = Delta(N z) / Delta. Every builder takes an absolute q-exponent `prec`
// and returns a series exact up to exactly that exponent.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ntarith.hpp"
#include "qseries.hpp"

namespace x0
{

enum class FormLabel
{
    Delta,
    E4,
    E4Cubed,
    DeltaN,
    J,
    F
};

inline const char *to_string(FormLabel label)
{
    switch (label) {
    case FormLabel::Delta:
        return "Delta";
    case FormLabel::E4:
        return "E4";
    case FormLabel::E4Cubed:
        return "E4Cubed";
    case FormLabel::DeltaN:
        return "DeltaN";
    case FormLabel::J:
        return "J";
    case FormLabel::F:
        return "F";
    }
    return "?";
}

struct FormExpansion
{
    QSeries series;
    FormLabel label;
    /// N for DeltaN and F; 1 otherwise.
    std::int64_t level = 1;
};

/// prod_{n >= 1} (1 - q^n) exact to q^prec, via Euler's pentagonal-number theorem:
/// sum over k in Z of (-1)^k q^(k(3k-1)/2).
inline QSeries euler_product(Exponent prec)
{
    if (prec < 0) {
        return QSeries::zero(prec);
    }
    std::vector<Integer> c(static_cast<std::size_t>(prec + 1));
    for (std::int64_t k = 0;; ++k) {
        const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
        const std::int64_t e1 = k * (3 * k - 1) / 2;
        const std::int64_t e2 = k * (3 * k + 1) / 2;
        if (e1 > prec) {
            break;
        }
        c[static_cast<std::size_t>(e1)] += sign;
        if (k > 0 && e2 <= prec) {
            c[static_cast<std::size_t>(e2)] += sign;
        }
    }
    return QSeries(0, std::move(c), prec);
}

/// Delta = q prod (1 - q^n)^24.
inline FormExpansion delta(Exponent prec)
{
    if (prec < 1) {
        throw std::invalid_argument("delta: prec must be at least 1");
    }
    QSeries s = shift(pow(euler_product(prec - 1), 24), 1);
    return {truncate(s, prec), FormLabel::Delta, 1};
}

/// E4 = 1 + 240 sum sigma_3(n) q^n.
inline FormExpansion e4(Exponent prec)
{
    if (prec < 0) {
        throw std::invalid_argument("e4: prec must be nonnegative");
    }
    auto c = sigma3_table(prec);
    c[0] = 1;
    for (std::size_t n = 1; n < c.size(); ++n) {
        c[n] *= 240;
    }
    return {QSeries(0, std::move(c), prec), FormLabel::E4, 1};
}

inline FormExpansion e4_cubed(Exponent prec)
{
    return {pow(e4(prec).series, 3, prec), FormLabel::E4Cubed, 1};
}

/// Delta(N z), i.e. Delta with q replaced by q^N.
inline FormExpansion delta_n(std::int64_t N, Exponent prec)
{
    if (N < 1) {
        throw std::invalid_argument("delta_n: N must be positive");
    }
    if (prec < N) {
        return {QSeries::zero(prec), FormLabel::DeltaN, N};
    }
    const Exponent base = (prec + 1) / N; // N * base + N - 1 >= prec
    return {truncate(substitute_qN(delta(base).series, N), prec), FormLabel::DeltaN, N};
}

/// j = E4^3 / Delta, valuation -1.
inline FormExpansion j_invariant(Exponent prec)
{
    if (prec < -1) {
        throw std::invalid_argument("j_invariant: prec must be at least -1");
    }
    // E4^3 needs prec + 1 (shifted down by Delta's valuation); 1/Delta loses 2.
    const QSeries inv = invert(delta(prec + 2).series);
    const QSeries j = mul(e4_cubed(prec + 1).series, inv, prec);
    if (j.validity() != prec) {
        throw InternalInconsistency("j_invariant: validity " + std::to_string(j.validity()) + " != " +
                                    std::to_string(prec));
    }
    return {j, FormLabel::J, 1};
}

/// f = Delta(N z) / Delta, valuation N - 1.
inline FormExpansion f_function(std::int64_t N, Exponent prec)
{
    if (N < 2) {
        throw std::invalid_argument("f_function: N must be at least 2");
    }
    if (prec < N - 1) {
        throw std::invalid_argument("f_function: prec must be at least N - 1");
    }
    // Delta(N z) / Delta is exact to V + N - 2 when Delta is exact to V.
    const QSeries d = delta(prec - N + 2).series;
    const QSeries f = mul(substitute_qN(d, N), invert(d), prec);
    if (f.validity() != prec) {
        throw InternalInconsistency("f_function: validity " + std::to_string(f.validity()) + " != " +
                                    std::to_string(prec));
    }
    return {f, FormLabel::F, N};
}

} // namespace x0
