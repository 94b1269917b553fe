#pragma once

// Cusps of Gamma_0(N) grouped by denominator, the divisors of Delta and
// Delta(N z) on them, and the pole-degree computations behind the
// birationality certificate for the plane model.
//
// A cusp class is identified by its denominator d | N. There are
// phi(gcd(d, N/d)) inequivalent cusps c/d, and both orders below are the
// same at each of them:
//
//   ord Delta       = (N/d) / gcd(d, N/d)
//   ord Delta(N z)  =     d / gcd(d, N/d)

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "ntarith.hpp"

namespace x0
{

using Rational = mpq_class;

struct CuspClass
{
    std::int64_t d = 1;
    /// Number of inequivalent cusps with denominator d.
    std::int64_t multiplicity = 1;
    Rational ord_delta;
    Rational ord_deltaN;
};

struct PoleTerm
{
    CuspClass cusp;
    std::int64_t order = 0;
};

struct DegreeReport
{
    std::int64_t N = 0;
    std::int64_t d_f1 = 0;
    std::int64_t d_f2 = 0;
    std::int64_t gcd_value = 0;
    bool birational = false;
};

namespace detail
{

inline void require_level(std::int64_t N, const char *what)
{
    if (N < 2) {
        throw std::invalid_argument(std::string(what) + ": level must be at least 2, got " + std::to_string(N));
    }
}

/// Converts an order to an integer, failing loudly if it is not one.
inline std::int64_t integral(const Rational &r, const char *what)
{
    if (r.get_den() != 1) {
        throw InternalInconsistency(std::string(what) + ": non-integral order " + r.get_str());
    }
    return r.get_num().get_si();
}

} // namespace detail

inline std::vector<CuspClass> cusp_classes(std::int64_t N)
{
    detail::require_level(N, "cusp_classes");
    std::vector<CuspClass> out;
    for (std::int64_t d : divisors(N)) {
        const std::int64_t m = N / d;
        const std::int64_t g = std::gcd(d, m);
        CuspClass c;
        c.d = d;
        c.multiplicity = euler_phi(g);
        c.ord_delta = Rational(m, g);
        c.ord_deltaN = Rational(d, g);
        c.ord_delta.canonicalize();
        c.ord_deltaN.canonicalize();
        out.push_back(c);
    }
    return out;
}

/// Pole divisor of Delta(N z)/Delta: order (N/d - d)/gcd(d, N/d) at the classes with d^2 < N.
inline std::vector<PoleTerm> div_inf_f(std::int64_t N)
{
    std::vector<PoleTerm> out;
    for (const auto &c : cusp_classes(N)) {
        if (c.d * c.d >= N) {
            continue;
        }
        out.push_back({c, detail::integral(c.ord_delta - c.ord_deltaN, "div_inf_f")});
    }
    return out;
}

/// Degree of the pole divisor of Delta(N z)/Delta.
inline std::int64_t degree_f(std::int64_t N)
{
    std::int64_t total = 0;
    for (const auto &t : div_inf_f(N)) {
        total += t.cusp.multiplicity * t.order;
    }
    return total;
}

/// Degree of the pole divisor of j on X_0(N), summed over cusp classes.
inline std::int64_t degree_f1(std::int64_t N)
{
    Rational total = 0;
    for (const auto &c : cusp_classes(N)) {
        total += c.multiplicity * c.ord_delta;
    }
    const std::int64_t sum = detail::integral(total, "degree_f1");
    if (sum != dedekind_psi(N)) {
        throw InternalInconsistency("degree_f1(" + std::to_string(N) + "): cusp sum " + std::to_string(sum) +
                                    " != psi " + std::to_string(dedekind_psi(N)));
    }
    return sum;
}

/// Pole degree of j^(N-2) + (Delta(N z)/Delta)^(N-1), by the cusp-wise maximum
/// and by the closed form (N - 2) psi(N) + 1; the two must agree.
inline std::int64_t degree_f2(std::int64_t N)
{
    Rational total = 0;
    for (const auto &c : cusp_classes(N)) {
        const Rational j_pole = c.ord_delta * (N - 2);
        Rational pole = j_pole;
        if (c.d * c.d < N) {
            const Rational f_pole = (c.ord_delta - c.ord_deltaN) * (N - 1);
            if (f_pole > pole) {
                pole = f_pole;
            }
        }
        total += c.multiplicity * pole;
    }
    const std::int64_t max_sum = detail::integral(total, "degree_f2");
    const std::int64_t closed = (N - 2) * degree_f1(N) + 1;
    if (max_sum != closed) {
        throw InternalInconsistency("degree_f2(" + std::to_string(N) + "): max-sum " + std::to_string(max_sum) +
                                    " != closed form " + std::to_string(closed));
    }
    return max_sum;
}

inline DegreeReport birational_certificate(std::int64_t N)
{
    DegreeReport r;
    r.N = N;
    r.d_f1 = degree_f1(N);
    r.d_f2 = degree_f2(N);
    r.gcd_value = std::gcd(r.d_f1, r.d_f2);
    r.birational = r.gcd_value == 1;
    return r;
}

} // namespace x0
