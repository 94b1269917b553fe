#pragma once

// Standard invariants of X_0(N) and the degree identity of the plane model
// deg C_N = dim M_12(Gamma_0(N)) + g - 1 = psi(N).

#include <cstdint>
#include <numeric>
#include <string>

#include "bivariate.hpp"
#include "cuspdiv.hpp"
#include "errors.hpp"
#include "ntarith.hpp"

namespace x0
{

struct CurveInvariants
{
    std::int64_t N = 0;
    std::int64_t psi = 0;
    std::int64_t nu2 = 0;
    std::int64_t nu3 = 0;
    std::int64_t nu_inf = 0;
    std::int64_t genus = 0;
    std::int64_t dim_M12 = 0;
    std::int64_t deg_CN = 0;
    /// The sum of pointwise minima of the divisors of Delta, E4^3 and
    /// Delta(N z). It vanishes because E4^3 has no zeros at cusps and
    /// Delta, Delta(N z) vanish only there.
    static constexpr std::int64_t common_zero_correction = 0;
};

/// Elliptic points of order 2: 0 if 4 | N, else prod over p | N of (1 + (-1/p)).
inline std::int64_t elliptic_points_order2(std::int64_t N)
{
    if (N % 4 == 0) {
        return 0;
    }
    std::int64_t r = 1;
    for (const auto &[p, e] : factor(N)) {
        if (p == 2) {
            continue;
        }
        r *= (p % 4 == 1) ? 2 : 0;
    }
    return r;
}

/// Elliptic points of order 3: 0 if 9 | N, else prod over p | N of (1 + (-3/p)).
inline std::int64_t elliptic_points_order3(std::int64_t N)
{
    if (N % 9 == 0) {
        return 0;
    }
    std::int64_t r = 1;
    for (const auto &[p, e] : factor(N)) {
        if (p == 3) {
            continue;
        }
        r *= (p % 3 == 1) ? 2 : 0;
    }
    return r;
}

/// Number of cusps: sum over d | N of phi(gcd(d, N/d)).
inline std::int64_t cusp_count(std::int64_t N)
{
    std::int64_t r = 0;
    for (std::int64_t d : divisors(N)) {
        r += euler_phi(std::gcd(d, N / d));
    }
    return r;
}

inline CurveInvariants curve_invariants(std::int64_t N)
{
    detail::require_level(N, "curve_invariants");
    CurveInvariants inv;
    inv.N = N;
    inv.psi = dedekind_psi(N);
    inv.nu2 = elliptic_points_order2(N);
    inv.nu3 = elliptic_points_order3(N);
    inv.nu_inf = cusp_count(N);

    // Riemann-Hurwitz: g = 1 + psi/12 - nu2/4 - nu3/3 - nu_inf/2.
    const std::int64_t twelve_g = 12 + inv.psi - 3 * inv.nu2 - 4 * inv.nu3 - 6 * inv.nu_inf;
    if (twelve_g % 12 != 0 || twelve_g < 0) {
        throw IdentityViolation("genus of X_0(" + std::to_string(N) + ") is not a nonnegative integer");
    }
    inv.genus = twelve_g / 12;

    // Even weight k >= 2 with -I in the group:
    // dim M_k = (k-1)(g-1) + (k/2) nu_inf + floor(k/4) nu2 + floor(k/3) nu3.
    constexpr std::int64_t k = 12;
    inv.dim_M12 = (k - 1) * (inv.genus - 1) + (k / 2) * inv.nu_inf + (k / 4) * inv.nu2 + (k / 3) * inv.nu3;

    inv.deg_CN = inv.dim_M12 + inv.genus - 1 - CurveInvariants::common_zero_correction;
    if (inv.deg_CN != inv.psi) {
        throw IdentityViolation("X_0(" + std::to_string(N) + "): dim M_12 + g - 1 = " + std::to_string(inv.deg_CN) +
                                " but psi = " + std::to_string(inv.psi));
    }
    return inv;
}

/// True iff P has total degree and y-degree psi(N).
inline bool degree_formula_check(std::int64_t N, const BivariatePoly &P)
{
    const std::int64_t psi = curve_invariants(N).deg_CN;
    return P.total_degree() == psi && P.y_degree() == psi;
}

} // namespace x0
