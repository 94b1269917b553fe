#pragma once

// Recovery of P_N, the minimal polynomial of f = Delta(N z)/Delta over C(j).
//
// Every monomial j^a f^b with a <= D_x, b <= D_y contributes one column of
// q-expansion coefficients. P_N is the unique (up to scale) integer vector in
// the kernel of that matrix. The kernel is found modulo word-size primes,
// lifted by CRT (and rational reconstruction when the normalizing coordinate
// is not 1), and the lifted vector is accepted only after an exact check of
// matrix * vector = 0 over the integers.

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bivariate.hpp"
#include "cuspdiv.hpp"
#include "errors.hpp"
#include "forms.hpp"
#include "modular.hpp"
#include "ntarith.hpp"
#include "qseries.hpp"

namespace x0
{

/// Bounds on the x- (j-) and y- (f-) degrees of P_N.
struct Bidegree
{
    std::int64_t dx = 0;
    std::int64_t dy = 0;

    friend bool operator==(const Bidegree &, const Bidegree &) = default;
};

/// D_x = [C(X_0(N)) : C(f)] is the pole degree of f; D_y = [C(X_0(N)) : C(j)] = psi(N).
inline Bidegree bidegree_bounds(std::int64_t N) { return {degree_f(N), dedekind_psi(N)}; }

/// q-valuation of j^a f^b.
inline Exponent monomial_valuation(std::int64_t N, std::int64_t a, std::int64_t b) { return b * (N - 1) - a; }

inline constexpr std::int64_t kDefaultGuard = 32;

/// Highest q-exponent used as a row: enough rows for every column plus `guard`.
inline Exponent kernel_precision(const Bidegree &bounds, std::int64_t guard)
{
    return -bounds.dx + (bounds.dx + 1) * (bounds.dy + 1) + guard;
}

struct KernelProblem
{
    std::int64_t N = 0;
    Bidegree bounds;
    std::int64_t guard = 0;
    Exponent e_min = 0;
    Exponent e_max = 0;
    /// Column order: b outer, a inner, so (0, 0) is column 0.
    std::vector<Monomial> columns;
    std::vector<Exponent> column_validity;
    /// Row-major; row r holds the coefficients of q^(e_min + r).
    std::vector<Integer> entries;

    std::size_t rows() const { return static_cast<std::size_t>(e_max - e_min + 1); }
    std::size_t cols() const { return columns.size(); }
    const Integer &entry(std::size_t row, std::size_t col) const { return entries[row * cols() + col]; }
    Exponent row_exponent(std::size_t row) const { return e_min + static_cast<Exponent>(row); }
};

/// Builds the monomial matrix for arbitrary bounds (used directly by the minimality check).
inline KernelProblem build_kernel_problem(std::int64_t N, const Bidegree &bounds, std::int64_t guard)
{
    detail::require_level(N, "build_kernel_problem");
    if (guard < 0 || bounds.dx < 0 || bounds.dy < 0) {
        throw std::invalid_argument("build_kernel_problem: negative guard or bound");
    }
    KernelProblem kp;
    kp.N = N;
    kp.bounds = bounds;
    kp.guard = guard;
    kp.e_min = -bounds.dx;
    kp.e_max = kernel_precision(bounds, guard);

    // j^a is exact to (prec - a + 1) and j^a f^b to at least prec - a.
    const Exponent prec = kp.e_max + bounds.dx;
    const QSeries j = j_invariant(prec).series;
    const QSeries f = f_function(N, std::max<Exponent>(prec, N - 1)).series;

    std::vector<QSeries> jpow{QSeries::constant(1)};
    for (std::int64_t a = 1; a <= bounds.dx; ++a) {
        jpow.push_back(mul(jpow.back(), j, prec));
    }
    std::vector<QSeries> fpow{QSeries::constant(1)};
    for (std::int64_t b = 1; b <= bounds.dy; ++b) {
        fpow.push_back(mul(fpow.back(), f, prec));
    }

    const std::size_t ncols = static_cast<std::size_t>((bounds.dx + 1) * (bounds.dy + 1));
    kp.columns.reserve(ncols);
    kp.column_validity.reserve(ncols);
    kp.entries.resize(kp.rows() * ncols);
    for (std::int64_t b = 0; b <= bounds.dy; ++b) {
        for (std::int64_t a = 0; a <= bounds.dx; ++a) {
            const std::size_t col = kp.columns.size();
            const QSeries m = mul(jpow[static_cast<std::size_t>(a)], fpow[static_cast<std::size_t>(b)], kp.e_max);
            if (m.validity() < kp.e_max) {
                throw InternalInconsistency("monomial j^" + std::to_string(a) + " f^" + std::to_string(b) +
                                            " only valid to q^" + std::to_string(m.validity()));
            }
            if (!m.is_zero() && m.valuation() != monomial_valuation(N, a, b)) {
                throw InternalInconsistency("monomial valuation mismatch");
            }
            kp.columns.push_back({static_cast<int>(a), static_cast<int>(b)});
            kp.column_validity.push_back(m.validity());
            const auto &s = m.stored();
            for (std::size_t i = 0; i < s.size(); ++i) {
                const Exponent e = m.valuation() + static_cast<Exponent>(i);
                if (e > kp.e_max) {
                    break;
                }
                kp.entries[static_cast<std::size_t>(e - kp.e_min) * ncols + col] = s[i];
            }
        }
    }
    return kp;
}

inline KernelProblem build_kernel_problem(std::int64_t N, std::int64_t guard = kDefaultGuard)
{
    return build_kernel_problem(N, bidegree_bounds(N), guard);
}

struct SolveOptions
{
    /// Skip this many primes of the descending prime sequence (different prime sets).
    std::size_t prime_offset = 0;
    /// Give up after this many primes without an exactly verified candidate.
    std::size_t max_primes = 2000;
    /// Primes showing a kernel of dimension > 1 tolerated before KernelTooLarge.
    std::size_t max_wide_primes = 3;
};

struct SolveResult
{
    BivariatePoly poly;
    /// Set when the constant coefficient vanished and the polynomial was
    /// normalized by a positive leading y-coefficient instead.
    bool normalization_fallback = false;
    std::size_t primes_used = 0;
};

namespace detail
{

/// True iff the integer vector lies in the kernel of the exact matrix.
inline bool exact_kernel_check(const KernelProblem &kp, const std::vector<Integer> &v)
{
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (sgn(v[c]) != 0) {
            support.push_back(c);
        }
    }
    Integer acc;
    for (std::size_t r = 0; r < kp.rows(); ++r) {
        acc = 0;
        for (std::size_t c : support) {
            mpz_addmul(acc.get_mpz_t(), kp.entry(r, c).get_mpz_t(), v[c].get_mpz_t());
        }
        if (sgn(acc) != 0) {
            return false;
        }
    }
    return true;
}

inline std::optional<std::vector<Integer>> rational_lift(const modp::CrtAccumulator &crt)
{
    std::vector<modp::Fraction> fr;
    fr.reserve(crt.size());
    Integer den = 1;
    for (const auto &r : crt.residues()) {
        auto f = modp::rational_reconstruction(r, crt.modulus());
        if (!f) {
            return std::nullopt;
        }
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), f->den.get_mpz_t());
        fr.push_back(std::move(*f));
    }
    std::vector<Integer> v;
    v.reserve(fr.size());
    for (const auto &f : fr) {
        v.push_back(f.num * (den / f.den));
    }
    return v;
}

inline std::vector<Integer> integer_lift(const modp::CrtAccumulator &crt)
{
    std::vector<Integer> v;
    v.reserve(crt.size());
    for (const auto &r : crt.residues()) {
        v.push_back(modp::symmetric_lift(r, crt.modulus()));
    }
    return v;
}

} // namespace detail

/// The exact one-dimensional integer kernel of the monomial matrix, made
/// primitive with constant coefficient +1.
inline SolveResult solve_kernel(const KernelProblem &kp, const SolveOptions &options = {})
{
    const std::size_t ncols = kp.cols();
    modp::PrimeSequence primes(options.prime_offset);
    modp::CrtAccumulator crt;
    std::optional<std::size_t> norm_index;
    std::optional<std::vector<Integer>> last_int, last_rat;
    std::size_t wide = 0;
    std::size_t used = 0;
    std::optional<std::vector<Integer>> found;

    for (std::size_t attempt = 0; attempt < options.max_primes && !found; ++attempt) {
        const modp::u64 p = primes.next();
        const auto ker = modp::kernel(modp::reduce(kp.entries, kp.rows(), ncols, p));
        if (ker.dimension == 0) {
            // Rank over Q is at least the rank mod p, so no rational relation exists.
            throw KernelEmpty("N=" + std::to_string(kp.N) + ": monomial matrix has full column rank");
        }
        if (ker.dimension > 1) {
            if (++wide >= options.max_wide_primes && crt.size() == 0) {
                throw KernelTooLarge("N=" + std::to_string(kp.N) + ": kernel dimension " +
                                     std::to_string(ker.dimension) + " modulo " + std::to_string(wide) +
                                     " primes (guard " + std::to_string(kp.guard) + ")");
            }
            continue;
        }
        auto v = ker.generator;
        if (!norm_index) {
            norm_index = v[0] != 0 ? 0 : static_cast<std::size_t>(
                                             std::find_if(v.begin(), v.end(), [](modp::u64 x) { return x != 0; }) -
                                             v.begin());
        }
        if (v[*norm_index] == 0) {
            continue; // p divides the normalizing coordinate
        }
        const modp::u64 inv = modp::inverse(v[*norm_index], p);
        for (auto &x : v) {
            x = modp::mulmod(x, inv, p);
        }
        crt.add(v, p);
        ++used;

        auto lifted = detail::integer_lift(crt);
        if (last_int && *last_int == lifted && detail::exact_kernel_check(kp, lifted)) {
            found = std::move(lifted);
            break;
        }
        last_int = std::move(lifted);

        if (auto rat = detail::rational_lift(crt)) {
            if (last_rat && *last_rat == *rat && detail::exact_kernel_check(kp, *rat)) {
                found = std::move(*rat);
                break;
            }
            last_rat = std::move(rat);
        }
    }
    if (!found) {
        throw KernelTooLarge("N=" + std::to_string(kp.N) + ": no verified kernel vector after " +
                             std::to_string(options.max_primes) + " primes");
    }

    auto &v = *found;
    Integer g = 0;
    for (const auto &x : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    bool fallback = sgn(v[0]) == 0;
    int sign = sgn(v[0]);
    if (fallback) {
        // Leading y-coefficient: the highest-a term among the highest-b columns.
        for (std::size_t c = ncols; c-- > 0;) {
            if (sgn(v[c]) != 0) {
                sign = sgn(v[c]);
                break;
            }
        }
    }
    std::vector<Term> terms;
    for (std::size_t c = 0; c < ncols; ++c) {
        if (sgn(v[c]) != 0) {
            Integer x = v[c] / g;
            if (sign < 0) {
                x = -x;
            }
            terms.push_back({kp.columns[c], std::move(x)});
        }
    }
    return {BivariatePoly(kp.N, terms), fallback, used};
}

struct PlaneModel
{
    SolveResult solution;
    std::int64_t guard_used = kDefaultGuard;
};

/// Builds and solves the kernel problem, doubling the guard (at most three
/// times) while the kernel is too large.
inline PlaneModel compute_plane_model(std::int64_t N, std::int64_t guard = kDefaultGuard,
                                      const SolveOptions &options = {})
{
    for (int retry = 0;; ++retry) {
        try {
            return {solve_kernel(build_kernel_problem(N, guard), options), guard};
        } catch (const KernelTooLarge &) {
            if (retry == 3) {
                throw;
            }
            guard = std::max<std::int64_t>(2 * guard, 1);
        }
    }
}

struct Residual
{
    Exponent exponent = 0;
    Integer coefficient;
};

/// Absolute q-precision checked by verify(N, P, extra_prec).
inline Exponent verification_precision(std::int64_t N, std::int64_t extra_prec)
{
    return kernel_precision(bidegree_bounds(N), kDefaultGuard) + extra_prec;
}

/// First nonzero coefficient of P(j, f) up to q^target, computed from fresh
/// expansions; nullopt if P(j, f) vanishes there.
inline std::optional<Residual> first_residual(std::int64_t N, const BivariatePoly &P, Exponent target)
{
    const std::int64_t dx = P.x_degree();
    const std::int64_t dy = P.y_degree();
    const Exponent prec = target + dx;
    const QSeries j = j_invariant(prec).series;
    const QSeries f = f_function(N, std::max<Exponent>(prec, N - 1)).series;
    std::vector<QSeries> jpow{QSeries::constant(1)};
    for (std::int64_t a = 1; a <= dx; ++a) {
        jpow.push_back(mul(jpow.back(), j, prec));
    }

    // Horner in f over the coefficient series C_b(j) = sum_a c_ab j^a.
    QSeries acc = QSeries::zero();
    for (std::int64_t b = dy; b >= 0; --b) {
        QSeries cb = QSeries::zero();
        for (std::int64_t a = 0; a <= dx; ++a) {
            const Integer c = P.coefficient(static_cast<int>(a), static_cast<int>(b));
            if (sgn(c) != 0) {
                cb = add(cb, scale(jpow[static_cast<std::size_t>(a)], c));
            }
        }
        acc = b == dy ? cb : add(mul(acc, f, prec), cb);
    }
    if (acc.validity() < target) {
        throw InternalInconsistency("verify: residual only valid to q^" + std::to_string(acc.validity()));
    }
    if (acc.is_zero() || acc.valuation() > target) {
        return std::nullopt;
    }
    return Residual{acc.valuation(), acc.leading_coefficient()};
}

/// True iff P(j, f) = 0 up to q^(verification_precision(N, extra_prec)).
inline bool verify(std::int64_t N, const BivariatePoly &P, std::int64_t extra_prec)
{
    return !first_residual(N, P, verification_precision(N, extra_prec));
}

namespace detail
{

/// True iff the monomial matrix at `bounds` has full column rank modulo one of a few primes.
inline bool kernel_is_trivial(std::int64_t N, const Bidegree &bounds, std::size_t tries = 3)
{
    const KernelProblem kp = build_kernel_problem(N, bounds, kDefaultGuard);
    modp::PrimeSequence primes;
    for (std::size_t t = 0; t < tries; ++t) {
        if (modp::kernel(modp::reduce(kp.entries, kp.rows(), kp.cols(), primes.next())).dimension == 0) {
            return true;
        }
    }
    return false;
}

} // namespace detail

/// No relation of bidegree (D_x - 1, D_y) or (D_x, D_y - 1) exists.
inline bool minimality_check(std::int64_t N)
{
    const Bidegree b = bidegree_bounds(N);
    return detail::kernel_is_trivial(N, {b.dx - 1, b.dy}) && detail::kernel_is_trivial(N, {b.dx, b.dy - 1});
}

/// Natural log of the largest absolute coefficient.
inline double log_height(const BivariatePoly &P)
{
    double best = 0.0;
    for (const auto &[m, c] : P.term_map()) {
        long exp2 = 0;
        const double mant = mpz_get_d_2exp(&exp2, c.get_mpz_t());
        const double ln = std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
        best = std::max(best, ln);
    }
    return best;
}

struct HeightReport
{
    double ln_height = 0.0;
    double log10_height = 0.0;
    /// 6 l ln(l) + 18 l, reported for prime levels l only.
    std::optional<double> prime_bound;
};

inline HeightReport height_report(const BivariatePoly &P)
{
    HeightReport r;
    r.ln_height = log_height(P);
    r.log10_height = r.ln_height / std::log(10.0);
    const std::int64_t N = P.level();
    if (N >= 2 && factor(N).size() == 1 && factor(N)[0].exponent == 1) {
        const auto l = static_cast<double>(N);
        r.prime_bound = 6.0 * l * std::log(l) + 18.0 * l;
    }
    return r;
}

} // namespace x0
