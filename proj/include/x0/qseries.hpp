#pragma once

// Truncated Laurent series in q with exact integer coefficients.
//
// A QSeries knows the coefficients for exponents valuation..validity and
// nothing beyond. Arithmetic propagates that bound so that no coefficient is
// ever reported as exact when it depends on an unknown tail.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "polymul.hpp"

namespace x0
{

using Exponent = std::int64_t;

class QSeries
{
public:
    /// Validity of an exact (finite, fully known) series.
    static constexpr Exponent kExact = Exponent{1} << 60;

    /// The exact zero series.
    QSeries() = default;

    /// Series with coefficients[i] at q^(start+i), exact up to `validity`.
    /// Coefficients above `validity` are discarded.
    QSeries(Exponent start, std::vector<Integer> coefficients, Exponent validity = kExact)
        : valuation_(start), validity_(clamp(validity)), coeffs_(std::move(coefficients))
    {
        if (validity_ < start - 1) {
            throw std::invalid_argument("QSeries: validity below start - 1");
        }
        normalize();
    }

    static QSeries zero(Exponent validity = kExact) { return QSeries(validity + 1, {}, validity); }

    static QSeries monomial(Integer c, Exponent e)
    {
        std::vector<Integer> v;
        v.push_back(std::move(c));
        return QSeries(e, std::move(v));
    }

    static QSeries constant(Integer c) { return monomial(std::move(c), 0); }

    /// Lowest exponent with a nonzero coefficient; validity + 1 for a zero series.
    Exponent valuation() const { return valuation_; }

    /// Largest exponent whose coefficient is guaranteed exact.
    Exponent validity() const { return validity_; }

    bool is_exact() const { return validity_ >= kExact; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Exact coefficient of q^e.
    Integer coefficient(Exponent e) const
    {
        if (e > validity_) {
            throw PrecisionExceeded("coefficient of q^" + std::to_string(e) + " requested, series valid to q^" +
                                    std::to_string(validity_));
        }
        if (e < valuation_ || e >= valuation_ + static_cast<Exponent>(coeffs_.size())) {
            return 0;
        }
        return coeffs_[static_cast<std::size_t>(e - valuation_)];
    }

    const Integer &leading_coefficient() const
    {
        if (is_zero()) {
            throw std::domain_error("leading coefficient of a zero series");
        }
        return coeffs_.front();
    }

    /// Stored coefficients starting at valuation(). Exponents past the end but
    /// within validity() are zero.
    std::span<const Integer> stored() const { return coeffs_; }

    /// Highest exponent with a stored (nonzero) coefficient.
    Exponent stored_degree() const { return valuation_ + static_cast<Exponent>(coeffs_.size()) - 1; }

    friend bool operator==(const QSeries &a, const QSeries &b)
    {
        return a.validity_ == b.validity_ && a.valuation_ == b.valuation_ && a.coeffs_ == b.coeffs_;
    }

    static Exponent clamp(Exponent e) { return std::min(e, kExact); }

    /// Saturating sum used by the validity rules: anything touching kExact stays exact.
    static Exponent add_bound(Exponent a, Exponent b)
    {
        if (a >= kExact || b >= kExact) {
            return kExact;
        }
        return clamp(a + b);
    }

private:
    void normalize()
    {
        if (validity_ < kExact) {
            const Exponent keep = validity_ - valuation_ + 1;
            if (keep < static_cast<Exponent>(coeffs_.size())) {
                coeffs_.resize(static_cast<std::size_t>(std::max<Exponent>(keep, 0)));
            }
        }
        while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) {
            coeffs_.pop_back();
        }
        auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Integer &c) { return sgn(c) != 0; });
        valuation_ += first - coeffs_.begin();
        coeffs_.erase(coeffs_.begin(), first);
        if (coeffs_.empty()) {
            valuation_ = validity_ >= kExact ? kExact + 1 : validity_ + 1;
        }
    }

    Exponent valuation_ = kExact + 1;
    Exponent validity_ = kExact;
    std::vector<Integer> coeffs_;
};

/// Drops every coefficient above `validity` (no-op if already lower).
inline QSeries truncate(const QSeries &a, Exponent validity)
{
    if (validity >= a.validity()) {
        return a;
    }
    if (validity < a.valuation()) {
        return QSeries::zero(validity);
    }
    const auto &s = a.stored();
    const std::size_t n = std::min<std::size_t>(s.size(), static_cast<std::size_t>(validity - a.valuation() + 1));
    return QSeries(a.valuation(), std::vector<Integer>(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n)),
                   validity);
}

inline QSeries add(const QSeries &a, const QSeries &b)
{
    const Exponent validity = std::min(a.validity(), b.validity());
    if (a.is_zero() && b.is_zero()) {
        return QSeries::zero(validity);
    }
    const Exponent lo = std::min(a.is_zero() ? b.valuation() : a.valuation(), b.is_zero() ? a.valuation() : b.valuation());
    const Exponent hi = std::min(validity, std::max(a.is_zero() ? lo : a.stored_degree(), b.is_zero() ? lo : b.stored_degree()));
    if (hi < lo) {
        return QSeries::zero(validity);
    }
    std::vector<Integer> out(static_cast<std::size_t>(hi - lo + 1));
    for (const QSeries *s : {&a, &b}) {
        const auto &c = s->stored();
        for (std::size_t i = 0; i < c.size(); ++i) {
            const Exponent e = s->valuation() + static_cast<Exponent>(i);
            if (e > hi) {
                break;
            }
            out[static_cast<std::size_t>(e - lo)] += c[i];
        }
    }
    return QSeries(lo, std::move(out), validity);
}

inline QSeries negate(const QSeries &a)
{
    std::vector<Integer> out(a.stored().begin(), a.stored().end());
    for (auto &c : out) {
        c = -c;
    }
    return a.is_zero() ? a : QSeries(a.valuation(), std::move(out), a.validity());
}

inline QSeries sub(const QSeries &a, const QSeries &b) { return add(a, negate(b)); }

inline QSeries scale(const QSeries &a, const Integer &c)
{
    if (sgn(c) == 0) {
        return QSeries::zero(a.validity());
    }
    std::vector<Integer> out(a.stored().begin(), a.stored().end());
    for (auto &x : out) {
        x *= c;
    }
    return a.is_zero() ? a : QSeries(a.valuation(), std::move(out), a.validity());
}

/// Multiplication by q^k.
inline QSeries shift(const QSeries &a, Exponent k)
{
    const Exponent validity = a.is_exact() ? QSeries::kExact : a.validity() + k;
    if (a.is_zero()) {
        return QSeries::zero(validity);
    }
    return QSeries(a.valuation() + k, std::vector<Integer>(a.stored().begin(), a.stored().end()), validity);
}

/// Cauchy product. The result is exact up to
/// min(a.validity + b.valuation, b.validity + a.valuation), further capped at `cap`.
inline QSeries mul(const QSeries &a, const QSeries &b, Exponent cap = QSeries::kExact, const MulPolicy &policy = {})
{
    Exponent validity = std::min(QSeries::add_bound(a.validity(), b.valuation()),
                                 QSeries::add_bound(b.validity(), a.valuation()));
    validity = std::min(validity, QSeries::clamp(cap));
    if (a.is_zero() || b.is_zero()) {
        return QSeries::zero(validity);
    }
    const Exponent start = a.valuation() + b.valuation();
    if (validity < start) {
        return QSeries::zero(validity);
    }
    std::size_t out_len = a.stored().size() + b.stored().size() - 1;
    if (validity < QSeries::kExact) {
        out_len = std::min<std::size_t>(out_len, static_cast<std::size_t>(validity - start + 1));
    }
    return QSeries(start, detail::mul_dense(a.stored(), b.stored(), out_len, policy), validity);
}

inline QSeries operator+(const QSeries &a, const QSeries &b) { return add(a, b); }
inline QSeries operator-(const QSeries &a, const QSeries &b) { return sub(a, b); }
inline QSeries operator-(const QSeries &a) { return negate(a); }
inline QSeries operator*(const QSeries &a, const QSeries &b) { return mul(a, b); }

/// a^k by binary exponentiation; pow(a, 0) is the exact constant 1.
inline QSeries pow(const QSeries &a, unsigned k, Exponent cap = QSeries::kExact, const MulPolicy &policy = {})
{
    // Negative valuations lower the validity of later products, so intermediates
    // are computed further than the requested cap and truncated at the end.
    Exponent inner_cap = QSeries::clamp(cap);
    if (inner_cap < QSeries::kExact && !a.is_zero() && a.valuation() < 0) {
        inner_cap = QSeries::clamp(inner_cap - a.valuation() * static_cast<Exponent>(k));
    }
    QSeries result = QSeries::constant(1);
    QSeries base = a;
    while (k > 0) {
        if (k & 1U) {
            result = mul(result, base, inner_cap, policy);
        }
        k >>= 1U;
        if (k > 0) {
            base = mul(base, base, inner_cap, policy);
        }
    }
    return truncate(result, QSeries::clamp(cap));
}

namespace detail
{

// Inverse of a power series u (u[0] = +-1) to n coefficients, by the direct recurrence.
inline std::vector<Integer> inverse_recurrence(std::span<const Integer> u, std::size_t n)
{
    std::vector<Integer> w(n);
    const int lead = sgn(u[0]);
    w[0] = lead;
    Integer acc;
    for (std::size_t k = 1; k < n; ++k) {
        acc = 0;
        const std::size_t imax = std::min(k, u.size() - 1);
        for (std::size_t i = 1; i <= imax; ++i) {
            mpz_addmul(acc.get_mpz_t(), u[i].get_mpz_t(), w[k - i].get_mpz_t());
        }
        w[k] = lead > 0 ? Integer(-acc) : acc;
    }
    return w;
}

// Same result by Newton iteration w <- w + w(1 - u w), doubling the length each step.
inline std::vector<Integer> inverse_newton(std::span<const Integer> u, std::size_t n, const MulPolicy &policy)
{
    std::vector<Integer> w{Integer(sgn(u[0]))};
    std::size_t have = 1;
    while (have < n) {
        const std::size_t next = std::min(2 * have, n);
        auto uw = mul_dense(u.first(std::min(u.size(), next)), w, next, policy);
        // uw = 1 + O(q^have); keep the error term -(uw - 1).
        std::vector<Integer> err(uw.begin() + static_cast<std::ptrdiff_t>(have), uw.end());
        for (auto &c : err) {
            c = -c;
        }
        auto corr = mul_dense(w, err, next - have, policy);
        w.resize(next);
        for (std::size_t i = 0; i < corr.size(); ++i) {
            w[have + i] = corr[i];
        }
        have = next;
    }
    return w;
}

} // namespace detail

/// Multiplicative inverse of a series whose leading coefficient is +1 or -1.
/// The result is exact to a.validity - 2 a.valuation; for an exact
/// non-monomial input the infinite inverse is cut at `cap`, which must be finite.
inline QSeries invert(const QSeries &a, Exponent cap = QSeries::kExact, const MulPolicy &policy = {})
{
    if (a.is_zero()) {
        throw NonUnitLeading("inverse of a zero series");
    }
    if (abs(a.leading_coefficient()) != 1) {
        throw NonUnitLeading("leading coefficient " + a.leading_coefficient().get_str() + " is not a unit");
    }
    const Exponent v = a.valuation();
    if (a.is_exact() && a.stored().size() == 1) {
        return QSeries::monomial(a.leading_coefficient(), -v);
    }
    Exponent validity = a.is_exact() ? QSeries::kExact : a.validity() - 2 * v;
    validity = std::min(validity, QSeries::clamp(cap));
    if (validity >= QSeries::kExact) {
        throw std::invalid_argument("invert: the inverse of an exact non-monomial series needs a finite cap");
    }
    if (validity < -v) {
        return QSeries::zero(validity);
    }
    const auto n = static_cast<std::size_t>(validity + v + 1);
    auto w = n <= 64 ? detail::inverse_recurrence(a.stored(), n) : detail::inverse_newton(a.stored(), n, policy);
    return QSeries(-v, std::move(w), validity);
}

/// The series a(q^N): coefficient of q^(N e) is a's coefficient of q^e.
inline QSeries substitute_qN(const QSeries &a, std::int64_t N)
{
    if (N < 1) {
        throw std::invalid_argument("substitute_qN: N must be positive");
    }
    const Exponent validity = a.is_exact() ? QSeries::kExact : N * a.validity() + (N - 1);
    if (a.is_zero()) {
        return QSeries::zero(validity);
    }
    const auto &s = a.stored();
    std::vector<Integer> out((s.size() - 1) * static_cast<std::size_t>(N) + 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        out[i * static_cast<std::size_t>(N)] = s[i];
    }
    return QSeries(N * a.valuation(), std::move(out), validity);
}

inline Integer coefficient(const QSeries &a, Exponent e) { return a.coefficient(e); }

inline std::ostream &operator<<(std::ostream &os, const QSeries &a)
{
    bool first = true;
    const auto &s = a.stored();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (sgn(s[i]) == 0) {
            continue;
        }
        const Exponent e = a.valuation() + static_cast<Exponent>(i);
        os << (first ? "" : " + ") << s[i];
        if (e != 0) {
            os << "*q^" << e;
        }
        first = false;
    }
    if (first) {
        os << "0";
    }
    if (!a.is_exact()) {
        os << " + O(q^" << a.validity() + 1 << ")";
    }
    return os;
}

} // namespace x0
