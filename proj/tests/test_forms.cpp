#include <gtest/gtest.h>

#include <x0/forms.hpp>

#include "properties.hpp"

using namespace x0;

TEST(TauOracle, SmallValues)
{
    const auto tau = test::tau_recurrence(6);
    EXPECT_EQ(tau[1], 1);
    EXPECT_EQ(tau[2], -24);
    EXPECT_EQ(tau[3], 252);
    EXPECT_EQ(tau[4], -1472);
    EXPECT_EQ(tau[5], 4830);
    EXPECT_EQ(tau[6], -6048);
}

TEST(TauOracle, RecurrenceMatchesProduct)
{
    EXPECT_EQ(test::tau_recurrence(60), test::delta_by_factors(60));
}

TEST(Delta, Examples)
{
    const QSeries d = delta(10).series;
    EXPECT_EQ(d.valuation(), 1);
    EXPECT_EQ(d.validity(), 10);
    EXPECT_EQ(d.coefficient(1), 1);
    EXPECT_EQ(d.coefficient(2), -24);
    EXPECT_EQ(d.coefficient(3), 252);
}

TEST(Delta, MatchesBothOracles)
{
    constexpr Exponent prec = 300;
    const QSeries d = delta(prec).series;
    const auto by_factors = test::delta_by_factors(prec);
    const auto by_recurrence = test::tau_recurrence(120);
    for (Exponent e = 0; e <= prec; ++e) {
        ASSERT_EQ(d.coefficient(e), by_factors[static_cast<std::size_t>(e)]) << e;
        if (e <= 120) {
            ASSERT_EQ(d.coefficient(e), by_recurrence[static_cast<std::size_t>(e)]) << e;
        }
    }
}

TEST(Delta, TimesInverseIsOne)
{
    const QSeries d = delta(200).series;
    const QSeries prod = mul(d, invert(d));
    EXPECT_EQ(prod.validity(), 199);
    EXPECT_EQ(test::agree(prod, QSeries::constant(1)), "");
}

TEST(Delta, RejectsLowPrecision) { EXPECT_THROW(delta(0), std::invalid_argument); }

TEST(E4, Examples)
{
    const QSeries e = e4(5).series;
    EXPECT_EQ(e.valuation(), 0);
    EXPECT_EQ(e.coefficient(0), 1);
    EXPECT_EQ(e.coefficient(1), 240);
    EXPECT_EQ(e.coefficient(2), 2160);
    EXPECT_EQ(e.coefficient(5), 240 * 126);
}

TEST(E4, CubedValidity)
{
    const QSeries c = e4_cubed(40).series;
    EXPECT_EQ(c.validity(), 40);
    EXPECT_EQ(c.coefficient(0), 1);
    EXPECT_EQ(c.coefficient(1), 720);
}

TEST(J, Examples)
{
    const FormExpansion j = j_invariant(5);
    EXPECT_EQ(j.label, FormLabel::J);
    EXPECT_EQ(j.series.valuation(), -1);
    EXPECT_EQ(j.series.validity(), 5);
    EXPECT_EQ(j.series.coefficient(-1), 1);
    EXPECT_EQ(j.series.coefficient(0), 744);
    EXPECT_EQ(j.series.coefficient(1), 196884);
    EXPECT_EQ(j.series.coefficient(2), 21493760);
}

TEST(J, MatchesDivisionOracle)
{
    constexpr Exponent prec = 150;
    const QSeries j = j_invariant(prec).series;
    // j * q = E4^3 / (Delta / q), solved by forward substitution on plain coefficient vectors.
    const auto len = static_cast<std::size_t>(prec + 2);
    const auto delta_coeffs = test::delta_by_factors(len);
    test::Vec den(delta_coeffs.begin() + 1, delta_coeffs.end());
    const auto s3 = sigma3_table(static_cast<std::int64_t>(len));
    test::Vec e4v(len);
    e4v[0] = 1;
    for (std::size_t n = 1; n < len; ++n) {
        e4v[n] = 240 * s3[n];
    }
    const auto e4_cube = test::naive_mul(test::naive_mul(e4v, e4v, len), e4v, len);
    const auto quotient = test::triangular_divide(e4_cube, den, len);
    for (Exponent e = -1; e <= prec; ++e) {
        ASSERT_EQ(j.coefficient(e), quotient[static_cast<std::size_t>(e + 1)]) << e;
    }
}

TEST(J, TimesDeltaIsE4Cubed)
{
    constexpr Exponent prec = 120;
    const QSeries lhs = mul(j_invariant(prec).series, delta(prec + 2).series);
    EXPECT_GE(lhs.validity(), prec);
    EXPECT_EQ(test::agree(lhs, e4_cubed(prec + 1).series), "");
}

TEST(DeltaN, ValuationAndValidity)
{
    const FormExpansion d3 = delta_n(3, 20);
    EXPECT_EQ(d3.level, 3);
    EXPECT_EQ(d3.series.valuation(), 3);
    EXPECT_EQ(d3.series.validity(), 20);
    EXPECT_EQ(d3.series.coefficient(6), -24);
    EXPECT_EQ(d3.series.coefficient(7), 0);
}

TEST(F, Examples)
{
    EXPECT_EQ(f_function(2, 10).series.valuation(), 1);
    EXPECT_EQ(f_function(5, 10).series.valuation(), 4);
    for (std::int64_t N = 2; N <= 12; ++N) {
        const FormExpansion f = f_function(N, N + 10);
        EXPECT_EQ(f.label, FormLabel::F);
        EXPECT_EQ(f.level, N);
        EXPECT_EQ(f.series.valuation(), N - 1) << N;
        EXPECT_EQ(f.series.leading_coefficient(), 1) << N;
        EXPECT_EQ(f.series.validity(), N + 10) << N;
    }
}

TEST(F, RejectsBadArguments)
{
    EXPECT_THROW(f_function(1, 10), std::invalid_argument);
    EXPECT_THROW(f_function(5, 3), std::invalid_argument);
    EXPECT_NO_THROW(f_function(5, 4));
}

TEST(F, MatchesCrossOracle)
{
    for (std::int64_t N = 2; N <= 8; ++N) {
        EXPECT_EQ(test::check_f_cross_oracle(N, 150), "") << N;
    }
}

TEST(FormsProperties, PrecisionStability) { EXPECT_EQ(test::check_precision_stability({5, 17, 40, 97, 160}), ""); }

TEST(FormLabels, Names)
{
    EXPECT_STREQ(to_string(FormLabel::Delta), "Delta");
    EXPECT_STREQ(to_string(FormLabel::F), "F");
}
