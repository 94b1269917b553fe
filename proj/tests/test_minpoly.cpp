#include <cmath>

#include <gtest/gtest.h>

#include <x0/invariants.hpp>
#include <x0/minpoly.hpp>

#include "known_models.hpp"
#include "oracles.hpp"

using namespace x0;

namespace
{

BivariatePoly known(std::int64_t N) { return BivariatePoly::parse(N, test::known_model(N)); }

std::vector<test::Vec> matrix_rows(const KernelProblem &kp)
{
    std::vector<test::Vec> rows(kp.rows(), test::Vec(kp.cols()));
    for (std::size_t r = 0; r < kp.rows(); ++r) {
        for (std::size_t c = 0; c < kp.cols(); ++c) {
            rows[r][c] = kp.entry(r, c);
        }
    }
    return rows;
}

} // namespace

TEST(Bounds, Examples)
{
    EXPECT_EQ(bidegree_bounds(2), (Bidegree{1, 3}));
    EXPECT_EQ(bidegree_bounds(4), (Bidegree{3, 6}));
    EXPECT_EQ(bidegree_bounds(5), (Bidegree{4, 6}));
}

TEST(MonomialValuation, Examples)
{
    EXPECT_EQ(monomial_valuation(2, 1, 0), -1);
    EXPECT_EQ(monomial_valuation(5, 0, 1), 4);
    EXPECT_EQ(monomial_valuation(3, 2, 4), 6);
}

TEST(KernelProblemShape, LevelTwo)
{
    const KernelProblem kp = build_kernel_problem(2, 0);
    EXPECT_EQ(kp.cols(), 8u);
    EXPECT_EQ(kp.e_min, -1);
    EXPECT_EQ(kp.e_max, 7);
    EXPECT_EQ(kp.rows(), 9u);
}

TEST(KernelProblemShape, LevelThree)
{
    const KernelProblem kp = build_kernel_problem(3, 0);
    EXPECT_EQ(kp.cols(), 15u);
    EXPECT_EQ(kp.e_min, -2);
    EXPECT_EQ(kp.e_max, 13);
}

TEST(KernelProblemShape, ConstantColumnAndEntries)
{
    for (std::int64_t N : {2, 3, 6}) {
        const KernelProblem kp = build_kernel_problem(N);
        ASSERT_EQ(kp.columns[0], (Monomial{0, 0}));
        EXPECT_GE(kp.rows(), kp.cols() + static_cast<std::size_t>(kp.guard));
        for (std::size_t r = 0; r < kp.rows(); ++r) {
            EXPECT_EQ(kp.entry(r, 0), kp.row_exponent(r) == 0 ? 1 : 0);
        }
        for (auto v : kp.column_validity) {
            EXPECT_GE(v, kp.e_max);
        }
    }
}

TEST(KernelProblemShape, EntriesMatchDirectProducts)
{
    const std::int64_t N = 3;
    const KernelProblem kp = build_kernel_problem(N, 4);
    const Exponent prec = kp.e_max + kp.bounds.dx;
    const QSeries j = j_invariant(prec).series;
    const QSeries f = f_function(N, prec).series;
    for (std::size_t c = 0; c < kp.cols(); ++c) {
        const auto [a, b] = kp.columns[c];
        const QSeries m = mul(pow(j, static_cast<unsigned>(a)), pow(f, static_cast<unsigned>(b)));
        for (std::size_t r = 0; r < kp.rows(); ++r) {
            ASSERT_EQ(kp.entry(r, c), m.coefficient(kp.row_exponent(r))) << a << "," << b << " row " << r;
        }
    }
}

TEST(SolveKernel, ReproducesKnownModels)
{
    for (std::int64_t N = 2; N <= 5; ++N) {
        const PlaneModel model = compute_plane_model(N);
        EXPECT_FALSE(model.solution.normalization_fallback);
        EXPECT_EQ(model.solution.poly, known(N)) << "N=" << N << "\ncomputed: " << model.solution.poly.to_string();
    }
}

TEST(SolveKernel, SpotCoefficients)
{
    const BivariatePoly p3 = compute_plane_model(3).solution.poly;
    EXPECT_EQ(p3.term_count(), 8u);
    EXPECT_EQ(p3.coefficient(0, 4), Integer("150094635296999121"));
    EXPECT_EQ(p3.coefficient(1, 2), 38263752);
    const BivariatePoly p5 = compute_plane_model(5).solution.poly;
    EXPECT_EQ(p5.coefficient(3, 1), 3000);
    EXPECT_EQ(p5.coefficient(0, 0), 1);
    EXPECT_EQ(p5.coefficient(0, 6), Integer("867361737988403547205962240695953369140625"));
}

TEST(SolveKernel, PrintsInKnownFormat)
{
    EXPECT_EQ(compute_plane_model(2).solution.poly.to_string(), test::kP2);
}

TEST(SolveKernel, AgreesWithFractionFreeElimination)
{
    for (std::int64_t N : {2, 3}) {
        const KernelProblem kp = build_kernel_problem(N);
        const auto exact = test::bareiss_kernel(matrix_rows(kp), kp.cols());
        ASSERT_EQ(exact.dimension, 1u) << N;
        ASSERT_TRUE(exact.generator.has_value());
        auto v = *exact.generator;
        if (sgn(v[0]) < 0) {
            for (auto &x : v) {
                x = -x;
            }
        }
        const BivariatePoly P = solve_kernel(kp).poly;
        for (std::size_t c = 0; c < kp.cols(); ++c) {
            EXPECT_EQ(P.coefficient(kp.columns[c].a, kp.columns[c].b), v[c]) << N << " column " << c;
        }
    }
}

TEST(SolveKernel, IndependentOfPrimeChoice)
{
    for (std::int64_t N : {3, 4, 6}) {
        const KernelProblem kp = build_kernel_problem(N);
        SolveOptions shifted;
        shifted.prime_offset = 50;
        const SolveResult a = solve_kernel(kp);
        const SolveResult b = solve_kernel(kp, shifted);
        EXPECT_EQ(a.poly, b.poly) << N;
    }
}

TEST(SolveKernel, EmptyKernelAtReducedBounds)
{
    const KernelProblem kp = build_kernel_problem(2, Bidegree{1, 2}, kDefaultGuard);
    EXPECT_THROW(solve_kernel(kp), KernelEmpty);
}

TEST(SolveKernel, WideKernelAtEnlargedBounds)
{
    // Both P_2 and j P_2 fit in bidegree (2, 3).
    const KernelProblem kp = build_kernel_problem(2, Bidegree{2, 3}, kDefaultGuard);
    EXPECT_THROW(solve_kernel(kp), KernelTooLarge);
}

TEST(SolveKernel, NormalizationFallback)
{
    // Rows (1, 0, 0) and (0, 1, 1): the kernel is spanned by (0, -1, 1), whose constant coordinate vanishes.
    KernelProblem kp;
    kp.N = 2;
    kp.bounds = {1, 1};
    kp.e_min = 0;
    kp.e_max = 1;
    kp.columns = {{0, 0}, {1, 0}, {0, 1}};
    kp.column_validity = {QSeries::kExact, QSeries::kExact, QSeries::kExact};
    kp.entries = {1, 0, 0, 0, 1, 1};
    const SolveResult r = solve_kernel(kp);
    EXPECT_TRUE(r.normalization_fallback);
    EXPECT_EQ(r.poly, BivariatePoly::parse(2, "y - x"));
}

TEST(Verify, KnownModelPasses) { EXPECT_TRUE(verify(2, known(2), 50)); }

TEST(Verify, PerturbedModelFails)
{
    const BivariatePoly bad = BivariatePoly::parse(2, "16777216*y^3 - x*y + 196608*y^2 + 769*y + 1");
    EXPECT_FALSE(verify(2, bad, 50));
    const auto residual = first_residual(2, bad, verification_precision(2, 50));
    ASSERT_TRUE(residual.has_value());
    // The only change is +y, so the residual starts with f's leading term q^1.
    EXPECT_EQ(residual->exponent, 1);
    EXPECT_EQ(residual->coefficient, 1);
}

TEST(Verify, AllKnownModels)
{
    for (std::int64_t N = 2; N <= 5; ++N) {
        EXPECT_TRUE(verify(N, known(N), 64)) << N;
    }
}

TEST(Minimality, SmallLevels)
{
    for (std::int64_t N = 2; N <= 4; ++N) {
        EXPECT_TRUE(minimality_check(N)) << N;
    }
}

TEST(Minimality, ReducedBoundsHaveFullRankExactly)
{
    // Independent confirmation over Q for the smallest level.
    const Bidegree b = bidegree_bounds(2);
    for (const Bidegree reduced : {Bidegree{b.dx - 1, b.dy}, Bidegree{b.dx, b.dy - 1}}) {
        const KernelProblem kp = build_kernel_problem(2, reduced, kDefaultGuard);
        EXPECT_EQ(test::bareiss_kernel(matrix_rows(kp), kp.cols()).dimension, 0u);
    }
}

TEST(Degrees, MatchBoundsAndPsi)
{
    for (std::int64_t N = 2; N <= 8; ++N) {
        const BivariatePoly P = compute_plane_model(N).solution.poly;
        EXPECT_EQ(P.y_degree(), dedekind_psi(N)) << N;
        EXPECT_EQ(P.total_degree(), dedekind_psi(N)) << N;
        EXPECT_EQ(P.x_degree(), degree_f(N)) << N;
        EXPECT_TRUE(P.is_normalized()) << N;
        EXPECT_EQ(P.coefficient(0, 0), 1) << N;
        EXPECT_TRUE(degree_formula_check(N, P)) << N;
        for (const auto &[m, c] : P.term_map()) {
            EXPECT_TRUE(m.b > 0 || m.a == 0) << "pure x term in P_" << N;
        }
    }
}

TEST(Height, Examples)
{
    const HeightReport h2 = height_report(known(2));
    EXPECT_NEAR(h2.ln_height, std::log(16777216.0), 1e-9);
    EXPECT_NEAR(h2.ln_height, 16.64, 0.01);
    ASSERT_TRUE(h2.prime_bound.has_value());
    EXPECT_NEAR(*h2.prime_bound, 44.3, 0.05);
    EXPECT_NEAR(h2.log10_height, std::log10(16777216.0), 1e-9);

    EXPECT_NEAR(log_height(known(3)), 39.55, 0.01);
    EXPECT_DOUBLE_EQ(log_height(BivariatePoly::parse(2, "y^3 - x*y + y - 1")), 0.0);
    EXPECT_FALSE(height_report(known(4)).prime_bound.has_value());
}
