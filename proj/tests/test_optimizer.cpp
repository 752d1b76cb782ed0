#include "sixstate/optimizer.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sixstate;

namespace {

double bb84_optimum(double d) { return 1.0 - binary_entropy(0.5 + std::sqrt(d * (1.0 - d))); }

double max_residual(const OptimizationResult& r)
{
    double m = 0.0;
    for (double v : r.residuals) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

TEST(MaximizeIae, SixStateReproducesClosedForm)
{
    const OptimizationResult r = maximize_iae(0.1, {ConstraintMode::SixState, 1e-10}, 1);
    EXPECT_NEAR(r.best_value, i_ae_two_bit(0.1), 1e-6);
    EXPECT_NEAR(r.best_value, 0.241472608719957067, 1e-6);
    ASSERT_TRUE(r.probe.has_value());
    for (const PureState* s : {&r.probe->a(), &r.probe->c()}) {
        const ProbeCoefficients c = probe_coefficients(*s);
        EXPECT_LT(std::norm(c.alpha), 1e-6);
        EXPECT_LT(std::norm(c.delta), 1e-6);
    }
    const double beta_sum = std::norm(probe_coefficients(r.probe->a()).beta) + std::norm(probe_coefficients(r.probe->c()).beta);
    EXPECT_NEAR(beta_sum, 1.0, 1e-5);
    EXPECT_LT(max_residual(r), 1e-10);
    EXPECT_TRUE(check_constraints(*r.probe).valid());
    EXPECT_EQ(r.restarts, 32);
    EXPECT_GT(r.converged_restarts, 0);
}

TEST(MaximizeIae, SixStateVanishesAtZeroDisturbance)
{
    const OptimizationResult r = maximize_iae(0.0, {ConstraintMode::SixState, 1e-10}, 3);
    EXPECT_NEAR(r.best_value, 0.0, 1e-8);
    const OptimizationResult tiny = maximize_iae(1e-4, {ConstraintMode::SixState, 1e-10}, 3);
    EXPECT_NEAR(tiny.best_value, i_ae_two_bit(1e-4), 1e-6);
}

TEST(MaximizeIae, Bb84ExceedsSixStateAndMatchesReference)
{
    const OptimizationResult r = maximize_iae(0.1, {ConstraintMode::BB84, 1e-10}, 1);
    EXPECT_GT(r.best_value, i_ae_two_bit(0.1) + 1e-3);
    // Independent reference: 1 - h(1/2 + sqrt(D(1-D))).
    EXPECT_NEAR(r.best_value, bb84_optimum(0.1), 1e-6);
    EXPECT_NEAR(r.best_value, 0.278071905112637652, 1e-6);
    EXPECT_LT(max_residual(r), 1e-10);
}

TEST(MaximizeIae, Bb84ConvergesAtEndpoints)
{
    const OptimizationResult r0 = maximize_iae(0.0, {ConstraintMode::BB84, 1e-10}, 1);
    EXPECT_GT(r0.converged_restarts, 0);
    EXPECT_NEAR(r0.best_value, 0.0, 1e-8);
    const OptimizationResult r5 = maximize_iae(0.5, {ConstraintMode::BB84, 1e-10}, 1);
    EXPECT_GT(r5.converged_restarts, 0);
    EXPECT_NEAR(r5.best_value, 1.0, 1e-6);
}

TEST(MaximizeIae, SameSeedSameResult)
{
    const auto a = maximize_iae(0.2, {ConstraintMode::SixState, 1e-10}, 42, 8);
    const auto b = maximize_iae(0.2, {ConstraintMode::SixState, 1e-10}, 42, 8);
    EXPECT_EQ(a.best_value, b.best_value);
    EXPECT_EQ(a.restart_values, b.restart_values);
}

TEST(MaximizeIae, RejectsBadInput)
{
    EXPECT_THROW(maximize_iae(0.6, {ConstraintMode::SixState, 1e-10}, 1), std::domain_error);
    EXPECT_THROW(maximize_iae(-0.1, {ConstraintMode::BB84, 1e-10}, 1), std::domain_error);
    EXPECT_THROW(maximize_iae(0.1, {ConstraintMode::SixState, 1e-10}, 1, 0), std::invalid_argument);
}

TEST(EveMeasurement, OptimalProbeIsBasisIndependent)
{
    const ProbeSpec p = build_optimal_probe(0.15);
    const double z = optimize_eve_measurement(p, Basis::Z, 1).information;
    EXPECT_NEAR(z, i_ae_two_bit(0.15), 1e-6);
    EXPECT_NEAR(z, 0.359549636250811542, 1e-6);
    EXPECT_NEAR(optimize_eve_measurement(p, Basis::X, 1).information, z, 1e-6);
    EXPECT_NEAR(optimize_eve_measurement(p, Basis::Y, 1).information, z, 1e-6);
}

TEST(EveMeasurement, NothingToLearnWithoutDisturbance)
{
    for (Basis b : kAllBases) EXPECT_NEAR(optimize_eve_measurement(build_optimal_probe(0.0), b, 2).information, 0.0, 1e-9);
}

TEST(EveMeasurement, ReturnsUnitary)
{
    const MeasurementResult m = optimize_eve_measurement(build_optimal_probe(0.3), Basis::X, 5);
    ASSERT_EQ(m.measurement.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            EXPECT_NEAR(std::abs(m.measurement[i].inner(m.measurement[j])), i == j ? 1.0 : 0.0, 1e-10);
}

TEST(FindIntersection, SixStateCrossing)
{
    const double dstar = find_intersection(i_ab, i_ae_two_bit, 0.1, 0.2);
    EXPECT_LT(std::abs(i_ab(dstar) - i_ae_two_bit(dstar)), 1e-10);
    EXPECT_NEAR(dstar, 0.156373463330039331, 1e-9);
    EXPECT_GT(dstar, 0.5 * (1.0 - 1.0 / std::sqrt(2.0)));
}

TEST(FindIntersection, IndependentBisectionOracle)
{
    // Plain bisection on the raw formulas, no shared code with the library.
    auto h = [](double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); };
    auto diff = [&](double d) {
        const double f = 0.5 * (1 + std::sqrt(d * (2 - 3 * d)) / (1 - d));
        return (1 - h(d)) - (1 - (1 - d) * h(f));
    };
    double lo = 0.1, hi = 0.2;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (diff(mid) > 0 ? lo : hi) = mid;
    }
    EXPECT_NEAR(find_intersection(i_ab, i_ae_two_bit, 0.1, 0.2), 0.5 * (lo + hi), 1e-12);
}

TEST(FindIntersection, EdgeCases)
{
    EXPECT_THROW(find_intersection(i_ab, i_ab, 0.1, 0.2), std::invalid_argument);
    EXPECT_NEAR(find_intersection(i_ab, [](double) { return 0.0; }, 0.4, 0.6), 0.5, 1e-6);
    EXPECT_THROW(find_intersection(i_ab, [](double) { return 2.0; }, 0.1, 0.2), std::invalid_argument);
    EXPECT_THROW(find_intersection(i_ab, i_ae_two_bit, 0.2, 0.1), std::invalid_argument);
    EXPECT_DOUBLE_EQ(find_intersection([](double x) { return x; }, [](double) { return 0.0; }, 0.0, 1.0), 0.0);
}
