#include <gtest/gtest.h>

#include <cmath>

#include "ael/equilibrium.hpp"
#include "ael/errors.hpp"
#include "ael/exchange.hpp"
#include "ael/gaussmath/normal.hpp"
#include "unit/oracles.hpp"

using namespace ael;
using gaussmath::norm_cdf;
using gaussmath::norm_pdf;

TEST(OptimalFee, YStar) {
    const double y = optimal_y_star();
    EXPECT_LE(std::abs(1.0 - norm_cdf(y) - y * norm_pdf(y)), 1e-12);
    EXPECT_GT(y, 0.7);
    EXPECT_LT(y, 0.8);
    EXPECT_NEAR(y, oracle::bisect([](double t) { return 1.0 - oracle::norm_cdf(t) - t * oracle::norm_pdf(t); }, 0.1, 3.0),
                1e-13);
    EXPECT_NEAR(y, 0.75179152469356445746, 1e-14);
}

TEST(OptimalFee, DegenerateClosedForm) {
    const auto r = optimal_gamma_degenerate(1.1, 0.0);
    EXPECT_NEAR(r.gamma_star, 0.09665911850500547795, 1e-15);
    EXPECT_NEAR(r.delta_star, 0.584756573664332545, 1e-14);
    EXPECT_GE(r.gamma_star, 0.09);
    EXPECT_LE(r.gamma_star, 0.11);
    // δ* is the equilibrium at γ*.
    EXPECT_NEAR(solve_degenerate(MarketParams(1.1, 1.1, 0.0), SpreadQuad{r.gamma_star}), r.delta_star, 1e-8);
    // Substituting the FOC: 2γδ² = (1/2)(1 − Φ(y*))δ.
    EXPECT_NEAR(r.revenue, 0.5 * (1.0 - norm_cdf(r.y_star)) * r.delta_star, 1e-10);
}

TEST(OptimalFee, Homogeneity) {
    const auto a = optimal_gamma_degenerate(1.1, 0.0);
    const auto b = optimal_gamma_degenerate(2.2, 0.0);
    EXPECT_NEAR(b.gamma_star, a.gamma_star / 2.0, 1e-15);
    EXPECT_NEAR(b.delta_star, 2.0 * a.delta_star, 1e-14);
}

TEST(OptimalFee, CorrelationUsesEffectiveSigma) {
    const auto r = optimal_gamma_degenerate(1.1, 0.36);
    const auto eff = optimal_gamma_degenerate(1.1 * 0.8, 0.0);
    EXPECT_NEAR(r.gamma_star, eff.gamma_star, 1e-15);
    EXPECT_NEAR(solve_degenerate(MarketParams(1.1, 1.1, 0.36), SpreadQuad{r.gamma_star}), r.delta_star, 1e-8);
}

TEST(OptimalFee, FirstOrderOptimalityOfMappedObjective) {
    const auto r = optimal_gamma_degenerate(1.1, 0.0);
    auto obj = [](double d) { return 0.25 * (1.0 - norm_cdf(std::sqrt(2.0) * d / 1.1)) * d; };
    const double h = 1e-5;
    EXPECT_LE(std::abs((obj(r.delta_star + h) - obj(r.delta_star - h)) / (2 * h)), 1e-8);
}

TEST(OptimalFee, ClosedFormBeatsNeighbours) {
    const MarketParams p(1.1, 1.1, 0.0);
    const auto r = optimal_gamma_degenerate(1.1, 0.0);
    const SolverConfig cfg;
    const double best = revenue(r.gamma_star, p, SpreadQuad{1.0}, cfg);
    EXPECT_NEAR(2.0 * best, r.revenue, 1e-9);
    for (double g : {0.05, 0.08, 0.12, 0.2}) EXPECT_GE(best, revenue(g, p, SpreadQuad{1.0}, cfg));
}

TEST(RevenueCurve, DegenerateArgmaxBracketsGammaStar) {
    const MarketParams p(1.1, 1.1, 0.0);
    std::vector<double> grid;
    for (int i = 0; i < 200; ++i) grid.push_back(0.02 + 0.28 * i / 199.0);
    const auto curve = revenue_curve(grid, p, SpreadQuad{1.0}, SolverConfig{});
    std::size_t best = 0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        ASSERT_TRUE(curve[i].converged);
        if (curve[i].revenue > curve[best].revenue) best = i;
    }
    const double step = grid[1] - grid[0];
    EXPECT_LE(std::abs(grid[best] - optimal_gamma_degenerate(1.1, 0.0).gamma_star), step);
}

TEST(RevenueCurve, ReferenceMarketIsNonincreasingAboveOnePointFive) {
    const MarketParams p(0.1, 1.1, 0.0);
    const std::vector<double> grid{1.5, 2.0, 2.5, 3.0, 4.0, 5.0};
    const auto curve = revenue_curve(grid, p, SpreadQuad{1.0}, SolverConfig{});
    for (std::size_t i = 0; i < curve.size(); ++i) {
        EXPECT_TRUE(curve[i].converged);
        EXPECT_GT(curve[i].revenue, 0.0);
        if (i) {
            EXPECT_LE(curve[i].revenue, curve[i - 1].revenue);
        }
    }
}

TEST(RevenueCurve, FailuresAreFlaggedNotThrown) {
    const MarketParams p(0.1, 1.1, 0.0);
    SolverConfig cfg;
    cfg.max_iter = 1;
    const std::vector<double> grid{1e-3, 2.0};
    const auto curve = revenue_curve(grid, p, SpreadQuad{1.0}, cfg);
    ASSERT_EQ(curve.size(), 2u);
    for (const auto& pt : curve) {
        EXPECT_FALSE(pt.converged);
        EXPECT_TRUE(std::isnan(pt.revenue));
    }
    const auto none = revenue_curve(grid, p, NoFee{}, SolverConfig{});
    EXPECT_FALSE(none[0].converged);
    EXPECT_THROW(revenue(2.0, p, SpreadQuad{1.0}, cfg), NoEquilibrium);
}

TEST(RevenueCurve, ContinuousInGamma) {
    const MarketParams p(0.1, 1.1, 0.0);
    const SolverConfig cfg;
    const double a = revenue(2.0, p, SpreadQuad{1.0}, cfg);
    const double b = revenue(2.001, p, SpreadQuad{1.0}, cfg);
    EXPECT_LT(std::abs(a - b), 1e-5);
}

TEST(RevenueCurve, GoldenSectionFindsDegenerateOptimum) {
    const MarketParams p(1.1, 1.1, 0.0);
    SolverConfig cfg;
    cfg.tol = 1e-12;
    const auto opt = optimal_gamma_general(0.03, 0.3, p, SpreadQuad{1.0}, cfg, 1e-6);
    EXPECT_NEAR(opt.gamma, optimal_gamma_degenerate(1.1, 0.0).gamma_star, 1e-4);
}

TEST(RevenueCurve, EmpiricalThreshold) {
    std::vector<RevenuePoint> curve{{0.5, 1.0, false, 1.0, 3, false},
                                    {1.0, 1.0, true, 0.0, 3, true},
                                    {1.5, 1.0, true, 0.0, 3, true}};
    EXPECT_DOUBLE_EQ(*empirical_threshold(curve), 1.0);
    curve.back().converged = false;
    EXPECT_FALSE(empirical_threshold(curve).has_value());
    const MarketParams p(0.1, 1.1, 0.0);
    const std::vector<double> grid{0.5, 1.5};
    EXPECT_DOUBLE_EQ(*empirical_threshold(revenue_curve(grid, p, SpreadQuad{1.0}, SolverConfig{})), 0.5);
}
