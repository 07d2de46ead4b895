#include <gtest/gtest.h>

#include <cmath>

#include "ael/errors.hpp"
#include "ael/model.hpp"
#include "unit/oracles.hpp"

using namespace ael;

TEST(MarketParams, ValidatesInputs) {
    EXPECT_THROW(MarketParams(0.0, 1.0, 0.0), DomainError);
    EXPECT_THROW(MarketParams(1.2, 1.1, 0.0), DomainError);
    EXPECT_THROW(MarketParams(0.1, 1.1, 1.0), DomainError);
    EXPECT_THROW(MarketParams(0.1, 1.1, -1.0), DomainError);
    EXPECT_THROW(MarketParams(0.1, 1.1, 0.0, 0.0), DomainError);
    EXPECT_THROW(MarketParams(0.1, std::nan(""), 0.0), DomainError);
    EXPECT_NO_THROW(MarketParams(0.1, 1.1, -0.9, 3.0));
}

TEST(MarketParams, Moments) {
    const MarketParams p(0.1, 1.1, 0.0);
    EXPECT_NEAR(p.mean_sigma(), 0.6, 1e-15);
    // E[σ²] = Var + mean² = 1/12 + 0.36.
    EXPECT_NEAR(p.mean_sigma_sq(), 1.0 / 12.0 + 0.36, 1e-15);
    EXPECT_FALSE(p.degenerate());
    EXPECT_TRUE(MarketParams(1.1, 1.1, 0.0).degenerate());
}

TEST(MarketParams, EquilibriumAssumption) {
    EXPECT_TRUE(MarketParams(0.1, 1.1, 0.0).equilibrium_assumption_holds());
    EXPECT_TRUE(MarketParams(0.1, 1.1, -0.5).equilibrium_assumption_holds());
    const MarketParams bad(0.1, 1.1, 0.5);
    EXPECT_FALSE(bad.equilibrium_assumption_holds());
    try {
        bad.require_equilibrium_assumption();
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("rho <= sigma_minus/sigma_plus"), std::string::npos);
    }
}

TEST(Strategy, InterpolationAndDomain) {
    const MarketParams p(0.1, 1.1, 0.0);
    const auto s = Strategy::from_function(p, 11, [](double x) { return 2.0 * x; });
    EXPECT_NEAR(s(0.1), 0.2, 1e-15);
    EXPECT_NEAR(s(0.65), 1.3, 1e-14);
    EXPECT_NEAR(s(1.1), 2.2, 1e-15);
    EXPECT_THROW(s(1.2), OutOfDomain);
    EXPECT_THROW(s(0.05), OutOfDomain);
    EXPECT_NEAR(s.max_value(), 2.2, 1e-15);
    EXPECT_THROW(Strategy({0.1, 0.1}, {1.0, 1.0}), DomainError);
    EXPECT_THROW(Strategy({0.1, 0.2}, {1.0, -1.0}), DomainError);
    EXPECT_THROW(Strategy({0.1, 0.2}, {1.0}), DomainError);
    const auto shifted = s.shifted(-0.5);
    EXPECT_DOUBLE_EQ(shifted(0.1), 0.0);
    EXPECT_NEAR(shifted(1.1), 1.7, 1e-15);
}

TEST(Strategy, DegenerateMarketHasOneNode) {
    const MarketParams p(1.1, 1.1, 0.0);
    const auto s = Strategy::constant(p, 101, 0.4);
    EXPECT_EQ(s.size(), 1u);
    EXPECT_DOUBLE_EQ(s(1.1), 0.4);
}

TEST(FeeSchemes, Validation) {
    EXPECT_THROW(validate(SpreadQuad{-1.0}), DomainError);
    EXPECT_THROW(validate(MidQuad{std::nan("")}), DomainError);
    EXPECT_THROW(validate(LinearDemand{0.0, 1.0}), DomainError);
    EXPECT_NO_THROW(validate(LinearDemand{1.0, 0.0}));
    EXPECT_EQ(scheme_name(SpreadQuad{1.0}), "spread_quad");
    EXPECT_EQ(scheme_name(NoFee{}), "none");
    EXPECT_DOUBLE_EQ(fee_gamma(with_gamma(LinearDemand{2.0, 1.0}, 3.0)), 3.0);
    EXPECT_DOUBLE_EQ(std::get<LinearDemand>(with_gamma(LinearDemand{2.0, 1.0}, 3.0)).kbar, 2.0);
}

TEST(SignalWeights, KnownValuesAndIdentities) {
    EXPECT_NEAR(sigma_rho(0.1, 1.1, 0.0), 1.1045361017187261, 1e-15);
    EXPECT_NEAR(q_rho(0.1, 1.1, 0.0), 0.01 / 1.22, 1e-16);
    EXPECT_NEAR(sigma_rho(1.0, 1.0, 0.5), 1.0, 1e-15);
    for (double rho : {-0.7, 0.0, 0.05, 0.09}) {
        for (double sa : {0.1, 0.4, 1.1}) {
            for (double sb : {0.1, 0.7, 1.1}) {
                const double s = sigma_rho(sa, sb, rho);
                EXPECT_NEAR(s * s, sa * sa + sb * sb - 2 * rho * sa * sb, 1e-14);
                EXPECT_NEAR(q_rho(sa, sb, rho) + q_tilde_rho(sa, sb, rho), 1.0, 1e-14);
                EXPECT_NEAR(q_rho(sa, sb, rho), q_tilde_rho(sb, sa, rho), 1e-14);
            }
        }
    }
    EXPECT_THROW(sigma_rho(1.0, 1.0, 1.0), DomainError);
}

TEST(SigmaAverage, ProbabilitiesAndMoments) {
    const MarketParams p(0.1, 1.1, 0.0);
    const SigmaAverage avg(p, default_rule());
    double total = 0.0;
    for (double w : avg.probs()) total += w;
    EXPECT_NEAR(total, 1.0, 1e-14);
    EXPECT_NEAR(avg.mean([](double s) { return s * s; }), p.mean_sigma_sq(), 1e-14);
    const SigmaAverage point(MarketParams(0.7, 0.7, 0.0), default_rule());
    EXPECT_EQ(point.size(), 1u);
    EXPECT_DOUBLE_EQ(point.mean([](double s) { return s; }), 0.7);
}

namespace {

// Stats with δ(σ) = a + bσ from moments of U[σ−, σ+].
PairStats linear_strategy_stats(double a, double b, const MarketParams& p) {
    const double es = p.mean_sigma();
    const double es2 = p.mean_sigma_sq();
    const double var_delta = b * b * (es2 - es * es);
    const double rho = p.rho();
    return {2.0 * (a + b * es), 2.0 * (es2 - rho * es * es + var_delta), 0.0,
            0.5 * (es2 + rho * es * es + var_delta), std::nan("")};
}

}  // namespace

TEST(AnalyticStats, MatchesMomentOracle) {
    for (double rho : {0.0, -0.4, 0.08}) {
        const MarketParams p(0.1, 1.1, rho);
        const auto delta = Strategy::from_function(p, 101, [](double s) { return 0.05 + 0.3 * s; });
        const auto got = analytic_stats(delta, p, default_rule());
        const auto want = linear_strategy_stats(0.05, 0.3, p);
        EXPECT_NEAR(got.spread_mean, want.spread_mean, 1e-14);
        EXPECT_NEAR(got.spread_var, want.spread_var, 1e-13);
        EXPECT_DOUBLE_EQ(got.mid_error_mean, 0.0);
        EXPECT_NEAR(got.mid_error_var, want.mid_error_var, 1e-13);
        const oracle::Market m{0.1, 1.1, rho};
        EXPECT_NEAR(got.trade_prob, oracle::trade_prob([](double s) { return 0.05 + 0.3 * s; }, m), 1e-10);
    }
}

TEST(AnalyticStats, ReferenceValues) {
    const MarketParams p(0.1, 1.1, 0.0);
    const auto zero = analytic_stats(Strategy::constant(p, 101, 0.0), p, default_rule());
    EXPECT_NEAR(zero.trade_prob, 0.5, 1e-15);
    const auto c = analytic_stats(Strategy::constant(p, 101, 0.3), p, default_rule());
    EXPECT_NEAR(c.spread_mean, 0.6, 1e-15);
    // mpmath double integral.
    EXPECT_NEAR(c.trade_prob, 0.234631124652243861, 1e-12);
}

TEST(AnalyticStats, TradeProbabilityDecreasesWithSpread) {
    const MarketParams p(0.1, 1.1, 0.0);
    double prev = 1.0;
    for (double d : {0.0, 0.1, 0.2, 0.5, 1.0, 3.0}) {
        const double tp = analytic_stats(Strategy::constant(p, 11, d), p, default_rule()).trade_prob;
        EXPECT_LT(tp, prev);
        EXPECT_GT(tp, 0.0);
        prev = tp;
    }
}
