#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ael/errors.hpp"
#include "ael/payoff.hpp"
#include "unit/oracles.hpp"

using namespace ael;

namespace {

const auto kRule = default_rule();

double linear_delta(double s) { return 0.08 + 0.25 * s; }

}  // namespace

TEST(BasePayoff, MatchesConditionalIntegrationOracle) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double rho : {0.0, -0.5, 0.09}) {
        const MarketParams p(0.1, 1.1, rho);
        const oracle::Market m{0.1, 1.1, rho};
        const auto delta = Strategy::from_function(p, 201, linear_delta);
        for (int k = 0; k < 4; ++k) {
            const double sa = 0.1 + u(gen);
            const double x = -0.5 + 2.0 * u(gen);
            const PayoffContext ctx(sa, delta, p, NoFee{}, kRule);
            EXPECT_NEAR(base_payoff(x, ctx), oracle::seller_payoff(x, sa, linear_delta, m), 2e-9)
                << "rho=" << rho << " sa=" << sa << " x=" << x;
        }
    }
}

TEST(BasePayoff, DegenerateMarket) {
    const MarketParams p(0.8, 0.8, -0.3);
    const oracle::Market m{0.8, 0.8, -0.3};
    const auto delta = Strategy::constant(p, 1, 0.2);
    const PayoffContext ctx(0.8, delta, p, NoFee{}, kRule);
    for (double x : {-1.0, 0.0, 0.3, 2.0})
        EXPECT_NEAR(base_payoff(x, ctx), oracle::seller_payoff(x, 0.8, [](double) { return 0.2; }, m), 1e-11);
}

TEST(BasePayoff, LimitsInX) {
    const MarketParams p(0.1, 1.1, 0.0);
    const auto delta = Strategy::constant(p, 11, 0.1);
    const PayoffContext ctx(0.5, delta, p, NoFee{}, kRule);
    EXPECT_NEAR(base_payoff(50.0, ctx), 0.0, 1e-15);
    // Very aggressive asks always trade and lose (x − E δ)/2 on average.
    EXPECT_NEAR(base_payoff(-50.0, ctx), (-50.0 - 0.1) / 2.0, 1e-9);
    EXPECT_NEAR(base_deriv(-50.0, ctx), 0.5, 1e-9);
}

TEST(PenalizedPayoff, DerivativesMatchFiniteDifferences) {
    const MarketParams p(0.1, 1.1, 0.0);
    const auto delta = Strategy::from_function(p, 101, linear_delta);
    const FeeScheme schemes[] = {NoFee{}, MidQuad{1.3}, SpreadQuad{2.0}, LinearDemand{1.0, 0.7},
                                 LinearDemand{2.5, 0.0}};
    const double h = 1e-4;
    for (const auto& fees : schemes) {
        for (double sa : {0.1, 0.37, 1.1}) {
            const PayoffContext ctx(sa, delta, p, fees, kRule);
            for (double x = -0.8; x <= 1.6; x += 0.2) {
                const double fd1 = (penalized_payoff(x + h, ctx) - penalized_payoff(x - h, ctx)) / (2 * h);
                const double fd2 = (payoff_deriv(x + h, ctx) - payoff_deriv(x - h, ctx)) / (2 * h);
                EXPECT_NEAR(payoff_deriv(x, ctx), fd1, 1e-7) << scheme_name(fees) << " x=" << x;
                EXPECT_NEAR(payoff_second_deriv(x, ctx), fd2, 1e-7) << scheme_name(fees) << " x=" << x;
            }
        }
    }
}

TEST(PenalizedPayoff, FeeTermsAgainstOracle) {
    const MarketParams p(0.1, 1.1, 0.05);
    const oracle::Market m{0.1, 1.1, 0.05};
    const auto delta = Strategy::from_function(p, 201, linear_delta);
    const double sa = 0.45;
    const PayoffContext none(sa, delta, p, NoFee{}, kRule);
    const PayoffContext mid(sa, delta, p, MidQuad{2.0}, kRule);
    const PayoffContext spread(sa, delta, p, SpreadQuad{2.0}, kRule);
    for (double x : {-0.3, 0.2, 0.9}) {
        EXPECT_NEAR(none.mid_error_sq(x), oracle::mid_error_sq(x, sa, linear_delta, m), 1e-10);
        EXPECT_NEAR(base_payoff(x, none) - penalized_payoff(x, mid), 2.0 * none.mid_error_sq(x), 1e-14);
        EXPECT_NEAR(base_payoff(x, none) - penalized_payoff(x, spread), 2.0 * x * x, 1e-14);
    }
}

TEST(HalfLinearPayoff, MatchesConditionalIntegrationOracle) {
    for (double rho : {0.0, -0.3}) {
        const MarketParams p(0.1, 1.1, rho);
        const oracle::Market m{0.1, 1.1, rho};
        const auto delta = Strategy::from_function(p, 201, linear_delta);
        for (double kbar : {1.0, 2.0}) {
            const LinearDemand fees{kbar, 0.4};
            for (double sa : {0.2, 0.9}) {
                const PayoffContext ctx(sa, delta, p, fees, kRule);
                for (double x : {-0.6, 0.0, 0.35, 1.2})
                    EXPECT_NEAR(half_linear_payoff(x, ctx),
                                oracle::half_linear_gain(x, sa, linear_delta, m, kbar, 0.4), 2e-9)
                        << "rho=" << rho << " kbar=" << kbar << " sa=" << sa << " x=" << x;
            }
        }
    }
}

TEST(HalfLinearPayoff, PositiveDerivativeForNonPositiveOffsets) {
    const MarketParams p(0.1, 1.1, 0.0);
    const auto delta = Strategy::from_function(p, 101, linear_delta);
    for (double sa : {0.1, 0.6, 1.1}) {
        const PayoffContext ctx(sa, delta, p, LinearDemand{1.0, 3.0}, kRule);
        for (double x = -3.0; x <= 0.0; x += 0.05) EXPECT_GT(half_linear_deriv(x, ctx), 0.0) << x;
    }
}

TEST(HalfLinearPayoff, RequiresLinearDemand) {
    const MarketParams p(0.1, 1.1, 0.0);
    const auto delta = Strategy::constant(p, 11, 0.1);
    const PayoffContext ctx(0.5, delta, p, SpreadQuad{1.0}, kRule);
    EXPECT_THROW(half_linear_payoff(0.1, ctx), WrongScheme);
    EXPECT_THROW(half_linear_deriv(0.1, ctx), WrongScheme);
}

TEST(PayoffContext, RejectsBadSigma) {
    const MarketParams p(0.1, 1.1, 0.0);
    const auto delta = Strategy::constant(p, 11, 0.1);
    EXPECT_THROW(PayoffContext(0.0, delta, p, NoFee{}, kRule), OutOfDomain);
    EXPECT_THROW(PayoffContext(1.5, delta, p, NoFee{}, kRule), OutOfDomain);
}

TEST(PenalizedPayoff, MidQuadAtZero) {
    const MarketParams p(1.0, 1.0, 0.0);
    const auto delta = Strategy::constant(p, 1, 0.0);
    const PayoffContext ctx(1.0, delta, p, MidQuad{0.5}, kRule);
    EXPECT_NEAR(base_payoff(0.0, ctx), 0.0, 1e-16);
    EXPECT_NEAR(penalized_payoff(0.0, ctx), -0.25, 1e-15);
}
