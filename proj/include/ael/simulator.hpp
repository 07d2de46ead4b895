#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "ael/model.hpp"

namespace ael {

struct SimConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 7;
    /// Prior scale of the efficient-price increment; nullopt means v = +∞.
    std::optional<double> v;
};

/// One simulated auction.
struct AuctionOutcome {
    double p_inf;
    double p_a;
    double p_b;
    double sigma_a;
    double sigma_b;
    bool traded;
    std::optional<double> trade_price;
    std::optional<double> volume;  // half-linear demand only
};

struct SimReport {
    PairStats stats;
    /// Standard errors in PairStats field order.
    std::array<double, 5> std_errors;
    std::uint64_t samples;
    std::uint64_t seed;
};

struct Estimate {
    double mean;
    double se;
};

/// Draws one auction. In infinite-v mode P∞ ≡ 0 (every statistic is a
/// function of the increments only); in finite mode P∞ ~ N(0, v²).
/// Under LinearDemand the trade price is slope-weighted and the volume is
/// (k̄/2)(P^b − P^a).
AuctionOutcome sample_auction(const Strategy& delta, const MarketParams& params,
                              const SimConfig& sim, std::uint64_t draw_index,
                              const FeeScheme& fees = NoFee{});

/// Empirical market statistics with standard errors; deterministic given
/// (seed, samples) whatever the worker count.
SimReport estimate_stats(const Strategy& delta, const MarketParams& params, const SimConfig& sim);

/// Mean and variance of P∞ given (P∞|a = p_obs, σa) under prior scale v
/// (nullopt: flat prior, mean p_obs and variance σa²).
struct Posterior {
    double mean;
    double var;
};
Posterior efficient_price_posterior(double p_obs, double sigma_a, std::optional<double> v);

/// P∞ drawn from the posterior for draw `draw_index` of the stream.
double sample_posterior(double p_obs, double sigma_a, std::optional<double> v, std::uint64_t seed,
                        std::uint64_t draw_index);

/// Monte Carlo estimate of the seller's expected payoff at offset x given
/// (P∞|a = p_obs, σa), sampling P∞ from its exact posterior, then ε_a, then
/// ε_b | ε_a ~ N(ρε_a, 1−ρ²) and σb ~ U[σ−, σ+]. sim.v selects the prior.
Estimate estimate_conditional_payoff(double x, double sigma_a, double p_obs, const Strategy& delta,
                                     const MarketParams& params, const SimConfig& sim);

/// Monte Carlo estimate of the half-linear gain
/// E[(k̄/2)(P^b−P^a)((P^a+P^b)/2 − P∞)1{P^a≤P^b}] − γx² given σa (p_obs = 0).
Estimate estimate_half_linear_payoff(double x, double sigma_a, const Strategy& delta,
                                     const MarketParams& params, const FeeScheme& fees,
                                     const SimConfig& sim);

}  // namespace ael
