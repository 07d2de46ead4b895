#include "ael/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ael/errors.hpp"
#include "ael/parallel.hpp"
#include "ael/rng.hpp"

namespace ael {

namespace {

constexpr std::uint64_t kBlock = 1u << 15;

// Sums K per-draw quantities over [0, samples) in fixed-size blocks, reducing
// the block partials in index order so the result does not depend on the
// number of workers.
template <std::size_t K, typename F>
std::array<double, K> block_sum(std::uint64_t samples, F&& per_draw) {
    const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
    std::vector<std::array<double, K>> partial(blocks);
    parallel_for(blocks, [&](std::size_t b) {
        std::array<double, K> acc{};
        const std::uint64_t begin = b * kBlock;
        const std::uint64_t end = std::min(samples, begin + kBlock);
        for (std::uint64_t i = begin; i < end; ++i) {
            const auto v = per_draw(i);
            for (std::size_t k = 0; k < K; ++k) acc[k] += v[k];
        }
        partial[b] = acc;
    });
    std::array<double, K> total{};
    for (const auto& p : partial)
        for (std::size_t k = 0; k < K; ++k) total[k] += p[k];
    return total;
}

void require_samples(const SimConfig& sim) {
    if (sim.samples < 1) throw DomainError("simulation needs at least one sample");
    if (sim.v && !(*sim.v > 0.0)) throw DomainError("simulation prior scale v must be positive");
}

double draw_sigma(DrawStream& rng, const MarketParams& params) {
    if (params.degenerate()) return params.sigma_plus();
    return rng.uniform(params.sigma_minus(), params.sigma_plus());
}

template <typename F>
Estimate mean_and_se(std::uint64_t samples, F&& per_draw) {
    const auto s = block_sum<1>(samples, [&](std::uint64_t i) {
        return std::array<double, 1>{per_draw(i)};
    });
    const double n = static_cast<double>(samples);
    const double mean = s[0] / n;
    const auto c = block_sum<1>(samples, [&](std::uint64_t i) {
        const double d = per_draw(i) - mean;
        return std::array<double, 1>{d * d};
    });
    const double var = samples > 1 ? c[0] / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

}  // namespace

AuctionOutcome sample_auction(const Strategy& delta, const MarketParams& params,
                              const SimConfig& sim, std::uint64_t draw_index,
                              const FeeScheme& fees) {
    DrawStream rng(sim.seed, draw_index);
    const double rho = params.rho();
    AuctionOutcome o{};
    const double z_inf = rng.normal();
    o.p_inf = sim.v ? *sim.v * z_inf : 0.0;
    o.sigma_a = draw_sigma(rng, params);
    o.sigma_b = draw_sigma(rng, params);
    const double eps_a = rng.normal();
    const double eps_b = rho * eps_a + std::sqrt(1.0 - rho * rho) * rng.normal();
    o.p_a = o.p_inf + o.sigma_a * eps_a + delta(o.sigma_a);
    o.p_b = o.p_inf + o.sigma_b * eps_b - delta(o.sigma_b);
    o.traded = o.p_a <= o.p_b;
    if (o.traded) {
        if (const auto* ld = std::get_if<LinearDemand>(&fees)) {
            o.trade_price = (ld->kbar * o.p_a + ld->kbar * o.p_b) / (2.0 * ld->kbar);
            o.volume = 0.5 * ld->kbar * (o.p_b - o.p_a);
        } else {
            o.trade_price = 0.5 * (o.p_a + o.p_b);
        }
    }
    return o;
}

SimReport estimate_stats(const Strategy& delta, const MarketParams& params, const SimConfig& sim) {
    require_samples(sim);
    const double n = static_cast<double>(sim.samples);
    auto quantities = [&](std::uint64_t i) {
        const auto o = sample_auction(delta, params, sim, i);
        return std::array<double, 3>{o.p_a - o.p_b, 0.5 * (o.p_a + o.p_b) - o.p_inf,
                                     o.traded ? 1.0 : 0.0};
    };
    const auto sums = block_sum<3>(sim.samples, quantities);
    const double m_spread = sums[0] / n;
    const double m_mid = sums[1] / n;
    const double p_trade = sums[2] / n;
    const auto central = block_sum<4>(sim.samples, [&](std::uint64_t i) {
        const auto q = quantities(i);
        const double a = q[0] - m_spread;
        const double b = q[1] - m_mid;
        return std::array<double, 4>{a * a, a * a * a * a, b * b, b * b * b * b};
    });
    const double var_spread = central[0] / n;
    const double var_mid = central[2] / n;
    const double m4_spread = central[1] / n;
    const double m4_mid = central[3] / n;

    SimReport r{};
    r.samples = sim.samples;
    r.seed = sim.seed;
    // Unbiased variance estimates; the fourth-moment SE formula uses the
    // plug-in moments.
    const double bessel = sim.samples > 1 ? n / (n - 1.0) : 1.0;
    r.stats = PairStats{m_spread, var_spread * bessel, m_mid, var_mid * bessel, p_trade};
    r.std_errors = {std::sqrt(var_spread / n),
                    std::sqrt(std::max(0.0, m4_spread - var_spread * var_spread) / n),
                    std::sqrt(var_mid / n),
                    std::sqrt(std::max(0.0, m4_mid - var_mid * var_mid) / n),
                    std::sqrt(p_trade * (1.0 - p_trade) / n)};
    return r;
}

Posterior efficient_price_posterior(double p_obs, double sigma_a, std::optional<double> v) {
    if (!v) return {p_obs, sigma_a * sigma_a};
    const double v2 = *v * *v;
    const double s2 = sigma_a * sigma_a;
    return {p_obs * v2 / (v2 + s2), v2 * s2 / (v2 + s2)};
}

namespace {

// Shared by the conditional estimators: P∞ from its posterior, then the
// opponent's signal given ε_a.
struct ConditionalDraw {
    double p_inf;
    double p_inf_b;
    double sigma_b;
};

ConditionalDraw conditional_draw(double sigma_a, double p_obs, const MarketParams& params,
                                 const SimConfig& sim, std::uint64_t i) {
    DrawStream rng(sim.seed, i);
    const auto post = efficient_price_posterior(p_obs, sigma_a, sim.v);
    const double p_inf = post.mean + std::sqrt(post.var) * rng.normal();
    const double eps_a = (p_obs - p_inf) / sigma_a;
    const double rho = params.rho();
    const double eps_b = rho * eps_a + std::sqrt(1.0 - rho * rho) * rng.normal();
    const double sigma_b = draw_sigma(rng, params);
    return {p_inf, p_inf + sigma_b * eps_b, sigma_b};
}

}  // namespace

double sample_posterior(double p_obs, double sigma_a, std::optional<double> v, std::uint64_t seed,
                        std::uint64_t draw_index) {
    DrawStream rng(seed, draw_index);
    const auto post = efficient_price_posterior(p_obs, sigma_a, v);
    return post.mean + std::sqrt(post.var) * rng.normal();
}

Estimate estimate_conditional_payoff(double x, double sigma_a, double p_obs, const Strategy& delta,
                                     const MarketParams& params, const SimConfig& sim) {
    require_samples(sim);
    if (!(sigma_a > 0.0)) throw DomainError("sigma_a must be positive");
    return mean_and_se(sim.samples, [&](std::uint64_t i) {
        const auto d = conditional_draw(sigma_a, p_obs, params, sim, i);
        const double p_a = p_obs + x;
        const double p_b = d.p_inf_b - delta(d.sigma_b);
        return p_a <= p_b ? 0.5 * (p_a + p_b) - d.p_inf : 0.0;
    });
}

Estimate estimate_half_linear_payoff(double x, double sigma_a, const Strategy& delta,
                                     const MarketParams& params, const FeeScheme& fees,
                                     const SimConfig& sim) {
    require_samples(sim);
    const auto* ld = std::get_if<LinearDemand>(&fees);
    if (!ld) throw WrongScheme("half-linear estimate requires the linear_demand scheme");
    const double penalty = ld->gamma * x * x;
    return mean_and_se(sim.samples, [&](std::uint64_t i) {
        const auto d = conditional_draw(sigma_a, 0.0, params, sim, i);
        const double p_a = x;
        const double p_b = d.p_inf_b - delta(d.sigma_b);
        if (p_a > p_b) return -penalty;
        const double volume = ld->kbar * ld->kbar / (2.0 * ld->kbar) * (p_b - p_a);
        const double price = (ld->kbar * p_a + ld->kbar * p_b) / (2.0 * ld->kbar);
        return volume * (price - d.p_inf) - penalty;
    });
}

}  // namespace ael
