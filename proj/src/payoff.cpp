#include "ael/payoff.hpp"

#include <cmath>

#include "ael/errors.hpp"
#include "ael/gaussmath/normal.hpp"

namespace ael {

using gaussmath::norm_pdf;
using gaussmath::norm_sf;

PayoffContext::PayoffContext(double sigma_a, const Strategy& delta, const MarketParams& params,
                             const FeeScheme& fees, const gaussmath::QuadratureRule& rule)
    : sigma_a_(sigma_a), params_(params), fees_(fees) {
    validate(fees_);
    const double slack = 1e-12 * params.sigma_plus();
    if (sigma_a < params.sigma_minus() - slack || sigma_a > params.sigma_plus() + slack)
        throw OutOfDomain("sigma_a outside [sigma_minus, sigma_plus]");
    const SigmaAverage avg(params, rule);
    nodes_.reserve(avg.size());
    const double rho = params.rho();
    for (std::size_t i = 0; i < avg.size(); ++i) {
        const double sb = avg.nodes()[i];
        const double d = delta(sb);
        nodes_.push_back(Node{avg.probs()[i], sb, sigma_rho(sigma_a, sb, rho),
                              q_rho(sigma_a, sb, rho), q_tilde_rho(sigma_a, sb, rho), d});
        mean_delta_ += avg.probs()[i] * d;
        mean_delta_sq_ += avg.probs()[i] * d * d;
    }
    mean_sigma_b_ = params.mean_sigma();
    mean_sigma_b_sq_ = params.mean_sigma_sq();
}

double PayoffContext::mid_error_sq(double x) const noexcept {
    const double sa = sigma_a_;
    return 0.25 * (x * x - 2.0 * x * mean_delta_ + mean_delta_sq_ + sa * sa + mean_sigma_b_sq_ +
                   2.0 * params_.rho() * sa * mean_sigma_b_);
}

double base_payoff(double x, const PayoffContext& ctx) {
    double sum = 0.0;
    for (const auto& n : ctx.nodes()) {
        const double u = (x + n.delta_b) / n.big_sigma;
        sum += n.prob * (0.5 * (x - n.delta_b) * norm_sf(u) +
                         n.big_sigma * (0.5 - n.q) * norm_pdf(u));
    }
    return sum;
}

double base_deriv(double x, const PayoffContext& ctx) {
    double sum = 0.0;
    for (const auto& n : ctx.nodes()) {
        const double u = (x + n.delta_b) / n.big_sigma;
        sum += n.prob * (0.5 * norm_sf(u) +
                         (-x * n.q_tilde + n.delta_b * n.q) * norm_pdf(u) / n.big_sigma);
    }
    return sum;
}

// d/dx of base_deriv: φ(u)/Σ · (−1/2 − Q̃ + (x+δ)(xQ̃ − δQ)/Σ²).
double base_second_deriv(double x, const PayoffContext& ctx) {
    double sum = 0.0;
    for (const auto& n : ctx.nodes()) {
        const double u = (x + n.delta_b) / n.big_sigma;
        const double s2 = n.big_sigma * n.big_sigma;
        const double poly =
            -0.5 - n.q_tilde + (x + n.delta_b) * (x * n.q_tilde - n.delta_b * n.q) / s2;
        sum += n.prob * poly * norm_pdf(u) / n.big_sigma;
    }
    return sum;
}

namespace {

const LinearDemand& require_linear(const PayoffContext& ctx) {
    const auto* ld = std::get_if<LinearDemand>(&ctx.fees());
    if (!ld) throw WrongScheme("half-linear payoff requires the linear_demand scheme, got " +
                               scheme_name(ctx.fees()));
    return *ld;
}

template <typename> inline constexpr bool kAlwaysFalse = false;

}  // namespace

double penalized_payoff(double x, const PayoffContext& ctx) {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, NoFee>) return base_payoff(x, ctx);
            else if constexpr (std::is_same_v<T, MidQuad>)
                return base_payoff(x, ctx) - f.gamma * ctx.mid_error_sq(x);
            else if constexpr (std::is_same_v<T, SpreadQuad>)
                return base_payoff(x, ctx) - f.gamma * x * x;
            else if constexpr (std::is_same_v<T, LinearDemand>) return half_linear_payoff(x, ctx);
            else static_assert(kAlwaysFalse<T>);
        },
        ctx.fees());
}

double payoff_deriv(double x, const PayoffContext& ctx) {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, NoFee>) return base_deriv(x, ctx);
            else if constexpr (std::is_same_v<T, MidQuad>)
                return base_deriv(x, ctx) - 0.5 * f.gamma * (x - ctx.mean_delta());
            else if constexpr (std::is_same_v<T, SpreadQuad>)
                return base_deriv(x, ctx) - 2.0 * f.gamma * x;
            else if constexpr (std::is_same_v<T, LinearDemand>) return half_linear_deriv(x, ctx);
            else static_assert(kAlwaysFalse<T>);
        },
        ctx.fees());
}

double payoff_second_deriv(double x, const PayoffContext& ctx) {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, NoFee>) return base_second_deriv(x, ctx);
            else if constexpr (std::is_same_v<T, MidQuad>)
                return base_second_deriv(x, ctx) - 0.5 * f.gamma;
            else if constexpr (std::is_same_v<T, SpreadQuad>)
                return base_second_deriv(x, ctx) - 2.0 * f.gamma;
            else if constexpr (std::is_same_v<T, LinearDemand>)
                return half_linear_second_deriv(x, ctx);
            else static_assert(kAlwaysFalse<T>);
        },
        ctx.fees());
}

double half_linear_payoff(double x, const PayoffContext& ctx) {
    const auto& ld = require_linear(ctx);
    double sum = 0.0;
    for (const auto& n : ctx.nodes()) {
        const double u = (x + n.delta_b) / n.big_sigma;
        const double half_gap = 0.5 * (x - n.delta_b);
        sum += n.prob * ((n.big_sigma * n.big_sigma * (0.5 - n.q) - half_gap * (n.delta_b + x)) *
                             norm_sf(u) +
                         n.big_sigma * half_gap * norm_pdf(u));
    }
    return 0.5 * ld.kbar * sum - ld.gamma * x * x;
}

double half_linear_deriv(double x, const PayoffContext& ctx) {
    const auto& ld = require_linear(ctx);
    double sum = 0.0;
    for (const auto& n : ctx.nodes()) {
        const double u = (x + n.delta_b) / n.big_sigma;
        sum += n.prob * (-x * norm_sf(u) + n.big_sigma * n.q * norm_pdf(u));
    }
    return 0.5 * ld.kbar * sum - 2.0 * ld.gamma * x;
}

double half_linear_second_deriv(double x, const PayoffContext& ctx) {
    const auto& ld = require_linear(ctx);
    double sum = 0.0;
    for (const auto& n : ctx.nodes()) {
        const double u = (x + n.delta_b) / n.big_sigma;
        sum += n.prob * (-norm_sf(u) +
                         (n.q_tilde * x - n.q * n.delta_b) * norm_pdf(u) / n.big_sigma);
    }
    return 0.5 * ld.kbar * sum - 2.0 * ld.gamma;
}

}  // namespace ael
