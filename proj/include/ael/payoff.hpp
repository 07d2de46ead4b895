#pragma once

#include <vector>

#include "ael/model.hpp"

namespace ael {

/// Everything a player with uncertainty σa needs to evaluate the v → ∞ limit
/// payoff against an opponent playing `delta`.
///
/// Σρ, Qρ, Q̃ρ and δ(σb) are cached at the σb quadrature nodes on
/// construction; the context is immutable afterwards, so evaluations are pure
/// and may run concurrently.
class PayoffContext {
public:
    PayoffContext(double sigma_a, const Strategy& delta, const MarketParams& params,
                  const FeeScheme& fees, const gaussmath::QuadratureRule& rule);

    double sigma_a() const noexcept { return sigma_a_; }
    const MarketParams& params() const noexcept { return params_; }
    const FeeScheme& fees() const noexcept { return fees_; }

    struct Node {
        double prob;
        double sigma_b;
        double big_sigma;  // Σρ(σa, σb)
        double q;          // Qρ
        double q_tilde;    // Q̃ρ
        double delta_b;    // δ(σb)
    };
    const std::vector<Node>& nodes() const noexcept { return nodes_; }

    double mean_delta() const noexcept { return mean_delta_; }
    double mean_delta_sq() const noexcept { return mean_delta_sq_; }

    /// Expected squared mid-price error given (P∞|a, σa) at offset x.
    double mid_error_sq(double x) const noexcept;

private:
    double sigma_a_;
    MarketParams params_;
    FeeScheme fees_;
    std::vector<Node> nodes_;
    double mean_delta_ = 0.0;
    double mean_delta_sq_ = 0.0;
    double mean_sigma_b_ = 0.0;
    double mean_sigma_b_sq_ = 0.0;
};

/// Unpenalized limit payoff e(x); ignores ctx.fees().
double base_payoff(double x, const PayoffContext& ctx);
double base_deriv(double x, const PayoffContext& ctx);
double base_second_deriv(double x, const PayoffContext& ctx);

/// Payoff under the context's fee scheme (LinearDemand dispatches to the
/// half-linear game).
double penalized_payoff(double x, const PayoffContext& ctx);
double payoff_deriv(double x, const PayoffContext& ctx);
double payoff_second_deriv(double x, const PayoffContext& ctx);

/// Half-linear demand game with equal slopes k̄, minus γx². Throws WrongScheme
/// unless the context carries LinearDemand.
double half_linear_payoff(double x, const PayoffContext& ctx);
double half_linear_deriv(double x, const PayoffContext& ctx);
double half_linear_second_deriv(double x, const PayoffContext& ctx);

}  // namespace ael
