#pragma once

#include <cstddef>

#include "ael/model.hpp"

namespace ael {

struct SolverConfig {
    std::size_t grid_n = 101;
    double damping = 0.5;
    double tol = 1e-9;
    int max_iter = 500;
    double search_cap = 1.0;
    std::size_t quad_nodes = gaussmath::kDefaultQuadratureNodes;

    /// Throws DomainError on an invalid field.
    void validate() const;
    gaussmath::QuadratureRule rule() const;
};

struct EquilibriumReport {
    Strategy strategy;
    double residual = 0.0;  // sup over the grid of |δ − BR(δ)|
    int iterations = 0;
    bool converged = false;
    double bound_C = 0.0;
    double gamma_min = 0.0;
    bool concavity_ok = false;
    bool non_concave = false;  // some best response had several stationary points
};

struct ExistenceBound {
    double C;
    double gamma_min;
};

/// Pointwise argmax of the penalized payoff against `delta`, on delta's grid.
///
/// The search interval [0, x_hi] starts at cfg.search_cap and doubles until the
/// payoff derivative turns negative (BracketFailure after 60 doublings).
/// NonConcave propagates from the kernel.
Strategy best_response(const Strategy& delta, const MarketParams& params, const FeeScheme& fees,
                       const SolverConfig& cfg);

/// Damped Picard iteration δ ← (1−θ)δ + θ·BR(δ).
///
/// Requires SpreadQuad, or LinearDemand with γ > 0 (otherwise NoEquilibrium)
/// and ρ <= σ−/σ+ (otherwise DomainError). Non-convergence is reported through
/// the `converged` flag.
EquilibriumReport solve_fixed_point(const MarketParams& params, const FeeScheme& fees,
                                    const SolverConfig& cfg);

/// Scalar equilibrium half-spread of a degenerate market (σ− = σ+).
double solve_degenerate(const MarketParams& params, const FeeScheme& fees);

/// First-order condition whose unique positive root solve_degenerate returns.
double degenerate_foc(double x, const MarketParams& params, const FeeScheme& fees);

/// Closed-form bound C on equilibrium half-spreads and the γ threshold that
/// guarantees existence. Throws DegenerateCase when σ− = σ+.
ExistenceBound existence_bound(const MarketParams& params, const FeeScheme& fees);

/// max_z −(1−Φ(z)) + zφ(z), attained at z = √2.
double linear_demand_concavity_constant();

/// Normalized double integral of (1/2)(1−Φ((δ(σa)+δ(σb))/Σρ)); strictly
/// positive for every finite δ.
double no_ne_certificate(const Strategy& delta, const MarketParams& params,
                         const gaussmath::QuadratureRule& rule);

/// Largest payoff gain from a unilateral deviation x ∈ [0, 3·max δ] over the
/// grid of `delta` (x_samples uniformly spaced deviations plus δ(σa) ± a small
/// step). Zero or below tolerance for a Nash equilibrium.
double verify_ne(const Strategy& delta, const MarketParams& params, const FeeScheme& fees,
                 std::size_t x_samples, const gaussmath::QuadratureRule& rule);

/// Samples payoff_second_deriv on `points` interior points of (0, upper) at
/// each grid σa of `delta`; true iff all samples are negative.
bool concavity_check(const Strategy& delta, const MarketParams& params, const FeeScheme& fees,
                     double upper, std::size_t points, const gaussmath::QuadratureRule& rule);

}  // namespace ael
