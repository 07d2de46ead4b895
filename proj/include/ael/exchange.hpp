#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ael/equilibrium.hpp"
#include "ael/model.hpp"

namespace ael {

/// Optimal half-spread penalty of a degenerate market.
struct FeeDesignResult {
    double gamma_star;
    double y_star;      // root of 1 − Φ(y) − yφ(y)
    double delta_star;  // σ_eff·y*/√2
    double revenue;     // 2γ*δ*², fees collected from both players
};

/// Root of 1 − Φ(y) − yφ(y) on [0.1, 3].
double optimal_y_star();

/// Closed-form optimum with σ_eff = σ√(1−ρ).
FeeDesignResult optimal_gamma_degenerate(double sigma, double rho);

/// Expected fee per player, γ·E[δ(σ)²], at the equilibrium for `gamma`.
/// `fees` selects the penalized scheme (its γ is replaced). Throws
/// NoEquilibrium when the solver does not converge.
double revenue(double gamma, const MarketParams& params, const FeeScheme& fees,
               const SolverConfig& cfg);

struct RevenuePoint {
    double gamma;
    double revenue;  // NaN when not converged
    bool converged;
    double residual;
    int iterations;
    bool concavity_ok;
};

/// One revenue evaluation per γ; failures are flagged, never thrown.
std::vector<RevenuePoint> revenue_curve(std::span<const double> gamma_grid,
                                        const MarketParams& params, const FeeScheme& fees,
                                        const SolverConfig& cfg);

/// Smallest γ of the curve from which every point (it and all larger γ)
/// converged with concavity_ok; nullopt if the largest point fails.
std::optional<double> empirical_threshold(std::span<const RevenuePoint> curve);

struct GeneralFeeOptimum {
    double gamma;
    double revenue;
    int evaluations;
};

/// Golden-section search for the revenue-maximizing γ in [lo, hi]. Points
/// where the equilibrium does not converge count as −∞.
GeneralFeeOptimum optimal_gamma_general(double lo, double hi, const MarketParams& params,
                                        const FeeScheme& fees, const SolverConfig& cfg,
                                        double tol = 1e-4);

}  // namespace ael
