#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ael/gaussmath/quadrature.hpp"

namespace ael {

/// Market model: signal-noise bounds, signal correlation and prior scale of
/// the efficient-price increment (nullopt means v = +∞).
class MarketParams {
public:
    MarketParams(double sigma_minus, double sigma_plus, double rho,
                 std::optional<double> v = std::nullopt);

    double sigma_minus() const noexcept { return sigma_minus_; }
    double sigma_plus() const noexcept { return sigma_plus_; }
    double rho() const noexcept { return rho_; }
    std::optional<double> v() const noexcept { return v_; }
    bool infinite_v() const noexcept { return !v_.has_value(); }

    /// σ− == σ+ (within 1e-12 relative).
    bool degenerate() const noexcept;
    /// ρ <= σ−/σ+, the assumption under which best responses are interior.
    bool equilibrium_assumption_holds() const noexcept;
    /// Throws DomainError naming the violated assumption.
    void require_equilibrium_assumption() const;

    /// Closed-form moments of σ ~ U[σ−, σ+].
    double mean_sigma() const noexcept;
    double mean_sigma_sq() const noexcept;

    MarketParams with_v(std::optional<double> v) const;

private:
    double sigma_minus_;
    double sigma_plus_;
    double rho_;
    std::optional<double> v_;
};

/// Half-spread function δ on [σ−, σ+], piecewise linear between grid nodes.
/// A degenerate market carries a single node.
class Strategy {
public:
    Strategy(std::vector<double> grid, std::vector<double> values);

    /// Uniform grid of n points on [σ−, σ+] (one point when degenerate).
    static std::vector<double> uniform_grid(const MarketParams& params, std::size_t n);
    static Strategy constant(const MarketParams& params, std::size_t n, double value);

    template <typename F>
    static Strategy from_function(const MarketParams& params, std::size_t n, F&& f) {
        auto grid = uniform_grid(params, n);
        std::vector<double> values(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
        return Strategy(std::move(grid), std::move(values));
    }

    std::span<const double> grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return grid_.size(); }
    double lo() const noexcept { return grid_.front(); }
    double hi() const noexcept { return grid_.back(); }
    double max_value() const noexcept;

    /// Interpolated δ(σ). Throws OutOfDomain beyond 1e-12 slack.
    double operator()(double sigma) const;

    /// Same grid, values shifted by c (result clamped at 0).
    Strategy shifted(double c) const;

private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

inline double strategy_eval(const Strategy& delta, double sigma) { return delta(sigma); }

struct NoFee {};
/// Penalty γ((P^a+P^b)/2 − P∞)² on the mid-price error.
struct MidQuad {
    double gamma;
};
/// Penalty γ(P^i − P∞|i)² on each player's half-spread.
struct SpreadQuad {
    double gamma;
};
/// Half-linear demand with equal slopes k̄, plus optional half-spread penalty γ.
struct LinearDemand {
    double kbar;
    double gamma;
};

using FeeScheme = std::variant<NoFee, MidQuad, SpreadQuad, LinearDemand>;

/// Throws DomainError if γ or k̄ violate their sign constraints.
void validate(const FeeScheme& fees);
std::string scheme_name(const FeeScheme& fees);
/// γ of the scheme (0 for NoFee).
double fee_gamma(const FeeScheme& fees) noexcept;
FeeScheme with_gamma(const FeeScheme& fees, double gamma);

/// The five market-quality statistics.
struct PairStats {
    double spread_mean;
    double spread_var;
    double mid_error_mean;
    double mid_error_var;
    double trade_prob;
};

double sigma_rho(double sa, double sb, double rho);
/// Weight of the opponent's signal in the precision-weighted estimate of P∞.
double q_rho(double sa, double sb, double rho);
/// Weight of the own signal; q_rho + q_tilde_rho = 1.
double q_tilde_rho(double sa, double sb, double rho);

/// Expectation over σ ~ U[σ−, σ+]: nodes with probability weights summing to 1.
/// Built from any quadrature rule, rescaled onto [σ−, σ+]; collapses to a point
/// mass in a degenerate market.
class SigmaAverage {
public:
    SigmaAverage(const MarketParams& params, const gaussmath::QuadratureRule& rule);

    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    template <typename F>
    double mean(F&& f) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) sum += probs_[i] * f(nodes_[i]);
        return sum;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> probs_;
};

gaussmath::QuadratureRule default_rule();

PairStats analytic_stats(const Strategy& delta, const MarketParams& params,
                         const gaussmath::QuadratureRule& rule);

}  // namespace ael
