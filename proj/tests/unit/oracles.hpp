#pragma once

// Reference implementations used only by the tests. They deliberately avoid
// the library's code paths: the normal CDF is a power series, integrals are
// composite Simpson, roots are plain bisection, and payoffs integrate the
// opponent's noise conditionally rather than through the combined Σρ form.

#include <functional>

namespace oracle {

double norm_pdf(double x);
/// Φ by the series Φ(x) = 1/2 + φ(x)(x + x³/3 + x⁵/15 + ...), |x| <= 9.
double norm_cdf(double x);

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-15);

double simpson(const std::function<double(double)>& f, double a, double b, int n);

/// Golden-section maximizer of a unimodal function.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

struct Market {
    double sigma_minus;
    double sigma_plus;
    double rho;
};

using StrategyFn = std::function<double(double)>;

/// E over σb of a conditional expectation given (σa, σb); a single point
/// when σ− = σ+.
double average_sigma_b(const Market& m, const std::function<double(double)>& g, int n = 200);

/// Seller's limit payoff at offset x with P∞|a = 0 under a flat prior:
/// P∞ = −σaεa, εb = ρεa + √(1−ρ²)η, trade iff x <= P^b.
double seller_payoff(double x, double sigma_a, const StrategyFn& delta, const Market& m);

/// Half-linear gain (k̄/2)(P^b − x)((x + P^b)/2 − P∞)1{x <= P^b} − γx².
double half_linear_gain(double x, double sigma_a, const StrategyFn& delta, const Market& m,
                        double kbar, double gamma);

/// E[((P^a+P^b)/2 − P∞)²] for the seller at offset x.
double mid_error_sq(double x, double sigma_a, const StrategyFn& delta, const Market& m);

/// P[P^a <= P^b] by a 2-D Simpson rule over (σa, σb).
double trade_prob(const StrategyFn& delta, const Market& m, int n = 400);

/// Existence-bound constants recomputed term by term.
struct Bound {
    double C;
    double first_term;
    double second_term;
    double gamma_min;
};
Bound spread_quad_bound(const Market& m);

}  // namespace oracle
