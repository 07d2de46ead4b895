#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

namespace ael::gaussmath {

/// Fixed-node quadrature rule on [a, b].
///
/// Invariants: nodes strictly increasing inside [a, b], weights strictly
/// positive, sum of weights equal to b - a.
class QuadratureRule {
public:
    QuadratureRule(std::vector<double> nodes, std::vector<double> weights, double a, double b);

    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

    /// Same rule mapped affinely onto [a, b].
    QuadratureRule rescaled(double a, double b) const;

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    double a_;
    double b_;
};

/// n-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree 2n-1.
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

inline constexpr std::size_t kDefaultQuadratureNodes = 64;

template <typename F>
    requires std::invocable<F&, double>
double integrate(F&& f, const QuadratureRule& rule) {
    const auto x = rule.nodes();
    const auto w = rule.weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * f(x[i]);
    return sum;
}

}  // namespace ael::gaussmath
