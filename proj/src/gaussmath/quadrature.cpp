#include "ael/gaussmath/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ael/errors.hpp"

namespace ael::gaussmath {

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights, double a,
                               double b)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), a_(a), b_(b) {
    if (nodes_.empty() || nodes_.size() != weights_.size())
        throw DomainError("quadrature rule needs equally many (>= 1) nodes and weights");
    if (!(a_ < b_)) throw DomainError("quadrature interval must satisfy a < b");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!(weights_[i] > 0.0)) throw DomainError("quadrature weights must be positive");
        if (nodes_[i] < a_ || nodes_[i] > b_) throw DomainError("quadrature node outside [a,b]");
        if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
            throw DomainError("quadrature nodes must be strictly increasing");
    }
    const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    if (std::abs(total - (b_ - a_)) > 1e-12 * (b_ - a_))
        throw DomainError("quadrature weights must sum to b-a, got " + std::to_string(total));
}

QuadratureRule QuadratureRule::rescaled(double a, double b) const {
    const double scale = (b - a) / (b_ - a_);
    std::vector<double> x(nodes_.size());
    std::vector<double> w(weights_.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = a + (nodes_[i] - a_) * scale;
        w[i] = weights_[i] * scale;
    }
    return QuadratureRule(std::move(x), std::move(w), a, b);
}

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
    if (n == 0) throw DomainError("Gauss-Legendre rule needs n >= 1");
    // Newton iteration on P_n from the Chebyshev-like initial guesses; nodes
    // are symmetric so only the upper half is computed.
    std::vector<double> t(n);
    std::vector<double> w(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (std::size_t k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                const auto kd = static_cast<double>(k);
                p0 = ((2.0 * kd - 1.0) * z * p1 - (kd - 1.0) * p2) / kd;
            }
            dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        {
            double p0 = 1.0;
            double p1 = 0.0;
            for (std::size_t k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                const auto kd = static_cast<double>(k);
                p0 = ((2.0 * kd - 1.0) * z * p1 - (kd - 1.0) * p2) / kd;
            }
            dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
        }
        const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
        t[i] = -z;
        t[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if (n % 2 == 1) t[n / 2] = 0.0;

    std::vector<double> x(n);
    const double mid = 0.5 * (a + b);
    const double halfw = 0.5 * (b - a);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = mid + halfw * t[i];
        w[i] *= halfw;
    }
    // Normalize away the last-ulp drift so the weight-sum invariant is tight.
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& wi : w) wi *= (b - a) / total;
    return QuadratureRule(std::move(x), std::move(w), a, b);
}

}  // namespace ael::gaussmath
