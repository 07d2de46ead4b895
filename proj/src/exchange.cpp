#include "ael/exchange.hpp"

#include <cmath>
#include <limits>

#include "ael/errors.hpp"
#include "ael/gaussmath/normal.hpp"
#include "ael/gaussmath/roots.hpp"

namespace ael {

using gaussmath::kSqrt2;
using gaussmath::norm_pdf;
using gaussmath::norm_sf;

double optimal_y_star() {
    return gaussmath::find_root([](double y) { return norm_sf(y) - y * norm_pdf(y); }, 0.1, 3.0,
                                0.0);
}

FeeDesignResult optimal_gamma_degenerate(double sigma, double rho) {
    if (!(sigma > 0.0)) throw DomainError("optimal_gamma_degenerate requires sigma > 0");
    if (!(rho > -1.0 && rho < 1.0)) throw DomainError("optimal_gamma_degenerate requires |rho| < 1");
    const double s_eff = sigma * std::sqrt(1.0 - rho);
    FeeDesignResult r{};
    r.y_star = optimal_y_star();
    r.gamma_star = norm_pdf(r.y_star) / (2.0 * kSqrt2 * s_eff);
    r.delta_star = s_eff * r.y_star / kSqrt2;
    r.revenue = 2.0 * r.gamma_star * r.delta_star * r.delta_star;
    return r;
}

namespace {

double expected_fee(double gamma, const Strategy& delta, const MarketParams& params,
                    const SolverConfig& cfg) {
    const SigmaAverage avg(params, cfg.rule());
    return gamma * avg.mean([&](double s) {
        const double d = delta(s);
        return d * d;
    });
}

}  // namespace

double revenue(double gamma, const MarketParams& params, const FeeScheme& fees,
               const SolverConfig& cfg) {
    const auto scheme = with_gamma(fees, gamma);
    const auto report = solve_fixed_point(params, scheme, cfg);
    if (!report.converged)
        throw NoEquilibrium("equilibrium did not converge at gamma=" + std::to_string(gamma));
    return expected_fee(gamma, report.strategy, params, cfg);
}

std::vector<RevenuePoint> revenue_curve(std::span<const double> gamma_grid,
                                        const MarketParams& params, const FeeScheme& fees,
                                        const SolverConfig& cfg) {
    std::vector<RevenuePoint> out;
    out.reserve(gamma_grid.size());
    for (const double g : gamma_grid) {
        RevenuePoint p{g, std::numeric_limits<double>::quiet_NaN(), false,
                       std::numeric_limits<double>::quiet_NaN(), 0, false};
        try {
            const auto report = solve_fixed_point(params, with_gamma(fees, g), cfg);
            p.converged = report.converged;
            p.residual = report.residual;
            p.iterations = report.iterations;
            p.concavity_ok = report.concavity_ok;
            if (report.converged) p.revenue = expected_fee(g, report.strategy, params, cfg);
        } catch (const Error&) {
            p.converged = false;
        }
        out.push_back(p);
    }
    return out;
}

std::optional<double> empirical_threshold(std::span<const RevenuePoint> curve) {
    std::optional<double> out;
    for (auto it = curve.rbegin(); it != curve.rend(); ++it) {
        if (!(it->converged && it->concavity_ok)) break;
        out = it->gamma;
    }
    return out;
}

GeneralFeeOptimum optimal_gamma_general(double lo, double hi, const MarketParams& params,
                                        const FeeScheme& fees, const SolverConfig& cfg,
                                        double tol) {
    if (!(lo > 0.0 && lo < hi)) throw DomainError("optimal_gamma_general requires 0 < lo < hi");
    int evaluations = 0;
    auto objective = [&](double g) {
        ++evaluations;
        try {
            return revenue(g, params, fees, cfg);
        } catch (const Error&) {
            return -std::numeric_limits<double>::infinity();
        }
    };
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > tol * (1.0 + std::abs(a))) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = objective(d);
        }
    }
    return fc >= fd ? GeneralFeeOptimum{c, fc, evaluations} : GeneralFeeOptimum{d, fd, evaluations};
}

}  // namespace ael
