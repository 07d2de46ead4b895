#include "ael/equilibrium.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "ael/errors.hpp"
#include "ael/gaussmath/normal.hpp"
#include "ael/gaussmath/roots.hpp"
#include "ael/parallel.hpp"
#include "ael/payoff.hpp"

namespace ael {

using gaussmath::kSqrt2;
using gaussmath::norm_pdf;
using gaussmath::norm_sf;

namespace {

constexpr int kMaxDoublings = 60;

bool has_interior_equilibrium(const FeeScheme& fees) {
    if (std::holds_alternative<SpreadQuad>(fees)) return true;
    if (const auto* ld = std::get_if<LinearDemand>(&fees)) return ld->gamma > 0.0;
    return false;
}

void require_equilibrium_scheme(const FeeScheme& fees) {
    if (!has_interior_equilibrium(fees))
        throw NoEquilibrium("no Nash equilibrium exists under fee scheme '" + scheme_name(fees) +
                            "': the aggregated first-order condition has a strictly positive "
                            "obstruction (see no_ne_certificate)");
}

struct PointResponse {
    double x;
    bool non_concave;
};

PointResponse best_response_at(double sigma_a, const Strategy& delta, const MarketParams& params,
                               const FeeScheme& fees, const SolverConfig& cfg,
                               const gaussmath::QuadratureRule& rule, bool tolerate_non_concave) {
    const PayoffContext ctx(sigma_a, delta, params, fees, rule);
    const gaussmath::ScalarFn f = [&](double x) { return penalized_payoff(x, ctx); };
    const gaussmath::ScalarFn fp = [&](double x) { return payoff_deriv(x, ctx); };

    double x_hi = cfg.search_cap;
    int doublings = 0;
    while (!(fp(x_hi) < 0.0)) {
        if (++doublings > kMaxDoublings) {
            std::ostringstream os;
            os << "no negative payoff derivative found up to x=" << x_hi
               << " at sigma_a=" << sigma_a;
            throw BracketFailure(os.str());
        }
        x_hi *= 2.0;
    }
    try {
        return {gaussmath::maximize_concave(f, fp, 0.0, x_hi).x, false};
    } catch (const NonConcave& e) {
        if (!tolerate_non_concave) throw;
        return {e.smallest_root(), true};
    }
}

struct ResponseSweep {
    Strategy strategy;
    bool non_concave;
};

ResponseSweep best_response_sweep(const Strategy& delta, const MarketParams& params,
                                  const FeeScheme& fees, const SolverConfig& cfg,
                                  bool tolerate_non_concave) {
    const auto rule = cfg.rule();
    const auto grid = delta.grid();
    std::vector<double> out(grid.size());
    std::vector<char> flags(grid.size(), 0);
    parallel_for(grid.size(), [&](std::size_t i) {
        const auto r =
            best_response_at(grid[i], delta, params, fees, cfg, rule, tolerate_non_concave);
        out[i] = r.x;
        flags[i] = r.non_concave ? 1 : 0;
    });
    const bool any = std::any_of(flags.begin(), flags.end(), [](char c) { return c != 0; });
    return {Strategy({grid.begin(), grid.end()}, std::move(out)), any};
}

double sup_distance(const Strategy& a, const Strategy& b) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        r = std::max(r, std::abs(a.values()[i] - b.values()[i]));
    return r;
}

}  // namespace

void SolverConfig::validate() const {
    if (grid_n < 2) throw DomainError("solver.grid_n must be >= 2");
    if (!(damping > 0.0 && damping <= 1.0)) throw DomainError("solver.damping must be in (0,1]");
    if (!(tol > 0.0)) throw DomainError("solver.tol must be positive");
    if (max_iter < 1) throw DomainError("solver.max_iter must be positive");
    if (!(search_cap > 0.0)) throw DomainError("solver.search_cap must be positive");
    if (quad_nodes < 1) throw DomainError("solver.quad_nodes must be >= 1");
}

gaussmath::QuadratureRule SolverConfig::rule() const {
    return gaussmath::gauss_legendre(quad_nodes, 0.0, 1.0);
}

Strategy best_response(const Strategy& delta, const MarketParams& params, const FeeScheme& fees,
                       const SolverConfig& cfg) {
    cfg.validate();
    validate(fees);
    return best_response_sweep(delta, params, fees, cfg, false).strategy;
}

double degenerate_foc(double x, const MarketParams& params, const FeeScheme& fees) {
    const double s_eff = params.sigma_plus() * std::sqrt(1.0 - params.rho());
    const double u = kSqrt2 * x / s_eff;
    if (const auto* sq = std::get_if<SpreadQuad>(&fees)) return 0.5 * norm_sf(u) - 2.0 * sq->gamma * x;
    if (const auto* ld = std::get_if<LinearDemand>(&fees))
        return 0.5 * ld->kbar * (-x * norm_sf(u) + s_eff / kSqrt2 * norm_pdf(u)) -
               2.0 * ld->gamma * x;
    throw WrongScheme("no degenerate equilibrium under fee scheme '" + scheme_name(fees) + "'");
}

double solve_degenerate(const MarketParams& params, const FeeScheme& fees) {
    if (!params.degenerate()) throw DomainError("solve_degenerate requires sigma_minus == sigma_plus");
    validate(fees);
    if (!has_interior_equilibrium(fees))
        throw WrongScheme("no degenerate equilibrium under fee scheme '" + scheme_name(fees) + "'");
    const gaussmath::ScalarFn foc = [&](double x) { return degenerate_foc(x, params, fees); };
    // FOC(x) <= 1/2 − 2γx for the spread penalty; the half-linear FOC is
    // bounded by a constant minus 2γx, so doubling terminates.
    double hi = 1.0 / (4.0 * fee_gamma(fees));
    int doublings = 0;
    while (!(foc(hi) < 0.0)) {
        if (++doublings > kMaxDoublings) throw BracketFailure("degenerate FOC never turns negative");
        hi *= 2.0;
    }
    return gaussmath::find_root(foc, 0.0, hi, 0.0);
}

double linear_demand_concavity_constant() {
    const double z = kSqrt2;
    return z * norm_pdf(z) - norm_sf(z);
}

ExistenceBound existence_bound(const MarketParams& params, const FeeScheme& fees) {
    if (params.degenerate())
        throw DegenerateCase("existence bounds apply only when sigma_minus < sigma_plus");
    validate(fees);
    const double sm = params.sigma_minus();
    const double sp = params.sigma_plus();
    const double rho = params.rho();

    if (std::holds_alternative<SpreadQuad>(fees)) {
        const double ratio = sm / sp;
        const double a = (1.0 - rho / ratio) / (1.0 - ratio * ratio);
        const double lambda = 1.0 / (2.0 * a + 1.0);
        const double root_term = std::sqrt(0.5 * std::pow(1.0 - rho * rho, 2) * std::pow(sm, 4) /
                                           (sp * sp));
        const double c = 2.0 * lambda * a * root_term;
        const double arg = c / (kSqrt2 * sp);
        const double gmin = norm_sf(arg) / (4.0 * c) + norm_pdf(arg) / (2.0 * kSqrt2 * sm);
        return {c, gmin};
    }
    if (const auto* ld = std::get_if<LinearDemand>(&fees)) {
        const double gmin = 0.5 * ld->kbar * linear_demand_concavity_constant();
        // The σb-average of ΣρQρ depends on σa; take its sup over a fine σa grid
        // so that the bound holds for every player type.
        const SigmaAverage avg(params, gaussmath::gauss_legendre(gaussmath::kDefaultQuadratureNodes, 0, 1));
        double worst = 0.0;
        constexpr int kSigmaAGrid = 201;
        for (int i = 0; i < kSigmaAGrid; ++i) {
            const double sa = sm + (sp - sm) * i / (kSigmaAGrid - 1);
            const double m = avg.mean([&](double sb) {
                return sigma_rho(sa, sb, rho) * q_rho(sa, sb, rho) * norm_pdf(0.0);
            });
            worst = std::max(worst, m);
        }
        const double c = ld->gamma > 0.0 ? ld->kbar / (4.0 * ld->gamma) * worst
                                         : std::numeric_limits<double>::infinity();
        return {c, gmin};
    }
    throw WrongScheme("no existence bound for fee scheme '" + scheme_name(fees) + "'");
}

bool concavity_check(const Strategy& delta, const MarketParams& params, const FeeScheme& fees,
                     double upper, std::size_t points, const gaussmath::QuadratureRule& rule) {
    if (!(upper > 0.0) || points == 0) return false;
    std::atomic<bool> ok{true};
    const auto grid = delta.grid();
    parallel_for(grid.size(), [&](std::size_t i) {
        const PayoffContext ctx(grid[i], delta, params, fees, rule);
        for (std::size_t k = 1; k <= points; ++k) {
            const double x = upper * static_cast<double>(k) / static_cast<double>(points + 1);
            if (!(payoff_second_deriv(x, ctx) < 0.0)) {
                ok = false;
                return;
            }
        }
    });
    return ok;
}

EquilibriumReport solve_fixed_point(const MarketParams& params, const FeeScheme& fees,
                                    const SolverConfig& cfg) {
    cfg.validate();
    validate(fees);
    require_equilibrium_scheme(fees);
    params.require_equilibrium_assumption();

    double bound_c = 0.0;
    double gamma_min = 0.0;
    double initial = 0.0;
    if (params.degenerate()) {
        initial = 0.5 * solve_degenerate(params, fees);
    } else {
        const auto eb = existence_bound(params, fees);
        bound_c = eb.C;
        gamma_min = eb.gamma_min;
        if (fee_gamma(fees) >= gamma_min && std::isfinite(bound_c)) {
            initial = 0.5 * bound_c;
        } else {
            const MarketParams top(params.sigma_plus(), params.sigma_plus(), params.rho());
            initial = solve_degenerate(top, fees);
        }
    }

    Strategy delta = Strategy::constant(params, cfg.grid_n, initial);
    EquilibriumReport report{delta};
    report.bound_C = bound_c;
    report.gamma_min = gamma_min;
    bool non_concave = false;
    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        const auto sweep = best_response_sweep(delta, params, fees, cfg, true);
        non_concave = non_concave || sweep.non_concave;
        const double residual = sup_distance(delta, sweep.strategy);
        report.iterations = iter;
        report.residual = residual;
        report.strategy = delta;
        if (residual <= cfg.tol) {
            report.converged = !sweep.non_concave;
            break;
        }
        std::vector<double> next(delta.size());
        for (std::size_t i = 0; i < next.size(); ++i)
            next[i] = (1.0 - cfg.damping) * delta.values()[i] +
                      cfg.damping * sweep.strategy.values()[i];
        delta = Strategy({delta.grid().begin(), delta.grid().end()}, std::move(next));
    }
    report.non_concave = non_concave;
    if (report.non_concave) report.converged = false;

    const double upper = bound_c > 0.0 && std::isfinite(bound_c)
                             ? bound_c
                             : 2.0 * std::max(report.strategy.max_value(), 1e-12);
    report.concavity_ok = concavity_check(report.strategy, params, fees, upper, 50, cfg.rule());
    return report;
}

double no_ne_certificate(const Strategy& delta, const MarketParams& params,
                         const gaussmath::QuadratureRule& rule) {
    const SigmaAverage avg(params, rule);
    const double rho = params.rho();
    double total = 0.0;
    for (std::size_t i = 0; i < avg.size(); ++i) {
        const double sa = avg.nodes()[i];
        const double da = delta(sa);
        double inner = 0.0;
        for (std::size_t j = 0; j < avg.size(); ++j) {
            const double sb = avg.nodes()[j];
            inner += avg.probs()[j] * 0.5 * norm_sf((da + delta(sb)) / sigma_rho(sa, sb, rho));
        }
        total += avg.probs()[i] * inner;
    }
    return total;
}

double verify_ne(const Strategy& delta, const MarketParams& params, const FeeScheme& fees,
                 std::size_t x_samples, const gaussmath::QuadratureRule& rule) {
    validate(fees);
    const auto grid = delta.grid();
    const double x_max = delta.max_value() > 0.0 ? 3.0 * delta.max_value() : 1.0;
    std::vector<double> gains(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t i) {
        const PayoffContext ctx(grid[i], delta, params, fees, rule);
        const double d = delta.values()[i];
        const double base = penalized_payoff(d, ctx);
        const double step = 1e-3 * (1.0 + d);
        double best = 0.0;
        auto consider = [&](double x) {
            if (x >= 0.0) best = std::max(best, penalized_payoff(x, ctx) - base);
        };
        consider(d - step);
        consider(d + step);
        for (std::size_t k = 0; k < x_samples; ++k)
            consider(x_samples == 1 ? 0.0
                                    : x_max * static_cast<double>(k) /
                                          static_cast<double>(x_samples - 1));
        gains[i] = best;
    });
    return *std::max_element(gains.begin(), gains.end());
}

}  // namespace ael
