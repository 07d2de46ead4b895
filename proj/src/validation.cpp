#include "ael/validation.hpp"

#include <cmath>
#include <sstream>

#include "ael/errors.hpp"
#include "ael/payoff.hpp"
#include "ael/rng.hpp"

namespace ael {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

FeeScheme penalized_scheme(const FeeScheme& fees) {
    if (std::holds_alternative<SpreadQuad>(fees) || std::holds_alternative<LinearDemand>(fees))
        return fees;
    return SpreadQuad{2.0};
}

// Fixed sample points: analytic checks must not depend on the simulation seed.
CheckResult derivative_check(const MarketParams& params, const FeeScheme& fees) {
    const auto rule = default_rule();
    const double h = 1e-4;
    const Strategy delta = Strategy::from_function(params, 101, [](double s) { return 0.1 + 0.2 * s; });
    const double gamma = std::max(fee_gamma(fees), 0.5);
    const FeeScheme schemes[] = {NoFee{}, MidQuad{gamma}, SpreadQuad{gamma}, LinearDemand{1.0, gamma}};
    DrawStream rng(0x5eedULL, 0xfdULL);
    double worst = 0.0;
    for (const auto& scheme : schemes) {
        for (int k = 0; k < 20; ++k) {
            const double sa = params.degenerate() ? params.sigma_plus()
                                                  : rng.uniform(params.sigma_minus(), params.sigma_plus());
            const double x = rng.uniform(-0.5, 1.5);
            const PayoffContext ctx(sa, delta, params, scheme, rule);
            const double fd1 = (penalized_payoff(x + h, ctx) - penalized_payoff(x - h, ctx)) / (2 * h);
            const double fd2 = (payoff_deriv(x + h, ctx) - payoff_deriv(x - h, ctx)) / (2 * h);
            worst = std::max(worst, std::abs(fd1 - payoff_deriv(x, ctx)));
            worst = std::max(worst, std::abs(fd2 - payoff_second_deriv(x, ctx)));
        }
    }
    return {"derivatives_vs_finite_differences", worst <= 1e-6, "max abs error " + fmt(worst)};
}

CheckResult payoff_mc_check(const MarketParams& params, const SimConfig& sim) {
    const auto rule = default_rule();
    const MarketParams limit = params.with_v(std::nullopt);
    const Strategy delta = Strategy::constant(limit, 101, 0.3);
    const double sa = 0.5 * (params.sigma_minus() + params.sigma_plus());
    double worst_z = 0.0;
    for (const double x : {0.0, 0.4, 1.0}) {
        const PayoffContext ctx(sa, delta, limit, NoFee{}, rule);
        SimConfig s = sim;
        s.v.reset();
        const auto est = estimate_conditional_payoff(x, sa, 0.0, delta, limit, s);
        worst_z = std::max(worst_z, std::abs(est.mean - base_payoff(x, ctx)) / est.se);
    }
    return {"limit_payoff_vs_monte_carlo", worst_z <= 4.0, "max |z| " + fmt(worst_z)};
}

CheckResult stats_mc_check(const MarketParams& params, const SimConfig& sim) {
    const Strategy delta = Strategy::from_function(params, 101, [](double s) { return 0.05 + 0.3 * s; });
    SimConfig s = sim;
    s.v = params.v();
    const auto analytic = analytic_stats(delta, params, default_rule());
    const auto mc = estimate_stats(delta, params, s);
    const double a[] = {analytic.spread_mean, analytic.spread_var, analytic.mid_error_mean,
                        analytic.mid_error_var, analytic.trade_prob};
    const double m[] = {mc.stats.spread_mean, mc.stats.spread_var, mc.stats.mid_error_mean,
                        mc.stats.mid_error_var, mc.stats.trade_prob};
    double worst_z = 0.0;
    for (int i = 0; i < 5; ++i) worst_z = std::max(worst_z, std::abs(a[i] - m[i]) / mc.std_errors[i]);
    return {"market_stats_vs_monte_carlo", worst_z <= 4.0, "max |z| " + fmt(worst_z)};
}

CheckResult degenerate_check(const MarketParams& params, const SolverConfig& solver) {
    const MarketParams deg(params.sigma_plus(), params.sigma_plus(), std::min(params.rho(), 0.0));
    const SpreadQuad fees{0.1};
    const double root = solve_degenerate(deg, fees);
    SolverConfig cfg = solver;
    cfg.tol = std::min(cfg.tol, 1e-10);
    const auto report = solve_fixed_point(deg, fees, cfg);
    const double err = std::abs(report.strategy.values()[0] - root);
    return {"degenerate_fixed_point_vs_closed_form", report.converged && err <= 1e-7,
            "abs error " + fmt(err)};
}

CheckResult certificate_check(const MarketParams& params) {
    const auto rule = default_rule();
    const double at_zero = no_ne_certificate(Strategy::constant(params, 101, 0.0), params, rule);
    const double at_big = no_ne_certificate(Strategy::constant(params, 101, 5.0), params, rule);
    const bool ok = std::abs(at_zero - 0.25) <= 1e-10 && at_big > 0.0;
    return {"no_ne_certificate_positive", ok,
            "delta=0 -> " + fmt(at_zero) + ", delta=5 -> " + fmt(at_big)};
}

CheckResult equilibrium_check(const MarketParams& params, const FeeScheme& fees,
                              const SolverConfig& solver) {
    if (!params.equilibrium_assumption_holds()) {
        return {"equilibrium_solve", false,
                "assumption rho <= sigma_minus/sigma_plus violated (rho=" + fmt(params.rho()) +
                    ", sigma_minus/sigma_plus=" + fmt(params.sigma_minus() / params.sigma_plus()) +
                    ")"};
    }
    const FeeScheme scheme = penalized_scheme(fees);
    try {
        const auto report = solve_fixed_point(params, scheme, solver);
        const double gain = verify_ne(report.strategy, params, scheme, 200, solver.rule());
        const bool ok = report.converged && gain <= 1e-6;
        return {"equilibrium_solve", ok,
                scheme_name(scheme) + " gamma=" + fmt(fee_gamma(scheme)) + " residual " +
                    fmt(report.residual) + " deviation gain " + fmt(gain)};
    } catch (const Error& e) {
        return {"equilibrium_solve", false, e.what()};
    }
}

CheckResult no_fee_check(const MarketParams& params, const SolverConfig& solver) {
    const Strategy delta = Strategy::constant(params, solver.grid_n, 0.2);
    const double gain = verify_ne(delta, params, NoFee{}, 200, solver.rule());
    return {"no_fee_has_profitable_deviation", gain > 0.0, "deviation gain " + fmt(gain)};
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationInput& in) {
    std::vector<CheckResult> out;
    out.push_back(derivative_check(in.params, in.fees));
    out.push_back(payoff_mc_check(in.params, in.sim));
    out.push_back(stats_mc_check(in.params, in.sim));
    out.push_back(degenerate_check(in.params, in.solver));
    out.push_back(certificate_check(in.params));
    out.push_back(equilibrium_check(in.params, in.fees, in.solver));
    out.push_back(no_fee_check(in.params, in.solver));
    return out;
}

}  // namespace ael
