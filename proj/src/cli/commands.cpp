#include "ael/cli/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "ael/cli/config.hpp"
#include "ael/cli/csv.hpp"
#include "ael/equilibrium.hpp"
#include "ael/exchange.hpp"
#include "ael/payoff.hpp"
#include "ael/simulator.hpp"
#include "ael/validation.hpp"

namespace ael::cli {

namespace {

struct Invocation {
    std::string command;
    ConfigMap cfg;  // full effective configuration
    std::optional<RunConfig> run;
    bool strict = false;
    bool simulate = false;
};

using Cells = std::vector<std::string>;

std::string flag(bool b) { return b ? "1" : "0"; }

constexpr const char* kStatNames[] = {"spread_mean", "spread_var", "mid_error_mean", "mid_error_var",
                                      "trade_prob"};

Cells stat_cells(const PairStats& s) {
    return {format_double(s.spread_mean), format_double(s.spread_var),
            format_double(s.mid_error_mean), format_double(s.mid_error_var),
            format_double(s.trade_prob)};
}

Strategy input_strategy(const RunConfig& rc) {
    if (rc.strategy.constant) return Strategy::constant(rc.market, rc.solver.grid_n, *rc.strategy.constant);
    const Strategy s = load_strategy(rc.strategy.file, rc.strategy.column);
    // Evaluating at both ends surfaces a grid that does not cover [σ−, σ+].
    try {
        (void)s(rc.market.sigma_minus());
        (void)s(rc.market.sigma_plus());
    } catch (const OutOfDomain&) {
        throw ConfigError("strategy file '" + rc.strategy.file + "' does not cover [sigma_minus, sigma_plus]");
    }
    return s;
}

std::vector<double> gamma_list(const RunConfig& rc) {
    if (!rc.gammas.empty()) return rc.gammas;
    return {fee_gamma(rc.fees)};
}

int cmd_stats(const Invocation& inv, std::ostream& csv, std::ostream& err) {
    const RunConfig& rc = *inv.run;
    const Strategy delta = input_strategy(rc);
    const PairStats analytic = analytic_stats(delta, rc.market, rc.solver.rule());
    Cells header(std::begin(kStatNames), std::end(kStatNames));
    Cells row = stat_cells(analytic);
    if (inv.simulate) {
        err << "stats: simulating " << rc.sim.samples << " auctions\n";
        const SimReport mc = estimate_stats(delta, rc.market, rc.sim);
        for (const char* n : kStatNames) header.push_back(std::string("mc_") + n);
        for (const char* n : kStatNames) header.push_back(std::string("se_") + n);
        for (auto& c : stat_cells(mc.stats)) row.push_back(std::move(c));
        for (const double se : mc.std_errors) row.push_back(format_double(se));
    }
    csv << csv_row(header) << csv_row(row);
    return kExitOk;
}

int cmd_simulate(const Invocation& inv, std::ostream& csv, std::ostream& err) {
    const RunConfig& rc = *inv.run;
    const Strategy delta = input_strategy(rc);
    err << "simulate: " << rc.sim.samples << " auctions, seed " << rc.sim.seed << "\n";
    const SimReport mc = estimate_stats(delta, rc.market, rc.sim);
    Cells header{"samples", "seed"};
    for (const char* n : kStatNames) header.emplace_back(n);
    for (const char* n : kStatNames) header.push_back(std::string("se_") + n);
    Cells row{std::to_string(mc.samples), std::to_string(mc.seed)};
    for (auto& c : stat_cells(mc.stats)) row.push_back(std::move(c));
    for (const double se : mc.std_errors) row.push_back(format_double(se));
    csv << csv_row(header) << csv_row(row);
    return kExitOk;
}

int cmd_solve_ne(const Invocation& inv, std::ostream& csv, std::ostream& err) {
    const RunConfig& rc = *inv.run;
    const auto gammas = gamma_list(rc);
    std::vector<EquilibriumReport> reports;
    for (const double g : gammas) {
        reports.push_back(solve_fixed_point(rc.market, with_gamma(rc.fees, g), rc.solver));
        const auto& r = reports.back();
        err << "solve-ne: gamma=" << g << (r.converged ? " converged" : " NOT converged") << " after " << r.iterations
            << " iterations, residual " << r.residual << "\n";
    }
    Cells header{"sigma"};
    for (const double g : gammas) header.push_back("delta_gamma=" + format_double(g));
    csv << csv_row(header);
    const auto grid = reports.front().strategy.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Cells row{format_double(grid[i])};
        for (const auto& r : reports) row.push_back(format_double(r.strategy.values()[i]));
        csv << csv_row(row);
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const bool deg = rc.market.degenerate();
    csv << "# footer: gamma,residual,iterations,converged,bound_C,gamma_min,concavity_ok\n";
    bool all_converged = true;
    for (std::size_t k = 0; k < gammas.size(); ++k) {
        const auto& r = reports[k];
        all_converged = all_converged && r.converged;
        csv << "# " << csv_row({format_double(gammas[k]), format_double(r.residual),
                                std::to_string(r.iterations), flag(r.converged),
                                format_double(deg ? nan : r.bound_C),
                                format_double(deg ? nan : r.gamma_min), flag(r.concavity_ok)});
    }
    if (!all_converged && inv.strict) {
        err << "solve-ne: some equilibria did not converge (--strict)\n";
        return kExitConvergence;
    }
    return kExitOk;
}

int cmd_optimal_fee(const Invocation& inv, std::ostream& csv, std::ostream& err) {
    const RunConfig& rc = *inv.run;
    const auto gammas = gamma_list(rc);
    if (rc.market.degenerate() && std::holds_alternative<SpreadQuad>(rc.fees)) {
        const auto cf = optimal_gamma_degenerate(rc.market.sigma_plus(), rc.market.rho());
        csv << "# closed_form.y_star=" << format_double(cf.y_star) << "\n"
            << "# closed_form.gamma_star=" << format_double(cf.gamma_star) << "\n"
            << "# closed_form.delta_star=" << format_double(cf.delta_star) << "\n"
            << "# closed_form.revenue_both_players=" << format_double(cf.revenue) << "\n";
        err << "optimal-fee: closed-form gamma* = " << cf.gamma_star << "\n";
    }
    err << "optimal-fee: sweeping " << gammas.size() << " gamma values\n";
    const auto curve = revenue_curve(gammas, rc.market, rc.fees, rc.solver);
    csv << csv_row({"gamma", "revenue", "converged", "residual", "iterations", "concavity_ok"});
    bool all_converged = true;
    for (const auto& p : curve) {
        all_converged = all_converged && p.converged;
        csv << csv_row({format_double(p.gamma), format_double(p.revenue), flag(p.converged),
                        format_double(p.residual), std::to_string(p.iterations), flag(p.concavity_ok)});
    }
    const auto threshold = empirical_threshold(curve);
    csv << "# empirical_threshold=" << (threshold ? format_double(*threshold) : std::string("none")) << "\n";
    if (!all_converged && inv.strict) {
        err << "optimal-fee: some equilibria did not converge (--strict)\n";
        return kExitConvergence;
    }
    return kExitOk;
}

int cmd_payoff_curve(const Invocation& inv, std::ostream& csv, std::ostream& err) {
    const RunConfig& rc = *inv.run;
    const auto& pc = rc.payoff;
    const Strategy delta = input_strategy(rc);
    const bool half_linear = std::holds_alternative<LinearDemand>(rc.fees);
    const PayoffContext ctx(pc.sigma_a, delta, rc.market, rc.fees, rc.solver.rule());
    Cells header{"x", "base_payoff", "payoff", "deriv", "second_deriv"};
    if (inv.simulate) {
        header.emplace_back(half_linear ? "mc_payoff" : "mc_base_payoff");
        header.emplace_back("mc_se");
        err << "payoff-curve: " << pc.points << " points x " << rc.sim.samples << " draws\n";
    }
    csv << csv_row(header);
    for (int i = 0; i < pc.points; ++i) {
        const double x = pc.x_min + (pc.x_max - pc.x_min) * i / (pc.points - 1);
        Cells row{format_double(x), format_double(base_payoff(x, ctx))};
        if (half_linear) {
            row.push_back(format_double(half_linear_payoff(x, ctx)));
            row.push_back(format_double(half_linear_deriv(x, ctx)));
            row.push_back(format_double(half_linear_second_deriv(x, ctx)));
        } else {
            row.push_back(format_double(penalized_payoff(x, ctx)));
            row.push_back(format_double(payoff_deriv(x, ctx)));
            row.push_back(format_double(payoff_second_deriv(x, ctx)));
        }
        if (inv.simulate) {
            const Estimate e = half_linear
                                   ? estimate_half_linear_payoff(x, pc.sigma_a, delta, rc.market, rc.fees, rc.sim)
                                   : estimate_conditional_payoff(x, pc.sigma_a, pc.p_obs,
                                                                 delta, rc.market, rc.sim);
            row.push_back(format_double(e.mean));
            row.push_back(format_double(e.se));
        }
        csv << csv_row(row);
    }
    return kExitOk;
}

int cmd_validate(const Invocation& inv, std::ostream& out, std::ostream& err) {
    const RunConfig& rc = *inv.run;
    err << "validate: running checks\n";
    const auto results = run_validation({rc.market, rc.fees, rc.solver, rc.sim});
    bool all = true;
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    for (const auto& r : results) {
        all = all && r.passed;
        out << (r.passed ? "PASS  " : "FAIL  ") << r.name << std::string(width - r.name.size() + 2, ' ')
            << r.detail << "\n";
    }
    out << (all ? "all checks passed" : "some checks FAILED") << "\n";
    return all ? kExitOk : kExitValidation;
}

using Handler = std::function<int(const Invocation&, std::ostream&, std::ostream&)>;

int dispatch(const Invocation& inv, const Handler& handler, std::ostream& out, std::ostream& err) {
    if (inv.command == "validate") return handler(inv, out, err);
    std::ostringstream buf;
    buf << "# command=" << inv.command << "\n" << config_header(inv.cfg);
    const int code = handler(inv, buf, err);
    const std::string& path = inv.run->output_path;
    if (path == "-") {
        out << buf.str();
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ConfigError("cannot write output file '" + path + "'");
        f << buf.str();
        if (!f) throw ConfigError("failed writing output file '" + path + "'");
        err << "wrote " << path << "\n";
    }
    return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equilibrium quoting and exchange fee design for a two-player double auction", "ael"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string config_path;
    bool strict = false;
    bool simulate = false;
    std::string samples;
    std::string seed;
    std::string out_path;
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_flag("--strict", strict, "exit 3 when an equilibrium does not converge");
    app.add_flag("--simulate", simulate, "add Monte Carlo columns (stats, payoff-curve)");
    auto* o_samples = app.add_option("--samples", samples, "alias of --sim.samples");
    auto* o_seed = app.add_option("--seed", seed, "alias of --sim.seed");
    auto* o_out = app.add_option("--out", out_path, "alias of --output.path");

    std::map<std::string, std::string> flag_values;
    std::map<std::string, CLI::Option*> flag_opts;
    for (const auto& [key, def] : default_config()) {
        flag_values[key] = def;
        flag_opts[key] = app.add_option("--" + key, flag_values[key], "default: " + (def.empty() ? "(empty)" : def));
    }

    const std::map<std::string, std::pair<std::string, Handler>> commands{
        {"stats", {"analytic market statistics for a fixed strategy", cmd_stats}},
        {"solve-ne", {"equilibrium strategies for one or more gamma values", cmd_solve_ne}},
        {"optimal-fee", {"exchange revenue curve and degenerate closed form", cmd_optimal_fee}},
        {"payoff-curve", {"seller payoff and derivatives along an x grid", cmd_payoff_curve}},
        {"simulate", {"Monte Carlo market statistics", cmd_simulate}},
        {"validate", {"self-consistency checks; exit 4 on failure", cmd_validate}},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, entry] : commands) subs[name] = app.add_subcommand(name, entry.first)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    Invocation inv;
    inv.strict = strict;
    inv.simulate = simulate;
    for (const auto& [name, sub] : subs)
        if (sub->parsed()) inv.command = name;

    try {
        ConfigMap overrides;
        for (const auto& [key, opt] : flag_opts)
            if (opt->count() > 0) overrides[key] = flag_values[key];
        if (o_samples->count() > 0) overrides["sim.samples"] = samples;
        if (o_seed->count() > 0) overrides["sim.seed"] = seed;
        if (o_out->count() > 0) overrides["output.path"] = out_path;

        ConfigMap cfg = default_config();
        if (!config_path.empty()) cfg = merged(cfg, parse_config_file(config_path));
        inv.cfg = merged(cfg, overrides);
        inv.run = build_run_config(inv.cfg);
        return dispatch(inv, commands.at(inv.command).second, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NoEquilibrium& e) {
        err << "no equilibrium: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace ael::cli
