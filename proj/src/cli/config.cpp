#include "ael/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace ael::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const ConfigMap& cfg, const std::string& key) {
    const std::string& text = cfg.at(key);
    if (text == "inf" || text == "+inf" || text == "infinity")
        return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty())
        throw ConfigError("key '" + key + "': expected a number, got '" + text + "'");
    return v;
}

long long to_int(const ConfigMap& cfg, const std::string& key) {
    const std::string& text = cfg.at(key);
    long long v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty())
        throw ConfigError("key '" + key + "': expected an integer, got '" + text + "'");
    return v;
}

}  // namespace

const ConfigMap& default_config() {
    static const ConfigMap defaults{
        {"market.sigma_minus", "0.1"},
        {"market.sigma_plus", "1.1"},
        {"market.rho", "0"},
        {"market.v", "inf"},
        {"fees.scheme", "spread_quad"},
        {"fees.gamma", "2"},
        {"fees.kbar", "1"},
        {"solver.grid_n", "101"},
        {"solver.damping", "0.5"},
        {"solver.tol", "1e-9"},
        {"solver.max_iter", "500"},
        {"solver.search_cap", "1"},
        {"solver.quad_nodes", "64"},
        {"sim.samples", "1000000"},
        {"sim.seed", "7"},
        {"strategy.delta", "0.3"},
        {"strategy.file", ""},
        {"strategy.column", ""},
        {"sweep.gammas", ""},
        {"payoff.sigma_a", "0.6"},
        {"payoff.x_min", "-0.5"},
        {"payoff.x_max", "1.5"},
        {"payoff.points", "41"},
        {"payoff.p_obs", "0"},
        {"output.path", "-"},
    };
    return defaults;
}

ConfigMap parse_config_text(std::string_view text, std::string_view source) {
    ConfigMap out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        auto line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = std::string(source) + ":" + std::to_string(line_no);
        if (eq == std::string_view::npos)
            throw ConfigError(where + ": expected key=value, got '" + std::string(line) + "'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (!default_config().contains(key))
            throw ConfigError(where + ": unknown key '" + key + "'");
        out[key] = value;
    }
    return out;
}

ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

ConfigMap merged(ConfigMap base, const ConfigMap& overrides) {
    for (const auto& [k, v] : overrides) {
        if (!default_config().contains(k)) throw ConfigError("unknown key '" + k + "'");
        base[k] = v;
    }
    return base;
}

std::string config_header(const ConfigMap& cfg) {
    std::string out = "# effective configuration\n";
    for (const auto& [k, v] : cfg) out += "# " + k + "=" + v + "\n";
    return out;
}

ConfigMap parse_config_header(std::string_view csv_text) {
    std::string body;
    std::size_t pos = 0;
    while (pos < csv_text.size()) {
        const auto nl = csv_text.find('\n', pos);
        const auto line = csv_text.substr(pos, nl == std::string_view::npos ? csv_text.npos : nl - pos);
        pos = nl == std::string_view::npos ? csv_text.size() : nl + 1;
        if (line.size() < 2 || line.substr(0, 2) != "# ") continue;
        const auto content = line.substr(2);
        const auto eq = content.find('=');
        if (eq == std::string_view::npos) continue;
        if (!default_config().contains(std::string(trim(content.substr(0, eq))))) continue;
        body.append(content);
        body.push_back('\n');
    }
    return parse_config_text(body, "<csv header>");
}

std::vector<double> parse_gamma_list(std::string_view text) {
    std::vector<double> out;
    text = trim(text);
    if (text.empty()) return out;
    auto number = [](std::string_view s) {
        s = trim(s);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw ConfigError("key 'sweep.gammas': bad number '" + std::string(s) + "'");
        return v;
    };
    if (text.find(':') != std::string_view::npos) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string_view::npos)
            throw ConfigError("key 'sweep.gammas': range form is lo:hi:n");
        const double lo = number(text.substr(0, c1));
        const double hi = number(text.substr(c1 + 1, c2 - c1 - 1));
        const double n = number(text.substr(c2 + 1));
        if (!(n >= 1.0) || n != std::floor(n))
            throw ConfigError("key 'sweep.gammas': point count must be a positive integer");
        const auto count = static_cast<int>(n);
        for (int i = 0; i < count; ++i)
            out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    } else {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto comma = text.find(',', pos);
            out.push_back(number(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos)));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(out[i] > 0.0)) throw ConfigError("key 'sweep.gammas': values must be positive");
        if (i > 0 && !(out[i] > out[i - 1]))
            throw ConfigError("key 'sweep.gammas': values must be increasing");
    }
    return out;
}

RunConfig build_run_config(const ConfigMap& in) {
    const ConfigMap cfg = merged(default_config(), in);
    try {
        const double v = to_double(cfg, "market.v");
        std::optional<double> v_opt;
        if (std::isfinite(v)) v_opt = v;
        MarketParams market(to_double(cfg, "market.sigma_minus"), to_double(cfg, "market.sigma_plus"),
                            to_double(cfg, "market.rho"), v_opt);

        const std::string& scheme = cfg.at("fees.scheme");
        const double gamma = to_double(cfg, "fees.gamma");
        FeeScheme fees;
        if (scheme == "none") fees = NoFee{};
        else if (scheme == "mid_quad") fees = MidQuad{gamma};
        else if (scheme == "spread_quad") fees = SpreadQuad{gamma};
        else if (scheme == "linear_demand") fees = LinearDemand{to_double(cfg, "fees.kbar"), gamma};
        else
            throw ConfigError("key 'fees.scheme': expected none|mid_quad|spread_quad|linear_demand, got '" +
                              scheme + "'");
        validate(fees);

        SolverConfig solver;
        const auto grid_n = to_int(cfg, "solver.grid_n");
        const auto quad = to_int(cfg, "solver.quad_nodes");
        if (grid_n < 2) throw ConfigError("key 'solver.grid_n': must be >= 2");
        if (quad < 1) throw ConfigError("key 'solver.quad_nodes': must be >= 1");
        solver.grid_n = static_cast<std::size_t>(grid_n);
        solver.quad_nodes = static_cast<std::size_t>(quad);
        solver.damping = to_double(cfg, "solver.damping");
        solver.tol = to_double(cfg, "solver.tol");
        solver.max_iter = static_cast<int>(to_int(cfg, "solver.max_iter"));
        solver.search_cap = to_double(cfg, "solver.search_cap");
        solver.validate();

        SimConfig sim;
        const auto samples = to_int(cfg, "sim.samples");
        const auto seed = to_int(cfg, "sim.seed");
        if (samples < 1) throw ConfigError("key 'sim.samples': must be >= 1");
        if (seed < 0) throw ConfigError("key 'sim.seed': must be nonnegative");
        sim.samples = static_cast<std::uint64_t>(samples);
        sim.seed = static_cast<std::uint64_t>(seed);
        sim.v = v_opt;

        StrategySource strategy;
        strategy.file = cfg.at("strategy.file");
        strategy.column = cfg.at("strategy.column");
        if (strategy.file.empty()) {
            const double d = to_double(cfg, "strategy.delta");
            if (!(d >= 0.0) || !std::isfinite(d))
                throw ConfigError("key 'strategy.delta': must be finite and nonnegative");
            strategy.constant = d;
        }

        PayoffCurveSpec payoff{to_double(cfg, "payoff.sigma_a"), to_double(cfg, "payoff.x_min"),
                               to_double(cfg, "payoff.x_max"),
                               static_cast<int>(to_int(cfg, "payoff.points")),
                               to_double(cfg, "payoff.p_obs")};
        if (payoff.points < 2) throw ConfigError("key 'payoff.points': must be >= 2");
        if (!(payoff.x_min < payoff.x_max))
            throw ConfigError("keys 'payoff.x_min'/'payoff.x_max': need x_min < x_max");

        return RunConfig{market,
                         fees,
                         solver,
                         sim,
                         cfg.at("output.path"),
                         parse_gamma_list(cfg.at("sweep.gammas")),
                         strategy,
                         payoff};
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
}

}  // namespace ael::cli
