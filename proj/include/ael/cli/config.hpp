#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ael/equilibrium.hpp"
#include "ael/errors.hpp"
#include "ael/model.hpp"
#include "ael/simulator.hpp"

namespace ael::cli {

/// Malformed configuration: bad line, unknown key or unparsable value.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Flat dotted-key configuration, e.g. market.sigma_minus=0.1. Ordered so
/// that emitted headers are stable.
using ConfigMap = std::map<std::string, std::string>;

/// Every recognized key with its default value.
const ConfigMap& default_config();

/// Parses key=value lines; '#' starts a comment, blank lines are ignored.
/// Unknown keys and malformed lines raise ConfigError naming source:line.
ConfigMap parse_config_text(std::string_view text, std::string_view source);
ConfigMap parse_config_file(const std::string& path);

/// Applies `overrides` on top of `base` (keys must be known).
ConfigMap merged(ConfigMap base, const ConfigMap& overrides);

/// "# key=value" lines covering every entry.
std::string config_header(const ConfigMap& cfg);
/// Recovers the configuration from a CSV header written by config_header.
ConfigMap parse_config_header(std::string_view csv_text);

struct StrategySource {
    std::optional<double> constant;
    std::string file;
    std::string column;
};

struct PayoffCurveSpec {
    double sigma_a;
    double x_min;
    double x_max;
    int points;
    double p_obs;
};

struct RunConfig {
    MarketParams market;
    FeeScheme fees;
    SolverConfig solver;
    SimConfig sim;
    std::string output_path;
    std::vector<double> gammas;  // sweep.gammas; may be empty
    StrategySource strategy;
    PayoffCurveSpec payoff;
};

/// Typed view of a configuration; every value error is a ConfigError that
/// names the key. Domain violations (e.g. rho outside (−1,1)) are reported
/// the same way.
RunConfig build_run_config(const ConfigMap& cfg);

/// Parses "a,b,c" or the range form "lo:hi:n" (n evenly spaced values).
std::vector<double> parse_gamma_list(std::string_view text);

}  // namespace ael::cli
