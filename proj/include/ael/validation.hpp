#pragma once

#include <string>
#include <vector>

#include "ael/equilibrium.hpp"
#include "ael/model.hpp"
#include "ael/simulator.hpp"

namespace ael {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct ValidationInput {
    MarketParams params;
    FeeScheme fees;
    SolverConfig solver;
    SimConfig sim;
};

/// Self-consistency checks of the analytic machinery against independent
/// routes: finite differences, Monte Carlo and the degenerate closed form.
/// Equilibrium checks report a violated ρ <= σ−/σ+ assumption as a failure
/// with an explicit message instead of throwing.
std::vector<CheckResult> run_validation(const ValidationInput& in);

}  // namespace ael
