#include "ael/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ael/errors.hpp"
#include "ael/gaussmath/normal.hpp"

namespace ael {

namespace {
constexpr double kGridSlack = 1e-12;
}

MarketParams::MarketParams(double sigma_minus, double sigma_plus, double rho,
                           std::optional<double> v)
    : sigma_minus_(sigma_minus), sigma_plus_(sigma_plus), rho_(rho), v_(v) {
    if (!(sigma_minus_ > 0.0) || !std::isfinite(sigma_plus_) || !(sigma_minus_ <= sigma_plus_))
        throw DomainError("market requires 0 < sigma_minus <= sigma_plus");
    if (!(rho_ > -1.0 && rho_ < 1.0)) throw DomainError("market requires -1 < rho < 1");
    if (v_ && !(*v_ > 0.0 && std::isfinite(*v_)))
        throw DomainError("prior scale v must be positive (or infinite)");
}

bool MarketParams::degenerate() const noexcept {
    return sigma_plus_ - sigma_minus_ <= 1e-12 * sigma_plus_;
}

bool MarketParams::equilibrium_assumption_holds() const noexcept {
    return rho_ <= sigma_minus_ / sigma_plus_;
}

void MarketParams::require_equilibrium_assumption() const {
    if (!equilibrium_assumption_holds()) {
        std::ostringstream os;
        os << "assumption rho <= sigma_minus/sigma_plus violated: rho=" << rho_
           << " > " << sigma_minus_ / sigma_plus_;
        throw DomainError(os.str());
    }
}

double MarketParams::mean_sigma() const noexcept { return 0.5 * (sigma_minus_ + sigma_plus_); }

double MarketParams::mean_sigma_sq() const noexcept {
    // (σ+³ − σ−³) / (3(σ+ − σ−)) written without the removable singularity.
    const double a = sigma_minus_;
    const double b = sigma_plus_;
    return (a * a + a * b + b * b) / 3.0;
}

MarketParams MarketParams::with_v(std::optional<double> v) const {
    return MarketParams(sigma_minus_, sigma_plus_, rho_, v);
}

Strategy::Strategy(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.empty() || grid_.size() != values_.size())
        throw DomainError("strategy needs equally many (>= 1) grid points and values");
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] < 0.0)
            throw DomainError("strategy values must be finite and nonnegative");
        if (i > 0 && !(grid_[i] > grid_[i - 1]))
            throw DomainError("strategy grid must be strictly increasing");
    }
}

std::vector<double> Strategy::uniform_grid(const MarketParams& params, std::size_t n) {
    if (params.degenerate()) return {params.sigma_plus()};
    if (n < 2) throw DomainError("strategy grid needs at least 2 points");
    std::vector<double> grid(n);
    const double a = params.sigma_minus();
    const double b = params.sigma_plus();
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    grid.back() = b;
    return grid;
}

Strategy Strategy::constant(const MarketParams& params, std::size_t n, double value) {
    auto grid = uniform_grid(params, n);
    std::vector<double> values(grid.size(), value);
    return Strategy(std::move(grid), std::move(values));
}

double Strategy::max_value() const noexcept {
    return *std::max_element(values_.begin(), values_.end());
}

double Strategy::operator()(double sigma) const {
    const double scale = std::max(1.0, std::abs(hi()));
    if (sigma < lo() - kGridSlack * scale || sigma > hi() + kGridSlack * scale) {
        std::ostringstream os;
        os << "strategy evaluated at sigma=" << sigma << " outside [" << lo() << ", " << hi()
           << "]";
        throw OutOfDomain(os.str());
    }
    if (grid_.size() == 1 || sigma <= lo()) return values_.front();
    if (sigma >= hi()) return values_.back();
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), sigma);
    const auto k = static_cast<std::size_t>(it - grid_.begin());
    const double t = (sigma - grid_[k - 1]) / (grid_[k] - grid_[k - 1]);
    return values_[k - 1] + t * (values_[k] - values_[k - 1]);
}

Strategy Strategy::shifted(double c) const {
    std::vector<double> v(values_);
    for (auto& x : v) x = std::max(0.0, x + c);
    return Strategy(grid_, std::move(v));
}

void validate(const FeeScheme& fees) {
    std::visit(
        [](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, MidQuad> || std::is_same_v<T, SpreadQuad>) {
                if (!(f.gamma > 0.0) || !std::isfinite(f.gamma))
                    throw DomainError("fee gamma must be positive");
            } else if constexpr (std::is_same_v<T, LinearDemand>) {
                if (!(f.kbar > 0.0) || !std::isfinite(f.kbar))
                    throw DomainError("linear demand slope kbar must be positive");
                if (!(f.gamma >= 0.0) || !std::isfinite(f.gamma))
                    throw DomainError("linear demand gamma must be nonnegative");
            }
        },
        fees);
}

std::string scheme_name(const FeeScheme& fees) {
    switch (fees.index()) {
        case 0: return "none";
        case 1: return "mid_quad";
        case 2: return "spread_quad";
        default: return "linear_demand";
    }
}

double fee_gamma(const FeeScheme& fees) noexcept {
    return std::visit(
        [](const auto& f) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(f)>, NoFee>) return 0.0;
            else return f.gamma;
        },
        fees);
}

FeeScheme with_gamma(const FeeScheme& fees, double gamma) {
    return std::visit(
        [gamma](const auto& f) -> FeeScheme {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, NoFee>) return f;
            else if constexpr (std::is_same_v<T, LinearDemand>) return LinearDemand{f.kbar, gamma};
            else return T{gamma};
        },
        fees);
}

double sigma_rho(double sa, double sb, double rho) {
    const double r = sa * sa + sb * sb - 2.0 * rho * sa * sb;
    if (!(r > 0.0)) throw DomainError("sigma_rho: nonpositive radicand");
    return std::sqrt(r);
}

// Precision-ratio form: (1/sb² − ρ/(sa sb)) / (1/sa² + 1/sb² − 2ρ/(sa sb)),
// multiplied through by sa² sb².
double q_rho(double sa, double sb, double rho) {
    const double den = sa * sa + sb * sb - 2.0 * rho * sa * sb;
    if (!(den > 0.0) || !(sa > 0.0) || !(sb > 0.0)) throw DomainError("q_rho: degenerate denominator");
    return sa * (sa - rho * sb) / den;
}

double q_tilde_rho(double sa, double sb, double rho) {
    const double den = sa * sa + sb * sb - 2.0 * rho * sa * sb;
    if (!(den > 0.0) || !(sa > 0.0) || !(sb > 0.0)) throw DomainError("q_tilde_rho: degenerate denominator");
    return sb * (sb - rho * sa) / den;
}

SigmaAverage::SigmaAverage(const MarketParams& params, const gaussmath::QuadratureRule& rule) {
    if (params.degenerate()) {
        nodes_ = {params.sigma_plus()};
        probs_ = {1.0};
        return;
    }
    const auto r = rule.rescaled(params.sigma_minus(), params.sigma_plus());
    const double width = params.sigma_plus() - params.sigma_minus();
    nodes_.assign(r.nodes().begin(), r.nodes().end());
    probs_.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) probs_[i] = r.weights()[i] / width;
}

gaussmath::QuadratureRule default_rule() {
    return gaussmath::gauss_legendre(gaussmath::kDefaultQuadratureNodes, 0.0, 1.0);
}

PairStats analytic_stats(const Strategy& delta, const MarketParams& params,
                         const gaussmath::QuadratureRule& rule) {
    const SigmaAverage avg(params, rule);
    const double rho = params.rho();
    const double mean_d = avg.mean([&](double s) { return delta(s); });
    const double mean_d2 = avg.mean([&](double s) {
        const double d = delta(s);
        return d * d;
    });
    const double var_d = std::max(0.0, mean_d2 - mean_d * mean_d);
    const double es = params.mean_sigma();
    const double es2 = params.mean_sigma_sq();

    double cdf_mean = 0.0;
    for (std::size_t i = 0; i < avg.size(); ++i) {
        const double sa = avg.nodes()[i];
        const double da = delta(sa);
        double inner = 0.0;
        for (std::size_t j = 0; j < avg.size(); ++j) {
            const double sb = avg.nodes()[j];
            inner += avg.probs()[j] *
                     gaussmath::norm_cdf((da + delta(sb)) / sigma_rho(sa, sb, rho));
        }
        cdf_mean += avg.probs()[i] * inner;
    }

    PairStats out{};
    out.spread_mean = 2.0 * mean_d;
    out.spread_var = 2.0 * (es2 - rho * es * es + var_d);
    out.mid_error_mean = 0.0;
    out.mid_error_var = 0.5 * (es2 + rho * es * es + var_d);
    out.trade_prob = std::clamp(1.0 - cdf_mean, 0.0, 1.0);
    return out;
}

}  // namespace ael
