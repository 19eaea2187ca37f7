#include "herding/follower.hpp"

#include "herding/closed_form.hpp"
#include "herding/crowding.hpp"
#include "herding/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace herding {

namespace {

// theta / (eta sigma^2 E(t)); may be +inf.
double herd_weight(const HerdingScenario& s, double log_eta, double t)
{
    if (s.theta == 0.0) {
        return 0.0;
    }
    const auto& m = s.market;
    const double exponent = std::log(s.theta) - log_eta - (2.0 - m.rho) * m.r * (m.horizon - t)
                            - 2.0 * std::log(m.sigma);
    return std::exp(exponent);
}

void check_eta(double eta)
{
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw ValidationError("eta must be a finite positive number");
    }
}

} // namespace

double herding_ratio_log(const HerdingScenario& s, double log_eta, double t)
{
    check_time(s.market, t);
    const double w = herd_weight(s, log_eta, t);
    if (std::isinf(w)) {
        return 1.0;
    }
    return (s.leader.alpha + w) / (s.follower.alpha + w);
}

double herding_ratio(const HerdingScenario& s, double eta, double t)
{
    check_eta(eta);
    return herding_ratio_log(s, std::log(eta), t);
}

double optimal_investment_log(const HerdingScenario& s, double log_eta, double t)
{
    return herding_ratio_log(s, log_eta, t) * rational_investment(s.leader, s.market, t);
}

double optimal_investment(const HerdingScenario& s, double eta, double t)
{
    check_eta(eta);
    return optimal_investment_log(s, std::log(eta), t);
}

double investment_deviation_log(const HerdingScenario& s, double log_eta, double t)
{
    check_time(s.market, t);
    const double w = herd_weight(s, log_eta, t);
    const double a1 = s.follower.alpha;
    const double share = std::isinf(w) ? 1.0 : w / (a1 + w);
    return rational_investment(s.leader, s.market, t) * share * (a1 - s.leader.alpha) / a1;
}

double rational_log_eta(const HerdingScenario& s)
{
    const auto& m = s.market;
    const auto& f = s.follower;
    return std::log(f.gamma) - m.r * m.horizon - f.beta * rational_intercept(f, m);
}

double log_eta_map(const HerdingScenario& s, double log_eta, const QuadratureRule& rule)
{
    const auto& m = s.market;
    const auto& f = s.follower;
    const double T = m.horizon;
    const double rT = m.r * T;
    const double discount_integral = std::expm1(rT) / m.r;              // int e^{r(T-t)}
    const double ramp_integral = (std::expm1(rT) - rT) / (m.r * m.r);   // int t e^{r(T-t)}

    const double wealth = -f.alpha * f.x0 * std::exp(rT);
    const double consumption = f.alpha * ((1.0 - m.rho) * m.r / f.beta * ramp_integral
                                          + (std::log(f.gamma) - rT) / f.beta * discount_integral);

    const double drift = integrate(
        [&](double t) { return std::exp(m.r * (T - t)) * optimal_investment_log(s, log_eta, t); }, 0.0, T,
        rule);
    const double variance = integrate(
        [&](double t) {
            const double inv = optimal_investment_log(s, log_eta, t);
            return std::exp(2.0 * m.r * (T - t)) * inv * inv;
        },
        0.0, T, rule);

    const double numerator = wealth + consumption - f.alpha * m.v * drift
                             + 0.5 * f.alpha * f.alpha * m.sigma * m.sigma * variance;
    return numerator / (1.0 + f.alpha / f.beta * discount_integral);
}

double eta_residual(const HerdingScenario& s, double log_eta, const QuadratureRule& rule)
{
    return log_eta - log_eta_map(s, log_eta, rule);
}

EtaSolve solve_log_eta(const HerdingScenario& s, const RootConfig& root_cfg, const QuadratureRule& rule)
{
    validate_scenario(s);
    const double center = rational_log_eta(s);
    auto residual = [&](double u) { return eta_residual(s, u, rule); };

    std::vector<std::pair<double, double>> samples{{center, residual(center)}};
    if (samples.front().second == 0.0) {
        return {center, 0, 1, 0.0, center, center};
    }

    constexpr int max_doublings = 60;
    double width = 1.0;
    for (int k = 0; k <= max_doublings; ++k, width *= 2.0) {
        samples.emplace_back(center - width, residual(center - width));
        samples.emplace_back(center + width, residual(center + width));
        std::sort(samples.begin(), samples.end());

        int changes = 0;
        std::size_t at = 0;
        for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
            if ((samples[i].second > 0.0) != (samples[i + 1].second > 0.0)) {
                ++changes;
                at = i;
            }
        }
        if (changes > 1) {
            std::ostringstream msg;
            msg << "eta residual changes sign " << changes
                << " times while bracketing; the self-consistent eta is not unique";
            throw SolverError(msg.str());
        }
        if (changes == 1) {
            const double lo = samples[at].first;
            const double hi = samples[at + 1].first;
            const auto root = find_root(residual, lo, hi, root_cfg);
            return {root.root, root.iterations, static_cast<int>(samples.size()), root.residual, lo, hi};
        }
    }
    throw SolverError("could not bracket the eta residual after 60 doublings");
}

double solve_eta(const HerdingScenario& s, const RootConfig& root_cfg, const QuadratureRule& rule)
{
    return std::exp(solve_log_eta(s, root_cfg, rule).log_eta);
}

ControlPath sample_follower(const HerdingScenario& s, double log_eta, double k1_star, const TimeGrid& grid)
{
    const auto& m = s.market;
    if (grid.size() < 2 || std::abs(grid.horizon() - m.horizon) > 1e-12 * m.horizon) {
        throw ValidationError("output grid must span [0, T]");
    }
    const double slope = consumption_slope(s.follower, m);
    ControlPath path{grid, {}, {}};
    path.investment.reserve(grid.size());
    path.consumption.reserve(grid.size());
    for (double t : grid.times()) {
        path.investment.push_back(optimal_investment_log(s, log_eta, std::min(t, m.horizon)));
        path.consumption.push_back(slope * t + k1_star);
    }
    return path;
}

FollowerSolution solve_follower(const HerdingScenario& s, const TimeGrid& grid, const RootConfig& root_cfg,
                                const QuadratureRule& rule)
{
    validate_scenario(s);
    const auto& m = s.market;
    const auto& f = s.follower;

    const auto eta_fit = solve_log_eta(s, root_cfg, rule);

    FollowerSolution sol;
    sol.log_eta = eta_fit.log_eta;
    sol.eta = std::exp(eta_fit.log_eta);
    sol.k1_bar = rational_intercept(f, m);
    sol.k2_bar = rational_intercept(s.leader, m);
    sol.crowding = crowding_out_log(s, sol.log_eta, rule);
    sol.k1_star = sol.k1_bar - sol.crowding;
    sol.k1_star_from_eta = (std::log(f.gamma) - sol.log_eta - m.r * m.horizon) / f.beta;
    sol.paths = sample_follower(s, sol.log_eta, sol.k1_star, grid);

    auto& diag = sol.diagnostics;
    diag.iterations = eta_fit.iterations;
    diag.final_residual = eta_fit.residual;
    diag.quadrature_est_error =
        std::abs(log_eta_map(s, sol.log_eta, rule) - log_eta_map(s, sol.log_eta, rule.refined()));

    const double slope = consumption_slope(f, m);
    const double c_end = slope * m.horizon + sol.k1_star;
    if (!(sol.k1_star > 0.0) || !(c_end > 0.0)) {
        std::ostringstream msg;
        msg << "optimal consumption is not strictly positive on [0, T] (C1*(0) = " << sol.k1_star
            << ", C1*(T) = " << c_end << ")";
        diag.warnings.push_back(msg.str());
    }
    return sol;
}

} // namespace herding
