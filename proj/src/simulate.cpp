#include "herding/simulate.hpp"

#include "herding/errors.hpp"
#include "herding/rng.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace herding {

namespace {

struct StepPlan {
    std::size_t stride;  // grid samples per step
    double dt;
    double sqrt_dt;
};

StepPlan plan_steps(const MarketParams& m, const ControlPath& path, const SimConfig& cfg)
{
    path.check_shape();
    if (cfg.n_paths < 1 || cfg.n_steps < 1) {
        throw ValidationError("simulation needs n_paths >= 1 and n_steps >= 1");
    }
    if (std::abs(path.grid.horizon() - m.horizon) > 1e-12 * m.horizon) {
        throw ValidationError("control path grid must span [0, T]");
    }
    const std::size_t intervals = path.grid.size() - 1;
    if (intervals % cfg.n_steps != 0) {
        throw ValidationError("control grid with " + std::to_string(intervals)
                              + " intervals is not compatible with " + std::to_string(cfg.n_steps)
                              + " steps (needs a multiple)");
    }
    const double dt = m.horizon / static_cast<double>(cfg.n_steps);
    return {intervals / cfg.n_steps, dt, std::sqrt(dt)};
}

template <class Visit>
double simulate_path(const HouseholdParams& h, const MarketParams& m, const ControlPath& path, const SimConfig& cfg,
                     const StepPlan& plan, std::uint64_t path_id, Visit&& visit)
{
    NormalStream noise(cfg.seed, path_id);
    double x = h.x0;
    for (std::size_t k = 0; k < cfg.n_steps; ++k) {
        const double inv = path.investment[k * plan.stride];
        const double con = path.consumption[k * plan.stride];
        x += (m.r * x + m.v * inv - con) * plan.dt + m.sigma * inv * plan.sqrt_dt * noise.next();
        visit(k + 1, x);
    }
    if (!std::isfinite(x)) {
        throw SolverError("simulated fund overflowed on path " + std::to_string(path_id));
    }
    return x;
}

struct NoVisit {
    void operator()(std::size_t, double) const noexcept {}
};

} // namespace

double pairwise_sum(std::span<const double> values)
{
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const auto half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

TerminalMoments analytic_terminal_moments(const HouseholdParams& h, const MarketParams& m, const ControlPath& path,
                                          const QuadratureRule& rule)
{
    path.check_shape();
    const double T = m.horizon;
    const double drift = integrate(
        [&](double t) { return std::exp(m.r * (T - t)) * (m.v * path.investment_at(t) - path.consumption_at(t)); },
        0.0, T, rule);
    const double spread = integrate(
        [&](double t) {
            const double inv = path.investment_at(t);
            return std::exp(2.0 * m.r * (T - t)) * inv * inv;
        },
        0.0, T, rule);
    return {h.x0 * std::exp(m.r * T) + drift, m.sigma * m.sigma * spread};
}

std::vector<double> terminal_funds(const HouseholdParams& h, const MarketParams& m, const ControlPath& path,
                                   const SimConfig& cfg)
{
    const auto plan = plan_steps(m, path, cfg);
    std::vector<double> funds(cfg.n_paths);
    const auto n = static_cast<long long>(cfg.n_paths);
    bool overflow = false;
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        try {
            funds[static_cast<std::size_t>(i)] =
                simulate_path(h, m, path, cfg, plan, static_cast<std::uint64_t>(i), NoVisit{});
        } catch (const SolverError&) {
#pragma omp atomic write
            overflow = true;
        }
    }
    if (overflow) {
        throw SolverError("simulated fund overflowed");
    }
    return funds;
}

std::vector<double> terminal_funds_serial(const HouseholdParams& h, const MarketParams& m,
                                          const ControlPath& path, const SimConfig& cfg)
{
    const auto plan = plan_steps(m, path, cfg);
    std::vector<double> funds;
    funds.reserve(cfg.n_paths);
    for (std::size_t i = 0; i < cfg.n_paths; ++i) {
        funds.push_back(simulate_path(h, m, path, cfg, plan, i, NoVisit{}));
    }
    return funds;
}

SimResult summarise_terminal_funds(const HouseholdParams& h, std::span<const double> funds,
                                   const TerminalMoments& analytic)
{
    const auto n = static_cast<double>(funds.size());
    std::vector<double> scratch(funds.size());

    const double mean = pairwise_sum(funds) / n;
    for (std::size_t i = 0; i < funds.size(); ++i) {
        const double d = funds[i] - mean;
        scratch[i] = d * d;
    }
    const double m2 = pairwise_sum(scratch) / n;
    for (std::size_t i = 0; i < funds.size(); ++i) {
        const double d = funds[i] - mean;
        scratch[i] = d * d * d * d;
    }
    const double m4 = pairwise_sum(scratch) / n;

    for (std::size_t i = 0; i < funds.size(); ++i) {
        scratch[i] = -std::exp(-h.alpha * funds[i]) / h.alpha;
    }
    const double u_mean = pairwise_sum(scratch) / n;
    for (auto& u : scratch) {
        u = (u - u_mean) * (u - u_mean);
    }
    const double u_var = funds.size() > 1 ? pairwise_sum(scratch) / (n - 1.0) : 0.0;

    SimResult out;
    out.terminal_fund_mean_mc = mean;
    out.terminal_fund_var_mc = funds.size() > 1 ? m2 * n / (n - 1.0) : 0.0;
    out.terminal_fund_mean_se = std::sqrt(out.terminal_fund_var_mc / n);
    out.terminal_fund_var_se = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
    out.mc_mean_utility = u_mean;
    out.mc_std_error = std::sqrt(u_var / n);
    out.analytic_mean = analytic.mean;
    out.analytic_var = analytic.var;
    out.analytic_utility =
        -std::exp(-h.alpha * analytic.mean + 0.5 * h.alpha * h.alpha * analytic.var) / h.alpha;
    return out;
}

SimResult simulate_fund(const HouseholdParams& h, const MarketParams& m, const ControlPath& path,
                        const SimConfig& cfg, const QuadratureRule& rule)
{
    const auto funds = terminal_funds(h, m, path, cfg);
    return summarise_terminal_funds(h, funds, analytic_terminal_moments(h, m, path, rule));
}

void write_path_dump(std::ostream& os, const HouseholdParams& h, const MarketParams& m, const ControlPath& path,
                     const SimConfig& cfg, std::size_t n_dump)
{
    const auto plan = plan_steps(m, path, cfg);
    os << "path_id,t,X\n";
    char line[128];
    for (std::size_t i = 0; i < std::min(n_dump, cfg.n_paths); ++i) {
        std::snprintf(line, sizeof line, "%zu,%.15g,%.15g\n", i, 0.0, h.x0);
        os << line;
        simulate_path(h, m, path, cfg, plan, i, [&](std::size_t k, double x) {
            const double t = k == cfg.n_steps ? m.horizon : static_cast<double>(k) * plan.dt;
            std::snprintf(line, sizeof line, "%zu,%.15g,%.15g\n", i, t, x);
            os << line;
        });
    }
}

} // namespace herding
