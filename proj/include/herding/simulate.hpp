#pragma once

#include "herding/model.hpp"
#include "herding/numerics.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace herding {

struct SimConfig {
    std::size_t n_paths = 100'000;
    std::size_t n_steps = 1'000;
    std::uint64_t seed = 42;
};

struct SimResult {
    double mc_mean_utility = 0.0;
    double mc_std_error = 0.0;          ///< of mc_mean_utility
    double analytic_utility = 0.0;      ///< -(1/a) exp(-a mean + a^2 var / 2)
    double terminal_fund_mean_mc = 0.0;
    double terminal_fund_mean_se = 0.0;
    double terminal_fund_var_mc = 0.0;
    double terminal_fund_var_se = 0.0;  ///< sqrt((m4 - var^2) / n)
    double analytic_mean = 0.0;
    double analytic_var = 0.0;
};

struct TerminalMoments {
    double mean;
    double var;
};

/// Exact Gaussian law of X(T) for deterministic controls:
///   mean = x e^{rT} + int e^{r(T-t)} [v I - C] dt,  var = s^2 int e^{2r(T-t)} I^2 dt.
TerminalMoments analytic_terminal_moments(const HouseholdParams& h, const MarketParams& m, const ControlPath& path,
                                          const QuadratureRule& rule = {});

/// Euler-Maruyama terminal funds, one per path. Controls are held at their
/// left grid sample over each step, so (grid points - 1) must be a multiple of
/// n_steps. Path i draws its noise from the counter stream (seed, i).
std::vector<double> terminal_funds(const HouseholdParams& h, const MarketParams& m, const ControlPath& path,
                                   const SimConfig& cfg);

/// Single-threaded reference for terminal_funds(); results are bit-identical.
std::vector<double> terminal_funds_serial(const HouseholdParams& h, const MarketParams& m,
                                          const ControlPath& path, const SimConfig& cfg);

/// Monte Carlo statistics of the terminal fund and its CARA utility, next to
/// the analytic values.
SimResult simulate_fund(const HouseholdParams& h, const MarketParams& m, const ControlPath& path,
                        const SimConfig& cfg, const QuadratureRule& rule = {});

SimResult summarise_terminal_funds(const HouseholdParams& h, std::span<const double> funds,
                                   const TerminalMoments& analytic);

/// Pairwise summation in a fixed split order.
double pairwise_sum(std::span<const double> values);

/// Full trajectories of the first `n_dump` paths as `path_id,t,X` rows.
void write_path_dump(std::ostream& os, const HouseholdParams& h, const MarketParams& m, const ControlPath& path,
                     const SimConfig& cfg, std::size_t n_dump);

} // namespace herding
