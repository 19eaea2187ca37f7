#pragma once

#include "herding/model.hpp"
#include "herding/numerics.hpp"

#include <cstdint>
#include <vector>

namespace herding {

/// D = 1/2 int e^{rho r (T-t)} [I1(t) - I2(t)]^2 dt over interpolated samples.
double average_deviation(const ControlPath& p1, const ControlPath& p2, const MarketParams& m,
                         const QuadratureRule& rule = {});

struct ObjectiveBreakdown {
    double log_fund_exponent = 0.0;        ///< exponent inside the fund utility term
    double fund_utility_term = 0.0;        ///< -(1/a1) exp(log_fund_exponent)
    double consumption_utility_term = 0.0; ///< -(g1/b1) int e^{-rho r t - b1 C1(t)} dt
    double deviation_penalty = 0.0;        ///< theta * D(I1, I2)
    double total_J = 0.0;
};

/// Deterministic value of the follower's objective for open-loop controls.
/// `leader` supplies the investment path the follower is penalised against.
ObjectiveBreakdown evaluate_objective(const HerdingScenario& s, const ControlPath& follower,
                                      const ControlPath& leader, const QuadratureRule& rule = {});

struct GapSample {
    double epsilon;
    double gap;  ///< J(base) - J(base + epsilon * direction)
};

/// `direction` holds (dI, dC) samples on the base grid.
std::vector<GapSample> variational_gap(const HerdingScenario& s, const ControlPath& base,
                                       const ControlPath& leader, const ControlPath& direction,
                                       const std::vector<double>& epsilons, const QuadratureRule& rule = {});

/// Smooth perturbation sum_k a_k sin((2k - 1) pi t / (2T)), one coefficient
/// set for dI and one for dC, a_k ~ N(0, 1) / k drawn from stream `index`
/// of `seed`. Every direction vanishes at t = 0.
ControlPath fourier_direction(const TimeGrid& grid, int modes, std::uint64_t seed, std::uint64_t index);

/// Least-squares slope of log(gap) against log(epsilon); samples with gap <= 0
/// are skipped.
double loglog_slope(const std::vector<GapSample>& gaps);

struct VariationalBatch {
    std::vector<std::vector<GapSample>> gaps;  ///< per direction, in direction order
    double min_gap = 0.0;
    double min_slope = 0.0;
    double max_slope = 0.0;
};

/// `n_directions` seeded Fourier directions evaluated in parallel.
VariationalBatch variational_batch(const HerdingScenario& s, const ControlPath& base, const ControlPath& leader,
                                   int n_directions, const std::vector<double>& epsilons, std::uint64_t seed,
                                   int modes = 4, const QuadratureRule& rule = {});

VariationalBatch variational_batch_serial(const HerdingScenario& s, const ControlPath& base,
                                          const ControlPath& leader, int n_directions,
                                          const std::vector<double>& epsilons, std::uint64_t seed, int modes = 4,
                                          const QuadratureRule& rule = {});

} // namespace herding
