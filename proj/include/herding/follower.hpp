#pragma once

#include "herding/model.hpp"
#include "herding/numerics.hpp"

#include <string>
#include <vector>

namespace herding {

/// Multiplier applied to the leader's rational investment,
///   (eta a2 s^2 E(t) + theta) / (eta a1 s^2 E(t) + theta),  E(t) = e^{(2-rho) r (T-t)}.
/// Evaluated in log-eta space so extreme eta neither overflows nor underflows.
double herding_ratio(const HerdingScenario& s, double eta, double t);
double herding_ratio_log(const HerdingScenario& s, double log_eta, double t);

/// Follower's optimal investment I1*(t) = ratio * I2_bar(t).
double optimal_investment(const HerdingScenario& s, double eta, double t);
double optimal_investment_log(const HerdingScenario& s, double log_eta, double t);

/// I1*(t) - I1_bar(t), formed without cancellation; identically zero when
/// theta = 0 or alpha1 = alpha2.
double investment_deviation_log(const HerdingScenario& s, double log_eta, double t);

/// Closed-form log eta for theta = 0: ln(gamma1) - rT - beta1 * k1_bar.
double rational_log_eta(const HerdingScenario& s);

/// Right-hand side of the self-consistency equation for u = ln(eta), with the
/// follower's consumption eliminated. The two integrals that depend on I1*
/// are evaluated with `rule`.
double log_eta_map(const HerdingScenario& s, double log_eta, const QuadratureRule& rule);

/// u - log_eta_map(u); zero exactly at the self-consistent ln(eta).
double eta_residual(const HerdingScenario& s, double log_eta, const QuadratureRule& rule);

struct EtaSolve {
    double log_eta;
    int iterations;        ///< root finder iterations
    int bracket_evals;     ///< residual evaluations spent bracketing
    double residual;
    double bracket_lo;
    double bracket_hi;
};

/// Brackets the root starting at rational_log_eta +/- 1, doubling the width
/// (at most 60 times), then refines with find_root. Throws SolverError if the
/// bracket cannot be found or if more than one sign change is seen.
EtaSolve solve_log_eta(const HerdingScenario& s, const RootConfig& root_cfg = {},
                       const QuadratureRule& rule = {});

double solve_eta(const HerdingScenario& s, const RootConfig& root_cfg = {},
                 const QuadratureRule& rule = {});

struct SolverDiagnostics {
    int iterations = 0;
    double final_residual = 0.0;
    double quadrature_est_error = 0.0;  ///< |ln eta map(rule) - map(2x panels)| at the root
    std::vector<std::string> warnings;
};

struct FollowerSolution {
    double eta = 0.0;
    double log_eta = 0.0;
    double k1_star = 0.0;           ///< k1_bar minus the crowding integral
    double k1_star_from_eta = 0.0;  ///< (ln(gamma1 / eta) - rT) / beta1
    double k1_bar = 0.0;
    double k2_bar = 0.0;
    ControlPath paths;              ///< sampled I1*, C1*
    double crowding = 0.0;
    SolverDiagnostics diagnostics;
};

FollowerSolution solve_follower(const HerdingScenario& s, const TimeGrid& grid,
                                const RootConfig& root_cfg = {}, const QuadratureRule& rule = {});

/// Samples I1*, C1* for a known ln(eta) and consumption intercept.
ControlPath sample_follower(const HerdingScenario& s, double log_eta, double k1_star,
                            const TimeGrid& grid);

} // namespace herding
