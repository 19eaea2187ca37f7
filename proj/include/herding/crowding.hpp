#pragma once

#include "herding/follower.hpp"
#include "herding/model.hpp"
#include "herding/numerics.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace herding {

/// Constant gap C1_bar(t) - C1*(t):
///   (a1 s^2 / 2) * gain1 * int e^{2r(T-t)} [I1*(t) - I1_bar(t)]^2 dt.
double crowding_out(const HerdingScenario& s, double eta, const QuadratureRule& rule = {});
double crowding_out_log(const HerdingScenario& s, double log_eta, const QuadratureRule& rule = {});

/// theta -> infinity closed form, where I1* collapses onto I2_bar.
double crowding_out_limit(const HerdingScenario& s);

enum class MarketParameter { r, v, sigma };

const char* to_string(MarketParameter p);
MarketParameter parse_market_parameter(const std::string& name);

/// Copy of the scenario with one market parameter replaced.
HerdingScenario with_parameter(HerdingScenario s, MarketParameter p, double value);
double parameter_value(const HerdingScenario& s, MarketParameter p);

/// Central finite difference of the limit form (use_limit) or of the crowding
/// at the scenario's theta, with step rel_step * |p| (rel_step itself when
/// p = 0). Throws ValidationError if p +/- step leaves the valid region.
double sensitivity(const HerdingScenario& s, MarketParameter p, bool use_limit, double rel_step = 1e-4,
                   const RootConfig& root_cfg = {}, const QuadratureRule& rule = {});

struct SweepSpec {
    MarketParameter parameter = MarketParameter::r;
    double lo = 0.005;
    double hi = 0.025;
    std::size_t n_points = 21;
    HerdingScenario base;

    void validate() const;
    double value(std::size_t i) const;
};

struct SweepPoint {
    double value = 0.0;
    double crowding = 0.0;
    double eta = 0.0;
    int iterations = 0;
    double residual = 0.0;
    std::optional<std::string> error;  ///< set when this point's solve failed
};

struct SweepResult {
    MarketParameter parameter = MarketParameter::r;
    std::vector<SweepPoint> points;

    std::size_t failures() const;
};

/// One fresh eta solve per point, fanned out with OpenMP. Points are stored
/// by parameter index, so the output order never depends on scheduling.
SweepResult sweep(const SweepSpec& spec, const RootConfig& root_cfg = {}, const QuadratureRule& rule = {});

/// Single-threaded reference for sweep(); results are identical.
SweepResult sweep_serial(const SweepSpec& spec, const RootConfig& root_cfg = {},
                         const QuadratureRule& rule = {});

/// `param,value,crowding,eta,iterations,residual`, 15 significant digits.
void write_sweep_csv(std::ostream& os, const SweepResult& result);

} // namespace herding
