#include "herding/crowding.hpp"

#include "herding/closed_form.hpp"
#include "herding/errors.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace herding {

double crowding_out_log(const HerdingScenario& s, double log_eta, const QuadratureRule& rule)
{
    const auto& m = s.market;
    const auto& f = s.follower;
    if (s.theta == 0.0 || f.alpha == s.leader.alpha) {
        return 0.0;
    }
    const double integral = integrate(
        [&](double t) {
            const double gap = investment_deviation_log(s, log_eta, t);
            return std::exp(2.0 * m.r * (m.horizon - t)) * gap * gap;
        },
        0.0, m.horizon, rule);
    return 0.5 * f.alpha * m.sigma * m.sigma * consumption_gain(f, m) * integral;
}

double crowding_out(const HerdingScenario& s, double eta, const QuadratureRule& rule)
{
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw ValidationError("eta must be a finite positive number");
    }
    return crowding_out_log(s, std::log(eta), rule);
}

double crowding_out_limit(const HerdingScenario& s)
{
    validate_scenario(s);
    const auto& m = s.market;
    const auto& f = s.follower;
    const double mismatch = f.alpha / s.leader.alpha - 1.0;
    return mismatch * mismatch * consumption_gain(f, m) * m.v * m.v * m.horizon
           / (2.0 * f.alpha * m.sigma * m.sigma);
}

const char* to_string(MarketParameter p)
{
    switch (p) {
    case MarketParameter::r: return "r";
    case MarketParameter::v: return "v";
    case MarketParameter::sigma: return "sigma";
    }
    return "?";
}

MarketParameter parse_market_parameter(const std::string& name)
{
    if (name == "r") return MarketParameter::r;
    if (name == "v") return MarketParameter::v;
    if (name == "sigma") return MarketParameter::sigma;
    throw ValidationError("unknown sweep parameter '" + name + "' (expected r, v or sigma)");
}

double parameter_value(const HerdingScenario& s, MarketParameter p)
{
    switch (p) {
    case MarketParameter::r: return s.market.r;
    case MarketParameter::v: return s.market.v;
    case MarketParameter::sigma: return s.market.sigma;
    }
    return 0.0;
}

HerdingScenario with_parameter(HerdingScenario s, MarketParameter p, double value)
{
    switch (p) {
    case MarketParameter::r: s.market.r = value; break;
    case MarketParameter::v: s.market.v = value; break;
    case MarketParameter::sigma: s.market.sigma = value; break;
    }
    return s;
}

double sensitivity(const HerdingScenario& s, MarketParameter p, bool use_limit, double rel_step,
                   const RootConfig& root_cfg, const QuadratureRule& rule)
{
    validate_scenario(s);
    if (!(rel_step > 0.0)) {
        throw ValidationError("sensitivity step must be > 0");
    }
    const double x = parameter_value(s, p);
    const double h = x == 0.0 ? rel_step : rel_step * std::abs(x);
    const auto up = with_parameter(s, p, x + h);
    const auto down = with_parameter(s, p, x - h);
    try {
        validate_scenario(up);
        validate_scenario(down);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("sensitivity step too large for ") + to_string(p) + ": " + e.what());
    }

    auto evaluate = [&](const HerdingScenario& at) {
        if (use_limit) {
            return crowding_out_limit(at);
        }
        return crowding_out_log(at, solve_log_eta(at, root_cfg, rule).log_eta, rule);
    };
    return (evaluate(up) - evaluate(down)) / (2.0 * h);
}

void SweepSpec::validate() const
{
    if (n_points < 2) {
        throw ValidationError("sweep needs n_points >= 2");
    }
    if (!(lo < hi)) {
        throw ValidationError("sweep range must satisfy lo < hi");
    }
    validate_scenario(with_parameter(base, parameter, lo));
    validate_scenario(with_parameter(base, parameter, hi));
}

double SweepSpec::value(std::size_t i) const
{
    if (i + 1 == n_points) {
        return hi;
    }
    return lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(n_points - 1));
}

std::size_t SweepResult::failures() const
{
    std::size_t n = 0;
    for (const auto& p : points) {
        n += p.error.has_value() ? 1 : 0;
    }
    return n;
}

namespace {

SweepPoint solve_point(const SweepSpec& spec, std::size_t i, const RootConfig& root_cfg,
                       const QuadratureRule& rule)
{
    SweepPoint point;
    point.value = spec.value(i);
    try {
        const auto scenario = with_parameter(spec.base, spec.parameter, point.value);
        const auto fit = solve_log_eta(scenario, root_cfg, rule);
        point.eta = std::exp(fit.log_eta);
        point.iterations = fit.iterations;
        point.residual = fit.residual;
        point.crowding = crowding_out_log(scenario, fit.log_eta, rule);
    } catch (const std::exception& e) {
        point.crowding = std::nan("");
        point.eta = std::nan("");
        point.error = e.what();
    }
    return point;
}

} // namespace

SweepResult sweep(const SweepSpec& spec, const RootConfig& root_cfg, const QuadratureRule& rule)
{
    spec.validate();
    SweepResult result{spec.parameter, std::vector<SweepPoint>(spec.n_points)};
    const auto n = static_cast<long>(spec.n_points);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        result.points[static_cast<std::size_t>(i)] = solve_point(spec, static_cast<std::size_t>(i), root_cfg, rule);
    }
    return result;
}

SweepResult sweep_serial(const SweepSpec& spec, const RootConfig& root_cfg, const QuadratureRule& rule)
{
    spec.validate();
    SweepResult result{spec.parameter, {}};
    result.points.reserve(spec.n_points);
    for (std::size_t i = 0; i < spec.n_points; ++i) {
        result.points.push_back(solve_point(spec, i, root_cfg, rule));
    }
    return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result)
{
    os << "param,value,crowding,eta,iterations,residual\n";
    char line[256];
    for (const auto& p : result.points) {
        std::snprintf(line, sizeof line, "%s,%.15g,%.15g,%.15g,%d,%.15g\n", to_string(result.parameter), p.value,
                      p.crowding, p.eta, p.iterations, p.residual);
        os << line;
    }
}

} // namespace herding
