#include "herding/functional.hpp"

#include "herding/errors.hpp"
#include "herding/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace herding {

namespace {

void require_span(const ControlPath& p, const MarketParams& m)
{
    p.check_shape();
    if (std::abs(p.grid.horizon() - m.horizon) > 1e-12 * m.horizon) {
        throw ValidationError("control path grid must span [0, T]");
    }
}

void require_same_grid(const ControlPath& a, const ControlPath& b)
{
    if (!(a.grid == b.grid)) {
        throw ValidationError("control paths are sampled on different grids");
    }
}

} // namespace

double average_deviation(const ControlPath& p1, const ControlPath& p2, const MarketParams& m,
                         const QuadratureRule& rule)
{
    require_span(p1, m);
    require_span(p2, m);
    require_same_grid(p1, p2);
    const double decay = m.rho * m.r;
    return 0.5 * integrate(
                     [&](double t) {
                         const double d = p1.investment_at(t) - p2.investment_at(t);
                         return std::exp(decay * (m.horizon - t)) * d * d;
                     },
                     0.0, m.horizon, rule);
}

ObjectiveBreakdown evaluate_objective(const HerdingScenario& s, const ControlPath& follower,
                                      const ControlPath& leader, const QuadratureRule& rule)
{
    validate_scenario(s);
    const auto& m = s.market;
    const auto& f = s.follower;
    require_span(follower, m);
    require_span(leader, m);
    require_same_grid(follower, leader);
    for (double c : follower.consumption) {
        if (!std::isfinite(c)) {
            throw ValidationError("consumption samples must be finite");
        }
    }

    const double T = m.horizon;
    const double drift = integrate(
        [&](double t) {
            return std::exp(m.r * (T - t)) * (m.v * follower.investment_at(t) - follower.consumption_at(t));
        },
        0.0, T, rule);
    const double spread = integrate(
        [&](double t) {
            const double inv = follower.investment_at(t);
            return std::exp(2.0 * m.r * (T - t)) * inv * inv;
        },
        0.0, T, rule);
    const double consumption = integrate(
        [&](double t) { return std::exp(-m.rho * m.r * t - f.beta * follower.consumption_at(t)); }, 0.0, T,
        rule);

    ObjectiveBreakdown out;
    out.log_fund_exponent = -f.alpha * f.x0 * std::exp(m.r * T) - f.alpha * drift
                            + 0.5 * f.alpha * f.alpha * m.sigma * m.sigma * spread;
    out.fund_utility_term = -std::exp(out.log_fund_exponent - std::log(f.alpha));
    out.consumption_utility_term = -f.gamma / f.beta * consumption;
    out.deviation_penalty = s.theta == 0.0 ? 0.0 : s.theta * average_deviation(follower, leader, m, rule);
    out.total_J = out.fund_utility_term + out.consumption_utility_term - out.deviation_penalty;
    if (!std::isfinite(out.total_J)) {
        throw SolverError("objective functional is not finite for this control path");
    }
    return out;
}

std::vector<GapSample> variational_gap(const HerdingScenario& s, const ControlPath& base,
                                       const ControlPath& leader, const ControlPath& direction,
                                       const std::vector<double>& epsilons, const QuadratureRule& rule)
{
    direction.check_shape();
    require_same_grid(base, direction);
    const double j0 = evaluate_objective(s, base, leader, rule).total_J;

    std::vector<GapSample> out;
    out.reserve(epsilons.size());
    ControlPath moved = base;
    for (double eps : epsilons) {
        for (std::size_t i = 0; i < base.grid.size(); ++i) {
            moved.investment[i] = base.investment[i] + eps * direction.investment[i];
            moved.consumption[i] = base.consumption[i] + eps * direction.consumption[i];
        }
        const double j = eps == 0.0 ? j0 : evaluate_objective(s, moved, leader, rule).total_J;
        out.push_back({eps, j0 - j});
    }
    return out;
}

ControlPath fourier_direction(const TimeGrid& grid, int modes, std::uint64_t seed, std::uint64_t index)
{
    if (modes < 1) {
        throw ValidationError("fourier direction needs at least one mode");
    }
    NormalStream normals(seed, index);
    std::vector<double> inv_coef(static_cast<std::size_t>(modes));
    std::vector<double> con_coef(static_cast<std::size_t>(modes));
    for (int k = 0; k < modes; ++k) {
        inv_coef[static_cast<std::size_t>(k)] = normals.next() / (k + 1);
        con_coef[static_cast<std::size_t>(k)] = normals.next() / (k + 1);
    }

    const double T = grid.horizon();
    ControlPath dir{grid, std::vector<double>(grid.size(), 0.0), std::vector<double>(grid.size(), 0.0)};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (int k = 0; k < modes; ++k) {
            const double basis = std::sin((2 * k + 1) * std::numbers::pi * grid[i] / (2.0 * T));
            dir.investment[i] += inv_coef[static_cast<std::size_t>(k)] * basis;
            dir.consumption[i] += con_coef[static_cast<std::size_t>(k)] * basis;
        }
    }
    return dir;
}

double loglog_slope(const std::vector<GapSample>& gaps)
{
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const auto& g : gaps) {
        if (g.gap > 0.0 && g.epsilon > 0.0) {
            const double x = std::log(g.epsilon);
            const double y = std::log(g.gap);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
    }
    if (n < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

void summarise(VariationalBatch& batch)
{
    batch.min_gap = std::numeric_limits<double>::infinity();
    batch.min_slope = std::numeric_limits<double>::infinity();
    batch.max_slope = -std::numeric_limits<double>::infinity();
    for (const auto& row : batch.gaps) {
        for (const auto& g : row) {
            if (g.epsilon != 0.0) {
                batch.min_gap = std::min(batch.min_gap, g.gap);
            }
        }
        const double slope = loglog_slope(row);
        // NaN slopes (non-positive gaps) must fail any range check.
        batch.min_slope = std::isnan(slope) ? slope : std::min(batch.min_slope, slope);
        batch.max_slope = std::isnan(slope) ? slope : std::max(batch.max_slope, slope);
        if (std::isnan(slope)) {
            break;
        }
    }
}

} // namespace

VariationalBatch variational_batch(const HerdingScenario& s, const ControlPath& base, const ControlPath& leader,
                                   int n_directions, const std::vector<double>& epsilons, std::uint64_t seed,
                                   int modes, const QuadratureRule& rule)
{
    VariationalBatch batch;
    batch.gaps.resize(static_cast<std::size_t>(std::max(n_directions, 0)));
    bool failed = false;
    std::string failure;
#pragma omp parallel for schedule(dynamic)
    for (int d = 0; d < n_directions; ++d) {
        try {
            const auto dir = fourier_direction(base.grid, modes, seed, static_cast<std::uint64_t>(d));
            batch.gaps[static_cast<std::size_t>(d)] = variational_gap(s, base, leader, dir, epsilons, rule);
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failed = true;
                failure = e.what();
            }
        }
    }
    if (failed) {
        throw SolverError("variational batch failed: " + failure);
    }
    summarise(batch);
    return batch;
}

VariationalBatch variational_batch_serial(const HerdingScenario& s, const ControlPath& base,
                                          const ControlPath& leader, int n_directions,
                                          const std::vector<double>& epsilons, std::uint64_t seed, int modes,
                                          const QuadratureRule& rule)
{
    VariationalBatch batch;
    for (int d = 0; d < n_directions; ++d) {
        const auto dir = fourier_direction(base.grid, modes, seed, static_cast<std::uint64_t>(d));
        batch.gaps.push_back(variational_gap(s, base, leader, dir, epsilons, rule));
    }
    summarise(batch);
    return batch;
}

} // namespace herding
