#include "herding/model.hpp"

#include "herding/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace herding {

namespace {

void require_positive(double value, const std::string& name)
{
    if (!std::isfinite(value) || !(value > 0.0)) {
        throw ValidationError(name + " must be > 0 (got " + std::to_string(value) + ")");
    }
}

void require_finite(double value, const std::string& name)
{
    if (!std::isfinite(value)) {
        throw ValidationError(name + " must be finite");
    }
}

} // namespace

HerdingScenario reference_scenario()
{
    return HerdingScenario{};
}

void validate(const MarketParams& m)
{
    // r = 0 is rejected: the closed forms divide by r.
    require_positive(m.r, "r");
    require_finite(m.v, "v");
    require_positive(m.sigma, "sigma");
    require_positive(m.horizon, "T");
    require_positive(m.rho, "rho");
}

void validate(const HouseholdParams& h, const char* who)
{
    const std::string prefix = std::string(who) + ".";
    require_positive(h.alpha, prefix + "alpha");
    require_positive(h.beta, prefix + "beta");
    require_positive(h.gamma, prefix + "gamma");
    require_finite(h.x0, prefix + "x0");
}

const HerdingScenario& validate_scenario(const HerdingScenario& s)
{
    validate(s.market);
    validate(s.follower, "follower");
    validate(s.leader, "leader");
    if (!std::isfinite(s.theta) || s.theta < 0.0) {
        throw ValidationError("theta must be >= 0 (got " + std::to_string(s.theta) + ")");
    }
    return s;
}

TimeGrid make_uniform_grid(double horizon, std::size_t n)
{
    if (n < 2) {
        throw ValidationError("grid needs at least 2 points (got " + std::to_string(n) + ")");
    }
    if (!std::isfinite(horizon) || !(horizon > 0.0)) {
        throw ValidationError("grid horizon must be > 0");
    }
    TimeGrid grid;
    const auto intervals = static_cast<double>(n - 1);
    grid.spacing_ = horizon / intervals;
    grid.times_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid.times_[i] = horizon * (static_cast<double>(i) / intervals);
    }
    grid.times_.back() = horizon;
    return grid;
}

void ControlPath::check_shape() const
{
    if (investment.size() != grid.size() || consumption.size() != grid.size()) {
        throw ValidationError("control path sample count does not match its grid ("
                              + std::to_string(grid.size()) + " points)");
    }
}

double interpolate(const TimeGrid& grid, const std::vector<double>& values, double t)
{
    const std::size_t n = grid.size();
    if (n == 0 || values.size() != n) {
        throw ValidationError("interpolation: sample count does not match grid");
    }
    if (n == 1) {
        return values[0];
    }
    const double h = grid.spacing();
    const double pos = std::clamp(t / h, 0.0, static_cast<double>(n - 1));
    const std::size_t order = std::min<std::size_t>(n, 4);

    // Stencil of `order` consecutive nodes roughly centred on t.
    const auto cell = std::min(static_cast<std::size_t>(pos), n - 2);
    std::size_t first = cell >= (order - 1) / 2 ? cell - (order - 1) / 2 : 0;
    first = std::min(first, n - order);

    double result = 0.0;
    for (std::size_t j = 0; j < order; ++j) {
        double weight = 1.0;
        const double xj = static_cast<double>(first + j);
        for (std::size_t m = 0; m < order; ++m) {
            if (m != j) {
                const double xm = static_cast<double>(first + m);
                weight *= (pos - xm) / (xj - xm);
            }
        }
        result += weight * values[first + j];
    }
    return result;
}

double ControlPath::investment_at(double t) const
{
    return interpolate(grid, investment, t);
}

double ControlPath::consumption_at(double t) const
{
    return interpolate(grid, consumption, t);
}

} // namespace herding
