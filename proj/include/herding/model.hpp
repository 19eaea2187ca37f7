#pragma once

#include <cstddef>
#include <vector>

namespace herding {

/// Financial environment. Rates are per unit time; the horizon is in the
/// same time unit.
struct MarketParams {
    double r = 0.01;        ///< risk-free interest rate, > 0
    double v = 0.1;         ///< excess return rate of the risky asset
    double sigma = 0.1;     ///< volatility, > 0
    double horizon = 10.0;  ///< T, > 0
    double rho = 1.0;       ///< decay coefficient of consumption utility, > 0

    bool operator==(const MarketParams&) const = default;
};

/// Preferences and endowment of one household.
struct HouseholdParams {
    double alpha = 0.2;  ///< risk aversion, > 0
    double beta = 0.2;   ///< diminishing marginal coefficient, > 0
    double gamma = 1.0;  ///< consumption weight, > 0
    double x0 = 1.0;     ///< initial fund

    bool operator==(const HouseholdParams&) const = default;
};

/// Follower H1 herds towards leader H2 with weight theta.
struct HerdingScenario {
    MarketParams market;
    HouseholdParams follower;
    HouseholdParams leader{0.4, 0.4, 1.0, 1.0};
    double theta = 0.01;

    bool operator==(const HerdingScenario&) const = default;
};

/// Reference parameter set: alpha = (0.2, 0.4), beta = (0.2, 0.4),
/// gamma = 1, x0 = 1, theta = 0.01, rho = 1, r = 0.01, v = sigma = 0.1, T = 10.
HerdingScenario reference_scenario();

void validate(const MarketParams& m);
void validate(const HouseholdParams& h, const char* who = "household");

/// Returns the scenario unchanged or throws ValidationError naming the
/// offending field.
const HerdingScenario& validate_scenario(const HerdingScenario& s);

/// Uniform discretisation of [0, T].
class TimeGrid {
public:
    TimeGrid() = default;

    std::size_t size() const noexcept { return times_.size(); }
    double horizon() const noexcept { return times_.empty() ? 0.0 : times_.back(); }
    double spacing() const noexcept { return spacing_; }
    double operator[](std::size_t i) const { return times_[i]; }
    const std::vector<double>& times() const noexcept { return times_; }

    bool operator==(const TimeGrid& other) const { return times_ == other.times_; }

    friend TimeGrid make_uniform_grid(double horizon, std::size_t n);

private:
    std::vector<double> times_;
    double spacing_ = 0.0;
};

/// n >= 2 points with times[0] = 0 and times[n-1] = T exactly.
TimeGrid make_uniform_grid(double horizon, std::size_t n);

/// Sampled investment I(t) and consumption C(t) on a grid.
struct ControlPath {
    TimeGrid grid;
    std::vector<double> investment;
    std::vector<double> consumption;

    /// Throws ValidationError unless both sample vectors match the grid size.
    void check_shape() const;

    /// Piecewise-cubic interpolation through the nearest four samples
    /// (lower order on grids with fewer than four points).
    double investment_at(double t) const;
    double consumption_at(double t) const;
};

/// Local Lagrange interpolation on a uniform grid.
double interpolate(const TimeGrid& grid, const std::vector<double>& values, double t);

} // namespace herding
