#pragma once

#include "herding/model.hpp"

#include <string>
#include <vector>

namespace herding {

/// Merton-type decision vector of a household acting alone (theta = 0).
///   I(t) = v / (alpha sigma^2) * exp(r (t - T))
///   C(t) = (1 - rho) r t / beta + k_bar
double rational_investment(const HouseholdParams& h, const MarketParams& m, double t);
double rational_intercept(const HouseholdParams& h, const MarketParams& m);
double rational_consumption(const HouseholdParams& h, const MarketParams& m, double t);

/// Slope (1 - rho) r / beta shared by rational and herding consumption paths.
double consumption_slope(const HouseholdParams& h, const MarketParams& m);

/// (beta / alpha + (e^{rT} - 1) / r)^{-1}, the factor that converts terminal
/// wealth adjustments into a constant consumption shift.
double consumption_gain(const HouseholdParams& h, const MarketParams& m);

/// Rational decisions of one household with its intercept computed once.
class RationalDecision {
public:
    RationalDecision(const HouseholdParams& h, const MarketParams& m);

    const HouseholdParams& household() const noexcept { return household_; }
    const MarketParams& market() const noexcept { return market_; }
    double k_bar() const noexcept { return k_bar_; }

    double investment(double t) const;
    double consumption(double t) const;

    /// Non-fatal notes, e.g. the consumption path dipping to <= 0 somewhere
    /// on [0, T]. The closed form is reported as is, never clamped.
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    /// Samples both decisions on a grid spanning [0, T].
    ControlPath sample(const TimeGrid& grid) const;

private:
    HouseholdParams household_;
    MarketParams market_;
    double k_bar_;
    std::vector<std::string> warnings_;
};

/// Throws ValidationError unless 0 <= t <= T.
void check_time(const MarketParams& m, double t);

} // namespace herding
