#include "herding/closed_form.hpp"

#include "herding/errors.hpp"

#include <cmath>
#include <sstream>

namespace herding {

void check_time(const MarketParams& m, double t)
{
    if (!(t >= 0.0 && t <= m.horizon)) {
        std::ostringstream msg;
        msg << "time " << t << " is outside [0, " << m.horizon << "]";
        throw ValidationError(msg.str());
    }
}

double rational_investment(const HouseholdParams& h, const MarketParams& m, double t)
{
    check_time(m, t);
    return m.v / (h.alpha * m.sigma * m.sigma) * std::exp(m.r * (t - m.horizon));
}

double consumption_gain(const HouseholdParams& h, const MarketParams& m)
{
    return 1.0 / (h.beta / h.alpha + std::expm1(m.r * m.horizon) / m.r);
}

double consumption_slope(const HouseholdParams& h, const MarketParams& m)
{
    return (1.0 - m.rho) * m.r / h.beta;
}

double rational_intercept(const HouseholdParams& h, const MarketParams& m)
{
    validate(m);
    validate(h);
    const double rT = m.r * m.horizon;
    const double growth = std::exp(rT);
    // e^{rT} - rT - 1 without cancellation for small rT.
    const double curvature = std::expm1(rT) - rT;
    // Horizon term is -rT / alpha, in currency units like the rest of the bracket.
    const double bracket = -rT / h.alpha + h.x0 * growth + std::log(h.gamma) / h.alpha
                           + m.v * m.v * m.horizon / (2.0 * h.alpha * m.sigma * m.sigma)
                           + (m.rho - 1.0) * curvature / (h.beta * m.r);
    return consumption_gain(h, m) * bracket;
}

double rational_consumption(const HouseholdParams& h, const MarketParams& m, double t)
{
    check_time(m, t);
    return consumption_slope(h, m) * t + rational_intercept(h, m);
}

RationalDecision::RationalDecision(const HouseholdParams& h, const MarketParams& m)
    : household_(h), market_(m), k_bar_(rational_intercept(h, m))
{
    // Linear in t, so the endpoints decide positivity.
    const double c0 = k_bar_;
    const double cT = consumption_slope(h, m) * m.horizon + k_bar_;
    if (!(c0 > 0.0) || !(cT > 0.0)) {
        std::ostringstream msg;
        msg << "rational consumption is not strictly positive on [0, T] (C(0) = " << c0
            << ", C(T) = " << cT << ")";
        warnings_.push_back(msg.str());
    }
}

double RationalDecision::investment(double t) const
{
    return rational_investment(household_, market_, t);
}

double RationalDecision::consumption(double t) const
{
    check_time(market_, t);
    return consumption_slope(household_, market_) * t + k_bar_;
}

ControlPath RationalDecision::sample(const TimeGrid& grid) const
{
    ControlPath path{grid, {}, {}};
    path.investment.reserve(grid.size());
    path.consumption.reserve(grid.size());
    for (double t : grid.times()) {
        path.investment.push_back(investment(t));
        path.consumption.push_back(consumption(t));
    }
    return path;
}

} // namespace herding
