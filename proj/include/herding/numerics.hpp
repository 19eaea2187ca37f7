#pragma once

#include "herding/errors.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>

namespace herding {

enum class QuadratureKind { simpson, gauss_legendre };

/// Composite rule on [a, b]. Simpson panels each span two subintervals, so
/// the subinterval count is always even; Gauss-Legendre uses five nodes per
/// panel.
struct QuadratureRule {
    QuadratureKind kind = QuadratureKind::gauss_legendre;
    std::size_t panels = 256;

    QuadratureRule refined() const { return {kind, 2 * panels}; }
};

struct RootConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_iter = 200;
};

namespace detail {

inline constexpr std::array<double, 5> gl5_nodes{
    -0.9061798459386639927976269, -0.5384693101056830910363144, 0.0,
    0.5384693101056830910363144, 0.9061798459386639927976269};
inline constexpr std::array<double, 5> gl5_weights{
    0.2369268850561890875142640, 0.4786286704993664680412915, 0.5688888888888888888888889,
    0.4786286704993664680412915, 0.2369268850561890875142640};

[[noreturn]] inline void non_finite_integrand(double t, double value)
{
    std::ostringstream msg;
    msg.precision(17);
    msg << "integrand is not finite at t = " << t << " (value " << value << ")";
    throw SolverError(msg.str());
}

template <class F>
double checked(F& f, double t)
{
    const double value = f(t);
    if (!std::isfinite(value)) {
        non_finite_integrand(t, value);
    }
    return value;
}

void check_rule(const QuadratureRule& rule, double a, double b);

} // namespace detail

/// Composite quadrature of f over [a, b]. Throws SolverError naming the
/// abscissa if f returns a non-finite value.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureRule& rule)
{
    detail::check_rule(rule, a, b);
    if (a == b) {
        return 0.0;
    }
    const auto panels = rule.panels;
    const double width = (b - a) / static_cast<double>(panels);
    double total = 0.0;

    if (rule.kind == QuadratureKind::gauss_legendre) {
        const double half = 0.5 * width;
        for (std::size_t p = 0; p < panels; ++p) {
            const double mid = a + (static_cast<double>(p) + 0.5) * width;
            double panel = 0.0;
            for (std::size_t q = 0; q < detail::gl5_nodes.size(); ++q) {
                panel += detail::gl5_weights[q] * detail::checked(f, mid + half * detail::gl5_nodes[q]);
            }
            total += half * panel;
        }
        return total;
    }

    // Composite Simpson: 2 * panels subintervals.
    const double h = 0.5 * width;
    const std::size_t intervals = 2 * panels;
    total = detail::checked(f, a) + detail::checked(f, b);
    for (std::size_t i = 1; i < intervals; ++i) {
        total += (i % 2 == 1 ? 4.0 : 2.0) * detail::checked(f, a + static_cast<double>(i) * h);
    }
    return total * h / 3.0;
}

struct ConvergenceEstimate {
    double value;
    double est_error;  ///< |I(panels) - I(2 panels)|
};

template <class F>
ConvergenceEstimate convergence_check(F&& f, double a, double b, const QuadratureRule& rule)
{
    const double coarse = integrate(f, a, b, rule);
    const double fine = integrate(f, a, b, rule.refined());
    return {coarse, std::abs(coarse - fine)};
}

struct RootResult {
    double root;
    double residual;
    int iterations;
};

/// Brent's method: inverse quadratic / secant steps safeguarded by
/// bisection. Requires g(lo) * g(hi) <= 0.
RootResult find_root(const std::function<double(double)>& g, double lo, double hi,
                     const RootConfig& cfg = {});

} // namespace herding
