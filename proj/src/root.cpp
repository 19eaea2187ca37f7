#include "herding/numerics.hpp"

#include <limits>
#include <utility>

namespace herding {

RootResult find_root(const std::function<double(double)>& g, double lo, double hi,
                     const RootConfig& cfg)
{
    if (cfg.abs_tol < 0.0 || cfg.rel_tol < 0.0 || cfg.abs_tol + cfg.rel_tol <= 0.0) {
        throw ValidationError("root tolerances must be >= 0 with a positive sum");
    }
    if (cfg.max_iter <= 0) {
        throw ValidationError("root max_iter must be > 0");
    }

    double a = lo;
    double b = hi;
    double fa = g(a);
    double fb = g(b);
    if (!std::isfinite(fa) || !std::isfinite(fb)) {
        throw SolverError("root bracket endpoint evaluates to a non-finite value");
    }
    if (fa == 0.0) return {a, 0.0, 0};
    if (fb == 0.0) return {b, 0.0, 0};
    if ((fa > 0.0) == (fb > 0.0)) {
        throw SolverError("no sign change on root bracket [" + std::to_string(lo) + ", "
                          + std::to_string(hi) + "]");
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;

    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        const double tol = 2.0 * eps * std::abs(b) + 0.5 * (cfg.abs_tol + cfg.rel_tol * std::abs(b));
        const double mid = 0.5 * (c - b);
        if (std::abs(mid) <= tol || fb == 0.0) {
            return {b, fb, iter};
        }

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                // secant
                p = 2.0 * mid * s;
                q = 1.0 - s;
            } else {
                // inverse quadratic interpolation
                const double qa = fa / fc;
                const double rb = fb / fc;
                p = s * (2.0 * mid * qa * (qa - rb) - (b - a) * (rb - 1.0));
                q = (qa - 1.0) * (rb - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            } else {
                p = -p;
            }
            if (2.0 * p < std::min(3.0 * mid * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = mid;
                e = d;
            }
        } else {
            d = mid;
            e = d;
        }

        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (mid > 0.0 ? tol : -tol);
        fb = g(b);
        if (!std::isfinite(fb)) {
            throw SolverError("root function is not finite at x = " + std::to_string(b));
        }
    }
    throw SolverError("root finder exceeded " + std::to_string(cfg.max_iter) + " iterations");
}

} // namespace herding
