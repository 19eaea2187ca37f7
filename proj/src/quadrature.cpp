#include "herding/numerics.hpp"

#include <string>

namespace herding::detail {

void check_rule(const QuadratureRule& rule, double a, double b)
{
    if (rule.panels < 1) {
        throw ValidationError("quadrature needs at least one panel");
    }
    if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
        throw ValidationError("quadrature interval must satisfy a <= b (got ["
                              + std::to_string(a) + ", " + std::to_string(b) + "])");
    }
}

} // namespace herding::detail
