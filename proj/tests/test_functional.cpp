#include "herding/closed_form.hpp"
#include "herding/errors.hpp"
#include "herding/follower.hpp"
#include "herding/functional.hpp"

#include <doctest.h>

#include <cmath>

using namespace herding;

namespace {

ControlPath constant_path(const TimeGrid& g, double inv, double con)
{
    return {g, std::vector<double>(g.size(), inv), std::vector<double>(g.size(), con)};
}

struct Solved {
    HerdingScenario s;
    FollowerSolution sol;
    ControlPath follower;
    ControlPath leader;
};

Solved solve_reference(const HerdingScenario& s)
{
    const auto grid = make_uniform_grid(s.market.horizon, 1025);
    auto sol = solve_follower(s, grid);
    ControlPath follower = sol.paths;
    ControlPath leader = RationalDecision(s.leader, s.market).sample(grid);
    return {s, sol, follower, leader};
}

} // namespace

TEST_CASE("average deviation of a unit gap")
{
    const auto m = reference_scenario().market;
    const auto g = make_uniform_grid(m.horizon, 257);
    const auto a = constant_path(g, 3.0, 0.0);
    const auto b = constant_path(g, 2.0, 0.0);
    // 0.5 (e^{0.1} - 1) / 0.01
    CHECK(average_deviation(a, b, m) == doctest::Approx(5.2585459037823808).epsilon(1e-13));
    CHECK(average_deviation(a, a, m) == 0.0);

    // Quadratic in the gap, symmetric in its arguments.
    ControlPath c = b;
    for (std::size_t i = 0; i < g.size(); ++i) {
        c.investment[i] = 2.0 + 0.3 * std::sin(g[i]);
    }
    ControlPath c2 = b;
    for (std::size_t i = 0; i < g.size(); ++i) {
        c2.investment[i] = 2.0 + 0.6 * std::sin(g[i]);
    }
    CHECK(average_deviation(c2, b, m) == doctest::Approx(4.0 * average_deviation(c, b, m)).epsilon(1e-12));
    CHECK(average_deviation(c, b, m) == doctest::Approx(average_deviation(b, c, m)).epsilon(1e-15));
}

TEST_CASE("average deviation rejects mismatched grids")
{
    const auto m = reference_scenario().market;
    const auto a = constant_path(make_uniform_grid(m.horizon, 257), 1.0, 0.0);
    const auto b = constant_path(make_uniform_grid(m.horizon, 129), 1.0, 0.0);
    CHECK_THROWS_AS(average_deviation(a, b, m), ValidationError);
    const auto c = constant_path(make_uniform_grid(5.0, 129), 1.0, 0.0);
    CHECK_THROWS_AS(average_deviation(c, c, m), ValidationError);
}

TEST_CASE("objective of the idle path")
{
    auto s = reference_scenario();
    s.theta = 0.0;
    const auto g = make_uniform_grid(s.market.horizon, 513);
    const auto idle = constant_path(g, 0.0, 0.0);
    const auto j = evaluate_objective(s, idle, idle);
    const double r = s.market.r, T = s.market.horizon;
    CHECK(j.log_fund_exponent == doctest::Approx(-0.2 * std::exp(r * T)).epsilon(1e-14));
    CHECK(j.fund_utility_term == doctest::Approx(-5.0 * std::exp(-0.2 * std::exp(r * T))).epsilon(1e-14));
    CHECK(j.consumption_utility_term == doctest::Approx(-5.0 * (1.0 - std::exp(-r * T)) / r).epsilon(1e-13));
    CHECK(j.deviation_penalty == 0.0);
    CHECK(j.total_J == doctest::Approx(j.fund_utility_term + j.consumption_utility_term).epsilon(1e-15));
}

TEST_CASE("penalty equals theta times the average deviation")
{
    auto s = reference_scenario();
    s.theta = 0.37;
    const auto g = make_uniform_grid(s.market.horizon, 257);
    const auto a = constant_path(g, 1.5, 0.1);
    const auto b = constant_path(g, 0.5, 0.2);
    const auto j = evaluate_objective(s, a, b);
    CHECK(j.deviation_penalty == doctest::Approx(0.37 * average_deviation(a, b, s.market)).epsilon(1e-14));
    s.theta = 0.0;
    CHECK(evaluate_objective(s, a, b).deviation_penalty == 0.0);
}

TEST_CASE("fourier directions are seeded and vanish at the origin")
{
    const auto g = make_uniform_grid(10.0, 65);
    const auto d1 = fourier_direction(g, 4, 7, 3);
    const auto d2 = fourier_direction(g, 4, 7, 3);
    const auto d3 = fourier_direction(g, 4, 7, 4);
    CHECK(d1.investment == d2.investment);
    CHECK(d1.consumption == d2.consumption);
    CHECK(d1.investment != d3.investment);
    CHECK(d1.investment.front() == 0.0);
    CHECK(d1.consumption.front() == 0.0);
    CHECK_THROWS_AS(fourier_direction(g, 0, 7, 3), ValidationError);
}

TEST_CASE("loglog slope")
{
    CHECK(loglog_slope({{1e-1, 3e-2}, {1e-2, 3e-4}, {1e-3, 3e-6}}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::isnan(loglog_slope({{1e-1, -1.0}, {1e-2, 3e-4}})));
}

TEST_CASE("solved controls are a strict local maximum")
{
    const auto ref = solve_reference(reference_scenario());
    const std::vector<double> eps{1e-1, 1e-2, 1e-3};
    const auto batch = variational_batch(ref.s, ref.follower, ref.leader, 20, eps, 2024);
    CHECK(batch.min_gap >= -1e-12);
    CHECK(batch.min_slope >= 1.9);
    CHECK(batch.max_slope <= 2.1);

    // Stronger herding and a different consumption weighting.
    auto s = reference_scenario();
    s.theta = 2.0;
    s.market.rho = 1.5;
    const auto other = solve_reference(s);
    const auto b2 = variational_batch(other.s, other.follower, other.leader, 10, eps, 99);
    CHECK(b2.min_gap >= -1e-12);
    CHECK(b2.min_slope >= 1.9);
    CHECK(b2.max_slope <= 2.1);
}

TEST_CASE("the rational path is not optimal under herding")
{
    const auto ref = solve_reference(reference_scenario());
    ControlPath rational = RationalDecision(ref.s.follower, ref.s.market).sample(ref.follower.grid);
    const double j_star = evaluate_objective(ref.s, ref.follower, ref.leader).total_J;
    const double j_rat = evaluate_objective(ref.s, rational, ref.leader).total_J;
    CHECK(j_star > j_rat);
}

TEST_CASE("parallel and serial variational batches agree exactly")
{
    const auto ref = solve_reference(reference_scenario());
    const std::vector<double> eps{1e-1, 1e-2};
    const auto a = variational_batch(ref.s, ref.follower, ref.leader, 6, eps, 5);
    const auto b = variational_batch_serial(ref.s, ref.follower, ref.leader, 6, eps, 5);
    REQUIRE(a.gaps.size() == b.gaps.size());
    for (std::size_t d = 0; d < a.gaps.size(); ++d) {
        for (std::size_t k = 0; k < eps.size(); ++k) {
            CHECK(a.gaps[d][k].gap == b.gaps[d][k].gap);
        }
    }
    CHECK(a.min_slope == b.min_slope);
}
