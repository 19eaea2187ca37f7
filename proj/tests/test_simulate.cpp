#include "herding/closed_form.hpp"
#include "herding/errors.hpp"
#include "herding/follower.hpp"
#include "herding/functional.hpp"
#include "herding/simulate.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace herding;

namespace {

ControlPath constant_path(const TimeGrid& g, double inv, double con)
{
    return {g, std::vector<double>(g.size(), inv), std::vector<double>(g.size(), con)};
}

} // namespace

TEST_CASE("pairwise sum")
{
    std::vector<double> v(1000, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
    CHECK(pairwise_sum(std::vector<double>{1e16, 1.0, -1e16}) == 0.0);
}

TEST_CASE("analytic moments of constant controls")
{
    const auto s = reference_scenario();
    const auto g = make_uniform_grid(10.0, 101);
    const auto mom = analytic_terminal_moments(s.follower, s.market, constant_path(g, 1.0, 0.2));
    const double e = std::exp(0.1);
    CHECK(mom.mean == doctest::Approx(e + (0.1 - 0.2) * (e - 1.0) / 0.01).epsilon(1e-13));
    CHECK(mom.var == doctest::Approx(0.110701379080085).epsilon(1e-13));
}

TEST_CASE("without investment the fund is deterministic and the Euler bias is first order")
{
    const auto s = reference_scenario();
    const double e = std::exp(0.1);
    const double exact = e - 0.3 * (e - 1.0) / 0.01;
    double prev_bias = 0.0;
    for (std::size_t steps : {100u, 200u, 400u}) {
        const auto g = make_uniform_grid(10.0, steps + 1);
        const auto r = simulate_fund(s.follower, s.market, constant_path(g, 0.0, 0.3), {50, steps, 1});
        CHECK(r.terminal_fund_var_mc < 1e-24);
        CHECK(r.analytic_var == 0.0);
        CHECK(r.mc_std_error < 1e-12);
        const double bias = r.terminal_fund_mean_mc - exact;
        if (prev_bias != 0.0) {
            CHECK(prev_bias / bias == doctest::Approx(2.0).epsilon(0.01));
        }
        prev_bias = bias;
    }
}

TEST_CASE("grid compatibility")
{
    const auto s = reference_scenario();
    const auto g = make_uniform_grid(10.0, 1025);
    const auto p = constant_path(g, 1.0, 0.0);
    CHECK_THROWS_WITH_AS(terminal_funds(s.follower, s.market, p, {10, 1000, 1}), doctest::Contains("not compatible"),
                         ValidationError);
    CHECK_NOTHROW(terminal_funds(s.follower, s.market, p, {10, 256, 1}));
    CHECK_THROWS_AS(terminal_funds(s.follower, s.market, p, {0, 256, 1}), ValidationError);
}

TEST_CASE("parallel and serial funds are bit-identical and seeded")
{
    const auto s = reference_scenario();
    const auto g = make_uniform_grid(10.0, 201);
    const auto p = constant_path(g, 2.0, 0.1);
    const auto a = terminal_funds(s.follower, s.market, p, {2000, 200, 11});
    const auto b = terminal_funds_serial(s.follower, s.market, p, {2000, 200, 11});
    CHECK(a == b);
    const auto c = terminal_funds(s.follower, s.market, p, {2000, 200, 12});
    CHECK(a != c);
    // Path i does not depend on how many paths are drawn.
    const auto d = terminal_funds(s.follower, s.market, p, {10, 200, 11});
    CHECK(std::equal(d.begin(), d.end(), a.begin()));
}

TEST_CASE("analytic utility matches the fund term of the objective")
{
    const auto s = reference_scenario();
    const auto grid = make_uniform_grid(s.market.horizon, 1001);
    const auto sol = solve_follower(s, grid);
    const auto leader = RationalDecision(s.leader, s.market).sample(grid);
    const auto mom = analytic_terminal_moments(s.follower, s.market, sol.paths);
    const auto r = summarise_terminal_funds(s.follower, std::vector<double>{0.0, 1.0}, mom);
    const auto j = evaluate_objective(s, sol.paths, leader);
    CHECK(r.analytic_utility == doctest::Approx(j.fund_utility_term).epsilon(1e-10));
}

TEST_CASE("Monte Carlo moments of the follower's fund")
{
    const auto s = reference_scenario();
    const auto grid = make_uniform_grid(s.market.horizon, 401);
    const auto sol = solve_follower(s, grid);
    const auto r = simulate_fund(s.follower, s.market, sol.paths, {20000, 400, 42});
    CHECK(std::abs(r.terminal_fund_mean_mc - r.analytic_mean) < 4.0 * r.terminal_fund_mean_se);
    CHECK(std::abs(r.terminal_fund_var_mc - r.analytic_var) < 4.0 * r.terminal_fund_var_se);
    CHECK(r.mc_std_error > 0.0);
}

TEST_CASE("path dump")
{
    const auto s = reference_scenario();
    const auto g = make_uniform_grid(10.0, 11);
    std::ostringstream os;
    write_path_dump(os, s.follower, s.market, constant_path(g, 1.0, 0.0), {5, 10, 3}, 2);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "path_id,t,X");
    int rows = 0;
    std::string last;
    while (std::getline(in, line)) {
        ++rows;
        last = line;
    }
    CHECK(rows == 22);
    CHECK(last.rfind("1,10,", 0) == 0);
    const auto funds = terminal_funds(s.follower, s.market, constant_path(g, 1.0, 0.0), {5, 10, 3});
    char expect[64];
    std::snprintf(expect, sizeof expect, "1,10,%.15g", funds[1]);
    CHECK(last == expect);
}
