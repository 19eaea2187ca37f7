// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "herding/closed_form.hpp"
#include "herding/crowding.hpp"
#include "herding/econometrics.hpp"
#include "herding/follower.hpp"
#include "herding/functional.hpp"
#include "herding/rng.hpp"
#include "herding/simulate.hpp"

#include "oracle.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace herding;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && secs >= budget_s) {
        o.pass = false;
        o.detail += " [over time budget " + std::to_string(budget_s) + " s]";
    }
    std::printf("%s %2d %-34s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

std::string fmt(const char* spec, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

double rel(double a, double b)
{
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

HerdingScenario random_scenario(std::mt19937_64& gen)
{
    auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
    HerdingScenario s;
    s.market = {u(0.001, 0.05), u(0.02, 0.3), u(0.05, 0.4), u(1.0, 20.0), u(0.5, 1.5)};
    s.follower = {u(0.05, 1.0), u(0.05, 1.0), u(0.5, 2.0), u(0.0, 5.0)};
    s.leader = {u(0.05, 1.0), u(0.05, 1.0), u(0.5, 2.0), u(0.0, 5.0)};
    s.theta = u(0.0, 1.0);
    return s;
}

Outcome theta_zero_reduction()
{
    std::mt19937_64 gen(20240601);
    double worst_i = 0.0, worst_k = 0.0, worst_c = 0.0;
    for (int n = 0; n < 200; ++n) {
        auto s = random_scenario(gen);
        s.theta = 0.0;
        const auto grid = make_uniform_grid(s.market.horizon, 1025);
        const auto sol = solve_follower(s, grid);
        const RationalDecision own(s.follower, s.market);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double ibar = own.investment(grid[i]);
            worst_i = std::max(worst_i, std::abs(sol.paths.investment[i] - ibar) / std::abs(ibar));
        }
        worst_k = std::max(worst_k, std::abs(sol.k1_star - sol.k1_bar) / std::abs(sol.k1_bar));
        worst_c = std::max(worst_c, sol.crowding);
    }
    return {worst_i < 1e-9 && worst_k < 1e-9 && worst_c < 1e-12,
            "200 scenarios: max rel dI " + fmt("%.2g", worst_i) + ", max rel dk " + fmt("%.2g", worst_k)
                + ", max C " + fmt("%.2g", worst_c)};
}

Outcome equal_risk_aversion()
{
    std::mt19937_64 gen(77);
    double worst_i = 0.0, worst_c = 0.0;
    for (int n = 0; n < 20; ++n) {
        auto base = n == 0 ? reference_scenario() : random_scenario(gen);
        base.leader.alpha = base.follower.alpha;
        for (double theta : {0.01, 1.0, 100.0}) {
            auto s = base;
            s.theta = theta;
            const auto grid = make_uniform_grid(s.market.horizon, 1025);
            const auto sol = solve_follower(s, grid);
            const RationalDecision lead(s.leader, s.market);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                worst_i = std::max(worst_i, rel(sol.paths.investment[i], lead.investment(grid[i])));
            }
            worst_c = std::max(worst_c, sol.crowding);
        }
    }
    return {worst_c < 1e-12 && worst_i < 1e-10,
            "20 scenarios x 3 theta: max C " + fmt("%.2g", worst_c) + ", max rel |I1*-I2_bar| " + fmt("%.2g", worst_i)};
}

Outcome theta_limit()
{
    auto s = reference_scenario();
    const double limit = crowding_out_limit(s);
    const double direct = oracle::crowding_limit(s);
    const bool oracle_ok = rel(limit, direct) < 1e-12 && std::abs(limit - 0.5427) < 5e-5;
    s.theta = 1e6 * s.follower.alpha * s.market.sigma * s.market.sigma;
    const double c = crowding_out(s, solve_eta(s));
    const double r = std::abs(c - limit) / limit;
    return {oracle_ok && r < 1e-3, "limit " + fmt("%.9f", limit) + " (oracle " + fmt("%.9f", direct) + "), C "
                                       + fmt("%.9f", c) + ", rel gap " + fmt("%.2g", r)};
}

Outcome sweep_trends()
{
    struct Case {
        MarketParameter p;
        double lo, hi;
        int dir;
    };
    const Case cases[] = {{MarketParameter::r, 0.005, 0.025, -1},
                          {MarketParameter::v, 0.05, 0.25, +1},
                          {MarketParameter::sigma, 0.05, 0.25, -1}};
    int bad = 0, total = 0;
    std::string where;
    for (double T : {1.0, 5.0, 10.0}) {
        for (const auto& c : cases) {
            SweepSpec spec{c.p, c.lo, c.hi, 21, reference_scenario()};
            spec.base.market.horizon = T;
            const auto res = sweep(spec);
            bool ok = res.failures() == 0 && res.points.size() == 21;
            for (std::size_t i = 1; ok && i < res.points.size(); ++i) {
                const double d = res.points[i].crowding - res.points[i - 1].crowding;
                ok = c.dir < 0 ? d < 0.0 : d > 0.0;
            }
            ++total;
            if (!ok) {
                ++bad;
                where += std::string(" ") + to_string(c.p) + "@T=" + fmt("%g", T);
            }
        }
    }
    return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " sweeps strictly monotone" + where};
}

Outcome sensitivity_signs()
{
    const auto s = reference_scenario();
    const double dr = sensitivity(s, MarketParameter::r, true);
    const double dv = sensitivity(s, MarketParameter::v, true);
    const double ds = sensitivity(s, MarketParameter::sigma, true);
    const double analytic = -2.0 * crowding_out_limit(s) / s.market.sigma;
    const double r = rel(ds, analytic);
    return {dr < 0 && dv > 0 && ds < 0 && r < 1e-6, "dC/dr " + fmt("%.5g", dr) + ", dC/dv " + fmt("%.5g", dv)
                                                        + ", dC/dsigma " + fmt("%.8g", ds) + " vs "
                                                        + fmt("%.8g", analytic) + " (rel " + fmt("%.2g", r) + ")"};
}

Outcome variational()
{
    const auto s = reference_scenario();
    const auto grid = make_uniform_grid(s.market.horizon, 1025);
    const auto sol = solve_follower(s, grid);
    const auto lead = RationalDecision(s.leader, s.market).sample(grid);
    const auto b = variational_batch(s, sol.paths, lead, 100, {1e-1, 1e-2, 1e-3}, 42);
    return {b.min_gap >= -1e-12 && b.min_slope >= 1.9 && b.max_slope <= 2.1,
            "100 directions: min gap " + fmt("%.3g", b.min_gap) + ", slopes [" + fmt("%.4f", b.min_slope) + ", "
                + fmt("%.4f", b.max_slope) + "]"};
}

Outcome eta_consistency()
{
    const auto s = reference_scenario();
    const auto grid = make_uniform_grid(s.market.horizon, 1025);
    const auto sol = solve_follower(s, grid);
    const double dual = rel(sol.k1_star, sol.k1_star_from_eta);
    const double eta_formula =
        s.follower.gamma * std::exp(-s.market.r * s.market.horizon - s.follower.beta * sol.k1_star);
    const double de = rel(sol.eta, eta_formula);
    const double refined = solve_eta(s, {}, QuadratureRule{}.refined());
    const double dq = rel(sol.eta, refined);
    return {dual < 1e-8 && de < 1e-9 && dq < 1e-8, "dual k1* rel " + fmt("%.2g", dual) + ", eta formula rel "
                                                       + fmt("%.2g", de) + ", doubled panels rel " + fmt("%.2g", dq)};
}

Outcome simulation()
{
    const auto s = reference_scenario();
    const SimConfig cfg{100'000, 1'000, 42};
    const auto grid = make_uniform_grid(s.market.horizon, cfg.n_steps + 1);
    const auto sol = solve_follower(s, grid);
    const auto lead = RationalDecision(s.leader, s.market).sample(grid);
    const auto r = simulate_fund(s.follower, s.market, sol.paths, cfg);
    const double fund_term = evaluate_objective(s, sol.paths, lead).fund_utility_term;
    const double zm = (r.terminal_fund_mean_mc - r.analytic_mean) / r.terminal_fund_mean_se;
    const double zv = (r.terminal_fund_var_mc - r.analytic_var) / r.terminal_fund_var_se;
    const double zu = (r.mc_mean_utility - r.analytic_utility) / r.mc_std_error;
    const double du = rel(r.analytic_utility, fund_term);
    return {std::abs(zm) < 4 && std::abs(zv) < 4 && std::abs(zu) < 3 && du < 1e-10,
            "z(mean) " + fmt("%.2f", zm) + ", z(var) " + fmt("%.2f", zv) + ", z(utility) " + fmt("%.2f", zu)
                + ", analytic vs objective rel " + fmt("%.2g", du)};
}

std::vector<std::string> tokens(const std::string& line)
{
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

Outcome ols_oracle()
{
    const std::size_t n = 40;
    const std::vector<std::string> names{"TRS", "r", "v", "sigma", "CSSD"};
    const std::vector<double> truth{-0.35, 1.25, -0.12, 0.09, -0.12, 0.25};
    NormalStream z(2026, 0);
    std::vector<std::vector<double>> xs(names.size(), std::vector<double>(n));
    for (auto& col : xs)
        for (auto& v : col) v = z.next();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = truth[0];
        for (std::size_t j = 0; j < names.size(); ++j) y[i] += truth[j + 1] * xs[j][i];
        y[i] += 0.1 * z.next();
    }
    std::vector<std::string> all{"CE"};
    all.insert(all.end(), names.begin(), names.end());
    std::vector<std::vector<double>> cols{y};
    cols.insert(cols.end(), xs.begin(), xs.end());
    const auto rep = ols_fit(DataTable(all, cols), "CE", names);
    const auto o = oracle::ols(y, xs);

    double worst = 0.0;
    for (std::size_t j = 0; j < 6; ++j) {
        worst = std::max({worst, rel(rep.rows[j].coefficient, o.coef[j]), rel(rep.rows[j].standard_error, o.se[j]),
                          rel(rep.rows[j].t_statistic, o.t[j])});
    }
    worst = std::max({worst, rel(rep.r_squared, o.r2), rel(rep.adjusted_r_squared, o.adj_r2), rel(rep.f_statistic, o.f)});

    RegressionReport published;
    published.rows = {{"Intercept", -0.348, 0.210, -1.661}, {"TRS", 1.248, 0.210, 5.941},
                      {"r", -0.125, 0.268, -0.467},         {"v", 0.091, 0.270, 0.336},
                      {"sigma", -0.121, 0.271, -0.446},     {"CSSD", 0.253, 0.180, 1.403}};
    published.r_squared = 0.522;
    published.f_statistic = 7.417;
    published.adjusted_r_squared = 0.451;
    published.n_observations = 40;
    std::istringstream text(render_report(published));
    std::vector<std::string> lines;
    for (std::string l; std::getline(text, l);) lines.push_back(l);
    using V = std::vector<std::string>;
    const std::vector<V> expect{{"Intercept", "-0.348", "0.210", "-1.661"}, {"TRS", "1.248", "0.210", "5.941"},
                                {"r", "-0.125", "0.268", "-0.467"},         {"v", "0.091", "0.270", "0.336"},
                                {"sigma", "-0.121", "0.271", "-0.446"},     {"CSSD", "0.253", "0.180", "1.403"}};
    bool rows_ok = lines.size() == 12;
    for (std::size_t i = 0; rows_ok && i < expect.size(); ++i) rows_ok = tokens(lines[i + 2]) == expect[i];
    rows_ok = rows_ok && tokens(lines[10]) == V{"R-squared", "0.522", "F-Statistic", "7.417"}
              && tokens(lines[11]) == V{"Adjusted", "R-squared", "0.451", "Observations", "40"};

    return {worst < 1e-8 && rows_ok,
            "max rel diff vs normal equations " + fmt("%.2g", worst) + ", published rows " + (rows_ok ? "match" : "differ")};
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(HERDING_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism()
{
    const auto root = fs::temp_directory_path() / ("herding_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    const std::vector<std::string> runs{"solve", "sweep --param v --lo 0.05 --hi 0.25 --n 21",
                                        "simulate --paths 2000 --steps 200 --dump-paths 5"};
    for (const char* rep : {"a", "b"}) {
        for (const auto& args : runs) {
            if (run_cli("--out-dir " + (root / rep).string() + " " + args) != 0) {
                fs::remove_all(root);
                return {false, "cli run failed: " + args};
            }
        }
    }
    int same = 0, total = 0;
    for (const char* f : {"paths.csv", "sweep.csv", "paths_dump.csv"}) {
        ++total;
        const auto a = slurp(root / "a" / f);
        if (!a.empty() && a == slurp(root / "b" / f)) ++same;
    }
    fs::remove_all(root);
    return {same == total, std::to_string(same) + "/" + std::to_string(total) + " CSV files byte-identical"};
}

} // namespace

int main()
{
    criterion(1, "theta=0 reduction", 10, theta_zero_reduction);
    criterion(2, "equal risk aversion null", 0, equal_risk_aversion);
    criterion(3, "theta -> infinity limit", 0, theta_limit);
    criterion(4, "crowding trends in r, v, sigma", 60, sweep_trends);
    criterion(5, "sensitivity signs", 0, sensitivity_signs);
    criterion(6, "variational optimality", 0, variational);
    criterion(7, "eta self-consistency", 0, eta_consistency);
    criterion(8, "simulation consistency", 120, simulation);
    criterion(9, "OLS oracle and report layout", 0, ols_oracle);
    criterion(10, "determinism", 0, determinism);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
