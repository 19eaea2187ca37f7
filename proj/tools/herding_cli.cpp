// herding: solve, sweep, simulate, self-check and regress from the command line.

#include "herding/closed_form.hpp"
#include "herding/crowding.hpp"
#include "herding/econometrics.hpp"
#include "herding/errors.hpp"
#include "herding/follower.hpp"
#include "herding/functional.hpp"
#include "herding/scenario_io.hpp"
#include "herding/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace herding;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit : int { ok = 0, usage = 2, validation = 3, solver = 4, io = 5 };

struct Globals {
    std::string out_dir = ".";
    std::uint64_t seed = 42;
    std::size_t grid = 1025;
    int panels = 256;
    double tol = 1e-12;

    QuadratureRule rule() const { return {QuadratureKind::gauss_legendre, static_cast<std::size_t>(panels)}; }
    RootConfig root() const { return {tol, tol, 200}; }
};

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

fs::path prepare_out_dir(const Globals& g)
{
    fs::path dir(g.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory '" + g.out_dir + "'");
    }
    return dir;
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    out << text;
    if (!out.flush()) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

class Manifest {
public:
    Manifest(std::string subcommand, const Globals& g) : doc_{{"subcommand", std::move(subcommand)}}
    {
        doc_["version"] = kVersion;
        doc_["timestamp"] = utc_timestamp();
        doc_["parameters"] = {{"seed", g.seed}, {"grid", g.grid}, {"panels", g.panels}, {"tol", g.tol}};
        doc_["inputs"] = json::object();
        doc_["outputs"] = json::array();
    }

    json& parameters() { return doc_["parameters"]; }
    void input(const std::string& key, const std::string& path) { doc_["inputs"][key] = path; }
    void output(const fs::path& path) { doc_["outputs"].push_back(path.string()); }

    void write(const fs::path& dir)
    {
        const auto path = dir / "manifest.json";
        doc_["outputs"].push_back(path.string());
        write_text(path, doc_.dump(2) + "\n");
    }

private:
    json doc_;
};

HerdingScenario resolve_scenario(const std::string& file, Manifest& manifest)
{
    HerdingScenario s = reference_scenario();
    if (!file.empty()) {
        s = load_scenario(file);
        manifest.input("scenario", file);
    }
    validate_scenario(s);
    manifest.parameters()["scenario"] = json::parse(scenario_to_json(s));
    return s;
}

std::string fmt(const char* spec, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
    std::string scenario;
};

int run_solve(const Globals& g, const SolveArgs& a)
{
    Manifest manifest("solve", g);
    const auto s = resolve_scenario(a.scenario, manifest);
    const auto dir = prepare_out_dir(g);

    const auto grid = make_uniform_grid(s.market.horizon, g.grid);
    const auto sol = solve_follower(s, grid, g.root(), g.rule());
    const auto own = RationalDecision(s.follower, s.market).sample(grid);
    const auto lead = RationalDecision(s.leader, s.market).sample(grid);

    std::ostringstream csv;
    csv << "t,I1_star,C1_star,I1_bar,C1_bar,I2_bar,C2_bar\n";
    char line[512];
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::snprintf(line, sizeof line, "%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g\n", grid[i],
                      sol.paths.investment[i], sol.paths.consumption[i], own.investment[i], own.consumption[i],
                      lead.investment[i], lead.consumption[i]);
        csv << line;
    }
    const auto paths_csv = dir / "paths.csv";
    write_text(paths_csv, csv.str());
    manifest.output(paths_csv);

    json scalars;
    scalars["eta"] = sol.eta;
    scalars["log_eta"] = sol.log_eta;
    scalars["k1_star"] = sol.k1_star;
    scalars["k1_star_from_eta"] = sol.k1_star_from_eta;
    scalars["k1_bar"] = sol.k1_bar;
    scalars["k2_bar"] = sol.k2_bar;
    scalars["crowding"] = sol.crowding;
    scalars["crowding_limit"] = crowding_out_limit(s);
    scalars["iterations"] = sol.diagnostics.iterations;
    scalars["final_residual"] = sol.diagnostics.final_residual;
    scalars["quadrature_est_error"] = sol.diagnostics.quadrature_est_error;
    scalars["warnings"] = sol.diagnostics.warnings;
    const auto scalars_json = dir / "scalars.json";
    write_text(scalars_json, scalars.dump(2) + "\n");
    manifest.output(scalars_json);
    manifest.write(dir);

    for (const auto& w : sol.diagnostics.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    std::printf("eta       %.12g\nk1_star   %.12g\nk1_bar    %.12g\nk2_bar    %.12g\ncrowding  %.12g\n", sol.eta,
                sol.k1_star, sol.k1_bar, sol.k2_bar, sol.crowding);
    return ok;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
    std::string scenario;
    std::string param = "r";
    double lo = 0.005;
    double hi = 0.025;
    std::size_t n = 21;
    bool svg = false;
};

std::string sweep_svg(const SweepResult& res)
{
    const double w = 640, h = 400, pad = 50;
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const auto& p : res.points) {
        if (!p.error) {
            ymin = std::min(ymin, p.crowding);
            ymax = std::max(ymax, p.crowding);
        }
    }
    if (!(ymax > ymin)) {
        ymax = ymin + 1.0;
    }
    const double xlo = res.points.front().value, xhi = res.points.back().value;
    auto px = [&](double x) { return pad + (x - xlo) / (xhi - xlo) * (w - 2 * pad); };
    auto py = [&](double y) { return h - pad - (y - ymin) / (ymax - ymin) * (h - 2 * pad); };

    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n", w,
                  h, w, h);
    out << buf;
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<path d=\"M%g %g L%g %g L%g %g\" fill=\"none\" stroke=\"black\"/>\n", pad, pad, pad, h - pad,
                  w - pad, h - pad);
    out << buf;
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (const auto& p : res.points) {
        if (p.error) continue;
        std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", first ? "" : " ", px(p.value), py(p.crowding));
        out << buf;
        first = false;
    }
    out << "\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%s</text>\n", w / 2, h - 12,
                  to_string(res.parameter));
    out << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"11\">%.6g</text>\n", 4.0, pad, ymax);
    out << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"11\">%.6g</text>\n", 4.0, h - pad, ymin);
    out << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"11\">%.6g</text>\n", pad, h - pad + 16,
                  xlo);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" font-size=\"11\" text-anchor=\"end\">%.6g</text>\n", w - pad,
                  h - pad + 16, xhi);
    out << buf;
    out << "</svg>\n";
    return out.str();
}

int run_sweep(const Globals& g, const SweepArgs& a)
{
    Manifest manifest("sweep", g);
    SweepSpec spec;
    spec.base = resolve_scenario(a.scenario, manifest);
    spec.parameter = parse_market_parameter(a.param);
    spec.lo = a.lo;
    spec.hi = a.hi;
    spec.n_points = a.n;
    spec.validate();
    manifest.parameters()["sweep"] = {{"param", a.param}, {"lo", a.lo}, {"hi", a.hi}, {"n", a.n}};
    const auto dir = prepare_out_dir(g);

    const auto res = sweep(spec, g.root(), g.rule());
    std::ostringstream csv;
    write_sweep_csv(csv, res);
    const auto csv_path = dir / "sweep.csv";
    write_text(csv_path, csv.str());
    manifest.output(csv_path);
    if (a.svg) {
        const auto svg_path = dir / "sweep.svg";
        write_text(svg_path, sweep_svg(res));
        manifest.output(svg_path);
    }
    manifest.write(dir);

    for (const auto& p : res.points) {
        if (p.error) {
            std::cerr << "point " << a.param << " = " << p.value << " failed: " << *p.error << '\n';
        }
    }
    std::printf("%zu points, %zu failed, written to %s\n", res.points.size(), res.failures(), csv_path.c_str());
    return res.failures() == 0 ? ok : solver;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string scenario;
    std::size_t paths = 100'000;
    std::size_t steps = 1'000;
    std::size_t dump = 0;
};

// The control grid must carry a whole number of samples per Euler step.
TimeGrid simulation_grid(const MarketParams& m, std::size_t grid_points, std::size_t steps)
{
    const std::size_t per_step = std::max<std::size_t>(1, (grid_points - 1) / steps);
    return make_uniform_grid(m.horizon, steps * per_step + 1);
}

int run_simulate(const Globals& g, const SimulateArgs& a)
{
    Manifest manifest("simulate", g);
    const auto s = resolve_scenario(a.scenario, manifest);
    const auto dir = prepare_out_dir(g);

    const auto grid = simulation_grid(s.market, g.grid, a.steps);
    manifest.parameters()["simulate"] = {
        {"paths", a.paths}, {"steps", a.steps}, {"control_grid_points", grid.size()}, {"dump_paths", a.dump}};
    const auto sol = solve_follower(s, grid, g.root(), g.rule());
    const SimConfig cfg{a.paths, a.steps, g.seed};
    const auto r = simulate_fund(s.follower, s.market, sol.paths, cfg, g.rule());

    json out;
    out["terminal_fund_mean_mc"] = r.terminal_fund_mean_mc;
    out["terminal_fund_mean_se"] = r.terminal_fund_mean_se;
    out["analytic_mean"] = r.analytic_mean;
    out["terminal_fund_var_mc"] = r.terminal_fund_var_mc;
    out["terminal_fund_var_se"] = r.terminal_fund_var_se;
    out["analytic_var"] = r.analytic_var;
    out["mc_mean_utility"] = r.mc_mean_utility;
    out["mc_std_error"] = r.mc_std_error;
    out["analytic_utility"] = r.analytic_utility;
    const auto json_path = dir / "simulate.json";
    write_text(json_path, out.dump(2) + "\n");
    manifest.output(json_path);

    if (a.dump > 0) {
        std::ostringstream csv;
        write_path_dump(csv, s.follower, s.market, sol.paths, cfg, a.dump);
        const auto dump_path = dir / "paths_dump.csv";
        write_text(dump_path, csv.str());
        manifest.output(dump_path);
    }
    manifest.write(dir);

    std::printf("terminal mean  %.8g (MC %.8g +- %.3g)\n", r.analytic_mean, r.terminal_fund_mean_mc,
                r.terminal_fund_mean_se);
    std::printf("terminal var   %.8g (MC %.8g +- %.3g)\n", r.analytic_var, r.terminal_fund_var_mc,
                r.terminal_fund_var_se);
    std::printf("utility        %.8g (MC %.8g +- %.3g)\n", r.analytic_utility, r.mc_mean_utility, r.mc_std_error);
    return ok;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
    std::string scenario;
    std::size_t paths = 20'000;
    std::size_t steps = 500;
    int directions = 20;
    double corrupt_eta = 0.0;
};

struct CheckLine {
    std::string name;
    bool pass;
    std::string detail;
};

double rel_diff(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::vector<CheckLine> run_battery(const Globals& g, const HerdingScenario& s, const CheckArgs& a)
{
    std::vector<CheckLine> out;
    const auto grid = make_uniform_grid(s.market.horizon, g.grid);
    const auto rule = g.rule();

    {
        auto s0 = s;
        s0.theta = 0.0;
        const auto sol = solve_follower(s0, grid, g.root(), rule);
        const RationalDecision own(s0.follower, s0.market);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst, rel_diff(sol.paths.investment[i], own.investment(grid[i])));
        }
        const double dk = rel_diff(sol.k1_star, sol.k1_bar);
        out.push_back({"theta=0 reduction", worst < 1e-9 && dk < 1e-9 && sol.crowding < 1e-12,
                       "max rel |I1*-I1_bar| " + fmt("%.3g", worst) + ", rel |k1*-k1_bar| " + fmt("%.3g", dk)
                           + ", crowding " + fmt("%.3g", sol.crowding)});
    }
    {
        auto se = s;
        se.leader.alpha = se.follower.alpha;
        const auto sol = solve_follower(se, grid, g.root(), rule);
        const RationalDecision lead(se.leader, se.market);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst, rel_diff(sol.paths.investment[i], lead.investment(grid[i])));
        }
        out.push_back({"equal risk aversion null", sol.crowding < 1e-12 && worst < 1e-10,
                       "crowding " + fmt("%.3g", sol.crowding) + ", max rel |I1*-I2_bar| " + fmt("%.3g", worst)});
    }

    auto sol = solve_follower(s, grid, g.root(), rule);
    if (a.corrupt_eta != 0.0) {
        sol.log_eta += a.corrupt_eta;
        sol.eta = std::exp(sol.log_eta);
        sol.crowding = crowding_out_log(s, sol.log_eta, rule);
        sol.k1_star = sol.k1_bar - sol.crowding;
        sol.k1_star_from_eta =
            (std::log(s.follower.gamma) - sol.log_eta - s.market.r * s.market.horizon) / s.follower.beta;
        sol.paths = sample_follower(s, sol.log_eta, sol.k1_star, grid);
    }
    {
        const double d = rel_diff(sol.k1_star, sol.k1_star_from_eta);
        out.push_back({"dual k1* formulas", d < 1e-8, "rel diff " + fmt("%.3g", d)});
        const double res = std::abs(eta_residual(s, sol.log_eta, rule));
        out.push_back({"eta self-consistency", res < 1e-9 * std::max(1.0, std::abs(sol.log_eta)),
                       "|residual| " + fmt("%.3g", res)});
        const double refined = solve_log_eta(s, g.root(), rule.refined()).log_eta;
        const double de = std::abs(std::expm1(refined - sol.log_eta));
        out.push_back({"quadrature refinement", de < 1e-8, "rel eta change " + fmt("%.3g", de)});
    }
    {
        const auto lead = RationalDecision(s.leader, s.market).sample(grid);
        const auto batch =
            variational_batch(s, sol.paths, lead, a.directions, {1e-1, 1e-2, 1e-3}, g.seed, 4, rule);
        const bool pass = batch.min_gap >= -1e-12 && batch.min_slope >= 1.9 && batch.max_slope <= 2.1;
        out.push_back({"variational optimality", pass,
                       "min gap " + fmt("%.3g", batch.min_gap) + ", slopes [" + fmt("%.4f", batch.min_slope) + ", "
                           + fmt("%.4f", batch.max_slope) + "]"});
    }
    {
        const auto sim_grid = simulation_grid(s.market, g.grid, a.steps);
        const auto path = sample_follower(s, sol.log_eta, sol.k1_star, sim_grid);
        const auto r = simulate_fund(s.follower, s.market, path, {a.paths, a.steps, g.seed}, rule);
        const double zm = (r.terminal_fund_mean_mc - r.analytic_mean) / r.terminal_fund_mean_se;
        const double zv = (r.terminal_fund_var_mc - r.analytic_var) / r.terminal_fund_var_se;
        const double zu = (r.mc_mean_utility - r.analytic_utility) / r.mc_std_error;
        out.push_back({"monte carlo vs analytic", std::abs(zm) < 4 && std::abs(zv) < 4 && std::abs(zu) < 3,
                       "z(mean) " + fmt("%.2f", zm) + ", z(var) " + fmt("%.2f", zv) + ", z(utility) "
                           + fmt("%.2f", zu)});
    }
    return out;
}

int run_check(const Globals& g, const CheckArgs& a)
{
    Manifest manifest("check", g);
    const auto s = resolve_scenario(a.scenario, manifest);
    manifest.parameters()["check"] = {{"paths", a.paths},
                                      {"steps", a.steps},
                                      {"directions", a.directions},
                                      {"corrupt_eta", a.corrupt_eta}};
    const auto dir = prepare_out_dir(g);

    const auto lines = run_battery(g, s, a);
    std::ostringstream report;
    bool all = true;
    for (const auto& l : lines) {
        report << (l.pass ? "PASS " : "FAIL ") << l.name << ": " << l.detail << '\n';
        all = all && l.pass;
    }
    const auto path = dir / "check.txt";
    write_text(path, report.str());
    manifest.output(path);
    manifest.write(dir);
    std::cout << report.str();
    return all ? ok : solver;
}

// ---------------------------------------------------------------- regress

struct RegressArgs {
    std::string data;
    std::string response;
    std::vector<std::string> regressors;
    std::vector<std::string> growth;
    std::vector<std::string> normalize;
    bool no_intercept = false;
};

int run_regress(const Globals& g, const RegressArgs& a)
{
    Manifest manifest("regress", g);
    manifest.input("data", a.data);
    manifest.parameters()["regress"] = {{"response", a.response},
                                        {"regressors", a.regressors},
                                        {"growth", a.growth},
                                        {"normalize", a.normalize},
                                        {"intercept", !a.no_intercept}};
    auto table = DataTable::read_csv(fs::path(a.data));
    if (table.dropped_rows() > 0) {
        std::cerr << "dropped " << table.dropped_rows() << " rows with missing values\n";
    }
    const auto dir = prepare_out_dir(g);

    for (const auto& name : a.growth) {
        table.replace(name, growth_rate(table.column(name)));
    }
    for (const auto& name : a.normalize) {
        table.replace(name, minmax_normalize(table.column(name), name));
    }
    const auto rep = ols_fit(table, a.response, a.regressors, !a.no_intercept);
    const auto text = render_report(rep);

    const auto txt = dir / "report.txt";
    write_text(txt, text);
    manifest.output(txt);
    const auto js = dir / "report.json";
    write_text(js, report_to_json(rep));
    manifest.output(js);
    manifest.write(dir);
    std::cout << text;
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Leader-follower investment and consumption under herding"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    Globals g;
    app.add_option("--out-dir", g.out_dir, "Directory for output files")->capture_default_str();
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--grid", g.grid, "Time grid points")->capture_default_str()->check(CLI::Range(2, 1 << 24));
    app.add_option("--panels", g.panels, "Quadrature panels")->capture_default_str()->check(CLI::Range(1, 1 << 20));
    app.add_option("--tol", g.tol, "Root tolerance")->capture_default_str()->check(CLI::PositiveNumber);

    std::function<int()> action;

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Rational and herding-distorted optimal decisions");
    solve->add_option("--scenario", solve_args.scenario, "Scenario JSON (default: reference parameters)");
    solve->callback([&] { action = [&] { return run_solve(g, solve_args); }; });

    SweepArgs sweep_args;
    auto* sw = app.add_subcommand("sweep", "Crowding-out consumption over one market parameter");
    sw->add_option("--scenario", sweep_args.scenario, "Scenario JSON (default: reference parameters)");
    sw->add_option("--param", sweep_args.param, "Swept parameter")
        ->capture_default_str()
        ->check(CLI::IsMember({"r", "v", "sigma"}));
    sw->add_option("--lo", sweep_args.lo, "Lower end")->capture_default_str();
    sw->add_option("--hi", sweep_args.hi, "Upper end")->capture_default_str();
    sw->add_option("--n", sweep_args.n, "Number of points")->capture_default_str()->check(CLI::Range(2, 1 << 20));
    sw->add_flag("--svg", sweep_args.svg, "Also write sweep.svg");
    sw->callback([&] { action = [&] { return run_sweep(g, sweep_args); }; });

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo of the follower's fund under its optimal controls");
    sim->add_option("--scenario", sim_args.scenario, "Scenario JSON (default: reference parameters)");
    sim->add_option("--paths", sim_args.paths, "Number of paths")->capture_default_str()->check(CLI::Range(2, 1 << 30));
    sim->add_option("--steps", sim_args.steps, "Euler steps")->capture_default_str()->check(CLI::Range(1, 1 << 24));
    sim->add_option("--dump-paths", sim_args.dump, "Write the first N trajectories")->capture_default_str();
    sim->callback([&] { action = [&] { return run_simulate(g, sim_args); }; });

    CheckArgs check_args;
    auto* chk = app.add_subcommand("check", "Invariant battery with one PASS/FAIL line per check");
    chk->add_option("--scenario", check_args.scenario, "Scenario JSON (default: reference parameters)");
    chk->add_option("--paths", check_args.paths, "Monte Carlo paths")->capture_default_str()->check(CLI::Range(2, 1 << 30));
    chk->add_option("--steps", check_args.steps, "Euler steps")->capture_default_str()->check(CLI::Range(1, 1 << 24));
    chk->add_option("--directions", check_args.directions, "Perturbation directions")
        ->capture_default_str()
        ->check(CLI::Range(1, 100000));
    chk->add_option("--corrupt-eta", check_args.corrupt_eta, "Debug: shift ln(eta) by this amount");
    chk->callback([&] { action = [&] { return run_check(g, check_args); }; });

    RegressArgs reg_args;
    auto* reg = app.add_subcommand("regress", "OLS with a fixed-width coefficient report");
    reg->add_option("--data", reg_args.data, "CSV with a header row")->required();
    reg->add_option("--response", reg_args.response, "Response column")->required();
    reg->add_option("--regressors", reg_args.regressors, "Regressor columns")->required()->delimiter(',');
    reg->add_option("--growth", reg_args.growth, "Columns replaced by their growth rate")->delimiter(',');
    reg->add_option("--normalize", reg_args.normalize, "Columns min-max scaled to [0, 1]")->delimiter(',');
    reg->add_flag("--no-intercept", reg_args.no_intercept, "Fit without an intercept");
    reg->callback([&] { action = [&] { return run_regress(g, reg_args); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        return action();
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return validation;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return solver;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
