// Serial reference kernels against their OpenMP counterparts.

#include "herding/closed_form.hpp"
#include "herding/crowding.hpp"
#include "herding/follower.hpp"
#include "herding/functional.hpp"
#include "herding/simulate.hpp"

#include <benchmark/benchmark.h>

using namespace herding;

namespace {

struct Fixture {
    HerdingScenario s = reference_scenario();
    TimeGrid grid = make_uniform_grid(10.0, 1001);
    FollowerSolution sol = solve_follower(s, grid);
    ControlPath leader = RationalDecision(s.leader, s.market).sample(grid);
};

const Fixture& fixture()
{
    static const Fixture f;
    return f;
}

template <bool Parallel>
void BM_TerminalFunds(benchmark::State& state)
{
    const auto& f = fixture();
    const SimConfig cfg{static_cast<std::size_t>(state.range(0)), 1000, 42};
    for (auto _ : state) {
        auto funds = Parallel ? terminal_funds(f.s.follower, f.s.market, f.sol.paths, cfg)
                              : terminal_funds_serial(f.s.follower, f.s.market, f.sol.paths, cfg);
        benchmark::DoNotOptimize(funds.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Sweep(benchmark::State& state)
{
    const SweepSpec spec{MarketParameter::v, 0.05, 0.25, static_cast<std::size_t>(state.range(0)),
                         reference_scenario()};
    for (auto _ : state) {
        auto res = Parallel ? sweep(spec) : sweep_serial(spec);
        benchmark::DoNotOptimize(res.points.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Variational(benchmark::State& state)
{
    const auto& f = fixture();
    const std::vector<double> eps{1e-1, 1e-2, 1e-3};
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto b = Parallel ? variational_batch(f.s, f.sol.paths, f.leader, n, eps, 42)
                          : variational_batch_serial(f.s, f.sol.paths, f.leader, n, eps, 42);
        benchmark::DoNotOptimize(b.min_gap);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_TerminalFunds<false>)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TerminalFunds<true>)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep<false>)->Arg(21)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep<true>)->Arg(21)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Variational<false>)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Variational<true>)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
