#include <benchmark/benchmark.h>

#include "cstm/cea.hpp"
#include "cstm/psa.hpp"
#include "cstm/transition_builder.hpp"

using namespace cstm;

namespace {

const ModelSpec &model() {
    static const ModelSpec s = builtin_sick_sicker();
    return s;
}

void BM_SimtimeArray(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_simtime_array(model(), model().strategy("B")));
    }
}
BENCHMARK(BM_SimtimeArray);

void BM_TunnelArray(benchmark::State &state) {
    const auto plan = TunnelPlan::make(model().states.names(), "S1", model().grid.n_cycles);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_tunnel_array(model(), model().strategy("B"), plan));
    }
}
BENCHMARK(BM_TunnelArray)->Unit(benchmark::kMillisecond);

void BM_Cohort(benchmark::State &state) {
    const auto arr = build_simtime_array(model(), model().strategy("SoC"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_cohort(model().initial, arr));
    }
}
BENCHMARK(BM_Cohort);

void BM_EvaluateAll(benchmark::State &state) {
    const auto variant = state.range(0) == 0 ? ModelVariant::simtime : ModelVariant::tunnels;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_all(model(), variant));
    }
}
BENCHMARK(BM_EvaluateAll)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Icers(benchmark::State &state) {
    const std::vector<double> c{114472, 211749, 194332, 282155};
    const std::vector<double> e{19.134, 19.832, 20.470, 21.291};
    const std::vector<std::string> n{"SoC", "A", "B", "AB"};
    for (auto _ : state) {
        benchmark::DoNotOptimize(calculate_icers(c, e, n));
    }
}
BENCHMARK(BM_Icers);

void BM_Psa(benchmark::State &state) {
    const auto dists = default_sick_sicker_distributions();
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_psa(model(), dists, 200, 1, ModelVariant::simtime, threads));
    }
}
BENCHMARK(BM_Psa)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_DecisionCurves(benchmark::State &state) {
    const auto res = run_psa(model(), default_sick_sicker_distributions(), 1000, 1);
    const auto wtp = wtp_grid(0, 200000, 5000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(decision_curves(res, wtp));
    }
}
BENCHMARK(BM_DecisionCurves)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
