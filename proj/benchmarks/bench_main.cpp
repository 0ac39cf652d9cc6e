#include <benchmark/benchmark.h>

#include <cmath>

#include "irislab/analysis.hpp"
#include "irislab/beamforming.hpp"
#include "irislab/montecarlo.hpp"
#include "irislab/specfun.hpp"

using namespace irislab;

namespace {

NetworkConfig at_snr(double snr_db, int N) {
    NetworkConfig c;
    c.N = N;
    c.p_b = c.sigma2 * std::pow(10.0, snr_db / 10);
    return c;
}

void BM_Hyp2F2Series(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(hyp2f2(4, 4.667, 5, 5.667, -30.0));
}
BENCHMARK(BM_Hyp2F2Series);

void BM_Hyp2F2HostIdentity(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(hyp2f2(4, 4.667, 5, 5.667, -5e3));
}
BENCHMARK(BM_Hyp2F2HostIdentity);

void BM_MeijerG(benchmark::State& state) {
    const auto path = static_cast<MeijerPath>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(meijer_g_3123(2.0 / 3, 0, 2.4 + 2.0 / 3, 2.0 / 3, 1, 0.3, path));
}
BENCHMARK(BM_MeijerG)
    ->Arg(static_cast<int>(MeijerPath::slater))
    ->Arg(static_cast<int>(MeijerPath::contour))
    ->Arg(static_cast<int>(MeijerPath::host_integral));

void BM_OutageClosedForm(benchmark::State& state) {
    const auto c = at_snr(100, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const auto ctx = make_closed_form_context(c);
        benchmark::DoNotOptimize(op_closed_form(ctx, c.R, c.r0, c.alpha));
    }
}
BENCHMARK(BM_OutageClosedForm)->Arg(1)->Arg(8)->Arg(32);

void BM_ErgodicRateMeijer(benchmark::State& state) {
    const auto c = at_snr(100, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ergodic_rate_meijer(gamma_approx(c), c));
}
BENCHMARK(BM_ErgodicRateMeijer)->Arg(4)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_Beamforming(benchmark::State& state) {
    NetworkConfig c;
    c.M = 2, c.K = 3, c.N = static_cast<int>(state.range(0));
    std::uint64_t t = 0;
    for (auto _ : state) {
        const auto real = draw_channel(TrialKey{1, t++, 0}, c);
        benchmark::DoNotOptimize(solve_beamforming(real));
    }
}
BENCHMARK(BM_Beamforming)->Arg(8)->Arg(64);

void BM_MonteCarloTrials(benchmark::State& state) {
    TrialPlan plan;
    plan.trials = 65536;
    plan.master_seed = 3;
    plan.fidelity = static_cast<Fidelity>(state.range(0));
    const auto c = at_snr(100, 4);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_op(plan, c));
    state.SetItemsProcessed(state.iterations() * plan.trials);
}
BENCHMARK(BM_MonteCarloTrials)
    ->Arg(static_cast<int>(Fidelity::link_level))
    ->Arg(static_cast<int>(Fidelity::model_level))
    ->Arg(static_cast<int>(Fidelity::gamma_model))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
