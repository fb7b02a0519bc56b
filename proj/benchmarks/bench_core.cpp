#include <benchmark/benchmark.h>

#include "isac/detector_cp.h"
#include "isac/detector_zp.h"
#include "isac/mc_sim.h"
#include "isac/stats.h"
#include "isac/stream_counts.h"
#include "isac/tradeoff.h"

using namespace isac;

namespace {

ChannelScene unit_scene(int delay, double gain, double rsi) {
    ChannelScene s;
    s.noise_power = 1.0;
    s.target_delay = delay;
    s.target_gain_sq = gain;
    s.rsi_ratio = rsi;
    return s;
}

void BM_GammaQuantile(benchmark::State& state) {
    const GammaParams g(static_cast<double>(state.range(0)), 1.0);
    double p = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamma_inv_sf(p, g));
        p = p < 0.5 ? p * 1.01 : 1e-3;
    }
}
BENCHMARK(BM_GammaQuantile)->Arg(16)->Arg(128)->Arg(1152);

void BM_SumGammaCdf(benchmark::State& state) {
    const double kt = static_cast<double>(state.range(0));
    const SumGammaParams p{{kt, 1.2 / 128.0}, {128.0 - kt, 1.0 / 128.0}};
    for (auto _ : state) benchmark::DoNotOptimize(sum_gamma_cdf(1.1, p));
}
BENCHMARK(BM_SumGammaCdf)->Arg(8)->Arg(32)->Arg(96);

void BM_PdExact(benchmark::State& state) {
    const WaveformConfig wf{WaveformKind::zp, 512, 128, 0};
    const ChannelScene s = unit_scene(32, 0.8, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(pd_exact(1.2, s, wf));
}
BENCHMARK(BM_PdExact);

void BM_CountStream(benchmark::State& state) {
    const int nf = static_cast<int>(state.range(0));
    const WaveformConfig wf{WaveformKind::cp, nf, nf / 4, 0};
    const std::vector<int> delays{0, nf / 16, nf / 8, nf / 2};
    for (auto _ : state) benchmark::DoNotOptimize(count_stream(delays, wf));
}
BENCHMARK(BM_CountStream)->Arg(256)->Arg(1024);

void BM_GaussianMomentsCp(benchmark::State& state) {
    const WaveformConfig wf{WaveformKind::cp, 1024, 256, 0};
    ChannelScene s = unit_scene(256, 0.1, 1.0);
    s.clutter_ratio = 10.0;
    s.clutter_delays = {64};
    for (auto _ : state) benchmark::DoNotOptimize(gaussian_moments_cp(s, wf));
}
BENCHMARK(BM_GaussianMomentsCp);

void BM_DeltaRatio(benchmark::State& state) {
    RangeQuery rq;
    rq.cfar = Model::gaussian;
    rq.rsi_ratio = 2.0;
    for (auto _ : state) benchmark::DoNotOptimize(delta_ratio(rq));
}
BENCHMARK(BM_DeltaRatio);

void BM_MonteCarloTrials(benchmark::State& state) {
    const bool zp = state.range(0) == 0;
    const WaveformConfig wf{zp ? WaveformKind::zp : WaveformKind::cp, 512, 128, 0};
    const ChannelScene s = unit_scene(64, 0.05, zp ? 0.0 : 1.0);
    constexpr long trials = 1000;
    for (auto _ : state) benchmark::DoNotOptimize(simulate_statistics(s, wf, trials, 1, 1));
    state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_MonteCarloTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
