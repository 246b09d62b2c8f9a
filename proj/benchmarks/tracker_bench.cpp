#include "cop/datagen.hpp"
#include "cop/forecaster.hpp"
#include "cop/rng.hpp"
#include "cop/tracker.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

std::vector<double> gaussian_scores(std::size_t n, std::uint64_t seed) {
    cop::rng_stream rng(seed);
    std::vector<double> out(n);
    for (auto& s : out) s = rng.normal();
    return out;
}

cop::tracker_config tracker_for(cop::tracker_variant v, std::size_t window) {
    cop::tracker_config c;
    c.variant = v;
    c.alpha = 0.05;
    c.eta_base = 0.5;
    c.window_capacity = window;
    switch (v) {
    case cop::tracker_variant::cop:
    case cop::tracker_variant::cop_gated:
        c.schedule = cop::rate_schedule::window_adaptive;
        break;
    case cop::tracker_variant::decay_ogd:
        c.schedule = cop::rate_schedule::decay;
        break;
    case cop::tracker_variant::sf_ogd:
        c.schedule = cop::rate_schedule::sf;
        break;
    default:
        c.schedule = cop::rate_schedule::constant;
    }
    return c;
}

void bench_tracker(benchmark::State& state, cop::tracker_variant v, cop::cdf_kind cdf) {
    const auto window = static_cast<std::size_t>(state.range(0));
    auto cfg = tracker_for(v, window);
    cfg.cdf = cdf;
    const std::vector<double> scores = gaussian_scores(1 << 14, 7);
    cop::quantile_tracker tracker(cfg);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tracker.observe(scores[i]));
        i = (i + 1) % scores.size();
    }
    state.SetItemsProcessed(state.iterations());
}

} // namespace

static void CopEcdfStep(benchmark::State& state) {
    bench_tracker(state, cop::tracker_variant::cop, cop::cdf_kind::ecdf);
}
BENCHMARK(CopEcdfStep)->Arg(50)->Arg(100)->Arg(200)->Arg(400);

static void CopKdeStep(benchmark::State& state) {
    bench_tracker(state, cop::tracker_variant::cop, cop::cdf_kind::gaussian_kde);
}
BENCHMARK(CopKdeStep)->Arg(100);

static void OgdStep(benchmark::State& state) {
    bench_tracker(state, cop::tracker_variant::ogd, cop::cdf_kind::ecdf);
}
BENCHMARK(OgdStep)->Arg(100);

static void AciStep(benchmark::State& state) {
    bench_tracker(state, cop::tracker_variant::aci, cop::cdf_kind::ecdf);
}
BENCHMARK(AciStep)->Arg(100);

static void ArForecastStep(benchmark::State& state) {
    const std::vector<double> ys = gaussian_scores(1 << 14, 11);
    cop::forecaster f(cop::predictor_kind::ar3, 200);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.forecast());
        f.observe(ys[i]);
        i = (i + 1) % ys.size();
    }
}
BENCHMARK(ArForecastStep);

static void ThetaForecastStep(benchmark::State& state) {
    const std::vector<double> ys = gaussian_scores(1 << 14, 12);
    cop::forecaster f(cop::predictor_kind::theta, 200);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.forecast());
        f.observe(ys[i]);
        i = (i + 1) % ys.size();
    }
}
BENCHMARK(ThetaForecastStep);

static void GenerateChangepoint(benchmark::State& state) {
    cop::synth_config cfg;
    cfg.setting = cop::synth_setting::changepoint;
    cfg.n = 2000;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.seed = seed++;
        benchmark::DoNotOptimize(cop::generate(cfg));
    }
}
BENCHMARK(GenerateChangepoint);

BENCHMARK_MAIN();
