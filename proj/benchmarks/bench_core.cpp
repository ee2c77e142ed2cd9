#include "coxkde/estimate.hpp"
#include "coxkde/montecarlo.hpp"
#include "coxkde/rng.hpp"
#include "coxkde/simulate.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace coxkde;

IntensityModel default_model() { return IntensityModel{}; }

static void BM_SampleTrajectory(benchmark::State& state) {
    const IntensityModel model = default_model();
    RandomStream fixed(7, 0);
    const ObservationSchedule schedule = sample_schedule(model.renewal_eps, 1.0, fixed);
    RandomStream stream(7, 1);
    for (auto _ : state) {
        const CovariatePath path = sample_covariate(schedule, 1, stream);
        const CountingRealization counts = sample_counts(schedule, path, model, stream);
        benchmark::DoNotOptimize(counts.jump_times.data());
    }
}
BENCHMARK(BM_SampleTrajectory);

static void BM_IntensityEstimate(benchmark::State& state) {
    const IntensityModel model = default_model();
    const auto n = static_cast<std::size_t>(state.range(0));
    RandomStream fixed(7, 0);
    const ObservationSchedule schedule = sample_schedule(model.renewal_eps, 1.0, fixed);
    const CovariatePath eval_point = sample_covariate(schedule, 1, fixed);
    RandomStream stream(7, 1);
    const Dataset data = sample_dataset(schedule, model, 1, n, stream);

    const double t = 0.5;
    const int effective_dim = schedule.count_at(t);
    EstimatorConfig config;
    config.time_bandwidth = bandwidth_rule(n, effective_dim);
    config.cov_bandwidth = config.time_bandwidth;
    const auto zvec = projection_at(eval_point, schedule, t);
    for (auto _ : state) {
        benchmark::DoNotOptimize(intensity_estimate(t, zvec, data, config).intensity);
    }
}
BENCHMARK(BM_IntensityEstimate)->Arg(100)->Arg(1000);

static void BM_ProductKernel(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    const double bandwidth = 0.8;
    std::vector<double> v(dim);
    RandomStream stream(11, 0);
    // keep every component inside the support so the full product is paid
    for (double& x : v) x = (stream.uniform() - 0.5) * bandwidth;
    for (auto _ : state) {
        benchmark::DoNotOptimize(product_cov_kernel(v, bandwidth));
    }
}
BENCHMARK(BM_ProductKernel)->Arg(4)->Arg(32)->Arg(64);

} // namespace

BENCHMARK_MAIN();
