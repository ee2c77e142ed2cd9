#pragma once

#include "coxkde/estimate.hpp"
#include "coxkde/rng.hpp"
#include "coxkde/simulate.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace coxkde {

// Replicated simulation + estimation study over a time grid. One schedule
// and one evaluation covariate point are drawn from stream (master_seed, 0)
// and held fixed; replication r draws its trajectories from stream
// (master_seed, r + 1).
struct McConfig {
    IntensityModel model{};
    std::size_t trajectories = 500;  // n per replication
    std::size_t replications = 100;  // Monte Carlo repetitions
    std::size_t grid_size = 100;     // evaluation grid {i/grid_size : i = 1..grid_size}
    int dimension = 1;
    std::uint64_t master_seed = 0;
    // fixed bandwidths; when absent, bandwidth_rule is applied per grid time
    std::optional<EstimatorConfig> estimator{};
    double trim_exponent = 0.25; // used in the auto-bandwidth mode
    int threads = 1;

    void validate() const;
};

struct McGridRow {
    double t = 0.0;
    int schedule_count = 0; // M(t)
    int effective_dim = 0;
    double true_intensity = 0.0;
    double mean_estimate = 0.0;
    double mse = 0.0;
    double nrmse = 0.0;
    double median_sq_error = 0.0;
    double q1_sq_error = 0.0;
    double q3_sq_error = 0.0;
    double q1_estimate = 0.0;
    double median_estimate = 0.0;
    double q3_estimate = 0.0;
    double time_bandwidth = 0.0;
    double cov_bandwidth = 0.0;
};

struct McSummary {
    std::vector<McGridRow> rows;
    std::size_t trajectories = 0;
    std::size_t replications = 0;
};

struct ErrorSummary {
    double mse = 0.0;
    double nrmse = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
};

// Empirical quantile with linear interpolation between order statistics
// (R type 7). `sorted` must be ascending and non-empty.
double quantile(std::span<const double> sorted, double p);

// Mean, sqrt(mean)/true_intensity and quartiles of a squared-error sample.
// Throws on an empty sample or non-positive true intensity.
ErrorSummary summarize_errors(std::span<const double> squared_errors, double true_intensity);

// n trajectories (covariate path + counts) sharing the given schedule.
template <class Stream>
Dataset sample_dataset(const ObservationSchedule& schedule, const IntensityModel& model,
                       int dimension, std::size_t n, Stream& rng) {
    Dataset data;
    data.schedule = schedule;
    data.dimension = dimension;
    data.covariates.reserve(n);
    data.counts.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        data.covariates.push_back(sample_covariate(schedule, dimension, rng));
        data.counts.push_back(sample_counts(schedule, data.covariates.back(), model, rng));
    }
    return data;
}

McSummary run_study(const McConfig& config);

namespace detail {
// Runs task(i) for i in [0, count) on the requested number of workers.
// Tasks must write only to per-index slots; results are then identical for
// any worker count.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& task);
} // namespace detail

} // namespace coxkde
