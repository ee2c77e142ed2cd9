#include "coxkde/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace coxkde {

void McConfig::validate() const {
    model.validate();
    if (trajectories < 1 || replications < 1 || grid_size < 1) {
        throw std::invalid_argument("mc config: counts must be positive");
    }
    if (dimension < 1) throw std::invalid_argument("mc config: dimension must be >= 1");
    if (threads < 1) throw std::invalid_argument("mc config: threads must be >= 1");
    if (estimator) estimator->validate();
}

double quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile: empty sample");
    if (p <= 0.0) return sorted.front();
    if (p >= 1.0) return sorted.back();
    const double position = p * static_cast<double>(sorted.size() - 1);
    const auto index = static_cast<std::size_t>(position);
    const double fraction = position - static_cast<double>(index);
    if (fraction == 0.0 || index + 1 == sorted.size()) return sorted[index];
    return sorted[index] + fraction * (sorted[index + 1] - sorted[index]);
}

ErrorSummary summarize_errors(std::span<const double> squared_errors, double true_intensity) {
    if (squared_errors.empty()) throw std::invalid_argument("summarize_errors: empty sample");
    if (!(true_intensity > 0.0)) {
        throw std::invalid_argument("summarize_errors: true intensity must be > 0");
    }
    ErrorSummary summary;
    double sum = 0.0;
    for (double error : squared_errors) sum += error;
    summary.mse = sum / static_cast<double>(squared_errors.size());
    summary.nrmse = std::sqrt(summary.mse) / true_intensity;
    std::vector<double> sorted(squared_errors.begin(), squared_errors.end());
    std::sort(sorted.begin(), sorted.end());
    summary.q1 = quantile(sorted, 0.25);
    summary.median = quantile(sorted, 0.5);
    summary.q3 = quantile(sorted, 0.75);
    return summary;
}

namespace detail {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& task) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                task(i);
            }
        });
    }
    for (std::thread& worker : pool) worker.join();
}

} // namespace detail

McSummary run_study(const McConfig& config) {
    config.validate();

    RandomStream fixed_stream(config.master_seed, 0);
    const ObservationSchedule schedule =
        sample_schedule(config.model.renewal_eps, 1.0, fixed_stream);
    const CovariatePath eval_point = sample_covariate(schedule, config.dimension, fixed_stream);

    const std::size_t grid_size = config.grid_size;
    std::vector<double> grid(grid_size);
    std::vector<EstimatorConfig> per_time(grid_size);
    std::vector<double> truth(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        grid[i] = static_cast<double>(i + 1) / static_cast<double>(grid_size);
        truth[i] = intensity_at(grid[i], schedule, eval_point, config.model);
        if (config.estimator) {
            per_time[i] = *config.estimator;
        } else {
            const int dim = config.dimension * schedule.count_at(grid[i]);
            const double bandwidth = bandwidth_rule(config.trajectories, dim);
            per_time[i].time_bandwidth = bandwidth;
            per_time[i].cov_bandwidth = bandwidth;
            per_time[i].trim_exponent = config.trim_exponent;
        }
    }

    // estimates[r * grid_size + i]: replication r evaluated at grid[i]
    std::vector<double> estimates(config.replications * grid_size);
    detail::parallel_for(config.replications, config.threads, [&](std::size_t r) {
        RandomStream stream(config.master_seed, r + 1);
        const Dataset data =
            sample_dataset(schedule, config.model, config.dimension, config.trajectories, stream);
        for (std::size_t i = 0; i < grid_size; ++i) {
            const auto zvec = projection_at(eval_point, schedule, grid[i]);
            estimates[r * grid_size + i] =
                intensity_estimate(grid[i], zvec, data, per_time[i]).intensity;
        }
    });

    McSummary summary;
    summary.trajectories = config.trajectories;
    summary.replications = config.replications;
    summary.rows.resize(grid_size);
    std::vector<double> column(config.replications);
    std::vector<double> squared(config.replications);
    for (std::size_t i = 0; i < grid_size; ++i) {
        McGridRow& row = summary.rows[i];
        row.t = grid[i];
        row.schedule_count = schedule.count_at(grid[i]);
        row.effective_dim = config.dimension * row.schedule_count;
        row.true_intensity = truth[i];
        row.time_bandwidth = per_time[i].time_bandwidth;
        row.cov_bandwidth = per_time[i].cov_bandwidth;

        double mean = 0.0;
        for (std::size_t r = 0; r < config.replications; ++r) {
            const double estimate = estimates[r * grid_size + i];
            column[r] = estimate;
            const double error = estimate - truth[i];
            squared[r] = error * error;
            mean += estimate;
        }
        row.mean_estimate = mean / static_cast<double>(config.replications);

        const ErrorSummary errors = summarize_errors(squared, truth[i]);
        row.mse = errors.mse;
        row.nrmse = errors.nrmse;
        row.median_sq_error = errors.median;
        row.q1_sq_error = errors.q1;
        row.q3_sq_error = errors.q3;

        std::sort(column.begin(), column.end());
        row.q1_estimate = quantile(column, 0.25);
        row.median_estimate = quantile(column, 0.5);
        row.q3_estimate = quantile(column, 0.75);
    }
    return summary;
}

} // namespace coxkde
