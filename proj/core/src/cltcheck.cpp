#include "coxkde/cltcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace coxkde {

void CltConfig::validate() const {
    model.validate();
    if (trajectories < 1 || replications < 1) {
        throw std::invalid_argument("clt config: counts must be positive");
    }
    if (!(eval_time > 0.0 && eval_time <= 1.0)) {
        throw std::invalid_argument("clt config: eval_time must lie in (0, 1]");
    }
    if (dimension < 1) throw std::invalid_argument("clt config: dimension must be >= 1");
    if (threads < 1) throw std::invalid_argument("clt config: threads must be >= 1");
}

double clt_bandwidth(std::size_t n, int effective_dim) noexcept {
    return std::pow(static_cast<double>(n), -1.0 / (4.0 + effective_dim));
}

std::optional<double> standardized_statistic(const EstimateResult& result, double true_intensity,
                                             std::size_t n, double time_bandwidth,
                                             double cov_bandwidth) {
    if (!(result.intensity > 0.0)) return std::nullopt;
    const double rate = static_cast<double>(n) * time_bandwidth *
                        std::pow(cov_bandwidth, result.effective_dim);
    const double kernel_l2 = time_kernel().l2_norm_squared();
    const double cov_l2 = covariate_kernel().l2_norm_squared();
    const double variance = result.intensity * kernel_l2 *
                            std::pow(cov_l2, result.effective_dim) / result.trimmed_density;
    return std::sqrt(rate) * (result.intensity - true_intensity) / std::sqrt(variance);
}

double standard_normal_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normality_distance(std::span<const double> statistics) {
    if (statistics.size() < 100) {
        throw std::invalid_argument("normality distance: need at least 100 statistics");
    }
    std::vector<double> sorted(statistics.begin(), statistics.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    double distance = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = standard_normal_cdf(sorted[i]);
        const double above = (static_cast<double>(i) + 1.0) / n - cdf;
        const double below = cdf - static_cast<double>(i) / n;
        distance = std::max({distance, above, below});
    }
    return distance;
}

double normality_distance(const CltSample& sample) { return normality_distance(sample.statistics); }

CltSample run_clt_study(const CltConfig& config) {
    config.validate();

    RandomStream fixed_stream(config.master_seed, 0);
    const ObservationSchedule schedule =
        sample_schedule(config.model.renewal_eps, 1.0, fixed_stream);
    const CovariatePath eval_point = sample_covariate(schedule, config.dimension, fixed_stream);
    const double t = config.eval_time;
    const auto zvec = projection_at(eval_point, schedule, t);

    CltSample sample;
    sample.replications = config.replications;
    sample.trajectories = config.trajectories;
    sample.effective_dim = config.dimension * schedule.count_at(t);
    sample.true_intensity = intensity_at(t, schedule, eval_point, config.model);

    EstimatorConfig estimator;
    estimator.time_bandwidth = clt_bandwidth(config.trajectories, sample.effective_dim);
    estimator.cov_bandwidth = estimator.time_bandwidth;
    estimator.trim_exponent = config.trim_exponent;
    sample.time_bandwidth = estimator.time_bandwidth;
    sample.cov_bandwidth = estimator.cov_bandwidth;

    std::vector<std::optional<double>> statistics(config.replications);
    detail::parallel_for(config.replications, config.threads, [&](std::size_t r) {
        RandomStream stream(config.master_seed, r + 1);
        const Dataset data = sample_dataset(schedule, config.model, config.dimension,
                                            config.trajectories, stream);
        const EstimateResult result = intensity_estimate(t, zvec, data, estimator);
        if (result.trimmed()) return; // leave the slot empty
        statistics[r] = standardized_statistic(result, sample.true_intensity, config.trajectories,
                                               estimator.time_bandwidth, estimator.cov_bandwidth);
    });

    sample.statistics.reserve(config.replications);
    for (const std::optional<double>& statistic : statistics) {
        if (statistic) {
            sample.statistics.push_back(*statistic);
        } else {
            ++sample.excluded;
        }
    }
    return sample;
}

} // namespace coxkde
