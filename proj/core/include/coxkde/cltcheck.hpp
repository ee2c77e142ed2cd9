#pragma once

#include "coxkde/estimate.hpp"
#include "coxkde/montecarlo.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace coxkde {

// Empirical check that the studentized estimator is close to standard
// normal. The bandwidths are undersmoothed relative to the MSE-optimal rate
// so the bias term is negligible at the evaluated scale.
struct CltConfig {
    IntensityModel model{0.5, 2.0, 0.1, 0.3};
    std::size_t trajectories = 2000; // n per replication
    std::size_t replications = 500;
    double eval_time = 0.5;
    int dimension = 1;
    double trim_exponent = 0.25;
    std::uint64_t master_seed = 0;
    int threads = 1;

    void validate() const;
};

struct CltSample {
    std::vector<double> statistics; // one per kept replication
    std::size_t excluded = 0;       // estimate <= 0 or density at the trim floor
    std::size_t replications = 0;
    std::size_t trajectories = 0;
    double time_bandwidth = 0.0;
    double cov_bandwidth = 0.0;
    int effective_dim = 0;
    double true_intensity = 0.0;

    double exclusion_rate() const noexcept {
        return replications == 0 ? 0.0
                                 : static_cast<double>(excluded) / static_cast<double>(replications);
    }
};

// Undersmoothed bandwidth n^(-1/(4 + effective_dim)).
double clt_bandwidth(std::size_t n, int effective_dim) noexcept;

// Studentized deviation  sqrt(n h eta^dim) (est - true) /
// sqrt(est * |K|_2^2 * |H|_2^(2 dim) / trimmed density). Empty when the
// intensity estimate is not positive.
std::optional<double> standardized_statistic(const EstimateResult& result, double true_intensity,
                                             std::size_t n, double time_bandwidth,
                                             double cov_bandwidth);

// Standard normal distribution function, accurate to full double precision.
double standard_normal_cdf(double x) noexcept;

// Kolmogorov-Smirnov distance between the sample and the standard normal.
// Requires at least 100 statistics.
double normality_distance(std::span<const double> statistics);
double normality_distance(const CltSample& sample);

CltSample run_clt_study(const CltConfig& config);

} // namespace coxkde
