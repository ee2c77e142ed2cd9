#include "coxkde/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coxkde {

namespace {

// Sum of k((t - T_i)/h)/h over the jumps of one trajectory. Binary search
// narrows the candidate range; the kernel itself decides support membership
// so the result matches a full scan exactly.
double time_kernel_sum(double t, const CountingRealization& trajectory,
                       const PolynomialKernel& kernel, double h) {
    const std::vector<double>& jumps = trajectory.jump_times;
    if (jumps.empty()) return 0.0;
    auto first = std::lower_bound(jumps.begin(), jumps.end(), t - h * kernel.upper());
    while (first != jumps.begin() && (t - *(first - 1)) / h <= kernel.upper()) --first;
    auto last = std::upper_bound(first, jumps.end(), t - h * kernel.lower());
    while (last != jumps.end() && (t - *last) / h >= kernel.lower()) ++last;
    double sum = 0.0;
    for (auto it = first; it != last; ++it) {
        sum += kernel((t - *it) / h) / h;
    }
    return sum;
}

// Product of scaled covariate kernels at zvec - head of the path.
double covariate_weight(std::span<const double> zvec, const CovariatePath& path,
                        const PolynomialKernel& kernel, double eta) {
    double product = 1.0;
    for (std::size_t i = 0; i < zvec.size(); ++i) {
        product *= kernel((zvec[i] - path.values[i]) / eta) / eta;
        if (product == 0.0) break;
    }
    return product;
}

std::size_t checked_projection_length(std::span<const double> zvec, const Dataset& data) {
    if (data.dimension < 1) throw std::invalid_argument("dataset: dimension must be >= 1");
    const auto d = static_cast<std::size_t>(data.dimension);
    if (zvec.size() % d != 0) {
        throw std::invalid_argument("estimate: zvec length is not a multiple of the dimension");
    }
    const std::size_t observed = zvec.size() / d;
    if (observed > data.schedule.times.size()) {
        throw std::invalid_argument("estimate: zvec projects past the end of the schedule");
    }
    return observed;
}

} // namespace

void EstimatorConfig::validate() const {
    if (!(time_bandwidth > 0.0)) throw std::invalid_argument("estimator: time bandwidth must be > 0");
    if (!(cov_bandwidth > 0.0)) throw std::invalid_argument("estimator: cov bandwidth must be > 0");
    if (!(trim_exponent > 0.0 && trim_exponent < 0.5)) {
        throw std::invalid_argument("estimator: trim exponent must lie in (0, 1/2)");
    }
}

void Dataset::validate() const {
    schedule.validate();
    if (counts.empty() || covariates.size() != counts.size()) {
        throw std::invalid_argument("dataset: need n >= 1 covariate paths and counts of equal number");
    }
    const std::size_t expected = schedule.times.size() * static_cast<std::size_t>(dimension);
    for (const CovariatePath& path : covariates) {
        if (path.dimension != dimension || path.values.size() != expected) {
            throw std::invalid_argument("dataset: covariate path does not match the schedule");
        }
    }
    for (const CountingRealization& trajectory : counts) trajectory.validate();
}

double bandwidth_rule(std::size_t n, int effective_dim) noexcept {
    return std::pow(static_cast<double>(n), -1.0 / (5.0 + effective_dim));
}

double trimming_level(std::size_t n, double eta, int effective_dim, double trim_exponent) {
    if (n < 1) throw std::invalid_argument("trimming level: n must be >= 1");
    if (!(eta > 0.0)) throw std::invalid_argument("trimming level: eta must be > 0");
    if (!(trim_exponent > 0.0 && trim_exponent < 0.5)) {
        throw std::invalid_argument("trimming level: exponent must lie in (0, 1/2)");
    }
    return std::pow(static_cast<double>(n) * std::pow(eta, effective_dim), trim_exponent - 1.0);
}

double density_estimate(std::span<const double> zvec, const Dataset& data, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("density estimate: eta must be > 0");
    checked_projection_length(zvec, data);
    const PolynomialKernel& kernel = covariate_kernel();
    double sum = 0.0;
    for (const CovariatePath& path : data.covariates) {
        sum += covariate_weight(zvec, path, kernel, eta);
    }
    return sum / static_cast<double>(data.size());
}

double phi_estimate(double t, std::span<const double> zvec, const Dataset& data,
                    const EstimatorConfig& config) {
    config.validate();
    const std::size_t observed = checked_projection_length(zvec, data);
    if (static_cast<int>(observed) != data.schedule.count_at(t)) {
        throw std::invalid_argument("phi estimate: zvec length does not match M(t)");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < data.size(); ++k) {
        const double weight = covariate_weight(zvec, data.covariates[k], config.cov_kern,
                                               config.cov_bandwidth);
        if (weight == 0.0) continue;
        const double time_sum = time_kernel_sum(t, data.counts[k], config.time_kern,
                                                config.time_bandwidth);
        sum += weight * time_sum;
    }
    return sum / static_cast<double>(data.size());
}

EstimateResult intensity_estimate(double t, std::span<const double> zvec, const Dataset& data,
                                  const EstimatorConfig& config) {
    config.validate();
    EstimateResult result;
    result.effective_dim = static_cast<int>(zvec.size());
    result.density = density_estimate(zvec, data, config.cov_bandwidth);
    result.trim_level = trimming_level(data.size(), config.cov_bandwidth, result.effective_dim,
                                       config.trim_exponent);
    result.trimmed_density = std::max(result.density, result.trim_level);
    result.numerator = phi_estimate(t, zvec, data, config);
    result.intensity = result.numerator / result.trimmed_density;
    return result;
}

double poisson_intensity_estimate(double t, const Dataset& data, double time_bandwidth) {
    if (!(time_bandwidth > 0.0)) {
        throw std::invalid_argument("poisson estimate: bandwidth must be > 0");
    }
    const PolynomialKernel& kernel = time_kernel();
    double sum = 0.0;
    for (const CountingRealization& trajectory : data.counts) {
        sum += time_kernel_sum(t, trajectory, kernel, time_bandwidth);
    }
    return sum / static_cast<double>(data.size());
}

} // namespace coxkde
