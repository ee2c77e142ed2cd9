#pragma once

#include "coxkde/kernels.hpp"
#include "coxkde/process.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace coxkde {

struct EstimatorConfig {
    double time_bandwidth = 0.1;  // h
    double cov_bandwidth = 0.1;   // eta
    double trim_exponent = 0.25;  // exponent of the trimming level, in (0, 1/2)
    PolynomialKernel time_kern = time_kernel();
    PolynomialKernel cov_kern = covariate_kernel();

    void validate() const;
};

// n trajectories sharing one observation schedule.
struct Dataset {
    ObservationSchedule schedule;
    std::vector<CovariatePath> covariates;
    std::vector<CountingRealization> counts;
    int dimension = 1;

    std::size_t size() const noexcept { return counts.size(); }
    void validate() const;
};

struct EstimateResult {
    double intensity = 0.0;       // trimmed ratio estimate
    double numerator = 0.0;       // joint time/covariate smoother
    double density = 0.0;         // covariate density estimate (may be negative)
    double trimmed_density = 0.0; // density floored at the trim level
    double trim_level = 0.0;
    int effective_dim = 0;        // dimension * (schedule times <= t)

    bool trimmed() const noexcept { return density <= trim_level; }
};

// MSE-optimal bandwidth n^(-1/(5 + effective_dim)).
double bandwidth_rule(std::size_t n, int effective_dim) noexcept;

// Trim level (n * eta^effective_dim)^(trim_exponent - 1). Throws unless
// trim_exponent is in (0, 1/2).
double trimming_level(std::size_t n, double eta, int effective_dim, double trim_exponent);

// Sample mean over trajectories of the product covariate kernel at
// zvec - Z^l. The length of zvec fixes the number of projected schedule
// times; it must be a multiple of the dataset dimension.
double density_estimate(std::span<const double> zvec, const Dataset& data, double eta);

// Joint smoother: mean over trajectories of (sum of scaled time-kernel terms
// over jumps near t) times the product covariate kernel.
double phi_estimate(double t, std::span<const double> zvec, const Dataset& data,
                    const EstimatorConfig& config);

// Trimmed intensity estimate at (t, zvec); zvec must have length
// dimension * M(t).
EstimateResult intensity_estimate(double t, std::span<const double> zvec, const Dataset& data,
                                  const EstimatorConfig& config);

// Plain kernel smoother of the pooled jumps, covariates ignored (the
// inhomogeneous-Poisson reference fit).
double poisson_intensity_estimate(double t, const Dataset& data, double time_bandwidth);

} // namespace coxkde
