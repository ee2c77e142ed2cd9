#pragma once

#include "coxkde/process.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace coxkde {

// Weibull hazard (b/a)(t/a)^(b-1). Throws std::domain_error at t = 0 when
// b < 1 (the rate diverges there).
double baseline_intensity(double t, const IntensityModel& model);

// Integrated baseline (t/a)^b and its inverse a * v^(1/b).
double baseline_cumulative(double t, const IntensityModel& model);
double baseline_cumulative_inverse(double v, const IntensityModel& model);

// exp(sin(beta0 * sum of components)); 1 for an empty projection
double covariate_effect(std::span<const double> projection, double beta0) noexcept;

// Conditional intensity at t given the realized schedule and covariate path.
double intensity_at(double t, const ObservationSchedule& schedule, const CovariatePath& path,
                    const IntensityModel& model);

// Integrated intensity of one trajectory. The covariate effect is constant
// between schedule times, so both the integral and its inverse are
// closed-form per segment. Build once per trajectory and reuse.
class CumulativeIntensity {
public:
    CumulativeIntensity(const ObservationSchedule& schedule, const CovariatePath& path,
                        const IntensityModel& model);

    double value(double t) const;
    // unique t with value(t) = u; throws std::out_of_range when u > total()
    double inverse(double u) const;
    double total() const noexcept { return total_; }

private:
    std::vector<double> starts_;     // segment left endpoints, starts_[0] = 0
    std::vector<double> effects_;    // covariate effect on [starts_[j], starts_[j+1])
    std::vector<double> cumulative_; // value(starts_[j])
    double horizon_;
    double total_;
    IntensityModel model_;
};

double cumulative_intensity(double t, const ObservationSchedule& schedule, const CovariatePath& path,
                            const IntensityModel& model);
double inverse_cumulative(double u, const ObservationSchedule& schedule, const CovariatePath& path,
                          const IntensityModel& model);

// Renewal schedule with inter-arrival law renewal_eps + Exp(mean renewal_eps);
// generation stops at the first time past the horizon (excluded).
template <class Stream>
ObservationSchedule sample_schedule(double renewal_eps, double horizon, Stream& rng) {
    if (!(renewal_eps > 0.0)) {
        throw std::invalid_argument("sample_schedule: renewal_eps must be > 0");
    }
    ObservationSchedule schedule;
    schedule.horizon = horizon;
    double time = renewal_eps + rng.exponential(renewal_eps);
    while (time <= horizon) {
        schedule.times.push_back(time);
        time += renewal_eps + rng.exponential(renewal_eps);
    }
    return schedule;
}

// Brownian covariate observed at the schedule times, started at 0,
// components independent.
template <class Stream>
CovariatePath sample_covariate(const ObservationSchedule& schedule, int dimension, Stream& rng) {
    if (dimension < 1) throw std::invalid_argument("sample_covariate: dimension must be >= 1");
    CovariatePath path;
    path.dimension = dimension;
    path.values.resize(schedule.times.size() * static_cast<std::size_t>(dimension));
    double previous_time = 0.0;
    for (std::size_t j = 0; j < schedule.times.size(); ++j) {
        const double gap_sd = std::sqrt(schedule.times[j] - previous_time);
        for (int c = 0; c < dimension; ++c) {
            const std::size_t index = j * static_cast<std::size_t>(dimension) + static_cast<std::size_t>(c);
            const double start = j == 0 ? 0.0 : path.values[index - static_cast<std::size_t>(dimension)];
            path.values[index] = start + gap_sd * rng.normal();
        }
        previous_time = schedule.times[j];
    }
    return path;
}

// Cox trajectory by time change: unit-rate Poisson jump times mapped through
// the inverse cumulative intensity, generated lazily until past the horizon.
template <class Stream>
CountingRealization sample_counts(const ObservationSchedule& schedule, const CovariatePath& path,
                                  const IntensityModel& model, Stream& rng) {
    const CumulativeIntensity cumulative(schedule, path, model);
    const double total = cumulative.total();
    CountingRealization realization;
    for (double arrival = rng.exponential(1.0); arrival <= total; arrival += rng.exponential(1.0)) {
        realization.jump_times.push_back(cumulative.inverse(arrival));
    }
    return realization;
}

} // namespace coxkde
