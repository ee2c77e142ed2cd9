#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace coxkde {

// Random observation times S_1 < S_2 < ... in (0, horizon].
struct ObservationSchedule {
    std::vector<double> times;
    double horizon = 1.0;

    // number of observation times <= t
    int count_at(double t) const noexcept;
    std::size_t size() const noexcept { return times.size(); }

    // throws std::invalid_argument if the times are not strictly increasing
    // inside (0, horizon]
    void validate() const;
};

// Covariate values recorded at the schedule times, flattened with `dimension`
// components per time.
struct CovariatePath {
    std::vector<double> values;
    int dimension = 1;

    std::size_t time_points() const noexcept {
        return dimension > 0 ? values.size() / static_cast<std::size_t>(dimension) : 0;
    }

    // concatenated values at the first `observed` schedule times
    std::span<const double> head(int observed) const;
};

// Projection of the path onto the schedule times <= t; empty before the
// first observation time.
std::span<const double> projection_at(const CovariatePath& path, const ObservationSchedule& schedule,
                                      double t);

// Weibull baseline plus covariate coupling: rate (b/a)(t/a)^(b-1) scaled by
// exp(sin(beta0 * sum of the projected covariate components)).
struct IntensityModel {
    double weibull_scale = 0.5;  // a
    double weibull_shape = 2.0;  // b
    double beta0 = 0.1;          // covariate coupling
    double renewal_eps = 0.0075; // shift of the schedule inter-arrival law

    void validate() const;
};

// Jump times T_1 < T_2 < ... of one counting-process trajectory on (0, 1].
struct CountingRealization {
    std::vector<double> jump_times;

    int count_at(double t) const noexcept;
    void validate() const;
};

} // namespace coxkde
