#include "coxkde/process.hpp"

#include <algorithm>
#include <stdexcept>

namespace coxkde {

int ObservationSchedule::count_at(double t) const noexcept {
    return static_cast<int>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
}

void ObservationSchedule::validate() const {
    double previous = 0.0;
    for (double time : times) {
        if (!(time > previous)) {
            throw std::invalid_argument("schedule: times must be strictly increasing and > 0");
        }
        previous = time;
    }
    if (!times.empty() && times.back() > horizon) {
        throw std::invalid_argument("schedule: times must not exceed the horizon");
    }
}

std::span<const double> CovariatePath::head(int observed) const {
    const auto count = static_cast<std::size_t>(observed) * static_cast<std::size_t>(dimension);
    if (observed < 0 || count > values.size()) {
        throw std::invalid_argument("covariate path: projection longer than the recorded values");
    }
    return {values.data(), count};
}

std::span<const double> projection_at(const CovariatePath& path, const ObservationSchedule& schedule,
                                      double t) {
    return path.head(schedule.count_at(t));
}

void IntensityModel::validate() const {
    if (!(weibull_scale > 0.0)) throw std::invalid_argument("intensity model: a must be > 0");
    if (!(weibull_shape > 0.0)) throw std::invalid_argument("intensity model: b must be > 0");
    if (!(renewal_eps > 0.0)) throw std::invalid_argument("intensity model: renewal_eps must be > 0");
}

int CountingRealization::count_at(double t) const noexcept {
    return static_cast<int>(std::upper_bound(jump_times.begin(), jump_times.end(), t) -
                            jump_times.begin());
}

void CountingRealization::validate() const {
    double previous = 0.0;
    for (double time : jump_times) {
        if (!(time > previous)) {
            throw std::invalid_argument("counting realization: jump times must be strictly increasing");
        }
        previous = time;
    }
}

} // namespace coxkde
