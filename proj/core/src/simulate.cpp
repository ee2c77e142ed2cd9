#include "coxkde/simulate.hpp"

#include <algorithm>
#include <cmath>

namespace coxkde {

double baseline_intensity(double t, const IntensityModel& model) {
    model.validate();
    if (t < 0.0) throw std::invalid_argument("baseline_intensity: t must be >= 0");
    const double a = model.weibull_scale;
    const double b = model.weibull_shape;
    if (t == 0.0 && b < 1.0) {
        throw std::domain_error("baseline_intensity: rate diverges at t = 0 for b < 1");
    }
    return (b / a) * std::pow(t / a, b - 1.0);
}

double baseline_cumulative(double t, const IntensityModel& model) {
    return std::pow(t / model.weibull_scale, model.weibull_shape);
}

double baseline_cumulative_inverse(double v, const IntensityModel& model) {
    return model.weibull_scale * std::pow(v, 1.0 / model.weibull_shape);
}

double covariate_effect(std::span<const double> projection, double beta0) noexcept {
    double sum = 0.0;
    for (double component : projection) sum += component;
    return std::exp(std::sin(beta0 * sum));
}

double intensity_at(double t, const ObservationSchedule& schedule, const CovariatePath& path,
                    const IntensityModel& model) {
    return baseline_intensity(t, model) *
           covariate_effect(projection_at(path, schedule, t), model.beta0);
}

CumulativeIntensity::CumulativeIntensity(const ObservationSchedule& schedule,
                                         const CovariatePath& path, const IntensityModel& model)
    : horizon_(schedule.horizon), model_(model) {
    model_.validate();
    const std::size_t segments = schedule.times.size() + 1;
    starts_.reserve(segments);
    effects_.reserve(segments);
    cumulative_.reserve(segments);

    starts_.push_back(0.0);
    effects_.push_back(covariate_effect(path.head(0), model_.beta0));
    cumulative_.push_back(0.0);
    for (std::size_t j = 0; j < schedule.times.size(); ++j) {
        const double start = schedule.times[j];
        const double previous = cumulative_.back() +
                                effects_.back() * (baseline_cumulative(start, model_) -
                                                   baseline_cumulative(starts_.back(), model_));
        starts_.push_back(start);
        effects_.push_back(covariate_effect(path.head(static_cast<int>(j) + 1), model_.beta0));
        cumulative_.push_back(previous);
    }
    total_ = cumulative_.back() +
             effects_.back() *
                 (baseline_cumulative(horizon_, model_) - baseline_cumulative(starts_.back(), model_));
}

double CumulativeIntensity::value(double t) const {
    const auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
    const auto segment = static_cast<std::size_t>(it - starts_.begin()) - 1;
    return cumulative_[segment] +
           effects_[segment] *
               (baseline_cumulative(t, model_) - baseline_cumulative(starts_[segment], model_));
}

double CumulativeIntensity::inverse(double u) const {
    if (u < 0.0 || u > total_) {
        throw std::out_of_range("cumulative intensity inverse: argument outside [0, total]");
    }
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto segment = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    const double baseline_value =
        baseline_cumulative(starts_[segment], model_) + (u - cumulative_[segment]) / effects_[segment];
    return baseline_cumulative_inverse(baseline_value, model_);
}

double cumulative_intensity(double t, const ObservationSchedule& schedule, const CovariatePath& path,
                            const IntensityModel& model) {
    return CumulativeIntensity(schedule, path, model).value(t);
}

double inverse_cumulative(double u, const ObservationSchedule& schedule, const CovariatePath& path,
                          const IntensityModel& model) {
    return CumulativeIntensity(schedule, path, model).inverse(u);
}

} // namespace coxkde
