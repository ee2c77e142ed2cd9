#include "coxkde/simulate.hpp"

#include "coxkde/montecarlo.hpp"
#include "coxkde/rng.hpp"
#include "scripted_stream.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace coxkde;

namespace {

IntensityModel make_model(double a, double b, double beta0, double eps = 0.1) {
    IntensityModel model;
    model.weibull_scale = a;
    model.weibull_shape = b;
    model.beta0 = beta0;
    model.renewal_eps = eps;
    return model;
}

} // namespace

TEST_CASE("schedule from scripted gaps") {
    ScriptedStream stream;
    stream.exponentials = {0.05, 0.25, 10.0};
    const ObservationSchedule schedule = sample_schedule(0.1, 1.0, stream);
    REQUIRE(schedule.times.size() == 2);
    CHECK(schedule.times[0] == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(schedule.times[1] == doctest::Approx(0.50).epsilon(1e-15));

    CHECK(schedule.count_at(0.1) == 0);
    CHECK(schedule.count_at(schedule.times[0]) == 1);
    CHECK(schedule.count_at(0.3) == 1);
    CHECK(schedule.count_at(1.0) == 2);
}

TEST_CASE("schedule gap floor") {
    // inter-arrivals are at least renewal_eps, so eps = 0.6 allows one time at most
    RandomStream stream(123, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const ObservationSchedule schedule = sample_schedule(0.6, 1.0, stream);
        CHECK(schedule.times.size() <= 1);
    }
    RandomStream stream2(99, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const ObservationSchedule schedule = sample_schedule(0.03, 1.0, stream2);
        double previous = 0.0;
        for (double t : schedule.times) {
            CHECK(t - previous >= 0.03);
            previous = t;
        }
        CHECK(schedule.count_at(schedule.times.empty() ? 0.0 : schedule.times.front() - 1e-12) == 0);
    }
    CHECK_THROWS_AS(sample_schedule(0.0, 1.0, stream), std::invalid_argument);
}

TEST_CASE("covariate path from scripted normals") {
    ObservationSchedule schedule;
    schedule.times = {0.25, 0.50};

    ScriptedStream zeros;
    zeros.normals = {0.0, 0.0};
    const CovariatePath flat = sample_covariate(schedule, 1, zeros);
    CHECK(flat.values == std::vector<double>{0.0, 0.0});

    ScriptedStream stream;
    stream.normals = {1.0, -1.0};
    const CovariatePath path = sample_covariate(schedule, 1, stream);
    REQUIRE(path.values.size() == 2);
    CHECK(path.values[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(path.values[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("covariate variance matches Brownian scaling") {
    ObservationSchedule schedule;
    schedule.times = {0.37};
    RandomStream stream(2024, 0);
    double sum = 0.0, sum_sq = 0.0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i) {
        const CovariatePath path = sample_covariate(schedule, 1, stream);
        sum += path.values[0];
        sum_sq += path.values[0] * path.values[0];
    }
    const double mean = sum / trials;
    const double variance = sum_sq / trials - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(variance == doctest::Approx(0.37).epsilon(0.05));
}

TEST_CASE("baseline intensity") {
    for (double t : {0.0, 0.3, 0.7, 1.0}) {
        CHECK(baseline_intensity(t, make_model(1.0, 1.0, 0.0)) == 1.0);
    }
    CHECK(baseline_intensity(0.5, make_model(1.0, 2.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(baseline_intensity(0.0, make_model(1.0, 2.0, 0.0)) == 0.0);
    CHECK_THROWS_AS(baseline_intensity(0.0, make_model(1.0, 0.5, 0.0)), std::domain_error);
    CHECK_THROWS_AS(baseline_intensity(-0.1, make_model(1.0, 2.0, 0.0)), std::invalid_argument);
}

TEST_CASE("intensity with covariate effect") {
    ObservationSchedule schedule;
    schedule.times = {0.25};
    CovariatePath path;
    path.dimension = 1;

    SUBCASE("zero coupling gives the baseline") {
        path.values = {1.7};
        const IntensityModel model = make_model(0.5, 2.0, 0.0);
        for (double t : {0.1, 0.5, 0.9}) {
            CHECK(intensity_at(t, schedule, path, model) ==
                  doctest::Approx(baseline_intensity(t, model)).epsilon(1e-14));
        }
    }

    SUBCASE("before the first observation the projection is empty") {
        path.values = {42.0};
        const IntensityModel model = make_model(0.5, 2.0, 5.0);
        CHECK(intensity_at(0.2, schedule, path, model) ==
              doctest::Approx(baseline_intensity(0.2, model)).epsilon(1e-14));
    }

    SUBCASE("projection sum pi/2 with unit coupling scales by e") {
        path.values = {std::numbers::pi / 2.0};
        const IntensityModel model = make_model(1.0, 1.0, 1.0); // baseline 1
        CHECK(intensity_at(0.5, schedule, path, model) ==
              doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    }
}

TEST_CASE("cumulative intensity closed form") {
    SUBCASE("zero coupling reduces to the integrated baseline") {
        ObservationSchedule schedule;
        schedule.times = {0.2, 0.6};
        CovariatePath path;
        path.values = {0.4, -1.0};
        const IntensityModel model = make_model(0.5, 2.0, 0.0);
        for (double t : {0.0, 0.1, 0.2, 0.45, 0.6, 0.99, 1.0}) {
            CHECK(cumulative_intensity(t, schedule, path, model) ==
                  doctest::Approx(std::pow(t / 0.5, 2.0)).epsilon(1e-12));
        }
    }

    SUBCASE("segment with covariate effect 2 accumulates at twice the rate") {
        ObservationSchedule schedule;
        schedule.times = {0.25};
        CovariatePath path;
        path.values = {std::asin(std::numbers::ln2)}; // exp(sin(.)) = 2
        const IntensityModel model = make_model(1.0, 1.0, 1.0);
        const double at_start = cumulative_intensity(0.25, schedule, path, model);
        CHECK(at_start == doctest::Approx(0.25).epsilon(1e-12));
        for (double t : {0.3, 0.5, 1.0}) {
            CHECK(cumulative_intensity(t, schedule, path, model) ==
                  doctest::Approx(0.25 + 2.0 * (t - 0.25)).epsilon(1e-12));
        }
    }

    SUBCASE("starts at zero") {
        ObservationSchedule schedule;
        CovariatePath path;
        CHECK(cumulative_intensity(0.0, schedule, path, make_model(0.5, 2.0, 0.3)) == 0.0);
    }
}

TEST_CASE("inverse cumulative intensity") {
    ObservationSchedule schedule;
    schedule.times = {0.3, 0.55, 0.9};
    CovariatePath path;
    path.values = {0.2, -0.4, 1.3};
    const IntensityModel model = make_model(0.7, 1.8, 0.6);
    const CumulativeIntensity cumulative(schedule, path, model);

    CHECK(cumulative.inverse(0.0) == 0.0);

    SUBCASE("square-root closed form under the null") {
        CovariatePath empty_path;
        ObservationSchedule empty_schedule;
        const IntensityModel null_model = make_model(1.0, 2.0, 0.0);
        const CumulativeIntensity plain(empty_schedule, empty_path, null_model);
        for (double u : {0.04, 0.25, 0.81, 1.0}) {
            CHECK(plain.inverse(u) == doctest::Approx(std::sqrt(u)).epsilon(1e-13));
        }
    }

    SUBCASE("round trip on a grid") {
        const double total = cumulative.total();
        for (int i = 0; i <= 100; ++i) {
            const double u = total * i / 100.0;
            CHECK(std::abs(cumulative.value(cumulative.inverse(u)) - u) <= 1e-10);
        }
    }

    SUBCASE("rejects arguments past the horizon mass") {
        CHECK_THROWS_AS(cumulative.inverse(cumulative.total() * 1.0001), std::out_of_range);
    }

    SUBCASE("value is nondecreasing") {
        double previous = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double value = cumulative.value(i / 200.0);
            CHECK(value >= previous);
            previous = value;
        }
    }
}

TEST_CASE("counting realization by time change") {
    SUBCASE("scripted unit-rate arrival maps through the inverse") {
        ObservationSchedule schedule;
        CovariatePath path;
        const IntensityModel model = make_model(1.0, 2.0, 0.0);
        ScriptedStream stream;
        stream.exponentials = {0.25, 100.0};
        const CountingRealization counts = sample_counts(schedule, path, model, stream);
        REQUIRE(counts.jump_times.size() == 1);
        CHECK(counts.jump_times[0] == doctest::Approx(0.5).epsilon(1e-14));
    }

    SUBCASE("arrivals past the total mass give an empty realization") {
        ObservationSchedule schedule;
        CovariatePath path;
        ScriptedStream stream;
        stream.exponentials = {5.0};
        const CountingRealization counts =
            sample_counts(schedule, path, make_model(1.0, 2.0, 0.0), stream);
        CHECK(counts.jump_times.empty());
    }

    SUBCASE("identity time change keeps the raw arrivals") {
        ObservationSchedule schedule;
        CovariatePath path;
        ScriptedStream stream;
        stream.exponentials = {0.2, 0.3, 0.35, 2.0};
        const CountingRealization counts =
            sample_counts(schedule, path, make_model(1.0, 1.0, 0.0), stream);
        REQUIRE(counts.jump_times.size() == 3);
        CHECK(counts.jump_times[0] == doctest::Approx(0.2).epsilon(1e-13));
        CHECK(counts.jump_times[1] == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(counts.jump_times[2] == doctest::Approx(0.85).epsilon(1e-13));
    }
}

TEST_CASE("time-change produces Poisson counts" * doctest::timeout(120)) {
    // beta0 = 0, a = 1, b = 2: N(1) should be Poisson with mean 1
    const IntensityModel model = make_model(1.0, 2.0, 0.0, 0.05);
    RandomStream fixed(42, 0);
    const ObservationSchedule schedule = sample_schedule(model.renewal_eps, 1.0, fixed);

    const int trials = 10000;
    double sum = 0.0, sum_sq = 0.0;
    RandomStream stream(42, 1);
    for (int i = 0; i < trials; ++i) {
        const CovariatePath path = sample_covariate(schedule, 1, stream);
        const CountingRealization counts = sample_counts(schedule, path, model, stream);
        const auto n1 = static_cast<double>(counts.count_at(1.0));
        sum += n1;
        sum_sq += n1 * n1;
    }
    const double mean = sum / trials;
    const double variance = (sum_sq - trials * mean * mean) / (trials - 1);
    // 4 standard errors around 1
    CHECK(std::abs(mean - 1.0) < 4.0 * 0.01);
    CHECK(std::abs(variance - 1.0) < 4.0 * std::sqrt(3.0 / trials));
}

TEST_CASE("counts on disjoint intervals are uncorrelated given the path") {
    const IntensityModel model = make_model(0.7, 2.0, 0.3, 0.1);
    RandomStream fixed(7, 0);
    const ObservationSchedule schedule = sample_schedule(model.renewal_eps, 1.0, fixed);
    const CovariatePath path = sample_covariate(schedule, 1, fixed);

    const int trials = 10000;
    double sum_a = 0.0, sum_b = 0.0, sum_ab = 0.0, sum_a2 = 0.0, sum_b2 = 0.0;
    RandomStream stream(7, 1);
    for (int i = 0; i < trials; ++i) {
        CountingRealization counts = sample_counts(schedule, path, model, stream);
        const double a = counts.count_at(0.4);
        const double b = counts.count_at(1.0) - counts.count_at(0.6);
        sum_a += a;
        sum_b += b;
        sum_ab += a * b;
        sum_a2 += a * a;
        sum_b2 += b * b;
    }
    const double cov = sum_ab / trials - (sum_a / trials) * (sum_b / trials);
    const double var_a = sum_a2 / trials - (sum_a / trials) * (sum_a / trials);
    const double var_b = sum_b2 / trials - (sum_b / trials) * (sum_b / trials);
    const double correlation = cov / std::sqrt(var_a * var_b);
    CHECK(std::abs(correlation) < 0.05);
}

TEST_CASE("deterministic replay") {
    const IntensityModel model = make_model(0.5, 2.0, 0.1, 0.02);
    RandomStream first(314, 0);
    RandomStream second(314, 0);
    const ObservationSchedule schedule_a = sample_schedule(model.renewal_eps, 1.0, first);
    const ObservationSchedule schedule_b = sample_schedule(model.renewal_eps, 1.0, second);
    CHECK(schedule_a.times == schedule_b.times);

    const CovariatePath path_a = sample_covariate(schedule_a, 2, first);
    const CovariatePath path_b = sample_covariate(schedule_b, 2, second);
    CHECK(path_a.values == path_b.values);

    const CountingRealization counts_a = sample_counts(schedule_a, path_a, model, first);
    const CountingRealization counts_b = sample_counts(schedule_b, path_b, model, second);
    CHECK(counts_a.jump_times == counts_b.jump_times);

    RandomStream other(315, 0);
    const ObservationSchedule different = sample_schedule(model.renewal_eps, 1.0, other);
    CHECK(different.times != schedule_a.times);
}

TEST_CASE("strictly increasing outputs") {
    const IntensityModel model = make_model(0.5, 2.0, 0.5, 0.05);
    RandomStream stream(555, 0);
    for (int trial = 0; trial < 25; ++trial) {
        const ObservationSchedule schedule = sample_schedule(model.renewal_eps, 1.0, stream);
        CHECK_NOTHROW(schedule.validate());
        const CovariatePath path = sample_covariate(schedule, 1, stream);
        const CountingRealization counts = sample_counts(schedule, path, model, stream);
        CHECK_NOTHROW(counts.validate());
    }
}
