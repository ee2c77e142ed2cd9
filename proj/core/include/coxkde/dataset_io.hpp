#pragma once

#include "coxkde/estimate.hpp"
#include "coxkde/montecarlo.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace coxkde {

// Plain-text simulation scenario, keys a, b, beta0, renewal_eps, d, n, seed.
struct ScenarioConfig {
    IntensityModel model{};
    int dimension = 1;
    std::size_t trajectories = 1;
    std::uint64_t seed = 0;
};

ScenarioConfig parse_scenario(std::string_view text);
std::string format_scenario(const ScenarioConfig& scenario);
ScenarioConfig load_scenario(const std::filesystem::path& file);
void save_scenario(const std::filesystem::path& file, const ScenarioConfig& scenario);

// Dataset directory layout: scenario.cfg, schedule.csv (index,time),
// covariates.csv (replication,time_index,z0..), jumps.csv (replication,time).
void write_dataset(const std::filesystem::path& directory, const Dataset& data,
                   const ScenarioConfig& scenario);
Dataset read_dataset(const std::filesystem::path& directory);

// One estimate row per evaluated grid time.
struct EstimateRow {
    double t = 0.0;
    int schedule_count = 0;
    EstimateResult result{};
    double time_bandwidth = 0.0;
    double cov_bandwidth = 0.0;
};

void write_estimates_csv(const std::filesystem::path& file, std::span<const EstimateRow> rows);

void write_mc_summary_csv(const std::filesystem::path& file, const McSummary& summary);
// (t, true, q1, median, q3) series of the estimator replications
void write_plot_data_csv(const std::filesystem::path& file, const McSummary& summary);

void write_statistics_csv(const std::filesystem::path& file, std::span<const double> statistics);

// Evaluation covariate point: time_index,z0.. rows matching a schedule.
void write_eval_point_csv(const std::filesystem::path& file, const CovariatePath& point);
CovariatePath read_eval_point_csv(const std::filesystem::path& file, int dimension);

std::string read_text_file(const std::filesystem::path& file);
void write_text_file(const std::filesystem::path& file, std::string_view content);

// shortest decimal text that parses back to the same double
std::string format_double(double value);

} // namespace coxkde
