#include "coxkde/dataset_io.hpp"

#include "detail_text.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace coxkde {

std::string format_double(double value) { return detail::format_double(value); }

namespace {

using detail::split_csv_line;
using detail::trim;

double require_double(std::string_view text, const std::string& context) {
    double value = 0.0;
    if (!detail::parse_double(text, value)) {
        throw std::runtime_error(context + ": unparseable number '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t require_u64(std::string_view text, const std::string& context) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error(context + ": unparseable integer '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        const std::string_view trimmed = trim(line);
        if (!trimmed.empty()) lines.emplace_back(trimmed);
    }
    return lines;
}

} // namespace

std::string read_text_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& file, std::string_view content) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing " + file.string());
}

ScenarioConfig parse_scenario(std::string_view text) {
    std::map<std::string, std::string> pairs;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t newline = text.find('\n', start);
        const std::size_t end = newline == std::string_view::npos ? text.size() : newline;
        const std::string_view line = trim(text.substr(start, end - start));
        if (!line.empty() && line.front() != '#') {
            const std::size_t equals = line.find('=');
            if (equals == std::string_view::npos) {
                throw std::runtime_error("scenario: expected key=value, got '" + std::string(line) +
                                         "'");
            }
            pairs[std::string(trim(line.substr(0, equals)))] =
                std::string(trim(line.substr(equals + 1)));
        }
        if (newline == std::string_view::npos) break;
        start = newline + 1;
    }

    ScenarioConfig scenario;
    auto take = [&](const char* key) -> std::string {
        const auto it = pairs.find(key);
        if (it == pairs.end()) {
            throw std::runtime_error(std::string("scenario: missing key '") + key + "'");
        }
        return it->second;
    };
    scenario.model.weibull_scale = require_double(take("a"), "scenario a");
    scenario.model.weibull_shape = require_double(take("b"), "scenario b");
    scenario.model.beta0 = require_double(take("beta0"), "scenario beta0");
    scenario.model.renewal_eps = require_double(take("renewal_eps"), "scenario renewal_eps");
    scenario.dimension = static_cast<int>(require_u64(take("d"), "scenario d"));
    scenario.trajectories = require_u64(take("n"), "scenario n");
    scenario.seed = require_u64(take("seed"), "scenario seed");
    return scenario;
}

std::string format_scenario(const ScenarioConfig& scenario) {
    std::string out;
    out += "a=" + format_double(scenario.model.weibull_scale) + "\n";
    out += "b=" + format_double(scenario.model.weibull_shape) + "\n";
    out += "beta0=" + format_double(scenario.model.beta0) + "\n";
    out += "renewal_eps=" + format_double(scenario.model.renewal_eps) + "\n";
    out += "d=" + std::to_string(scenario.dimension) + "\n";
    out += "n=" + std::to_string(scenario.trajectories) + "\n";
    out += "seed=" + std::to_string(scenario.seed) + "\n";
    return out;
}

ScenarioConfig load_scenario(const std::filesystem::path& file) {
    return parse_scenario(read_text_file(file));
}

void save_scenario(const std::filesystem::path& file, const ScenarioConfig& scenario) {
    write_text_file(file, format_scenario(scenario));
}

void write_dataset(const std::filesystem::path& directory, const Dataset& data,
                   const ScenarioConfig& scenario) {
    std::filesystem::create_directories(directory);
    save_scenario(directory / "scenario.cfg", scenario);

    std::string schedule = "index,time\n";
    for (std::size_t j = 0; j < data.schedule.times.size(); ++j) {
        schedule += std::to_string(j) + "," + format_double(data.schedule.times[j]) + "\n";
    }
    write_text_file(directory / "schedule.csv", schedule);

    std::string covariates = "replication,time_index";
    for (int c = 0; c < data.dimension; ++c) covariates += ",z" + std::to_string(c);
    covariates += "\n";
    for (std::size_t k = 0; k < data.covariates.size(); ++k) {
        const CovariatePath& path = data.covariates[k];
        for (std::size_t j = 0; j < path.time_points(); ++j) {
            covariates += std::to_string(k) + "," + std::to_string(j);
            for (int c = 0; c < data.dimension; ++c) {
                covariates += "," +
                              format_double(path.values[j * static_cast<std::size_t>(data.dimension) +
                                                        static_cast<std::size_t>(c)]);
            }
            covariates += "\n";
        }
    }
    write_text_file(directory / "covariates.csv", covariates);

    std::string jumps = "replication,time\n";
    for (std::size_t k = 0; k < data.counts.size(); ++k) {
        for (double time : data.counts[k].jump_times) {
            jumps += std::to_string(k) + "," + format_double(time) + "\n";
        }
    }
    write_text_file(directory / "jumps.csv", jumps);
}

Dataset read_dataset(const std::filesystem::path& directory) {
    const ScenarioConfig scenario = load_scenario(directory / "scenario.cfg");

    Dataset data;
    data.dimension = scenario.dimension;

    const auto schedule_lines = data_lines(read_text_file(directory / "schedule.csv"));
    for (std::size_t i = 1; i < schedule_lines.size(); ++i) {
        const auto fields = split_csv_line(schedule_lines[i]);
        if (fields.size() != 2) throw std::runtime_error("schedule.csv: expected index,time");
        data.schedule.times.push_back(require_double(fields[1], "schedule.csv"));
    }
    data.schedule.horizon = 1.0;

    data.covariates.assign(scenario.trajectories, CovariatePath{{}, scenario.dimension});
    const auto cov_lines = data_lines(read_text_file(directory / "covariates.csv"));
    for (std::size_t i = 1; i < cov_lines.size(); ++i) {
        const auto fields = split_csv_line(cov_lines[i]);
        if (fields.size() != 2 + static_cast<std::size_t>(scenario.dimension)) {
            throw std::runtime_error("covariates.csv: wrong field count");
        }
        const std::uint64_t replication = require_u64(fields[0], "covariates.csv");
        if (replication >= data.covariates.size()) {
            throw std::runtime_error("covariates.csv: replication out of range");
        }
        const std::uint64_t time_index = require_u64(fields[1], "covariates.csv");
        if (time_index != data.covariates[replication].time_points()) {
            throw std::runtime_error("covariates.csv: time_index out of order for replication " +
                                     std::to_string(replication));
        }
        for (int c = 0; c < scenario.dimension; ++c) {
            data.covariates[replication].values.push_back(
                require_double(fields[2 + static_cast<std::size_t>(c)], "covariates.csv"));
        }
    }

    data.counts.assign(scenario.trajectories, CountingRealization{});
    const auto jump_lines = data_lines(read_text_file(directory / "jumps.csv"));
    for (std::size_t i = 1; i < jump_lines.size(); ++i) {
        const auto fields = split_csv_line(jump_lines[i]);
        if (fields.size() != 2) throw std::runtime_error("jumps.csv: expected replication,time");
        const std::uint64_t replication = require_u64(fields[0], "jumps.csv");
        if (replication >= data.counts.size()) {
            throw std::runtime_error("jumps.csv: replication out of range");
        }
        data.counts[replication].jump_times.push_back(require_double(fields[1], "jumps.csv"));
    }

    data.validate();
    return data;
}

void write_estimates_csv(const std::filesystem::path& file, std::span<const EstimateRow> rows) {
    std::string out = "t,m_t,theta_tilde,f_hat,f_tilde,a_n,h,eta\n";
    for (const EstimateRow& row : rows) {
        out += format_double(row.t);
        out += "," + std::to_string(row.schedule_count);
        out += "," + format_double(row.result.intensity);
        out += "," + format_double(row.result.density);
        out += "," + format_double(row.result.trimmed_density);
        out += "," + format_double(row.result.trim_level);
        out += "," + format_double(row.time_bandwidth);
        out += "," + format_double(row.cov_bandwidth);
        out += "\n";
    }
    write_text_file(file, out);
}

void write_mc_summary_csv(const std::filesystem::path& file, const McSummary& summary) {
    std::string out = "t,m_t,effective_dim,true_theta,mean_estimate,mse,nrmse,median_se,q1_se,q3_se\n";
    for (const McGridRow& row : summary.rows) {
        out += format_double(row.t);
        out += "," + std::to_string(row.schedule_count);
        out += "," + std::to_string(row.effective_dim);
        out += "," + format_double(row.true_intensity);
        out += "," + format_double(row.mean_estimate);
        out += "," + format_double(row.mse);
        out += "," + format_double(row.nrmse);
        out += "," + format_double(row.median_sq_error);
        out += "," + format_double(row.q1_sq_error);
        out += "," + format_double(row.q3_sq_error);
        out += "\n";
    }
    write_text_file(file, out);
}

void write_plot_data_csv(const std::filesystem::path& file, const McSummary& summary) {
    std::string out = "t,true_theta,q1,median,q3\n";
    for (const McGridRow& row : summary.rows) {
        out += format_double(row.t);
        out += "," + format_double(row.true_intensity);
        out += "," + format_double(row.q1_estimate);
        out += "," + format_double(row.median_estimate);
        out += "," + format_double(row.q3_estimate);
        out += "\n";
    }
    write_text_file(file, out);
}

void write_statistics_csv(const std::filesystem::path& file, std::span<const double> statistics) {
    std::string out = "index,statistic\n";
    for (std::size_t i = 0; i < statistics.size(); ++i) {
        out += std::to_string(i) + "," + format_double(statistics[i]) + "\n";
    }
    write_text_file(file, out);
}

void write_eval_point_csv(const std::filesystem::path& file, const CovariatePath& point) {
    std::string out = "time_index";
    for (int c = 0; c < point.dimension; ++c) out += ",z" + std::to_string(c);
    out += "\n";
    for (std::size_t j = 0; j < point.time_points(); ++j) {
        out += std::to_string(j);
        for (int c = 0; c < point.dimension; ++c) {
            out += "," + format_double(point.values[j * static_cast<std::size_t>(point.dimension) +
                                                    static_cast<std::size_t>(c)]);
        }
        out += "\n";
    }
    write_text_file(file, out);
}

CovariatePath read_eval_point_csv(const std::filesystem::path& file, int dimension) {
    CovariatePath point;
    point.dimension = dimension;
    const auto lines = data_lines(read_text_file(file));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv_line(lines[i]);
        if (fields.size() != 1 + static_cast<std::size_t>(dimension)) {
            throw std::runtime_error("eval point csv: wrong field count");
        }
        for (int c = 0; c < dimension; ++c) {
            point.values.push_back(
                require_double(fields[1 + static_cast<std::size_t>(c)], "eval point csv"));
        }
    }
    return point;
}

} // namespace coxkde
