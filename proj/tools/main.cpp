// coxkde command line: simulate Cox-process data, run the kernel intensity
// estimator, Monte Carlo and CLT studies, and the market-data pipeline.
// Every run writes a manifest next to its outputs; `coxkde rerun` replays a
// manifest, which with --threads 1 reproduces the outputs byte for byte.

#include "coxkde/cltcheck.hpp"
#include "coxkde/dataset_io.hpp"
#include "coxkde/estimate.hpp"
#include "coxkde/ingest.hpp"
#include "coxkde/montecarlo.hpp"
#include "coxkde/rng.hpp"
#include "coxkde/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace coxkde;

namespace {

constexpr const char* kVersion = COXKDE_VERSION;

void write_manifest(const fs::path& out_dir, const std::string& subcommand, std::uint64_t seed,
                    int threads, const ordered_json& config,
                    const std::vector<std::string>& outputs) {
    ordered_json manifest;
    manifest["tool"] = "coxkde";
    manifest["version"] = kVersion;
    manifest["subcommand"] = subcommand;
    manifest["seed"] = seed;
    manifest["threads"] = threads;
    manifest["config"] = config;
    manifest["outputs"] = outputs;
    const fs::path file = out_dir / "manifest.json";
    write_text_file(file, manifest.dump(2) + "\n");
    std::cout << file.string() << "\n";
}

ordered_json model_json(const IntensityModel& model) {
    return {{"a", model.weibull_scale},
            {"b", model.weibull_shape},
            {"beta0", model.beta0},
            {"renewal_eps", model.renewal_eps}};
}

IntensityModel model_from_json(const ordered_json& config) {
    IntensityModel model;
    model.weibull_scale = config.at("a").get<double>();
    model.weibull_shape = config.at("b").get<double>();
    model.beta0 = config.at("beta0").get<double>();
    model.renewal_eps = config.at("renewal_eps").get<double>();
    return model;
}

struct BandwidthChoice {
    bool automatic = true;
    double time_bandwidth = 0.0;
    double cov_bandwidth = 0.0;
    double trim_exponent = 0.25;

    EstimatorConfig resolve(std::size_t n, int effective_dim) const {
        EstimatorConfig config;
        if (automatic) {
            const double bandwidth = bandwidth_rule(n, effective_dim);
            config.time_bandwidth = bandwidth;
            config.cov_bandwidth = bandwidth;
        } else {
            config.time_bandwidth = time_bandwidth;
            config.cov_bandwidth = cov_bandwidth;
        }
        config.trim_exponent = trim_exponent;
        return config;
    }

    ordered_json to_json() const {
        ordered_json out;
        out["auto_bandwidth"] = automatic;
        if (!automatic) {
            out["h"] = time_bandwidth;
            out["eta"] = cov_bandwidth;
        }
        out["trim_eps"] = trim_exponent;
        return out;
    }

    static BandwidthChoice from_json(const ordered_json& config) {
        BandwidthChoice choice;
        choice.automatic = config.at("auto_bandwidth").get<bool>();
        if (!choice.automatic) {
            choice.time_bandwidth = config.at("h").get<double>();
            choice.cov_bandwidth = config.at("eta").get<double>();
        }
        choice.trim_exponent = config.at("trim_eps").get<double>();
        return choice;
    }
};

// ---- simulate ----------------------------------------------------------

struct SimulateJob {
    ScenarioConfig scenario;
    int threads = 1; // recorded; the draw itself is sequential
    fs::path out_dir = ".";
};

void run_simulate(const SimulateJob& job) {
    job.scenario.model.validate();
    fs::create_directories(job.out_dir);

    RandomStream fixed_stream(job.scenario.seed, 0);
    const ObservationSchedule schedule =
        sample_schedule(job.scenario.model.renewal_eps, 1.0, fixed_stream);
    RandomStream data_stream(job.scenario.seed, 1);
    const Dataset data = sample_dataset(schedule, job.scenario.model, job.scenario.dimension,
                                        job.scenario.trajectories, data_stream);
    write_dataset(job.out_dir, data, job.scenario);

    ordered_json config = model_json(job.scenario.model);
    config["d"] = job.scenario.dimension;
    config["n"] = job.scenario.trajectories;
    write_manifest(job.out_dir, "simulate", job.scenario.seed, job.threads, config,
                   {"scenario.cfg", "schedule.csv", "covariates.csv", "jumps.csv"});
}

// ---- estimate ----------------------------------------------------------

struct EstimateJob {
    fs::path data_dir;
    std::optional<fs::path> eval_file;
    std::size_t grid = 100;
    BandwidthChoice bandwidth{};
    std::uint64_t seed = 0;
    int threads = 1; // recorded; evaluation is sequential
    fs::path out_dir = ".";
};

void run_estimate(const EstimateJob& job) {
    const Dataset data = read_dataset(job.data_dir);
    fs::create_directories(job.out_dir);

    CovariatePath eval_point;
    if (job.eval_file) {
        eval_point = read_eval_point_csv(*job.eval_file, data.dimension);
        if (eval_point.time_points() != data.schedule.times.size()) {
            throw std::runtime_error("estimate: evaluation covariate does not match the schedule");
        }
    } else {
        RandomStream stream(job.seed, 0);
        eval_point = sample_covariate(data.schedule, data.dimension, stream);
    }
    write_eval_point_csv(job.out_dir / "eval_covariate.csv", eval_point);

    std::vector<EstimateRow> rows;
    rows.reserve(job.grid);
    for (std::size_t i = 1; i <= job.grid; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(job.grid);
        EstimateRow row;
        row.t = t;
        row.schedule_count = data.schedule.count_at(t);
        const int effective_dim = data.dimension * row.schedule_count;
        const EstimatorConfig config = job.bandwidth.resolve(data.size(), effective_dim);
        row.result = intensity_estimate(t, projection_at(eval_point, data.schedule, t), data, config);
        row.time_bandwidth = config.time_bandwidth;
        row.cov_bandwidth = config.cov_bandwidth;
        rows.push_back(row);
    }
    write_estimates_csv(job.out_dir / "estimates.csv", rows);

    ordered_json config;
    config["data_dir"] = job.data_dir.string();
    config["eval_covariate"] = job.eval_file ? ordered_json(job.eval_file->string()) : ordered_json();
    config["grid"] = job.grid;
    config.update(job.bandwidth.to_json());
    write_manifest(job.out_dir, "estimate", job.seed, job.threads, config,
                   {"estimates.csv", "eval_covariate.csv"});
}

// ---- mc ----------------------------------------------------------------

struct McJob {
    McConfig config{};
    BandwidthChoice bandwidth{};
    bool plot_data = false;
    fs::path out_dir = ".";
};

void run_mc(const McJob& job) {
    McConfig config = job.config;
    config.trim_exponent = job.bandwidth.trim_exponent;
    if (!job.bandwidth.automatic) {
        config.estimator = job.bandwidth.resolve(config.trajectories, 0);
    }
    const McSummary summary = run_study(config);

    fs::create_directories(job.out_dir);
    write_mc_summary_csv(job.out_dir / "summary.csv", summary);

    ordered_json rows = ordered_json::array();
    for (const McGridRow& row : summary.rows) {
        rows.push_back({{"t", row.t},
                        {"m_t", row.schedule_count},
                        {"effective_dim", row.effective_dim},
                        {"true_theta", row.true_intensity},
                        {"mean_estimate", row.mean_estimate},
                        {"mse", row.mse},
                        {"nrmse", row.nrmse},
                        {"median_se", row.median_sq_error},
                        {"q1_se", row.q1_sq_error},
                        {"q3_se", row.q3_sq_error},
                        {"h", row.time_bandwidth},
                        {"eta", row.cov_bandwidth}});
    }
    ordered_json summary_json;
    summary_json["n"] = summary.trajectories;
    summary_json["n_mc"] = summary.replications;
    summary_json["rows"] = rows;
    write_text_file(job.out_dir / "summary.json", summary_json.dump(2) + "\n");

    std::vector<std::string> outputs = {"summary.csv", "summary.json"};
    if (job.plot_data) {
        write_plot_data_csv(job.out_dir / "plot_data.csv", summary);
        outputs.push_back("plot_data.csv");
    }

    ordered_json manifest_config = model_json(config.model);
    manifest_config["d"] = config.dimension;
    manifest_config["n"] = config.trajectories;
    manifest_config["n_mc"] = config.replications;
    manifest_config["grid"] = config.grid_size;
    manifest_config.update(job.bandwidth.to_json());
    manifest_config["plot_data"] = job.plot_data;
    write_manifest(job.out_dir, "mc", config.master_seed, config.threads, manifest_config, outputs);
}

// ---- clt ---------------------------------------------------------------

struct CltJob {
    CltConfig config{};
    fs::path out_dir = ".";
};

void run_clt(const CltJob& job) {
    const CltSample sample = run_clt_study(job.config);
    fs::create_directories(job.out_dir);

    write_statistics_csv(job.out_dir / "statistics.csv", sample.statistics);

    ordered_json result;
    result["ks_distance"] =
        sample.statistics.size() >= 100 ? ordered_json(normality_distance(sample)) : ordered_json();
    result["exclusion_rate"] = sample.exclusion_rate();
    result["excluded"] = sample.excluded;
    result["kept"] = sample.statistics.size();
    result["n"] = sample.trajectories;
    result["n_mc"] = sample.replications;
    result["h"] = sample.time_bandwidth;
    result["eta"] = sample.cov_bandwidth;
    result["effective_dim"] = sample.effective_dim;
    result["true_theta"] = sample.true_intensity;
    write_text_file(job.out_dir / "clt.json", result.dump(2) + "\n");

    ordered_json config = model_json(job.config.model);
    config["d"] = job.config.dimension;
    config["n"] = job.config.trajectories;
    config["n_mc"] = job.config.replications;
    config["t"] = job.config.eval_time;
    config["trim_eps"] = job.config.trim_exponent;
    write_manifest(job.out_dir, "clt", job.config.master_seed, job.config.threads, config,
                   {"statistics.csv", "clt.json"});
}

// ---- realdata ----------------------------------------------------------

struct RealdataJob {
    fs::path oil_file;
    std::vector<fs::path> equity_files;
    ThresholdConfig thresholds{};
    std::size_t grid = 100;
    BandwidthChoice bandwidth{};
    std::uint64_t seed = 0;
    int threads = 1; // recorded; the pipeline is sequential
    fs::path out_dir = ".";
};

template <class Parser>
MarketSeries parse_market_file(const fs::path& file, Parser parse) {
    try {
        return parse(read_text_file(file));
    } catch (const ParseError& error) {
        throw std::runtime_error(file.string() + ":" + std::to_string(error.line()) + ": " +
                                 error.what());
    }
}

void run_realdata(const RealdataJob& job) {
    const MarketSeries oil = parse_market_file(job.oil_file, parse_investing);
    std::vector<MarketSeries> companies;
    std::vector<std::string> names;
    for (const fs::path& file : job.equity_files) {
        companies.push_back(parse_market_file(file, parse_yahoo));
        names.push_back(file.stem().string());
    }

    std::vector<MarketSeries> all = companies;
    all.push_back(oil);
    const std::vector<Date> calendar = align_calendar(all);

    const auto oil_returns = percent_returns(restrict_to_calendar(oil, calendar));
    const ObservationSchedule schedule =
        build_schedule(oil_returns, job.thresholds.alpha, calendar);
    if (schedule.times.empty()) {
        throw std::runtime_error("realdata: no observation times (no driving return below alpha)");
    }

    // schedule dates, in order, for the covariate lookup
    std::vector<Date> schedule_dates;
    for (const DatedValue& item : oil_returns) {
        if (item.value < job.thresholds.alpha) schedule_dates.push_back(item.date);
    }

    Dataset data;
    data.schedule = schedule;
    data.dimension = 1;
    for (std::size_t k = 0; k < companies.size(); ++k) {
        const MarketSeries restricted = restrict_to_calendar(companies[k], calendar);
        const auto returns = percent_returns(restricted);
        data.counts.push_back(build_counts(returns, job.thresholds.beta_thr, calendar));

        const auto increments = volume_increments(restricted);
        CovariatePath path;
        path.dimension = 1;
        for (const Date& date : schedule_dates) {
            const auto it = std::find_if(increments.begin(), increments.end(),
                                         [&](const DatedValue& v) { return v.date == date; });
            if (it == increments.end()) {
                throw std::runtime_error("realdata: " + names[k] +
                                         " has no volume increment on " + date.iso());
            }
            path.values.push_back(it->value);
        }
        data.covariates.push_back(std::move(path));
    }
    data.validate();

    fs::create_directories(job.out_dir);

    ScenarioConfig scenario;
    scenario.dimension = 1;
    scenario.trajectories = data.size();
    scenario.seed = job.seed;
    write_dataset(job.out_dir, data, scenario);

    std::string companies_csv = "replication,name\n";
    for (std::size_t k = 0; k < names.size(); ++k) {
        companies_csv += std::to_string(k) + "," + names[k] + "\n";
    }
    write_text_file(job.out_dir / "companies.csv", companies_csv);

    std::string schedule_dates_csv = "index,date,time\n";
    for (std::size_t j = 0; j < schedule_dates.size(); ++j) {
        schedule_dates_csv += std::to_string(j) + "," + schedule_dates[j].iso() + "," +
                              format_double(schedule.times[j]) + "\n";
    }
    write_text_file(job.out_dir / "schedule_dates.csv", schedule_dates_csv);

    // per-company intensity curves plus the inhomogeneous-Poisson reference
    std::string curves = "company,t,theta_tilde\n";
    std::string baseline = "t,estimate\n";
    for (std::size_t i = 1; i <= job.grid; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(job.grid);
        const int effective_dim = data.schedule.count_at(t);
        const EstimatorConfig config = job.bandwidth.resolve(data.size(), effective_dim);
        for (std::size_t k = 0; k < data.size(); ++k) {
            const auto zvec = projection_at(data.covariates[k], data.schedule, t);
            const EstimateResult result = intensity_estimate(t, zvec, data, config);
            curves += names[k] + "," + format_double(t) + "," + format_double(result.intensity) +
                      "\n";
        }
        const EstimatorConfig base_config = job.bandwidth.resolve(data.size(), 0);
        baseline += format_double(t) + "," +
                    format_double(poisson_intensity_estimate(t, data, base_config.time_bandwidth)) +
                    "\n";
    }
    write_text_file(job.out_dir / "curves.csv", curves);
    write_text_file(job.out_dir / "poisson_baseline.csv", baseline);

    ordered_json config;
    config["oil"] = job.oil_file.string();
    ordered_json equity = ordered_json::array();
    for (const fs::path& file : job.equity_files) equity.push_back(file.string());
    config["equity"] = equity;
    config["alpha"] = job.thresholds.alpha;
    config["beta_thr"] = job.thresholds.beta_thr;
    config["grid"] = job.grid;
    config.update(job.bandwidth.to_json());
    write_manifest(job.out_dir, "realdata", job.seed, job.threads, config,
                   {"scenario.cfg", "schedule.csv", "covariates.csv", "jumps.csv", "companies.csv",
                    "schedule_dates.csv", "curves.csv", "poisson_baseline.csv"});
}

// ---- rerun -------------------------------------------------------------

void run_from_manifest(const fs::path& manifest_file, std::optional<fs::path> out_dir_override) {
    const ordered_json manifest = ordered_json::parse(read_text_file(manifest_file));
    const std::string subcommand = manifest.at("subcommand").get<std::string>();
    const auto seed = manifest.at("seed").get<std::uint64_t>();
    const int threads = manifest.at("threads").get<int>();
    const ordered_json& config = manifest.at("config");
    const fs::path out_dir = out_dir_override.value_or(manifest_file.parent_path());

    if (subcommand == "simulate") {
        SimulateJob job;
        job.scenario.model = model_from_json(config);
        job.scenario.dimension = config.at("d").get<int>();
        job.scenario.trajectories = config.at("n").get<std::size_t>();
        job.scenario.seed = seed;
        job.threads = threads;
        job.out_dir = out_dir;
        run_simulate(job);
    } else if (subcommand == "estimate") {
        EstimateJob job;
        job.data_dir = config.at("data_dir").get<std::string>();
        if (!config.at("eval_covariate").is_null()) {
            job.eval_file = fs::path(config.at("eval_covariate").get<std::string>());
        }
        job.grid = config.at("grid").get<std::size_t>();
        job.bandwidth = BandwidthChoice::from_json(config);
        job.seed = seed;
        job.threads = threads;
        job.out_dir = out_dir;
        run_estimate(job);
    } else if (subcommand == "mc") {
        McJob job;
        job.config.model = model_from_json(config);
        job.config.dimension = config.at("d").get<int>();
        job.config.trajectories = config.at("n").get<std::size_t>();
        job.config.replications = config.at("n_mc").get<std::size_t>();
        job.config.grid_size = config.at("grid").get<std::size_t>();
        job.config.master_seed = seed;
        job.config.threads = threads;
        job.bandwidth = BandwidthChoice::from_json(config);
        job.plot_data = config.at("plot_data").get<bool>();
        job.out_dir = out_dir;
        run_mc(job);
    } else if (subcommand == "clt") {
        CltJob job;
        job.config.model = model_from_json(config);
        job.config.dimension = config.at("d").get<int>();
        job.config.trajectories = config.at("n").get<std::size_t>();
        job.config.replications = config.at("n_mc").get<std::size_t>();
        job.config.eval_time = config.at("t").get<double>();
        job.config.trim_exponent = config.at("trim_eps").get<double>();
        job.config.master_seed = seed;
        job.config.threads = threads;
        job.out_dir = out_dir;
        run_clt(job);
    } else if (subcommand == "realdata") {
        RealdataJob job;
        job.oil_file = config.at("oil").get<std::string>();
        for (const auto& file : config.at("equity")) {
            job.equity_files.emplace_back(file.get<std::string>());
        }
        job.thresholds.alpha = config.at("alpha").get<double>();
        job.thresholds.beta_thr = config.at("beta_thr").get<double>();
        job.grid = config.at("grid").get<std::size_t>();
        job.bandwidth = BandwidthChoice::from_json(config);
        job.seed = seed;
        job.threads = threads;
        job.out_dir = out_dir;
        run_realdata(job);
    } else {
        throw std::runtime_error("rerun: unknown subcommand '" + subcommand + "'");
    }
}

// Returns the --h option; the caller decides `automatic` from its count.
CLI::Option* add_bandwidth_flags(CLI::App* cmd, BandwidthChoice& choice) {
    auto* auto_flag = cmd->add_flag("--auto-bandwidth",
                                    "bandwidths from the n^(-1/(5+dim)) rule per grid time (default)");
    auto* h_opt = cmd->add_option("--h", choice.time_bandwidth, "fixed time bandwidth");
    auto* eta_opt = cmd->add_option("--eta", choice.cov_bandwidth, "fixed covariate bandwidth");
    h_opt->needs(eta_opt);
    eta_opt->needs(h_opt);
    h_opt->excludes(auto_flag);
    eta_opt->excludes(auto_flag);
    cmd->add_option("--trim-eps", choice.trim_exponent, "trimming exponent in (0, 1/2)")
        ->capture_default_str();
    return h_opt;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cox process simulation and trimmed kernel intensity estimation"};
    app.set_help_flag("--help", "print help"); // --h is an estimator flag
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    auto add_subcommand = [&](const std::string& name, const std::string& description) {
        auto* cmd = app.add_subcommand(name, description);
        cmd->set_help_flag("--help", "print help");
        return cmd;
    };

    // simulate
    SimulateJob simulate_job;
    std::string scenario_file;
    auto* sim = add_subcommand("simulate", "draw a schedule and n trajectories, write CSVs");
    auto* sim_cfg = sim->add_option("--config", scenario_file, "scenario file (key=value)");
    auto* sim_a = sim->add_option("--a", simulate_job.scenario.model.weibull_scale, "Weibull scale");
    auto* sim_b = sim->add_option("--b", simulate_job.scenario.model.weibull_shape, "Weibull shape");
    auto* sim_beta = sim->add_option("--beta0", simulate_job.scenario.model.beta0, "covariate coupling");
    auto* sim_eps =
        sim->add_option("--renewal-eps", simulate_job.scenario.model.renewal_eps, "schedule shift");
    auto* sim_d = sim->add_option("--d", simulate_job.scenario.dimension, "covariate dimension");
    auto* sim_n = sim->add_option("--n", simulate_job.scenario.trajectories, "trajectories");
    auto* sim_seed = sim->add_option("--seed", simulate_job.scenario.seed, "master seed");
    sim->add_option("--threads", simulate_job.threads, "worker threads (recorded)")
        ->capture_default_str();
    sim->add_option("--out-dir", simulate_job.out_dir, "output directory")->capture_default_str();
    sim->callback([&] {
        if (sim_cfg->count() > 0) {
            ScenarioConfig base = load_scenario(scenario_file);
            if (sim_a->count() == 0) simulate_job.scenario.model.weibull_scale = base.model.weibull_scale;
            if (sim_b->count() == 0) simulate_job.scenario.model.weibull_shape = base.model.weibull_shape;
            if (sim_beta->count() == 0) simulate_job.scenario.model.beta0 = base.model.beta0;
            if (sim_eps->count() == 0) simulate_job.scenario.model.renewal_eps = base.model.renewal_eps;
            if (sim_d->count() == 0) simulate_job.scenario.dimension = base.dimension;
            if (sim_n->count() == 0) simulate_job.scenario.trajectories = base.trajectories;
            if (sim_seed->count() == 0) simulate_job.scenario.seed = base.seed;
        }
        run_simulate(simulate_job);
    });

    // estimate
    EstimateJob estimate_job;
    std::string estimate_data;
    std::string estimate_eval;
    auto* est = add_subcommand("estimate", "evaluate the trimmed estimator on a dataset");
    est->add_option("--data", estimate_data, "dataset directory from `simulate` or `realdata`")
        ->required();
    auto* est_eval =
        est->add_option("--eval-covariate", estimate_eval, "evaluation covariate CSV; fresh draw if absent");
    est->add_option("--grid", estimate_job.grid, "evaluation grid size")->capture_default_str();
    est->add_option("--seed", estimate_job.seed, "master seed");
    est->add_option("--threads", estimate_job.threads, "worker threads (recorded)")
        ->capture_default_str();
    est->add_option("--out-dir", estimate_job.out_dir, "output directory")->capture_default_str();
    auto* est_h = add_bandwidth_flags(est, estimate_job.bandwidth);
    est->callback([&, est_h] {
        estimate_job.bandwidth.automatic = est_h->count() == 0;
        estimate_job.data_dir = estimate_data;
        if (est_eval->count() > 0) estimate_job.eval_file = fs::path(estimate_eval);
        run_estimate(estimate_job);
    });

    // mc
    McJob mc_job;
    auto* mc = add_subcommand("mc", "Monte Carlo study over a time grid");
    mc->add_option("--a", mc_job.config.model.weibull_scale, "Weibull scale")->capture_default_str();
    mc->add_option("--b", mc_job.config.model.weibull_shape, "Weibull shape")->capture_default_str();
    mc->add_option("--beta0", mc_job.config.model.beta0, "covariate coupling")->capture_default_str();
    mc->add_option("--renewal-eps", mc_job.config.model.renewal_eps, "schedule shift")
        ->capture_default_str();
    mc->add_option("--d", mc_job.config.dimension, "covariate dimension")->capture_default_str();
    mc->add_option("--n", mc_job.config.trajectories, "trajectories per replication")
        ->capture_default_str();
    mc->add_option("--n-mc", mc_job.config.replications, "replications")->capture_default_str();
    mc->add_option("--grid", mc_job.config.grid_size, "time grid size")->capture_default_str();
    mc->add_option("--seed", mc_job.config.master_seed, "master seed");
    mc->add_option("--threads", mc_job.config.threads, "worker threads")->capture_default_str();
    mc->add_flag("--plot-data", mc_job.plot_data, "also write (t, true, q1, median, q3) series");
    mc->add_option("--out-dir", mc_job.out_dir, "output directory")->capture_default_str();
    auto* mc_h = add_bandwidth_flags(mc, mc_job.bandwidth);
    mc->callback([&, mc_h] {
        mc_job.bandwidth.automatic = mc_h->count() == 0;
        run_mc(mc_job);
    });

    // clt
    CltJob clt_job;
    auto* clt = add_subcommand("clt", "normality check of the studentized estimator");
    clt->add_option("--a", clt_job.config.model.weibull_scale, "Weibull scale")->capture_default_str();
    clt->add_option("--b", clt_job.config.model.weibull_shape, "Weibull shape")->capture_default_str();
    clt->add_option("--beta0", clt_job.config.model.beta0, "covariate coupling")->capture_default_str();
    clt->add_option("--renewal-eps", clt_job.config.model.renewal_eps, "schedule shift")
        ->capture_default_str();
    clt->add_option("--d", clt_job.config.dimension, "covariate dimension")->capture_default_str();
    clt->add_option("--n", clt_job.config.trajectories, "trajectories per replication")
        ->capture_default_str();
    clt->add_option("--n-mc", clt_job.config.replications, "replications")->capture_default_str();
    clt->add_option("--t", clt_job.config.eval_time, "evaluation time")->capture_default_str();
    clt->add_option("--trim-eps", clt_job.config.trim_exponent, "trimming exponent")
        ->capture_default_str();
    clt->add_option("--seed", clt_job.config.master_seed, "master seed");
    clt->add_option("--threads", clt_job.config.threads, "worker threads")->capture_default_str();
    clt->add_option("--out-dir", clt_job.out_dir, "output directory")->capture_default_str();
    clt->callback([&] { run_clt(clt_job); });

    // realdata
    RealdataJob real_job;
    std::string oil_file;
    std::vector<std::string> equity_files;
    auto* real = add_subcommand("realdata", "market-data pipeline and per-company curves");
    real->add_option("--oil", oil_file, "Investing.com-format CSV of the driving series")->required();
    real->add_option("--equity", equity_files, "Yahoo-format company CSVs")->required();
    real->add_option("--alpha", real_job.thresholds.alpha, "schedule trigger threshold")
        ->capture_default_str();
    real->add_option("--beta-thr", real_job.thresholds.beta_thr, "jump trigger threshold")
        ->capture_default_str();
    real->add_option("--grid", real_job.grid, "curve grid size")->capture_default_str();
    real->add_option("--seed", real_job.seed, "master seed (recorded only)");
    real->add_option("--threads", real_job.threads, "worker threads (recorded)")
        ->capture_default_str();
    real->add_option("--out-dir", real_job.out_dir, "output directory")->capture_default_str();
    auto* real_h = add_bandwidth_flags(real, real_job.bandwidth);
    real->callback([&, real_h] {
        real_job.bandwidth.automatic = real_h->count() == 0;
        real_job.oil_file = oil_file;
        real_job.equity_files.assign(equity_files.begin(), equity_files.end());
        run_realdata(real_job);
    });

    // rerun
    std::string manifest_file;
    std::string rerun_out;
    auto* rerun = add_subcommand("rerun", "replay a manifest");
    rerun->add_option("manifest", manifest_file, "manifest.json from a previous run")->required();
    auto* rerun_out_opt = rerun->add_option("--out-dir", rerun_out, "override output directory");
    rerun->callback([&] {
        std::optional<fs::path> override_dir;
        if (rerun_out_opt->count() > 0) override_dir = fs::path(rerun_out);
        run_from_manifest(manifest_file, override_dir);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        return app.exit(error);
    } catch (const std::exception& error) {
        std::cerr << "coxkde: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
