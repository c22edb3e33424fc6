#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "lrtc/error.hpp"
#include "lrtc/experiment.hpp"
#include "lrtc/masks.hpp"
#include "lrtc/report.hpp"
#include "lrtc/run_config.hpp"
#include "lrtc/solver.hpp"
#include "lrtc/synth.hpp"
#include "lrtc/tensor_io.hpp"

namespace lrtc::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Accepts "61 144", "61,144" or separate arguments.
std::vector<std::size_t> parse_extents(const std::vector<std::string>& parts, std::size_t expected,
                                       std::string_view flag) {
    std::vector<std::size_t> out;
    for (const auto& part : parts) {
        std::string token;
        std::istringstream in(part);
        while (std::getline(in, token, ',')) {
            std::istringstream words(token);
            std::string word;
            while (words >> word) {
                std::size_t v = 0;
                const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
                if (ec != std::errc{} || ptr != word.data() + word.size() || v == 0)
                    throw ConfigError(fmt::format("{}: '{}' is not a positive integer", flag, word));
                out.push_back(v);
            }
        }
    }
    if (out.size() != expected)
        throw ConfigError(fmt::format("{} needs {} positive integers, got {}", flag, expected, out.size()));
    return out;
}

RunConfig load_config_flag(const std::optional<std::string>& path) {
    return path ? load_run_config(*path) : RunConfig{};
}

std::string checked_solver(const std::string& name) {
    if (name != "tnn" && name != "halrtc")
        throw ConfigError(fmt::format("unknown solver '{}' (expected tnn or halrtc)", name));
    return name;
}

// ---------------------------------------------------------------- solver flags

struct SolverFlags {
    std::optional<double> theta;
    std::optional<double> rho0;
    std::optional<double> rho_max;
    std::optional<double> rho_mult;
    std::optional<double> epsilon;
    std::optional<int> max_iter;
    bool serial = false;
};

void add_solver_flags(CLI::App& app, SolverFlags& f, bool with_theta) {
    if (with_theta) app.add_option("--theta", f.theta, "Truncation rate in [0, 1) (default 0.1)");
    app.add_option("--rho0", f.rho0, "Initial ADMM penalty (default 1e-5)");
    app.add_option("--rho-max", f.rho_max, "Penalty cap (default 1e5)");
    app.add_option("--rho-mult", f.rho_mult, "Per-iteration penalty multiplier (default 1.05)");
    app.add_option("--epsilon", f.epsilon, "Convergence tolerance (default 1e-4)");
    app.add_option("--max-iter", f.max_iter, "Iteration cap (default 200)");
    app.add_flag("--serial", f.serial, "Run the serial reference kernels");
}

constexpr double kDefaultTheta = 0.10;

SolverConfig resolve_solver(const SolverFlags& f, const RunConfig& file) {
    SolverConfig c;
    c.theta = kDefaultTheta;
    c = merge_solver_config(file, c);
    if (f.theta) c.theta = *f.theta;
    if (f.rho0) c.rho0 = *f.rho0;
    if (f.rho_max) c.rho_max = *f.rho_max;
    if (f.rho_mult) c.rho_mult = *f.rho_mult;
    if (f.epsilon) c.epsilon = *f.epsilon;
    if (f.max_iter) c.max_iter = *f.max_iter;
    if (f.serial) c.execution = Execution::serial;
    validate(c);
    return c;
}

// ---------------------------------------------------------------- data source

struct SourceFlags {
    std::optional<std::string> input;
    std::optional<std::string> format;
    std::vector<std::string> dims;
    std::optional<std::string> synth;
    std::uint64_t synth_seed = 0;
    double synth_offset = 10.0;
};

void add_source_flags(CLI::App& app, SourceFlags& f, bool with_synth) {
    app.add_option("--input", f.input, "Data file");
    app.add_option("--format", f.format, "Input format: dense or csv (default dense)");
    app.add_option("--dims", f.dims, "Days and intervals per day for CSV input, e.g. \"61 144\"")->expected(1, 2);
    if (with_synth) {
        app.add_option("--synth", f.synth, "Synthetic low-rank data instead of --input: n1,n2,n3,rank");
        app.add_option("--synth-seed", f.synth_seed, "Seed of the synthetic factors (default 0)");
        app.add_option("--synth-offset", f.synth_offset, "Constant added to synthetic data (default 10)");
    }
}

LoadedTensor load_source(const SourceFlags& f, const RunConfig& file) {
    const auto input = f.input ? f.input : file.input;
    if (f.synth) {
        if (input) throw UsageError("--input and --synth are mutually exclusive");
        const auto parts = parse_extents({*f.synth}, 4, "--synth");
        SynthSpec spec;
        spec.dims = {parts[0], parts[1], parts[2]};
        spec.rank = parts[3];
        spec.offset = f.synth_offset;
        spec.seed = f.synth_seed;
        Tensor3 t = synth_lowrank(spec);
        return {std::move(t), ObservationMask(spec.dims, true)};
    }
    if (!input) throw UsageError("an input is required (--input or 'input' in --config)");

    const TensorFormat format = f.format ? parse_format(*f.format) : file.format.value_or(TensorFormat::dense);
    std::optional<CsvLayout> layout = file.dims;
    if (!f.dims.empty()) {
        const auto d = parse_extents(f.dims, 2, "--dims");
        layout = CsvLayout{d[0], d[1]};
    }
    if (format == TensorFormat::csv && !layout) throw UsageError("CSV input requires --dims \"days intervals\"");
    return load_tensor(*input, format, layout);
}

// ---------------------------------------------------------------- scenario lists

struct ScenarioFlags {
    std::vector<std::string> patterns;
    std::vector<double> rates;
    std::vector<std::uint64_t> seeds;
};

void add_scenario_flags(CLI::App& app, ScenarioFlags& f, bool multiple) {
    const char* suffix = multiple ? " (repeatable)" : "";
    auto* p = app.add_option("--pattern", f.patterns, fmt::format("Missing pattern rm or nm{}", suffix));
    auto* r = app.add_option("--rate", f.rates, fmt::format("Missing rate in (0, 1){}", suffix));
    auto* s = app.add_option("--seed", f.seeds, fmt::format("Mask seed{}", suffix));
    if (multiple) {
        p->delimiter(',');
        r->delimiter(',');
        s->delimiter(',');
    } else {
        p->expected(1);
        r->expected(1);
        s->expected(1);
    }
}

std::vector<MissingScenario> resolve_scenarios(const ScenarioFlags& f, const RunConfig& file) {
    std::vector<MissingPattern> patterns;
    for (const auto& p : f.patterns) patterns.push_back(parse_pattern(p));
    if (patterns.empty()) patterns.push_back(file.pattern.value_or(MissingPattern::random));
    std::vector<double> rates = f.rates;
    if (rates.empty()) rates.push_back(file.rate.value_or(0.2));
    std::vector<std::uint64_t> seeds = f.seeds;
    if (seeds.empty()) seeds.push_back(file.seed.value_or(0));

    std::vector<MissingScenario> out;
    for (auto p : patterns)
        for (double r : rates)
            for (auto s : seeds) {
                MissingScenario sc{p, r, s};
                validate(sc);
                out.push_back(sc);
            }
    return out;
}

double resolve_holdout(const std::optional<double>& flag, const RunConfig& file, double fallback) {
    const double h = flag.value_or(file.holdout_fraction.value_or(fallback));
    if (!(h > 0.0 && h < 1.0)) throw ConfigError(fmt::format("holdout fraction {} is outside (0, 1)", h));
    return h;
}

int resolve_jobs(const std::optional<int>& flag) {
    if (flag) {
        if (*flag < 1) throw ConfigError("--jobs must be at least 1");
        return *flag;
    }
    if (const char* env = std::getenv(kJobsEnv)) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

// ---------------------------------------------------------------- impute

struct ImputeCommand {
    SourceFlags source;
    SolverFlags solver;
    std::optional<std::string> solver_name;
    std::optional<std::string> output;
    std::optional<std::string> output_format;
    std::optional<std::string> trace_output;
    std::optional<std::string> config;

    void attach(CLI::App& app) {
        add_source_flags(app, source, false);
        add_solver_flags(app, solver, true);
        app.add_option("--solver", solver_name, "tnn (default) or halrtc");
        app.add_option("--output", output, "Recovered tensor path");
        app.add_option("--output-format", output_format, "dense or csv (default: input format)");
        app.add_option("--trace-output", trace_output, "Convergence trace CSV path");
        app.add_option("--config", config, "Run configuration file");
    }

    int run(std::ostream& out, std::ostream& err) const {
        const RunConfig file = load_config_flag(config);
        const std::string name = checked_solver(solver_name ? *solver_name : file.solver.value_or("tnn"));
        SolverConfig cfg = resolve_solver(solver, file);
        if (name == "halrtc") cfg.theta = 0.0;
        const auto out_path = output ? output : file.output;
        if (!out_path) throw UsageError("--output is required");

        const LoadedTensor data = load_source(source, file);
        const SolverResult result =
            name == "halrtc" ? solve_halrtc(data.tensor, data.mask, cfg) : solve(data.tensor, data.mask, cfg);

        const TensorFormat in_format =
            source.format ? parse_format(*source.format) : file.format.value_or(TensorFormat::dense);
        const TensorFormat out_format = output_format ? parse_format(*output_format) : in_format;
        save_tensor(*out_path, out_format, result.recovered);
        if (const auto trace = trace_output ? trace_output : file.trace_output) {
            std::ofstream t(*trace, std::ios::binary);
            if (!t) throw IoError(fmt::format("cannot write '{}'", *trace));
            write_trace_csv(t, result);
        }

        for (const auto& w : result.warnings) fmt::print(err, "warning: {}\n", w);
        if (!result.converged)
            fmt::print(err, "warning: no convergence within {} iterations (last ratio {:.3e})\n", result.iterations,
                       result.trace.empty() ? 0.0 : result.trace.back());
        fmt::print(out, "solver={} theta={} iterations={} converged={}\n", name, cfg.theta, result.iterations,
                   result.converged ? "true" : "false");
        return int(ExitCode::ok);
    }
};

// ---------------------------------------------------------------- benchmark

struct BenchmarkCommand {
    SourceFlags source;
    SolverFlags solver;
    ScenarioFlags scenarios;
    std::vector<double> thetas;
    std::vector<std::string> solvers;
    std::vector<double> cv_grid;
    std::optional<double> holdout;
    std::optional<std::string> report;
    std::optional<int> jobs;
    std::optional<std::string> config;

    void attach(CLI::App& app) {
        add_source_flags(app, source, true);
        add_solver_flags(app, solver, false);
        add_scenario_flags(app, scenarios, true);
        app.add_option("--theta", thetas, "Truncation rates for tnn (repeatable, default 0.1)")->delimiter(',');
        app.add_option("--solver", solvers, "tnn and/or halrtc (repeatable, default tnn)")->delimiter(',');
        app.add_option("--cv-grid", cv_grid, "Pick the tnn theta per scenario by cross-validation over this grid")
            ->delimiter(',');
        app.add_option("--holdout-fraction", holdout, "Validation share for --cv-grid (default 0.2)");
        app.add_option("--report", report, "Report path (.json for JSON, CSV otherwise)");
        app.add_option("--jobs", jobs, fmt::format("Concurrent runs (default ${} or 1)", kJobsEnv));
        app.add_option("--config", config, "Run configuration file");
    }

    struct Job {
        MissingScenario scenario;
        std::string solver;
        double theta;
        bool cross_validate;
    };

    int run(std::ostream& out, std::ostream&) const {
        const RunConfig file = load_config_flag(config);
        const SolverConfig base = resolve_solver(solver, file);
        const auto scenario_list = resolve_scenarios(scenarios, file);
        std::vector<std::string> solver_list;
        for (const auto& s : solvers) solver_list.push_back(checked_solver(s));
        if (solver_list.empty()) solver_list.push_back(checked_solver(file.solver.value_or("tnn")));
        std::vector<double> theta_list = thetas;
        if (theta_list.empty()) theta_list.push_back(base.theta);
        for (double t : theta_list)
            if (!(t >= 0.0 && t < 1.0)) throw ConfigError(fmt::format("theta {} is outside [0, 1)", t));
        std::vector<double> grid = cv_grid;
        if (grid.empty() && file.theta_grid && file.theta_grid->size() > 0 && thetas.empty()) grid = *file.theta_grid;
        const double holdout_fraction = resolve_holdout(holdout, file, 0.2);
        const int job_count = resolve_jobs(jobs);
        const LoadedTensor data = load_source(source, file);

        std::vector<Job> work;
        for (const auto& sc : scenario_list)
            for (const auto& name : solver_list) {
                if (name == "halrtc")
                    work.push_back({sc, name, 0.0, false});
                else if (!grid.empty())
                    work.push_back({sc, name, 0.0, true});
                else
                    for (double t : theta_list) work.push_back({sc, name, t, false});
            }

        std::vector<ReportRow> rows(work.size());
        std::vector<std::exception_ptr> failures(work.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(job_count) if (job_count > 1)
        for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(work.size()); ++i) {
            const Job& job = work[std::size_t(i)];
            try {
                SolverConfig cfg = base;
                cfg.theta = job.theta;
                if (job.cross_validate)
                    cfg.theta = cross_validate_theta(data.tensor, data.mask, job.scenario, grid, holdout_fraction,
                                                     job.scenario.seed, base)
                                    .best_theta;
                const SolveFn fn = job.solver == "halrtc" ? SolveFn([](const Tensor3& y, const ObservationMask& m,
                                                                       const SolverConfig& c) {
                    return solve_halrtc(y, m, c);
                })
                                                          : SolveFn(solve);
                const EvaluationReport r = run_experiment(data.tensor, data.mask, job.scenario, cfg, fn);
                rows[std::size_t(i)] = {std::string(to_string(job.scenario.pattern)), job.scenario.rate,
                                        job.scenario.seed, job.solver, cfg.theta, r.mape, r.rmse, r.iterations,
                                        r.wall_time_s};
            } catch (...) {
                failures[std::size_t(i)] = std::current_exception();
            }
        }
        for (const auto& f : failures)
            if (f) std::rethrow_exception(f);

        sort_rows(rows);
        write_report_table(out, rows);
        if (const auto path = report ? report : file.report) {
            std::ofstream r(*path, std::ios::binary);
            if (!r) throw IoError(fmt::format("cannot write '{}'", *path));
            if (path->size() >= 5 && path->substr(path->size() - 5) == ".json")
                write_report_json(r, rows);
            else
                write_report_csv(r, rows);
        }
        return int(ExitCode::ok);
    }
};

// ---------------------------------------------------------------- cv

struct CvCommand {
    SourceFlags source;
    SolverFlags solver;
    ScenarioFlags scenario;
    std::vector<double> grid;
    std::optional<double> holdout;
    std::optional<std::string> config;

    void attach(CLI::App& app) {
        add_source_flags(app, source, true);
        add_solver_flags(app, solver, false);
        add_scenario_flags(app, scenario, false);
        app.add_option("--grid", grid, "Candidate thetas (default 0.05,0.10,...,0.30)")->delimiter(',');
        app.add_option("--holdout-fraction", holdout, "Validation share of the visible entries (default 0.2)");
        app.add_option("--config", config, "Run configuration file");
    }

    int run(std::ostream& out, std::ostream&) const {
        const RunConfig file = load_config_flag(config);
        const SolverConfig base = resolve_solver(solver, file);
        const MissingScenario sc = resolve_scenarios(scenario, file).front();
        std::vector<double> candidates = grid;
        if (candidates.empty()) candidates = file.theta_grid.value_or(kDefaultThetaGrid);
        const double fraction = resolve_holdout(holdout, file, 0.2);
        const LoadedTensor data = load_source(source, file);

        const CrossValidationResult cv =
            cross_validate_theta(data.tensor, data.mask, sc, candidates, fraction, sc.seed, base);
        fmt::print(out, "{:>7}{:>12}{:>12}{:>7}  {}\n", "theta", "MAPE", "RMSE", "iters", "converged");
        for (const auto& s : cv.scores)
            fmt::print(out, "{:>7.2f}{:>12.4f}{:>12.4f}{:>7}  {}\n", s.theta, s.mape, s.rmse, s.iterations,
                       s.converged ? "yes" : "no");
        fmt::print(out, "selected theta: {}\n", cv.best_theta);
        return int(ExitCode::ok);
    }
};

// ---------------------------------------------------------------- synth

struct SynthCommand {
    std::vector<std::string> dims;
    std::size_t rank = 3;
    double offset = 10.0;
    std::uint64_t seed = 0;
    bool unit_factors = false;
    std::optional<std::string> output;
    std::string format = "dense";
    std::optional<std::string> pattern;
    std::optional<double> rate;
    std::uint64_t mask_seed = 0;

    void attach(CLI::App& app) {
        app.add_option("--dims", dims, "Extents n1 n2 n3")->expected(1, 3)->required();
        app.add_option("--rank", rank, "CP rank (default 3)");
        app.add_option("--offset", offset, "Constant added to every entry (default 10)");
        app.add_option("--seed", seed, "Factor seed (default 0)");
        app.add_flag("--unit-factors", unit_factors, "Use all-ones factors instead of random ones");
        app.add_option("--output", output, "Output path")->required();
        app.add_option("--format", format, "dense (default) or csv");
        app.add_option("--pattern", pattern, "Also hide entries with this pattern (rm or nm), written as nan");
        app.add_option("--rate", rate, "Missing rate for --pattern");
        app.add_option("--mask-seed", mask_seed, "Seed for --pattern (default 0)");
    }

    int run(std::ostream& out, std::ostream&) const {
        const auto d = parse_extents(dims, 3, "--dims");
        SynthSpec spec;
        spec.dims = {d[0], d[1], d[2]};
        spec.rank = rank;
        spec.offset = offset;
        spec.seed = seed;
        spec.unit_factors = unit_factors;
        const Tensor3 t = synth_lowrank(spec);
        const TensorFormat fmt_out = parse_format(format);
        if (pattern) {
            if (!rate) throw UsageError("--pattern needs --rate");
            const ObservationMask mask = generate_mask(spec.dims, {parse_pattern(*pattern), *rate, mask_seed});
            save_tensor(*output, fmt_out, t, &mask);
            fmt::print(out, "wrote {} ({} of {} entries observed)\n", *output, mask.observed_count(), mask.size());
        } else {
            save_tensor(*output, fmt_out, t);
            fmt::print(out, "wrote {}\n", *output);
        }
        return int(ExitCode::ok);
    }
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Low-rank tensor completion with truncated nuclear norm minimization", "lrtc"};
    app.require_subcommand(1);

    ImputeCommand impute;
    BenchmarkCommand benchmark;
    CvCommand cv;
    SynthCommand synth;
    auto* impute_app = app.add_subcommand("impute", "Fill the missing entries of a tensor");
    auto* bench_app = app.add_subcommand("benchmark", "Masked-imputation experiments with MAPE/RMSE report");
    auto* cv_app = app.add_subcommand("cv", "Choose theta by holdout cross-validation");
    auto* synth_app = app.add_subcommand("synth", "Write a synthetic low-rank tensor");
    impute.attach(*impute_app);
    benchmark.attach(*bench_app);
    cv.attach(*cv_app);
    synth.attach(*synth_app);

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? int(ExitCode::ok) : int(ExitCode::usage);
    }

    try {
        if (impute_app->parsed()) return impute.run(out, err);
        if (bench_app->parsed()) return benchmark.run(out, err);
        if (cv_app->parsed()) return cv.run(out, err);
        return synth.run(out, err);
    } catch (const UsageError& e) {
        fmt::print(err, "usage error: {}\n", e.what());
        return int(ExitCode::usage);
    } catch (const lrtc::ParseError& e) {
        fmt::print(err, "parse error: {}\n", e.what());
        return int(ExitCode::parse);
    } catch (const lrtc::ConfigError& e) {
        fmt::print(err, "config error: {}\n", e.what());
        return int(ExitCode::config);
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return int(ExitCode::runtime);
    }
}

} // namespace lrtc::cli
