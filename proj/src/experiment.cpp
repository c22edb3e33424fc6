#include "lrtc/experiment.hpp"

#include <chrono>

#include <fmt/format.h>

#include "lrtc/error.hpp"
#include "lrtc/metrics.hpp"

namespace lrtc {

namespace {

// Keeps holdout draws independent of the scenario draw with the same seed.
constexpr std::uint64_t kHoldoutSeedOffset = 0x9E3779B97F4A7C15ULL;

struct Scores {
    double mape;
    double rmse;
};

Scores score(const Tensor3& truth, const Tensor3& estimate, const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw DegenerateError("evaluation set is empty: no known entry was hidden");
    std::vector<double> t, e;
    t.reserve(indices.size());
    e.reserve(indices.size());
    for (auto i : indices) {
        t.push_back(truth[i]);
        e.push_back(estimate[i]);
    }
    return {mape(t, e), rmse(t, e)};
}

void require_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw ConfigError("theta grid is empty");
    for (double theta : grid)
        if (!(theta >= 0.0 && theta < 1.0)) throw ConfigError(fmt::format("grid theta {} is outside [0, 1)", theta));
}

} // namespace

std::vector<std::size_t> evaluation_indices(const ObservationMask& native, const ObservationMask& visible) {
    require_same_dims(native.dims(), visible.dims(), "evaluation_indices");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < native.size(); ++i)
        if (native.observed(i) && !visible.observed(i)) out.push_back(i);
    return out;
}

EvaluationReport run_experiment(const Tensor3& data, const ObservationMask& native,
                                const MissingScenario& scenario, const SolverConfig& config,
                                const SolveFn& solver) {
    validate(scenario);
    require_same_dims(data.dims(), native.dims(), "run_experiment");
    const ObservationMask visible = intersect(native, generate_mask(data.dims(), scenario));
    const auto holdout = evaluation_indices(native, visible);
    if (holdout.empty()) throw DegenerateError("scenario hides no natively observed entry");

    const auto start = std::chrono::steady_clock::now();
    const SolverResult result = solver(project_omega(data, visible), visible, config);
    const auto stop = std::chrono::steady_clock::now();

    const Scores s = score(data, result.recovered, holdout);
    EvaluationReport report;
    report.scenario = scenario;
    report.config = config;
    report.mape = s.mape;
    report.rmse = s.rmse;
    report.iterations = result.iterations;
    report.converged = result.converged;
    report.wall_time_s = std::chrono::duration<double>(stop - start).count();
    report.evaluated = holdout.size();
    return report;
}

HoldoutSplit holdout_split(const ObservationMask& visible, MissingPattern pattern, double fraction,
                           std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw ConfigError(fmt::format("validation fraction {} is outside (0, 1)", fraction));
    const MissingScenario draw{pattern, fraction, seed + kHoldoutSeedOffset};
    const ObservationMask kept = generate_mask(visible.dims(), draw);
    return {intersect(visible, kept), intersect(visible, kept.complement())};
}

CrossValidationResult cross_validate_theta(const Tensor3& data, const ObservationMask& native,
                                           const MissingScenario& scenario, const std::vector<double>& grid,
                                           double validation_fraction, std::uint64_t seed,
                                           const SolverConfig& base_config, const SolveFn& solver) {
    require_grid(grid);
    validate(scenario);
    require_same_dims(data.dims(), native.dims(), "cross_validate_theta");
    const ObservationMask visible = intersect(native, generate_mask(data.dims(), scenario));
    const HoldoutSplit split = holdout_split(visible, scenario.pattern, validation_fraction, seed);
    const auto holdout = evaluation_indices(visible, split.training);
    const Tensor3 training_data = project_omega(data, split.training);

    CrossValidationResult cv;
    for (double theta : grid) {
        SolverConfig config = base_config;
        config.theta = theta;
        const SolverResult result = solver(training_data, split.training, config);
        const Scores s = score(data, result.recovered, holdout);
        cv.scores.push_back({theta, s.mape, s.rmse, result.iterations, result.converged});
    }
    const ThetaScore* best = &cv.scores.front();
    for (const auto& entry : cv.scores)
        if (entry.mape < best->mape || (entry.mape == best->mape && entry.theta < best->theta)) best = &entry;
    cv.best_theta = best->theta;
    return cv;
}

} // namespace lrtc
