#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lrtc/masks.hpp"
#include "lrtc/solver.hpp"
#include "lrtc/tensor.hpp"

namespace lrtc {

using SolveFn = std::function<SolverResult(const Tensor3&, const ObservationMask&, const SolverConfig&)>;

/// Candidate theta values searched by default during cross-validation.
inline const std::vector<double> kDefaultThetaGrid{0.05, 0.10, 0.15, 0.20, 0.25, 0.30};

struct EvaluationReport {
    MissingScenario scenario;
    SolverConfig config;
    double mape = 0.0;
    double rmse = 0.0;
    int iterations = 0;
    bool converged = false;
    double wall_time_s = 0.0;
    /// Number of entries that entered the metrics.
    std::size_t evaluated = 0;
};

/// Linear indices that are natively observed but hidden by the scenario:
/// the only entries with known ground truth that the solver never saw.
std::vector<std::size_t> evaluation_indices(const ObservationMask& native, const ObservationMask& visible);

/**
 * Hides the scenario's entries on top of the native gaps, solves on what is
 * left and scores MAPE/RMSE on the hidden-but-known entries. The solver only
 * receives P_Omega(data) for the composite mask. Throws DegenerateError when
 * the evaluation set is empty.
 */
EvaluationReport run_experiment(const Tensor3& data, const ObservationMask& native,
                                const MissingScenario& scenario, const SolverConfig& config,
                                const SolveFn& solver = solve);

struct HoldoutSplit {
    ObservationMask training;
    ObservationMask validation;
};

/// Splits `visible` into training and validation entries using the given
/// pattern family at rate `fraction`.
HoldoutSplit holdout_split(const ObservationMask& visible, MissingPattern pattern, double fraction,
                           std::uint64_t seed);

struct ThetaScore {
    double theta = 0.0;
    double mape = 0.0;
    double rmse = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct CrossValidationResult {
    double best_theta = 0.0;
    std::vector<ThetaScore> scores;
};

/**
 * Single-split holdout over `grid`. A `validation_fraction` share of the
 * scenario-visible entries (same pattern family as the scenario) is hidden,
 * each theta is solved on the rest, and the lowest validation MAPE wins;
 * ties go to the smaller theta. Scores are listed in grid order.
 */
CrossValidationResult cross_validate_theta(const Tensor3& data, const ObservationMask& native,
                                           const MissingScenario& scenario, const std::vector<double>& grid,
                                           double validation_fraction, std::uint64_t seed,
                                           const SolverConfig& base_config = {},
                                           const SolveFn& solver = solve);

} // namespace lrtc
