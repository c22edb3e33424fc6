#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "lrtc/shrinkage.hpp"
#include "lrtc/tensor.hpp"

namespace lrtc {

enum class Execution {
    /// Reference kernels; X_k updates run one after another.
    serial,
    /// OpenMP kernels; the three X_k updates of an iteration run concurrently.
    parallel,
};

/// ADMM hyperparameters. Defaults are the standard traffic-imputation settings.
struct SolverConfig {
    double theta = 0.0;
    std::array<double, 3> alphas{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    double rho0 = 1e-5;
    double rho_max = 1e5;
    double rho_mult = 1.05;
    double epsilon = 1e-4;
    int max_iter = 200;
    Execution execution = Execution::parallel;
};

/// Throws ConfigError if any field is out of range.
void validate(const SolverConfig& config);

struct SolverState {
    Tensor3 m;
    std::array<Tensor3, 3> x;
    std::array<Tensor3, 3> t;
    double rho = 0.0;
    int iteration = 0;
};

struct SolverResult {
    Tensor3 recovered;
    int iterations = 0;
    /// Convergence ratio after each iteration.
    std::vector<double> trace;
    /// rho used during each iteration.
    std::vector<double> rho_trace;
    bool converged = false;
    TruncationSpec truncation;
    /// ||X_k - M||_F after the last iteration.
    std::array<double, 3> consensus_residual{0.0, 0.0, 0.0};
    std::vector<std::string> warnings;
};

/// M = P_Omega(Y), X_k = M, T_k = 0, rho = rho0. Throws DegenerateError on an empty mask.
SolverState initialize(const Tensor3& y, const ObservationMask& mask, const SolverConfig& config);

/// fold_k(truncated_svt(unfold_k(M - T_k / rho), r_k, alpha_k / rho)). Reads only M and T_k.
Tensor3 update_x_k(const SolverState& state, int mode, const SolverConfig& config);
Tensor3 update_x_k(const SolverState& state, int mode, const SolverConfig& config,
                   const TruncationSpec& truncation);

/// Least-squares consensus (1/(3 rho)) sum_k (rho X_k + T_k), then P_Omega(M) := P_Omega(Y).
Tensor3 update_m(const SolverState& state, const Tensor3& y, const ObservationMask& mask,
                 const SolverConfig& config);

/// T_k + rho (X_k - M) for k = 1, 2, 3, with `state.m` already the new M.
std::array<Tensor3, 3> update_t(const SolverState& state, const SolverConfig& config);

/// ||M_new - M_old||_F / ||P_Omega(Y)||_F. Throws DegenerateError if the observed data has zero norm.
double convergence_ratio(const Tensor3& m_new, const Tensor3& m_old, const Tensor3& y,
                         const ObservationMask& mask);

/// Runs ADMM until the convergence ratio drops below epsilon or max_iter is hit.
/// Non-convergence is reported through `converged`, never thrown.
SolverResult solve(const Tensor3& y, const ObservationMask& mask, const SolverConfig& config);

/// Nuclear-norm baseline: solve with theta forced to 0.
SolverResult solve_halrtc(const Tensor3& y, const ObservationMask& mask, SolverConfig config);

} // namespace lrtc
