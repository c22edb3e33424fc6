#include "lrtc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include <fmt/format.h>

#include "lrtc/error.hpp"
#include "lrtc/kernels.hpp"

namespace lrtc {

namespace {

// Kernel table so one code path serves both execution modes.
struct KernelSet {
    decltype(&kernels::omp::unfold) unfold;
    decltype(&kernels::omp::fold) fold;
    decltype(&kernels::omp::masked_copy) masked_copy;
    decltype(&kernels::omp::overwrite_observed) overwrite_observed;
    decltype(&kernels::omp::shifted_by_dual) shifted_by_dual;
    decltype(&kernels::omp::consensus_average) consensus_average;
    decltype(&kernels::omp::dual_ascent) dual_ascent;
};

constexpr KernelSet kSerialKernels{kernels::serial::unfold,           kernels::serial::fold,
                                   kernels::serial::masked_copy,      kernels::serial::overwrite_observed,
                                   kernels::serial::shifted_by_dual,  kernels::serial::consensus_average,
                                   kernels::serial::dual_ascent};
constexpr KernelSet kOmpKernels{kernels::omp::unfold,          kernels::omp::fold,
                                kernels::omp::masked_copy,     kernels::omp::overwrite_observed,
                                kernels::omp::shifted_by_dual, kernels::omp::consensus_average,
                                kernels::omp::dual_ascent};

const KernelSet& kernels_for(const SolverConfig& config) {
    return config.execution == Execution::serial ? kSerialKernels : kOmpKernels;
}

void require_state_dims(const SolverState& state) {
    for (std::size_t k = 0; k < 3; ++k) {
        require_same_dims(state.x[k].dims(), state.m.dims(), "solver state X_k");
        require_same_dims(state.t[k].dims(), state.m.dims(), "solver state T_k");
    }
}

Tensor3 compute_x_k(const SolverState& state, int mode, const SolverConfig& config,
                    const TruncationSpec& truncation) {
    const auto& ks = kernels_for(config);
    const auto k = std::size_t(mode - 1);
    const Shape& dims = state.m.dims();

    Tensor3 shifted(dims);
    ks.shifted_by_dual(state.m.values(), state.t[k].values(), state.rho, shifted.values());
    Eigen::MatrixXd z(Eigen::Index(dims[k]), Eigen::Index(unfolding_cols(dims, mode)));
    ks.unfold(shifted.values(), dims, mode, z);

    const Eigen::MatrixXd shrunk = truncated_svt(z, truncation.per_mode_r[k], config.alphas[k] / state.rho);
    Tensor3 out(dims);
    ks.fold(shrunk, dims, mode, out.values());
    return out;
}

Tensor3 compute_m(const SolverState& state, const Tensor3& y, const ObservationMask& mask,
                  const SolverConfig& config) {
    const auto& ks = kernels_for(config);
    Tensor3 m(state.m.dims());
    ks.consensus_average(state.x[0].values(), state.x[1].values(), state.x[2].values(), state.t[0].values(),
                         state.t[1].values(), state.t[2].values(), state.rho, m.values());
    ks.overwrite_observed(y.values(), mask.flags(), m.values());
    return m;
}

double observed_norm(const Tensor3& y, const ObservationMask& mask) {
    Tensor3 projected(y.dims());
    kernels::omp::masked_copy(y.values(), mask.flags(), true, projected.values());
    const double norm = std::sqrt(kernels::omp::sum_squares(projected.values()));
    if (!(norm > 0.0)) throw DegenerateError("observed entries have zero Frobenius norm");
    return norm;
}

} // namespace

void validate(const SolverConfig& c) {
    if (!(c.theta >= 0.0 && c.theta < 1.0))
        throw ConfigError(fmt::format("theta = {} is outside [0, 1)", c.theta));
    double total = 0.0;
    for (double a : c.alphas) {
        if (!(a >= 0.0)) throw ConfigError(fmt::format("alpha = {} must be nonnegative", a));
        total += a;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError(fmt::format("alphas sum to {}, expected 1", total));
    if (!(c.rho0 > 0.0) || !std::isfinite(c.rho0)) throw ConfigError(fmt::format("rho0 = {} must be positive", c.rho0));
    if (!(c.rho_max >= c.rho0) || !std::isfinite(c.rho_max))
        throw ConfigError(fmt::format("rho_max = {} must be finite and at least rho0 = {}", c.rho_max, c.rho0));
    if (!(c.rho_mult >= 1.0) || !std::isfinite(c.rho_mult))
        throw ConfigError(fmt::format("rho_mult = {} must be at least 1", c.rho_mult));
    if (!(c.epsilon > 0.0)) throw ConfigError(fmt::format("epsilon = {} must be positive", c.epsilon));
    if (c.max_iter < 1) throw ConfigError(fmt::format("max_iter = {} must be at least 1", c.max_iter));
}

namespace {

bool fills_missing(const Tensor3& m, const ObservationMask& mask) {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (!mask.observed(i) && m[i] != 0.0) return true;
    return false;
}

} // namespace

SolverState initialize(const Tensor3& y, const ObservationMask& mask, const SolverConfig& config) {
    validate(config);
    require_same_dims(y.dims(), mask.dims(), "solver input");
    if (mask.observed_count() == 0) throw DegenerateError("observation mask has no observed entries");

    SolverState state;
    state.m = Tensor3(y.dims());
    kernels_for(config).masked_copy(y.values(), mask.flags(), true, state.m.values());
    for (std::size_t k = 0; k < 3; ++k) {
        state.x[k] = state.m;
        state.t[k] = Tensor3(y.dims());
    }
    state.rho = config.rho0;
    state.iteration = 0;
    return state;
}

Tensor3 update_x_k(const SolverState& state, int mode, const SolverConfig& config,
                   const TruncationSpec& truncation) {
    check_mode(mode);
    require_state_dims(state);
    if (!(state.rho > 0.0)) throw ConfigError("rho must be positive");
    return compute_x_k(state, mode, config, truncation);
}

Tensor3 update_x_k(const SolverState& state, int mode, const SolverConfig& config) {
    return update_x_k(state, mode, config, make_truncation_spec(state.m.dims(), config.theta));
}

Tensor3 update_m(const SolverState& state, const Tensor3& y, const ObservationMask& mask,
                 const SolverConfig& config) {
    require_state_dims(state);
    require_same_dims(y.dims(), state.m.dims(), "update_m data");
    require_same_dims(mask.dims(), state.m.dims(), "update_m mask");
    return compute_m(state, y, mask, config);
}

std::array<Tensor3, 3> update_t(const SolverState& state, const SolverConfig& config) {
    require_state_dims(state);
    std::array<Tensor3, 3> t = state.t;
    for (std::size_t k = 0; k < 3; ++k)
        kernels_for(config).dual_ascent(t[k].values(), state.x[k].values(), state.m.values(), state.rho);
    return t;
}

double convergence_ratio(const Tensor3& m_new, const Tensor3& m_old, const Tensor3& y,
                         const ObservationMask& mask) {
    require_same_dims(m_new.dims(), m_old.dims(), "convergence_ratio");
    require_same_dims(y.dims(), mask.dims(), "convergence_ratio data");
    const double diff = std::sqrt(kernels::omp::diff_sum_squares(m_new.values(), m_old.values()));
    return diff / observed_norm(y, mask);
}

SolverResult solve(const Tensor3& y, const ObservationMask& mask, const SolverConfig& config) {
    SolverState state = initialize(y, mask, config);
    SolverResult result;
    result.truncation = make_truncation_spec(y.dims(), config.theta, &result.warnings);
    const double denom = observed_norm(y, mask);
    const auto& ks = kernels_for(config);
    const bool concurrent = config.execution == Execution::parallel;
    const bool has_missing = mask.observed_count() < mask.size();
    bool previous_informative = !has_missing;

    while (state.iteration < config.max_iter) {
        result.rho_trace.push_back(state.rho);

        // Each X_k reads only M^l and T_k^l, so the three updates are independent.
        std::array<Tensor3, 3> x_new;
        std::array<std::exception_ptr, 3> failures;
#pragma omp parallel for num_threads(3) schedule(static, 1) if (concurrent)
        for (int mode = 1; mode <= 3; ++mode) {
            try {
                x_new[std::size_t(mode - 1)] = compute_x_k(state, mode, config, result.truncation);
            } catch (...) {
                failures[std::size_t(mode - 1)] = std::current_exception();
            }
        }
        for (const auto& f : failures)
            if (f) std::rethrow_exception(f);
        state.x = std::move(x_new);

        Tensor3 m_new = compute_m(state, y, mask, config);
        const double ratio = std::sqrt(kernels::omp::diff_sum_squares(m_new.values(), state.m.values())) / denom;
        state.m = std::move(m_new);

        for (std::size_t k = 0; k < 3; ++k)
            ks.dual_ascent(state.t[k].values(), state.x[k].values(), state.m.values(), state.rho);
        state.rho = std::min(config.rho_mult * state.rho, config.rho_max);
        ++state.iteration;

        result.trace.push_back(ratio);
        // While every unobserved entry of M is still zero, M is just the
        // zero-filled input (all X_k thresholded away there) and a small ratio
        // says nothing about convergence.
        const bool informative = !has_missing || fills_missing(state.m, mask);
        const bool comparable = informative && previous_informative;
        previous_informative = informative;
        if (comparable && ratio < config.epsilon) {
            result.converged = true;
            break;
        }
    }

    for (std::size_t k = 0; k < 3; ++k)
        result.consensus_residual[k] =
            std::sqrt(kernels::omp::diff_sum_squares(state.x[k].values(), state.m.values()));
    result.iterations = state.iteration;
    result.recovered = std::move(state.m);
    return result;
}

SolverResult solve_halrtc(const Tensor3& y, const ObservationMask& mask, SolverConfig config) {
    config.theta = 0.0;
    return solve(y, mask, config);
}

} // namespace lrtc
