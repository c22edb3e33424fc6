#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lrtc/tensor.hpp"

namespace lrtc {

/// Thin SVD: u (m x p), sigma (p, descending, >= 0), v (n x p) with p = min(m, n).
struct SvdFactors {
    Eigen::MatrixXd u;
    Eigen::VectorXd sigma;
    Eigen::MatrixXd v;
};

/// Singular values below this are treated as exact zeros.
inline constexpr double kSingularValueFloor = 1e-12;

/**
 * Thin SVD of `z`. The decomposition always runs on the orientation with
 * rows <= cols; the factors are swapped back afterwards. Singular values are
 * stably sorted descending and values below kSingularValueFloor are clamped to 0.
 * Throws InvalidInputError if `z` has non-finite entries.
 */
SvdFactors thin_svd(const Eigen::MatrixXd& z);

/// Singular values only, same ordering and clamping as thin_svd.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& z);

/// Per-mode truncation levels r_k derived from the universal rate theta.
struct TruncationSpec {
    double theta = 0.0;
    std::array<std::size_t, 3> per_mode_r{0, 0, 0};
};

/// ceil(theta * min{n_k, prod_{h != k} n_h}). Throws TruncationError if the
/// result would not be strictly below that minimum and ConfigError if theta
/// is outside [0, 1).
std::size_t truncation_for_mode(const Shape& dims, int mode, double theta);

/// Truncation levels for all three modes. A mode whose unfolding has a unit
/// dimension cannot be truncated at all; its r_k is clamped to 0 and a
/// message is appended to `warnings` (when non-null).
TruncationSpec make_truncation_spec(const Shape& dims, double theta,
                                    std::vector<std::string>* warnings = nullptr);

/// Sum of all but the r largest singular values. Throws TruncationError if r >= min(m, n).
double truncated_nuclear_norm(const Eigen::MatrixXd& x, std::size_t r);

/// sum_k alpha_k * ||X_(k)||_{r_k,*}. Throws ConfigError unless the alphas are
/// nonnegative and sum to 1 within 1e-9.
double tensor_truncated_nuclear_norm(const Tensor3& x, const TruncationSpec& spec,
                                     const std::array<double, 3>& alphas);

/**
 * Generalized singular value thresholding: the minimizer of
 * tau * ||X||_{r,*} + 1/2 ||X - Z||_F^2. The r leading singular values of
 * `z` are kept and the rest become max(sigma_i - tau, 0).
 */
Eigen::MatrixXd truncated_svt(const Eigen::MatrixXd& z, std::size_t r, double tau);

/// Nuclear-norm proximal step, truncated_svt with r = 0.
Eigen::MatrixXd svt(const Eigen::MatrixXd& z, double tau);

/// Shrinks sigma_i by tau * w_i. The weights must have length min(m, n) and be
/// nonnegative and nondecreasing (OrderConstraintError otherwise).
Eigen::MatrixXd weighted_svt(const Eigen::MatrixXd& z, const Eigen::VectorXd& weights, double tau);

} // namespace lrtc
