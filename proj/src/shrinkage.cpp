#include "lrtc/shrinkage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>
#include <fmt/format.h>

#include "lrtc/error.hpp"

namespace lrtc {

namespace {

void require_finite(const Eigen::MatrixXd& z) {
    if (!z.allFinite()) throw InvalidInputError("matrix passed to the SVD has non-finite entries");
}

// Descending stable order with tiny values clamped to zero. Eigen already
// returns sorted values; the sort guards the tie convention.
std::vector<Eigen::Index> descending_order(Eigen::VectorXd& sigma) {
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma[i] < kSingularValueFloor) sigma[i] = 0.0;
    std::vector<Eigen::Index> order(std::size_t(sigma.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&sigma](Eigen::Index a, Eigen::Index b) { return sigma[a] > sigma[b]; });
    return order;
}

std::size_t min_dim(const Eigen::MatrixXd& z) { return std::size_t(std::min(z.rows(), z.cols())); }

void require_truncation(std::size_t r, std::size_t bound) {
    if (r >= bound && bound > 0)
        throw TruncationError(fmt::format("truncation r = {} must be below min(m, n) = {}", r, bound));
}

void require_tau(double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau))
        throw ConfigError(fmt::format("shrinkage threshold tau = {} must be finite and nonnegative", tau));
}

// U * diag(shrunk) * V^T, skipping the trailing zero singular values.
Eigen::MatrixXd reconstruct(const SvdFactors& f, const Eigen::VectorXd& shrunk, Eigen::Index rows,
                            Eigen::Index cols) {
    Eigen::Index keep = shrunk.size();
    while (keep > 0 && shrunk[keep - 1] == 0.0) --keep;
    if (keep == 0) return Eigen::MatrixXd::Zero(rows, cols);
    return f.u.leftCols(keep) * shrunk.head(keep).asDiagonal() * f.v.leftCols(keep).transpose();
}

} // namespace

SvdFactors thin_svd(const Eigen::MatrixXd& z) {
    require_finite(z);
    const bool transpose = z.rows() > z.cols();
    Eigen::BDCSVD<Eigen::MatrixXd> svd;
    if (transpose)
        svd.compute(z.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    else
        svd.compute(z, Eigen::ComputeThinU | Eigen::ComputeThinV);

    Eigen::VectorXd raw = svd.singularValues();
    const auto order = descending_order(raw);
    const Eigen::MatrixXd& left = transpose ? svd.matrixV() : svd.matrixU();
    const Eigen::MatrixXd& right = transpose ? svd.matrixU() : svd.matrixV();

    SvdFactors f;
    const auto p = Eigen::Index(order.size());
    f.sigma.resize(p);
    f.u.resize(z.rows(), p);
    f.v.resize(z.cols(), p);
    for (Eigen::Index i = 0; i < p; ++i) {
        const auto src = order[std::size_t(i)];
        f.sigma[i] = raw[src];
        f.u.col(i) = left.col(src);
        f.v.col(i) = right.col(src);
    }
    return f;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& z) {
    require_finite(z);
    Eigen::BDCSVD<Eigen::MatrixXd> svd;
    if (z.rows() > z.cols())
        svd.compute(z.transpose());
    else
        svd.compute(z);
    Eigen::VectorXd raw = svd.singularValues();
    const auto order = descending_order(raw);
    Eigen::VectorXd sigma(raw.size());
    for (Eigen::Index i = 0; i < raw.size(); ++i) sigma[i] = raw[order[std::size_t(i)]];
    return sigma;
}

std::size_t truncation_for_mode(const Shape& dims, int mode, double theta) {
    check_mode(mode);
    if (!(theta >= 0.0 && theta < 1.0))
        throw ConfigError(fmt::format("truncation rate theta = {} is outside [0, 1)", theta));
    const std::size_t bound = std::min(dims[std::size_t(mode - 1)], unfolding_cols(dims, mode));
    // The small slack keeps products such as 0.1 * 30 = 3.0000000000000004 at 3.
    const double scaled = theta * double(bound);
    const auto r = std::size_t(std::max(0.0, std::ceil(scaled - 1e-9 * std::max(1.0, scaled))));
    if (r >= bound && r > 0)
        throw TruncationError(fmt::format("theta = {} gives r_{} = {}, which must be below min dim {}", theta,
                                          mode, r, bound));
    return r;
}

TruncationSpec make_truncation_spec(const Shape& dims, double theta, std::vector<std::string>* warnings) {
    TruncationSpec spec;
    spec.theta = theta;
    for (int mode = 1; mode <= 3; ++mode) {
        const std::size_t bound = std::min(dims[std::size_t(mode - 1)], unfolding_cols(dims, mode));
        if (bound <= 1) {
            if (!(theta >= 0.0 && theta < 1.0))
                throw ConfigError(fmt::format("truncation rate theta = {} is outside [0, 1)", theta));
            if (theta > 0.0 && warnings)
                warnings->push_back(fmt::format(
                    "mode-{} unfolding has a unit dimension; truncation clamped to r = 0", mode));
            spec.per_mode_r[std::size_t(mode - 1)] = 0;
        } else {
            spec.per_mode_r[std::size_t(mode - 1)] = truncation_for_mode(dims, mode, theta);
        }
    }
    return spec;
}

double truncated_nuclear_norm(const Eigen::MatrixXd& x, std::size_t r) {
    require_truncation(r, min_dim(x));
    const Eigen::VectorXd sigma = singular_values(x);
    double sum = 0.0;
    for (Eigen::Index i = Eigen::Index(r); i < sigma.size(); ++i) sum += sigma[i];
    return sum;
}

double tensor_truncated_nuclear_norm(const Tensor3& x, const TruncationSpec& spec,
                                     const std::array<double, 3>& alphas) {
    double total = 0.0;
    for (double a : alphas) {
        if (!(a >= 0.0)) throw ConfigError(fmt::format("weight alpha = {} is negative", a));
        total += a;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw ConfigError(fmt::format("unfolding weights sum to {}, expected 1", total));
    double norm = 0.0;
    for (int mode = 1; mode <= 3; ++mode) {
        const auto k = std::size_t(mode - 1);
        norm += alphas[k] * truncated_nuclear_norm(unfold(x, mode).entries, spec.per_mode_r[k]);
    }
    return norm;
}

Eigen::MatrixXd truncated_svt(const Eigen::MatrixXd& z, std::size_t r, double tau) {
    require_truncation(r, min_dim(z));
    require_tau(tau);
    const SvdFactors f = thin_svd(z);
    Eigen::VectorXd shrunk = f.sigma;
    for (Eigen::Index i = Eigen::Index(r); i < shrunk.size(); ++i) shrunk[i] = std::max(shrunk[i] - tau, 0.0);
    return reconstruct(f, shrunk, z.rows(), z.cols());
}

Eigen::MatrixXd svt(const Eigen::MatrixXd& z, double tau) { return truncated_svt(z, 0, tau); }

Eigen::MatrixXd weighted_svt(const Eigen::MatrixXd& z, const Eigen::VectorXd& weights, double tau) {
    require_tau(tau);
    if (std::size_t(weights.size()) != min_dim(z))
        throw DimensionError(
            fmt::format("weighted_svt needs {} weights, got {}", min_dim(z), weights.size()));
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0) || (i > 0 && weights[i] < weights[i - 1]))
            throw OrderConstraintError("shrinkage weights must be nonnegative and nondecreasing");
    }
    const SvdFactors f = thin_svd(z);
    Eigen::VectorXd shrunk(f.sigma.size());
    for (Eigen::Index i = 0; i < shrunk.size(); ++i) shrunk[i] = std::max(f.sigma[i] - tau * weights[i], 0.0);
    return reconstruct(f, shrunk, z.rows(), z.cols());
}

} // namespace lrtc
