#include "lrtc/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "lrtc/error.hpp"
#include "lrtc/kernels.hpp"

namespace lrtc {

std::size_t element_count(const Shape& dims) { return dims[0] * dims[1] * dims[2]; }

void check_mode(int mode) {
    if (mode < 1 || mode > 3) throw ModeError(fmt::format("unfolding mode {} is not in {{1, 2, 3}}", mode));
}

std::size_t unfolding_cols(const Shape& dims, int mode) {
    check_mode(mode);
    return element_count(dims) / std::max<std::size_t>(dims[std::size_t(mode - 1)], 1);
}

void require_same_dims(const Shape& a, const Shape& b, const char* what) {
    if (a != b)
        throw DimensionError(fmt::format("{}: dims ({}, {}, {}) do not match ({}, {}, {})", what, a[0],
                                         a[1], a[2], b[0], b[1], b[2]));
}

Tensor3::Tensor3(const Shape& dims) : dims_(dims), values_(element_count(dims), 0.0) {}

Tensor3::Tensor3(const Shape& dims, std::vector<double> values) : dims_(dims), values_(std::move(values)) {
    if (values_.size() != element_count(dims_))
        throw DimensionError(fmt::format("tensor ({}, {}, {}) needs {} values, got {}", dims_[0], dims_[1],
                                         dims_[2], element_count(dims_), values_.size()));
    const auto bad = std::find_if(values_.begin(), values_.end(), [](double v) { return !std::isfinite(v); });
    if (bad != values_.end())
        throw InvalidInputError(
            fmt::format("tensor value at linear index {} is not finite", std::distance(values_.begin(), bad)));
}

Tensor3 Tensor3::constant(const Shape& dims, double value) {
    return Tensor3(dims, std::vector<double>(element_count(dims), value));
}

ObservationMask::ObservationMask(const Shape& dims, bool observed)
    : dims_(dims), flags_(element_count(dims), observed ? 1 : 0) {}

ObservationMask::ObservationMask(const Shape& dims, std::vector<std::uint8_t> observed)
    : dims_(dims), flags_(std::move(observed)) {
    if (flags_.size() != element_count(dims_))
        throw DimensionError(fmt::format("mask ({}, {}, {}) needs {} flags, got {}", dims_[0], dims_[1],
                                         dims_[2], element_count(dims_), flags_.size()));
    for (auto& f : flags_) f = f != 0 ? 1 : 0;
}

std::size_t ObservationMask::observed_count() const noexcept {
    return std::size_t(std::count(flags_.begin(), flags_.end(), std::uint8_t{1}));
}

ObservationMask ObservationMask::complement() const {
    ObservationMask out = *this;
    for (auto& f : out.flags_) f = f != 0 ? 0 : 1;
    return out;
}

ObservationMask intersect(const ObservationMask& a, const ObservationMask& b) {
    require_same_dims(a.dims(), b.dims(), "mask intersection");
    std::vector<std::uint8_t> flags(a.size());
    for (std::size_t i = 0; i < flags.size(); ++i) flags[i] = (a.observed(i) && b.observed(i)) ? 1 : 0;
    return ObservationMask(a.dims(), std::move(flags));
}

std::size_t unfolding_column(const Shape& d, int mode, std::size_t i1, std::size_t i2, std::size_t i3) {
    check_mode(mode);
    switch (mode) {
    case 1: return i2 + i3 * d[1];
    case 2: return i1 + i3 * d[0];
    default: return i1 + i2 * d[0];
    }
}

UnfoldedMatrix unfold(const Tensor3& x, int mode) {
    check_mode(mode);
    const auto& d = x.dims();
    UnfoldedMatrix out{mode, Eigen::MatrixXd(Eigen::Index(d[std::size_t(mode - 1)]),
                                             Eigen::Index(unfolding_cols(d, mode)))};
    kernels::omp::unfold(x.values(), d, mode, out.entries);
    return out;
}

Tensor3 fold(const Eigen::MatrixXd& m, int mode, const Shape& dims) {
    check_mode(mode);
    const auto rows = std::size_t(m.rows()), cols = std::size_t(m.cols());
    if (rows != dims[std::size_t(mode - 1)] || cols != unfolding_cols(dims, mode))
        throw DimensionError(fmt::format("cannot fold a {}x{} matrix in mode {} into ({}, {}, {})", rows, cols,
                                         mode, dims[0], dims[1], dims[2]));
    Tensor3 out(dims);
    kernels::omp::fold(m, dims, mode, out.values());
    return out;
}

Tensor3 fold(const UnfoldedMatrix& m, const Shape& dims) { return fold(m.entries, m.mode, dims); }

Tensor3 project_omega(const Tensor3& x, const ObservationMask& mask) {
    require_same_dims(x.dims(), mask.dims(), "project_omega");
    Tensor3 out(x.dims());
    kernels::omp::masked_copy(x.values(), mask.flags(), true, out.values());
    return out;
}

Tensor3 project_omega_complement(const Tensor3& x, const ObservationMask& mask) {
    require_same_dims(x.dims(), mask.dims(), "project_omega_complement");
    Tensor3 out(x.dims());
    kernels::omp::masked_copy(x.values(), mask.flags(), false, out.values());
    return out;
}

double frobenius_norm(const Tensor3& x) { return std::sqrt(kernels::omp::sum_squares(x.values())); }

} // namespace lrtc
