#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace lrtc {

/// Extents (n1, n2, n3) of a third-order tensor: location x day x time-of-day.
using Shape = std::array<std::size_t, 3>;

std::size_t element_count(const Shape& dims);

/// Throws ModeError unless mode is 1, 2 or 3.
void check_mode(int mode);

/// Number of columns of the mode-k unfolding, i.e. the product of the other two extents.
std::size_t unfolding_cols(const Shape& dims, int mode);

/**
 * Dense third-order real tensor.
 *
 * Values are stored row-major over (i1, i2, i3): linear index
 * (i1 * n2 + i2) * n3 + i3. Every value is finite; missing-ness is carried
 * separately by ObservationMask.
 */
class Tensor3 {
public:
    Tensor3() = default;
    /// Zero tensor.
    explicit Tensor3(const Shape& dims);
    /// Throws DimensionError on a length mismatch and InvalidInputError on non-finite values.
    Tensor3(const Shape& dims, std::vector<double> values);

    static Tensor3 constant(const Shape& dims, double value);

    const Shape& dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return values_.size(); }

    std::size_t index(std::size_t i1, std::size_t i2, std::size_t i3) const noexcept {
        return (i1 * dims_[1] + i2) * dims_[2] + i3;
    }
    double& operator()(std::size_t i1, std::size_t i2, std::size_t i3) noexcept {
        return values_[index(i1, i2, i3)];
    }
    double operator()(std::size_t i1, std::size_t i2, std::size_t i3) const noexcept {
        return values_[index(i1, i2, i3)];
    }
    double& operator[](std::size_t linear) noexcept { return values_[linear]; }
    double operator[](std::size_t linear) const noexcept { return values_[linear]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const Tensor3&, const Tensor3&) = default;

private:
    Shape dims_{0, 0, 0};
    std::vector<double> values_;
};

/// Index set of observed entries, in the same linear order as Tensor3.
class ObservationMask {
public:
    ObservationMask() = default;
    /// Every entry set to `observed`.
    ObservationMask(const Shape& dims, bool observed);
    /// Throws DimensionError on a length mismatch.
    ObservationMask(const Shape& dims, std::vector<std::uint8_t> observed);

    const Shape& dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return flags_.size(); }

    bool observed(std::size_t linear) const noexcept { return flags_[linear] != 0; }
    void set(std::size_t linear, bool observed) noexcept { flags_[linear] = observed ? 1 : 0; }

    std::size_t observed_count() const noexcept;
    std::span<const std::uint8_t> flags() const noexcept { return flags_; }

    ObservationMask complement() const;

    friend bool operator==(const ObservationMask&, const ObservationMask&) = default;

private:
    Shape dims_{0, 0, 0};
    std::vector<std::uint8_t> flags_;
};

/// Entries observed in both masks.
ObservationMask intersect(const ObservationMask& a, const ObservationMask& b);

/// Mode-k unfolding: n_k rows, product of the remaining extents as columns.
struct UnfoldedMatrix {
    int mode = 1;
    Eigen::MatrixXd entries;
};

/**
 * Canonical mode-k column index (0-based) of element (i1, i2, i3):
 * j = sum over l != k of i_l * J_l, with J_l the product of n_m over m < l, m != k.
 */
std::size_t unfolding_column(const Shape& dims, int mode, std::size_t i1, std::size_t i2,
                             std::size_t i3);

UnfoldedMatrix unfold(const Tensor3& x, int mode);
Tensor3 fold(const UnfoldedMatrix& m, const Shape& dims);
Tensor3 fold(const Eigen::MatrixXd& m, int mode, const Shape& dims);

Tensor3 project_omega(const Tensor3& x, const ObservationMask& mask);
Tensor3 project_omega_complement(const Tensor3& x, const ObservationMask& mask);

/// sqrt(sum of squared entries).
double frobenius_norm(const Tensor3& x);

/// Throws DimensionError naming `what` when the shapes differ.
void require_same_dims(const Shape& a, const Shape& b, const char* what);

} // namespace lrtc
