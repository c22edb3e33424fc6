#include "lrtc/kernels.hpp"

namespace lrtc::kernels::serial {

namespace {

// (row, column) of element (i1, i2, i3) in the mode-k unfolding.
inline std::pair<Eigen::Index, Eigen::Index> locate(const Shape& d, int mode, std::size_t i1,
                                                    std::size_t i2, std::size_t i3) {
    switch (mode) {
    case 1: return {Eigen::Index(i1), Eigen::Index(i2 + i3 * d[1])};
    case 2: return {Eigen::Index(i2), Eigen::Index(i1 + i3 * d[0])};
    default: return {Eigen::Index(i3), Eigen::Index(i1 + i2 * d[0])};
    }
}

} // namespace

void unfold(std::span<const double> x, const Shape& dims, int mode, Eigen::MatrixXd& out) {
    out.resize(Eigen::Index(dims[std::size_t(mode - 1)]), Eigen::Index(unfolding_cols(dims, mode)));
    std::size_t linear = 0;
    for (std::size_t i1 = 0; i1 < dims[0]; ++i1)
        for (std::size_t i2 = 0; i2 < dims[1]; ++i2)
            for (std::size_t i3 = 0; i3 < dims[2]; ++i3) {
                const auto [r, c] = locate(dims, mode, i1, i2, i3);
                out(r, c) = x[linear++];
            }
}

void fold(const Eigen::MatrixXd& m, const Shape& dims, int mode, std::span<double> out) {
    std::size_t linear = 0;
    for (std::size_t i1 = 0; i1 < dims[0]; ++i1)
        for (std::size_t i2 = 0; i2 < dims[1]; ++i2)
            for (std::size_t i3 = 0; i3 < dims[2]; ++i3) {
                const auto [r, c] = locate(dims, mode, i1, i2, i3);
                out[linear++] = m(r, c);
            }
}

void masked_copy(std::span<const double> x, std::span<const std::uint8_t> flags,
                 bool keep_observed, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = ((flags[i] != 0) == keep_observed) ? x[i] : 0.0;
}

void overwrite_observed(std::span<const double> y, std::span<const std::uint8_t> flags,
                        std::span<double> out) {
    for (std::size_t i = 0; i < y.size(); ++i)
        if (flags[i] != 0) out[i] = y[i];
}

void shifted_by_dual(std::span<const double> m, std::span<const double> t, double rho,
                     std::span<double> out) {
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = m[i] - t[i] / rho;
}

void consensus_average(std::span<const double> x1, std::span<const double> x2,
                       std::span<const double> x3, std::span<const double> t1,
                       std::span<const double> t2, std::span<const double> t3, double rho,
                       std::span<double> out) {
    const double denom = 3.0 * rho;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (rho * x1[i] + t1[i] + rho * x2[i] + t2[i] + rho * x3[i] + t3[i]) / denom;
}

void dual_ascent(std::span<double> t, std::span<const double> x, std::span<const double> m,
                 double rho) {
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += rho * (x[i] - m[i]);
}

double sum_squares(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double diff_sum_squares(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

} // namespace lrtc::kernels::serial
