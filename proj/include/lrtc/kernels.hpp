#pragma once

// Data-parallel inner loops used by tensor_core and the solver.
//
// `serial` is the straightforward reference implementation kept for tests and
// benchmarks; `omp` is the OpenMP version the library runs. Elementwise kernels
// produce bitwise-identical results in both namespaces. The `omp` reductions
// sum fixed-size blocks and then combine the partials in block order, so their
// result does not depend on the number of threads.

#include <cstdint>
#include <span>

#include <Eigen/Core>

#include "lrtc/tensor.hpp"

namespace lrtc::kernels {

/// Block length of the deterministic reductions in `omp`.
inline constexpr std::size_t kReductionBlock = 4096;
/// Below this element count the `omp` kernels stay on the calling thread.
inline constexpr std::size_t kParallelThreshold = 16384;

namespace serial {

void unfold(std::span<const double> x, const Shape& dims, int mode, Eigen::MatrixXd& out);
void fold(const Eigen::MatrixXd& m, const Shape& dims, int mode, std::span<double> out);
/// out[i] = x[i] where flags[i] == keep_observed, else 0.
void masked_copy(std::span<const double> x, std::span<const std::uint8_t> flags,
                 bool keep_observed, std::span<double> out);
void overwrite_observed(std::span<const double> y, std::span<const std::uint8_t> flags,
                        std::span<double> out);
/// out = m - t / rho
void shifted_by_dual(std::span<const double> m, std::span<const double> t, double rho,
                     std::span<double> out);
/// out = (rho*x1 + t1 + rho*x2 + t2 + rho*x3 + t3) / (3*rho)
void consensus_average(std::span<const double> x1, std::span<const double> x2,
                       std::span<const double> x3, std::span<const double> t1,
                       std::span<const double> t2, std::span<const double> t3, double rho,
                       std::span<double> out);
/// t += rho * (x - m)
void dual_ascent(std::span<double> t, std::span<const double> x, std::span<const double> m,
                 double rho);
double sum_squares(std::span<const double> x);
double diff_sum_squares(std::span<const double> a, std::span<const double> b);

} // namespace serial

namespace omp {

void unfold(std::span<const double> x, const Shape& dims, int mode, Eigen::MatrixXd& out);
void fold(const Eigen::MatrixXd& m, const Shape& dims, int mode, std::span<double> out);
void masked_copy(std::span<const double> x, std::span<const std::uint8_t> flags,
                 bool keep_observed, std::span<double> out);
void overwrite_observed(std::span<const double> y, std::span<const std::uint8_t> flags,
                        std::span<double> out);
void shifted_by_dual(std::span<const double> m, std::span<const double> t, double rho,
                     std::span<double> out);
void consensus_average(std::span<const double> x1, std::span<const double> x2,
                       std::span<const double> x3, std::span<const double> t1,
                       std::span<const double> t2, std::span<const double> t3, double rho,
                       std::span<double> out);
void dual_ascent(std::span<double> t, std::span<const double> x, std::span<const double> m,
                 double rho);
double sum_squares(std::span<const double> x);
double diff_sum_squares(std::span<const double> a, std::span<const double> b);

} // namespace omp

} // namespace lrtc::kernels
