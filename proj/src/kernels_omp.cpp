#include "lrtc/kernels.hpp"

#include <vector>

namespace lrtc::kernels::omp {

namespace {

using Index = std::ptrdiff_t;

inline bool worth_threads(std::size_t n) { return n >= kParallelThreshold; }

// Blocked sum: partial sums over fixed blocks, combined serially in block order.
template <typename Term>
double blocked_sum(std::size_t n, Term term) {
    const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
    std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static) if (worth_threads(n))
    for (Index b = 0; b < Index(blocks); ++b) {
        const std::size_t lo = std::size_t(b) * kReductionBlock;
        const std::size_t hi = std::min(n, lo + kReductionBlock);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[std::size_t(b)] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

} // namespace

// Both unfold and fold visit (i1, i2) pairs in parallel; each pair owns a
// distinct mode-3 fiber, so writes never collide.
void unfold(std::span<const double> x, const Shape& dims, int mode, Eigen::MatrixXd& out) {
    out.resize(Eigen::Index(dims[std::size_t(mode - 1)]), Eigen::Index(unfolding_cols(dims, mode)));
    const Index n1 = Index(dims[0]), n2 = Index(dims[1]), n3 = Index(dims[2]);
    const double* src = x.data();
#pragma omp parallel for collapse(2) schedule(static) if (worth_threads(x.size()))
    for (Index i1 = 0; i1 < n1; ++i1)
        for (Index i2 = 0; i2 < n2; ++i2) {
            const double* fiber = src + (i1 * n2 + i2) * n3;
            switch (mode) {
            case 1:
                for (Index i3 = 0; i3 < n3; ++i3) out(i1, i2 + i3 * n2) = fiber[i3];
                break;
            case 2:
                for (Index i3 = 0; i3 < n3; ++i3) out(i2, i1 + i3 * n1) = fiber[i3];
                break;
            default:
                for (Index i3 = 0; i3 < n3; ++i3) out(i3, i1 + i2 * n1) = fiber[i3];
                break;
            }
        }
}

void fold(const Eigen::MatrixXd& m, const Shape& dims, int mode, std::span<double> out) {
    const Index n1 = Index(dims[0]), n2 = Index(dims[1]), n3 = Index(dims[2]);
    double* dst = out.data();
#pragma omp parallel for collapse(2) schedule(static) if (worth_threads(out.size()))
    for (Index i1 = 0; i1 < n1; ++i1)
        for (Index i2 = 0; i2 < n2; ++i2) {
            double* fiber = dst + (i1 * n2 + i2) * n3;
            switch (mode) {
            case 1:
                for (Index i3 = 0; i3 < n3; ++i3) fiber[i3] = m(i1, i2 + i3 * n2);
                break;
            case 2:
                for (Index i3 = 0; i3 < n3; ++i3) fiber[i3] = m(i2, i1 + i3 * n1);
                break;
            default:
                for (Index i3 = 0; i3 < n3; ++i3) fiber[i3] = m(i3, i1 + i2 * n1);
                break;
            }
        }
}

void masked_copy(std::span<const double> x, std::span<const std::uint8_t> flags,
                 bool keep_observed, std::span<double> out) {
    const Index n = Index(x.size());
#pragma omp parallel for schedule(static) if (worth_threads(x.size()))
    for (Index i = 0; i < n; ++i) out[i] = ((flags[i] != 0) == keep_observed) ? x[i] : 0.0;
}

void overwrite_observed(std::span<const double> y, std::span<const std::uint8_t> flags,
                        std::span<double> out) {
    const Index n = Index(y.size());
#pragma omp parallel for schedule(static) if (worth_threads(y.size()))
    for (Index i = 0; i < n; ++i)
        if (flags[i] != 0) out[i] = y[i];
}

void shifted_by_dual(std::span<const double> m, std::span<const double> t, double rho,
                     std::span<double> out) {
    const Index n = Index(m.size());
#pragma omp parallel for schedule(static) if (worth_threads(m.size()))
    for (Index i = 0; i < n; ++i) out[i] = m[i] - t[i] / rho;
}

void consensus_average(std::span<const double> x1, std::span<const double> x2,
                       std::span<const double> x3, std::span<const double> t1,
                       std::span<const double> t2, std::span<const double> t3, double rho,
                       std::span<double> out) {
    const Index n = Index(out.size());
    const double denom = 3.0 * rho;
#pragma omp parallel for schedule(static) if (worth_threads(out.size()))
    for (Index i = 0; i < n; ++i)
        out[i] = (rho * x1[i] + t1[i] + rho * x2[i] + t2[i] + rho * x3[i] + t3[i]) / denom;
}

void dual_ascent(std::span<double> t, std::span<const double> x, std::span<const double> m,
                 double rho) {
    const Index n = Index(t.size());
#pragma omp parallel for schedule(static) if (worth_threads(t.size()))
    for (Index i = 0; i < n; ++i) t[i] += rho * (x[i] - m[i]);
}

double sum_squares(std::span<const double> x) {
    return blocked_sum(x.size(), [x](std::size_t i) { return x[i] * x[i]; });
}

double diff_sum_squares(std::span<const double> a, std::span<const double> b) {
    return blocked_sum(a.size(), [a, b](std::size_t i) {
        const double d = a[i] - b[i];
        return d * d;
    });
}

} // namespace lrtc::kernels::omp
