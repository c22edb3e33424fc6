#include "lrtc/synth.hpp"

#include <algorithm>
#include <random>

#include <Eigen/Core>
#include <fmt/format.h>

#include "lrtc/error.hpp"

namespace lrtc {

Tensor3 synth_lowrank(const SynthSpec& spec) {
    const auto& d = spec.dims;
    if (d[0] == 0 || d[1] == 0 || d[2] == 0) throw ConfigError("synthetic dims must be positive");
    const std::size_t min_dim = std::min({d[0], d[1], d[2]});
    if (spec.rank < 1 || spec.rank > min_dim)
        throw ConfigError(fmt::format("synthetic rank {} must lie in [1, {}]", spec.rank, min_dim));

    const auto rank = Eigen::Index(spec.rank);
    std::array<Eigen::MatrixXd, 3> factors;
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t k = 0; k < 3; ++k) {
        factors[k].resize(Eigen::Index(d[k]), rank);
        for (Eigen::Index i = 0; i < factors[k].rows(); ++i)
            for (Eigen::Index r = 0; r < rank; ++r) factors[k](i, r) = spec.unit_factors ? 1.0 : normal(rng);
    }

    Tensor3 out(d);
    for (std::size_t i1 = 0; i1 < d[0]; ++i1)
        for (std::size_t i2 = 0; i2 < d[1]; ++i2)
            for (std::size_t i3 = 0; i3 < d[2]; ++i3) {
                double v = 0.0;
                for (Eigen::Index r = 0; r < rank; ++r)
                    v += factors[0](Eigen::Index(i1), r) * factors[1](Eigen::Index(i2), r) *
                         factors[2](Eigen::Index(i3), r);
                out(i1, i2, i3) = v + spec.offset;
            }
    return out;
}

} // namespace lrtc
