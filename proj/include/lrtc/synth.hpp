#pragma once

#include <cstddef>
#include <cstdint>

#include "lrtc/tensor.hpp"

namespace lrtc {

struct SynthSpec {
    Shape dims{30, 20, 40};
    std::size_t rank = 3;
    /// Added to every entry so MAPE never divides by values near zero.
    double offset = 10.0;
    std::uint64_t seed = 0;
    /// Replace the random factors with all-ones vectors.
    bool unit_factors = false;
};

/// sum_{r < rank} a_r o b_r o c_r + offset, with standard-normal factor entries
/// drawn in the order A (n1 x rank), B (n2 x rank), C (n3 x rank).
/// Throws ConfigError unless 1 <= rank <= min dim.
Tensor3 synth_lowrank(const SynthSpec& spec);

} // namespace lrtc
