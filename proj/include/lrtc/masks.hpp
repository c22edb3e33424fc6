#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "lrtc/tensor.hpp"

namespace lrtc {

enum class MissingPattern {
    /// Entries removed independently.
    random,
    /// Whole time-of-day fibers removed per (location, day).
    fiber,
};

std::string_view to_string(MissingPattern p);
/// Accepts "rm"/"nm" in any case. Throws ConfigError otherwise.
MissingPattern parse_pattern(std::string_view text);

/// (pattern, rate, seed) fully determines a mask for given dims.
struct MissingScenario {
    MissingPattern pattern = MissingPattern::random;
    double rate = 0.2;
    std::uint64_t seed = 0;
};

/// Throws ConfigError unless 0 < rate < 1.
void validate(const MissingScenario& scenario);

/// Each entry is dropped with probability `rate`. Returns the retained entries.
ObservationMask generate_rm_mask(const Shape& dims, double rate, std::uint64_t seed);

/// Each (location, day) pair is dropped with probability `rate`, taking its
/// entire mode-3 fiber with it. Returns the retained entries.
ObservationMask generate_nm_mask(const Shape& dims, double rate, std::uint64_t seed);

ObservationMask generate_mask(const Shape& dims, const MissingScenario& scenario);

} // namespace lrtc
