#include "lrtc/masks.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <vector>

#include <fmt/format.h>

#include "lrtc/error.hpp"

namespace lrtc {

namespace {

void require_rate(double rate) {
    if (!(rate > 0.0 && rate < 1.0))
        throw ConfigError(fmt::format("missing rate {} is outside (0, 1)", rate));
}

} // namespace

std::string_view to_string(MissingPattern p) { return p == MissingPattern::random ? "rm" : "nm"; }

MissingPattern parse_pattern(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "rm") return MissingPattern::random;
    if (lower == "nm") return MissingPattern::fiber;
    throw ConfigError(fmt::format("unknown missing pattern '{}' (expected rm or nm)", text));
}

void validate(const MissingScenario& scenario) { require_rate(scenario.rate); }

ObservationMask generate_rm_mask(const Shape& dims, double rate, std::uint64_t seed) {
    require_rate(rate);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution missing(rate);
    std::vector<std::uint8_t> flags(element_count(dims));
    for (auto& f : flags) f = missing(rng) ? 0 : 1;
    return ObservationMask(dims, std::move(flags));
}

ObservationMask generate_nm_mask(const Shape& dims, double rate, std::uint64_t seed) {
    require_rate(rate);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution missing(rate);
    std::vector<std::uint8_t> flags(element_count(dims), 1);
    for (std::size_t i1 = 0; i1 < dims[0]; ++i1)
        for (std::size_t i2 = 0; i2 < dims[1]; ++i2) {
            if (!missing(rng)) continue;
            const std::size_t start = (i1 * dims[1] + i2) * dims[2];
            std::fill_n(flags.begin() + std::ptrdiff_t(start), dims[2], std::uint8_t{0});
        }
    return ObservationMask(dims, std::move(flags));
}

ObservationMask generate_mask(const Shape& dims, const MissingScenario& scenario) {
    return scenario.pattern == MissingPattern::random ? generate_rm_mask(dims, scenario.rate, scenario.seed)
                                                      : generate_nm_mask(dims, scenario.rate, scenario.seed);
}

} // namespace lrtc
