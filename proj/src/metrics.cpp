#include "lrtc/metrics.hpp"

#include <cmath>

#include <fmt/format.h>

#include "lrtc/error.hpp"

namespace lrtc {

namespace {

void require_pair(std::span<const double> truth, std::span<const double> estimate) {
    if (truth.size() != estimate.size())
        throw DimensionError(fmt::format("metric inputs differ in length ({} vs {})", truth.size(), estimate.size()));
    if (truth.empty()) throw DegenerateError("evaluation set is empty");
}

} // namespace

double mape(std::span<const double> truth, std::span<const double> estimate) {
    require_pair(truth, estimate);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (std::abs(truth[i]) <= kMapeZeroThreshold) continue;
        sum += std::abs(truth[i] - estimate[i]) / std::abs(truth[i]);
        ++n;
    }
    if (n == 0) throw DegenerateError("every ground-truth value is zero; MAPE is undefined");
    return sum / double(n) * 100.0;
}

double rmse(std::span<const double> truth, std::span<const double> estimate) {
    require_pair(truth, estimate);
    double sum = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double d = truth[i] - estimate[i];
        sum += d * d;
    }
    return std::sqrt(sum / double(truth.size()));
}

} // namespace lrtc
