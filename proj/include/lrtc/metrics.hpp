#pragma once

#include <span>

namespace lrtc {

/// Ground-truth magnitudes at or below this are left out of MAPE.
inline constexpr double kMapeZeroThreshold = 1e-9;

/// Mean absolute percentage error, in percent. Entries with |truth| <= kMapeZeroThreshold
/// are skipped; DegenerateError if nothing remains.
double mape(std::span<const double> truth, std::span<const double> estimate);

/// Root mean squared error. DegenerateError on empty input.
double rmse(std::span<const double> truth, std::span<const double> estimate);

} // namespace lrtc
