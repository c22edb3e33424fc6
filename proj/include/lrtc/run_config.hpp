#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lrtc/masks.hpp"
#include "lrtc/solver.hpp"
#include "lrtc/tensor_io.hpp"

namespace lrtc {

/**
 * Run configuration file: one `key = value` per line, `#` starts a comment.
 *
 *   solver           tnn | halrtc
 *   theta            truncation rate in [0, 1)
 *   alphas           three comma-separated weights summing to 1
 *   rho0, rho_max    positive, rho0 <= rho_max
 *   rho_mult         >= 1
 *   epsilon          positive
 *   max_iter         positive integer
 *   pattern          rm | nm
 *   rate             missing rate in (0, 1)
 *   seed             unsigned integer
 *   input, output, trace_output, report   paths
 *   format           dense | csv
 *   dims             "days intervals" for CSV input
 *   theta_grid       comma-separated thetas in [0, 1)
 *   holdout_fraction validation share in (0, 1)
 *
 * Every constraint is checked while parsing; violations raise ConfigError
 * as "source:line: message". Absent keys stay empty.
 */
struct RunConfig {
    std::optional<std::string> solver;
    std::optional<double> theta;
    std::optional<std::array<double, 3>> alphas;
    std::optional<double> rho0;
    std::optional<double> rho_max;
    std::optional<double> rho_mult;
    std::optional<double> epsilon;
    std::optional<int> max_iter;
    std::optional<MissingPattern> pattern;
    std::optional<double> rate;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> input;
    std::optional<TensorFormat> format;
    std::optional<CsvLayout> dims;
    std::optional<std::string> output;
    std::optional<std::string> trace_output;
    std::optional<std::string> report;
    std::optional<std::vector<double>> theta_grid;
    std::optional<double> holdout_fraction;
};

RunConfig parse_run_config(std::istream& in, std::string_view source = "<config>");
RunConfig load_run_config(const std::string& path);

/// Overlays the solver fields present in `file` onto `base`.
SolverConfig merge_solver_config(const RunConfig& file, SolverConfig base);

} // namespace lrtc
