#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lrtc/solver.hpp"

namespace lrtc {

/// One benchmark result: a scenario, a solver and its scores.
struct ReportRow {
    std::string pattern;
    double rate = 0.0;
    std::uint64_t seed = 0;
    std::string solver;
    double theta = 0.0;
    double mape = 0.0;
    double rmse = 0.0;
    int iterations = 0;
    double wall_time = 0.0;
};

/// Column order of the machine-readable report.
inline const std::vector<std::string> kReportColumns{"pattern", "rate",       "seed",       "solver",   "theta",
                                                     "mape",    "rmse",       "iterations", "wall_time"};

/// Orders rows by (pattern, rate, seed, solver, theta) so concurrent runs emit identically.
void sort_rows(std::vector<ReportRow>& rows);

/// Header row plus one line per result; numbers at round-trip precision, LF endings.
void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);
/// Array of objects keyed by kReportColumns.
void write_report_json(std::ostream& out, const std::vector<ReportRow>& rows);
/// Aligned human-readable table, MAPE/RMSE with two decimals.
void write_report_table(std::ostream& out, const std::vector<ReportRow>& rows);

/// Columns: iteration, convergence_ratio, rho.
void write_trace_csv(std::ostream& out, const SolverResult& result);

} // namespace lrtc
