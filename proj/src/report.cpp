#include "lrtc/report.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "json.hpp"

namespace lrtc {

void sort_rows(std::vector<ReportRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        return std::tie(a.pattern, a.rate, a.seed, a.solver, a.theta) <
               std::tie(b.pattern, b.rate, b.seed, b.solver, b.theta);
    });
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    for (std::size_t i = 0; i < kReportColumns.size(); ++i) out << (i ? "," : "") << kReportColumns[i];
    out << '\n';
    for (const auto& r : rows)
        fmt::print(out, "{},{},{},{},{},{},{},{},{}\n", r.pattern, r.rate, r.seed, r.solver, r.theta, r.mape, r.rmse,
                   r.iterations, r.wall_time);
}

void write_report_json(std::ostream& out, const std::vector<ReportRow>& rows) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["pattern"] = r.pattern;
        row["rate"] = r.rate;
        row["seed"] = r.seed;
        row["solver"] = r.solver;
        row["theta"] = r.theta;
        row["mape"] = r.mape;
        row["rmse"] = r.rmse;
        row["iterations"] = r.iterations;
        row["wall_time"] = r.wall_time;
        doc.push_back(std::move(row));
    }
    out << doc.dump(2) << '\n';
}

void write_report_table(std::ostream& out, const std::vector<ReportRow>& rows) {
    fmt::print(out, "{:<8}{:>6}{:>8}  {:<8}{:>7}{:>9}{:>9}{:>7}{:>10}\n", "pattern", "rate", "seed", "solver", "theta",
               "MAPE", "RMSE", "iters", "time(s)");
    for (const auto& r : rows)
        fmt::print(out, "{:<8}{:>5.0f}%{:>8}  {:<8}{:>7.2f}{:>9.2f}{:>9.2f}{:>7}{:>10.3f}\n", r.pattern, r.rate * 100,
                   r.seed, r.solver, r.theta, r.mape, r.rmse, r.iterations, r.wall_time);
}

void write_trace_csv(std::ostream& out, const SolverResult& result) {
    out << "iteration,convergence_ratio,rho\n";
    for (std::size_t i = 0; i < result.trace.size(); ++i)
        fmt::print(out, "{},{},{}\n", i + 1, result.trace[i], result.rho_trace[i]);
}

} // namespace lrtc
