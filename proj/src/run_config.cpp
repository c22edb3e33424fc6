#include "lrtc/run_config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "lrtc/error.hpp"

namespace lrtc {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

class LineParser {
public:
    LineParser(std::string_view source, std::size_t line) : source_(source), line_(line) {}

    [[noreturn]] void fail(std::string_view what) const {
        throw ConfigError(fmt::format("{}:{}: {}", source_, line_, what));
    }

    double real(std::string_view text) const {
        text = trim(text);
        if (!text.empty() && text.front() == '+') text.remove_prefix(1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
            fail(fmt::format("'{}' is not a finite number", text));
        return v;
    }

    std::uint64_t unsigned_int(std::string_view text) const {
        text = trim(text);
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
            fail(fmt::format("'{}' is not an unsigned integer", text));
        return v;
    }

    std::vector<double> reals(std::string_view text, char sep) const {
        std::vector<double> out;
        std::size_t start = 0;
        while (true) {
            const auto end = text.find(sep, start);
            const auto piece = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
            if (!trim(piece).empty() || sep == ',') out.push_back(real(piece));
            if (end == std::string_view::npos) break;
            start = end + 1;
        }
        return out;
    }

    double in_half_open_unit(std::string_view text, std::string_view key) const {
        const double v = real(text);
        if (!(v >= 0.0 && v < 1.0)) fail(fmt::format("{} = {} is outside [0, 1)", key, v));
        return v;
    }

    double in_open_unit(std::string_view text, std::string_view key) const {
        const double v = real(text);
        if (!(v > 0.0 && v < 1.0)) fail(fmt::format("{} = {} is outside (0, 1)", key, v));
        return v;
    }

    double positive(std::string_view text, std::string_view key) const {
        const double v = real(text);
        if (!(v > 0.0)) fail(fmt::format("{} = {} must be positive", key, v));
        return v;
    }

private:
    std::string_view source_;
    std::size_t line_;
};

} // namespace

RunConfig parse_run_config(std::istream& in, std::string_view source) {
    RunConfig cfg;
    std::map<std::string, std::size_t> seen;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const LineParser p(source, line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) p.fail("expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (value.empty()) p.fail(fmt::format("key '{}' has no value", key));
        if (seen.count(key)) p.fail(fmt::format("key '{}' repeats line {}", key, seen[key]));
        seen[key] = line_no;

        try {
            if (key == "solver") {
                if (value != "tnn" && value != "halrtc") p.fail(fmt::format("solver '{}' is not tnn or halrtc", value));
                cfg.solver = std::string(value);
            } else if (key == "theta") {
                cfg.theta = p.in_half_open_unit(value, key);
            } else if (key == "alphas") {
                const auto a = p.reals(value, ',');
                if (a.size() != 3) p.fail("alphas needs exactly three comma-separated weights");
                for (double w : a)
                    if (w < 0.0) p.fail(fmt::format("alpha {} is negative", w));
                if (std::abs(a[0] + a[1] + a[2] - 1.0) > 1e-9) p.fail("alphas must sum to 1");
                cfg.alphas = std::array<double, 3>{a[0], a[1], a[2]};
            } else if (key == "rho0") {
                cfg.rho0 = p.positive(value, key);
            } else if (key == "rho_max") {
                cfg.rho_max = p.positive(value, key);
            } else if (key == "rho_mult") {
                const double v = p.real(value);
                if (!(v >= 1.0)) p.fail(fmt::format("rho_mult = {} must be at least 1", v));
                cfg.rho_mult = v;
            } else if (key == "epsilon") {
                cfg.epsilon = p.positive(value, key);
            } else if (key == "max_iter") {
                const auto v = p.unsigned_int(value);
                if (v < 1 || v > 1000000) p.fail(fmt::format("max_iter = {} must be in [1, 1000000]", v));
                cfg.max_iter = int(v);
            } else if (key == "pattern") {
                cfg.pattern = parse_pattern(value);
            } else if (key == "rate") {
                cfg.rate = p.in_open_unit(value, key);
            } else if (key == "seed") {
                cfg.seed = p.unsigned_int(value);
            } else if (key == "input") {
                cfg.input = std::string(value);
            } else if (key == "format") {
                cfg.format = parse_format(value);
            } else if (key == "dims") {
                const auto d = p.reals(value, ' ');
                if (d.size() != 2 || d[0] < 1 || d[1] < 1 || d[0] != std::floor(d[0]) || d[1] != std::floor(d[1]))
                    p.fail("dims needs two positive integers: days intervals");
                cfg.dims = CsvLayout{std::size_t(d[0]), std::size_t(d[1])};
            } else if (key == "output") {
                cfg.output = std::string(value);
            } else if (key == "trace_output") {
                cfg.trace_output = std::string(value);
            } else if (key == "report") {
                cfg.report = std::string(value);
            } else if (key == "theta_grid") {
                std::vector<double> grid;
                for (double t : p.reals(value, ',')) {
                    if (!(t >= 0.0 && t < 1.0)) p.fail(fmt::format("grid theta {} is outside [0, 1)", t));
                    grid.push_back(t);
                }
                cfg.theta_grid = std::move(grid);
            } else if (key == "holdout_fraction") {
                cfg.holdout_fraction = p.in_open_unit(value, key);
            } else {
                p.fail(fmt::format("unknown key '{}'", key));
            }
        } catch (const ConfigError& e) {
            const std::string msg = e.what();
            if (msg.rfind(std::string(source), 0) == 0) throw;
            p.fail(msg);
        }
    }

    if (cfg.rho0 && cfg.rho_max && *cfg.rho0 > *cfg.rho_max) {
        const LineParser p(source, std::max(seen["rho0"], seen["rho_max"]));
        p.fail(fmt::format("rho0 = {} exceeds rho_max = {}", *cfg.rho0, *cfg.rho_max));
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open config '{}'", path));
    return parse_run_config(in, path);
}

SolverConfig merge_solver_config(const RunConfig& file, SolverConfig base) {
    if (file.theta) base.theta = *file.theta;
    if (file.alphas) base.alphas = *file.alphas;
    if (file.rho0) base.rho0 = *file.rho0;
    if (file.rho_max) base.rho_max = *file.rho_max;
    if (file.rho_mult) base.rho_mult = *file.rho_mult;
    if (file.epsilon) base.epsilon = *file.epsilon;
    if (file.max_iter) base.max_iter = *file.max_iter;
    return base;
}

} // namespace lrtc
