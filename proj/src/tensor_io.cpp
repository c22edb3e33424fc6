#include "lrtc/tensor_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "lrtc/error.hpp"

namespace lrtc {

namespace {

bool is_nan_token(std::string_view token) {
    return token.size() == 3 && std::tolower(static_cast<unsigned char>(token[0])) == 'n' &&
           std::tolower(static_cast<unsigned char>(token[1])) == 'a' &&
           std::tolower(static_cast<unsigned char>(token[2])) == 'n';
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Finite decimal value, or nullopt if the token is not a number.
std::optional<double> parse_number(std::string_view token) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

[[noreturn]] void fail(std::string_view source, std::size_t line, std::size_t col, std::string_view what) {
    throw ParseError(fmt::format("{}:{}:{}: {}", source, line, col, what));
}

struct Token {
    std::string_view text;
    std::size_t line;
    std::size_t col;
};

// Whitespace-separated tokens with 1-based positions.
std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t line = 1, col = 1, i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
        } else {
            const std::size_t start = i, start_col = col;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
                ++i;
                ++col;
            }
            tokens.push_back({text.substr(start, i - start), line, start_col});
        }
    }
    return tokens;
}

std::string slurp(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    for (auto& l : lines)
        if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    return lines;
}

std::vector<std::string_view> split_cells(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto end = line.find(',', start);
        cells.push_back(line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return cells;
}

std::string format_value(double v) { return fmt::format("{}", v); }

std::string cell_text(const Tensor3& t, const ObservationMask* mask, std::size_t i) {
    return (mask && !mask->observed(i)) ? std::string("nan") : format_value(t[i]);
}

} // namespace

std::string_view to_string(TensorFormat f) { return f == TensorFormat::dense ? "dense" : "csv"; }

TensorFormat parse_format(std::string_view text) {
    if (text == "dense") return TensorFormat::dense;
    if (text == "csv") return TensorFormat::csv;
    throw ConfigError(fmt::format("unknown tensor format '{}' (expected dense or csv)", text));
}

LoadedTensor read_dense(std::istream& in, std::string_view source) {
    const std::string text = slurp(in);
    const auto tokens = tokenize(text);
    if (tokens.size() < 3) fail(source, 1, 1, "missing header 'n1 n2 n3'");

    Shape dims{};
    for (std::size_t k = 0; k < 3; ++k) {
        const Token& tok = tokens[k];
        if (tok.line != tokens[0].line) fail(source, tok.line, tok.col, "header must hold n1 n2 n3 on one line");
        std::size_t n = 0;
        const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), n);
        if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size() || n == 0)
            fail(source, tok.line, tok.col, fmt::format("dimension '{}' is not a positive integer", tok.text));
        dims[k] = n;
    }
    if (tokens.size() > 3 && tokens[3].line == tokens[0].line)
        fail(source, tokens[3].line, tokens[3].col, "header has more than three dimensions");

    const std::size_t expected = element_count(dims);
    const std::size_t got = tokens.size() - 3;
    if (got != expected) {
        const Token& at = got > expected ? tokens[3 + expected] : tokens.back();
        fail(source, at.line, at.col,
             fmt::format("header ({} {} {}) requires {} values, found {}", dims[0], dims[1], dims[2], expected, got));
    }

    std::vector<double> values(expected, 0.0);
    std::vector<std::uint8_t> observed(expected, 1);
    for (std::size_t i = 0; i < expected; ++i) {
        const Token& tok = tokens[3 + i];
        if (is_nan_token(tok.text)) {
            observed[i] = 0;
            continue;
        }
        const auto v = parse_number(tok.text);
        if (!v) fail(source, tok.line, tok.col, fmt::format("malformed value '{}'", tok.text));
        values[i] = *v;
    }
    return {Tensor3(dims, std::move(values)), ObservationMask(dims, std::move(observed))};
}

LoadedTensor read_csv(std::istream& in, const CsvLayout& layout, std::string_view source) {
    if (layout.days == 0 || layout.intervals == 0)
        throw ConfigError("CSV layout needs positive days and intervals");
    const std::string text = slurp(in);
    const auto lines = split_lines(text);
    const std::size_t width = layout.days * layout.intervals;

    std::size_t first = 0;
    if (!lines.empty()) {
        for (auto cell : split_cells(lines[0])) {
            cell = trim(cell);
            if (!cell.empty() && !is_nan_token(cell) && !parse_number(cell)) {
                first = 1;
                break;
            }
        }
    }
    if (lines.size() <= first) fail(source, first + 1, 1, "no data rows");

    const std::size_t rows = lines.size() - first;
    const Shape dims{rows, layout.days, layout.intervals};
    std::vector<double> values(element_count(dims), 0.0);
    std::vector<std::uint8_t> observed(element_count(dims), 1);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t line_no = first + r + 1;
        const auto cells = split_cells(lines[first + r]);
        if (cells.size() != width)
            fail(source, line_no, 1,
                 fmt::format("row has {} columns, expected days*intervals = {}", cells.size(), width));
        for (std::size_t c = 0; c < width; ++c) {
            const auto cell = trim(cells[c]);
            const std::size_t linear = r * width + c;
            if (cell.empty() || is_nan_token(cell)) {
                observed[linear] = 0;
                continue;
            }
            const auto v = parse_number(cell);
            if (!v) fail(source, line_no, c + 1, fmt::format("malformed value '{}'", cell));
            values[linear] = *v;
        }
    }
    return {Tensor3(dims, std::move(values)), ObservationMask(dims, std::move(observed))};
}

LoadedTensor load_tensor(const std::string& path, TensorFormat format, const std::optional<CsvLayout>& layout) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path));
    if (format == TensorFormat::dense) return read_dense(in, path);
    if (!layout) throw ConfigError("CSV input needs its days and intervals (--dims)");
    return read_csv(in, *layout, path);
}

void write_dense(std::ostream& out, const Tensor3& tensor, const ObservationMask* mask) {
    if (mask) require_same_dims(tensor.dims(), mask->dims(), "write_dense");
    const auto& d = tensor.dims();
    out << d[0] << ' ' << d[1] << ' ' << d[2] << '\n';
    // One mode-3 fiber per line.
    for (std::size_t fiber = 0; fiber < d[0] * d[1]; ++fiber) {
        for (std::size_t i3 = 0; i3 < d[2]; ++i3) {
            if (i3) out << ' ';
            out << cell_text(tensor, mask, fiber * d[2] + i3);
        }
        out << '\n';
    }
}

void write_csv(std::ostream& out, const Tensor3& tensor, const ObservationMask* mask) {
    if (mask) require_same_dims(tensor.dims(), mask->dims(), "write_csv");
    const auto& d = tensor.dims();
    const std::size_t width = d[1] * d[2];
    for (std::size_t r = 0; r < d[0]; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            if (c) out << ',';
            out << cell_text(tensor, mask, r * width + c);
        }
        out << '\n';
    }
}

void save_tensor(const std::string& path, TensorFormat format, const Tensor3& tensor, const ObservationMask* mask) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(fmt::format("cannot write '{}'", path));
    if (format == TensorFormat::dense)
        write_dense(out, tensor, mask);
    else
        write_csv(out, tensor, mask);
    out.flush();
    if (!out) throw IoError(fmt::format("failed writing '{}'", path));
}

} // namespace lrtc
