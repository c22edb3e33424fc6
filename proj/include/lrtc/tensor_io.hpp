#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "lrtc/tensor.hpp"

namespace lrtc {

/// `dense`: header "n1 n2 n3" then n1*n2*n3 whitespace-separated values in
/// row-major order. `csv`: one row per location, days*intervals columns in
/// chronological order (day-major), optional header row.
/// In both, "nan" (any case) marks a missing entry; CSV also accepts empty cells.
enum class TensorFormat { dense, csv };

std::string_view to_string(TensorFormat f);
/// Throws ConfigError for anything other than "dense" or "csv".
TensorFormat parse_format(std::string_view text);

/// Days and intervals per day of a location x (days*intervals) CSV matrix.
struct CsvLayout {
    std::size_t days = 0;
    std::size_t intervals = 0;
};

struct LoadedTensor {
    /// Missing entries hold 0.
    Tensor3 tensor;
    ObservationMask mask;
};

/// `source` names the input in ParseError messages ("source:line:col: ...").
LoadedTensor read_dense(std::istream& in, std::string_view source = "<dense>");
LoadedTensor read_csv(std::istream& in, const CsvLayout& layout, std::string_view source = "<csv>");

/// Throws IoError if the file cannot be opened, ParseError on malformed content
/// and ConfigError if a CSV is requested without a layout.
LoadedTensor load_tensor(const std::string& path, TensorFormat format,
                         const std::optional<CsvLayout>& layout = std::nullopt);

/// Writes values with round-trip precision. Entries unobserved in `mask`
/// (when given) are written as "nan".
void write_dense(std::ostream& out, const Tensor3& tensor, const ObservationMask* mask = nullptr);
void write_csv(std::ostream& out, const Tensor3& tensor, const ObservationMask* mask = nullptr);

void save_tensor(const std::string& path, TensorFormat format, const Tensor3& tensor,
                 const ObservationMask* mask = nullptr);

} // namespace lrtc
