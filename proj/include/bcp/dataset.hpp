#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>

#include "bcp/process.hpp"

namespace bcp {

/// How the two input count columns map onto components 1 and 2.
enum class Assignment { automatic, keep, swap };

Assignment assignment_from_string(const std::string& s);

struct IngestOptions {
  char delimiter = ',';
  Assignment assign = Assignment::automatic;
  std::optional<bool> header;  // auto-detected when unset
};

struct Dataset {
  SeriesPair series;                        // assigned components; labels carry the date column if any
  std::string source;
  std::array<std::string, 2> column_names;  // input names, in input order
  bool swapped = false;                     // true when input column 2 became component 1
  Vec2 dispersion{};                        // per input column, in input order
  std::string assignment_note;
};

/// Sample variance (n - 1 denominator) over sample mean; 0 for a constant or all-zero column.
double dispersion_index(const std::vector<Count>& y);

/// CSV with two count columns, optional header, optional leading date column.
Dataset ingest(const std::string& path, const IngestOptions& opt = {});
Dataset ingest_stream(std::istream& in, const std::string& source, const IngestOptions& opt = {});

}  // namespace bcp
