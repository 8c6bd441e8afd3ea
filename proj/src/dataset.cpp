#include "bcp/dataset.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "bcp/error.hpp"

namespace bcp {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\"");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\"");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, delim)) out.push_back(trim(cell));
  if (!line.empty() && line.back() == delim) out.emplace_back();
  return out;
}

std::optional<std::int64_t> parse_integer(const std::string& cell) {
  std::int64_t v = 0;
  const char* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end || cell.empty()) return std::nullopt;
  return v;
}

}  // namespace

Assignment assignment_from_string(const std::string& s) {
  if (s == "auto") return Assignment::automatic;
  if (s == "keep") return Assignment::keep;
  if (s == "swap") return Assignment::swap;
  throw DataError("unknown assignment '" + s + "' (expected auto, keep, or swap)");
}

double dispersion_index(const std::vector<Count>& y) {
  if (y.size() < 2) return 0.0;
  double mean = 0.0;
  for (Count v : y) mean += static_cast<double>(v);
  mean /= static_cast<double>(y.size());
  if (mean == 0.0) return 0.0;
  double ss = 0.0;
  for (Count v : y) ss += (static_cast<double>(v) - mean) * (static_cast<double>(v) - mean);
  return ss / static_cast<double>(y.size() - 1) / mean;
}

Dataset ingest_stream(std::istream& in, const std::string& source, const IngestOptions& opt) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    rows.push_back(split(line, opt.delimiter));
    line_numbers.push_back(line_no);
  }
  if (rows.empty()) throw DataError(source + ": no data rows");

  const std::size_t width = rows.front().size();
  if (width != 2 && width != 3) {
    std::ostringstream msg;
    msg << source << ": expected 2 count columns (optionally preceded by a date column), found " << width
        << " columns";
    throw DataError(msg.str());
  }
  const std::size_t first_count = width - 2;

  bool header = false;
  if (opt.header) {
    header = *opt.header;
  } else {
    const auto& r = rows.front();
    header = !parse_integer(r[first_count]) || !parse_integer(r[first_count + 1]);
  }

  Dataset ds;
  ds.source = source;
  ds.column_names = {"y1", "y2"};
  if (header) {
    ds.column_names = {rows.front()[first_count], rows.front()[first_count + 1]};
  }

  std::vector<Count> cols[2];
  std::vector<std::string> labels;
  for (std::size_t i = header ? 1 : 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::size_t ln = line_numbers[i];
    if (r.size() != width) {
      std::ostringstream msg;
      msg << source << ": row " << ln << " has " << r.size() << " columns, expected " << width
          << " (unequal column lengths)";
      throw DataError(msg.str());
    }
    for (std::size_t c = 0; c < 2; ++c) {
      const std::string& cell = r[first_count + c];
      if (cell.empty()) {
        std::ostringstream msg;
        msg << source << ": row " << ln << ", column " << first_count + c + 1
            << " is empty (unequal column lengths)";
        throw DataError(msg.str());
      }
      const auto v = parse_integer(cell);
      if (!v || *v < 0) {
        std::ostringstream msg;
        msg << source << ": row " << ln << ", column " << first_count + c + 1 << ": '" << cell
            << "' is not a nonnegative integer";
        throw DataError(msg.str());
      }
      cols[c].push_back(*v);
    }
    if (first_count == 1) labels.push_back(r[0]);
  }
  if (cols[0].empty()) throw DataError(source + ": no data rows");

  ds.dispersion = {dispersion_index(cols[0]), dispersion_index(cols[1])};
  std::ostringstream note;
  note << "dispersion index " << ds.column_names[0] << "=" << ds.dispersion[0] << ", " << ds.column_names[1] << "="
       << ds.dispersion[1] << "; ";
  switch (opt.assign) {
    case Assignment::keep:
      ds.swapped = false;
      note << "assignment kept as input order (forced)";
      break;
    case Assignment::swap:
      ds.swapped = true;
      note << "assignment swapped (forced)";
      break;
    case Assignment::automatic:
      ds.swapped = ds.dispersion[0] > ds.dispersion[1];
      if (ds.dispersion[0] == ds.dispersion[1]) {
        note << "tie in dispersion index, input order kept";
      } else {
        note << "more overdispersed column '" << (ds.swapped ? ds.column_names[0] : ds.column_names[1])
             << "' assigned to component 2";
      }
      break;
  }
  const int c1 = ds.swapped ? 1 : 0;
  ds.series.y1 = std::move(cols[c1]);
  ds.series.y2 = std::move(cols[1 - c1]);
  ds.series.labels = std::move(labels);
  ds.assignment_note = note.str();
  return ds;
}

Dataset ingest(const std::string& path, const IngestOptions& opt) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": " + std::strerror(errno));
  return ingest_stream(in, path, opt);
}

}  // namespace bcp
