#pragma once

// Comma-separated sample files: optional grid header row, '.' decimal point,
// optional trailing label column. Values are written with 17 significant
// digits so a write/read cycle reproduces every double exactly.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fundepth/core.hpp"

namespace fundepth {

struct CsvOptions {
  bool has_grid_header = false;
  bool has_label_column = false;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                          : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

inline std::string format_double(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace detail

inline FunctionalSample read_csv(std::istream& in, const CsvOptions& opts = {}) {
  std::vector<double> header;
  std::vector<double> body;
  std::vector<std::string> labels;
  std::size_t width = 0;
  std::size_t rows = 0;
  bool header_pending = opts.has_grid_header;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto fields = detail::split_fields(line);

    if (header_pending) {
      header_pending = false;
      // A header may carry a trailing name for the label column.
      if (opts.has_label_column && fields.size() > 1) {
        double ignored;
        if (!detail::parse_double(fields.back(), ignored)) fields.pop_back();
      }
      for (std::size_t c = 0; c < fields.size(); ++c) {
        double v;
        if (!detail::parse_double(fields[c], v))
          throw ParseError("grid header, column " + std::to_string(c + 1) + ": cannot parse '" +
                           std::string(fields[c]) + "' as a number");
        header.push_back(v);
      }
      continue;
    }

    if (opts.has_label_column) {
      if (fields.size() < 2)
        throw FormatError("row " + std::to_string(line_no) + " has no value before the label column");
      labels.emplace_back(fields.back());
      fields.pop_back();
    }
    if (rows == 0) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw FormatError("row " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                        " values, expected " + std::to_string(width));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      double v;
      if (!detail::parse_double(fields[c], v))
        throw ParseError("row " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                         ": cannot parse '" + std::string(fields[c]) + "' as a number");
      body.push_back(v);
    }
    ++rows;
  }

  if (rows == 0) throw FormatError("no data rows");

  Grid grid;
  if (opts.has_grid_header) {
    if (header.size() != width)
      throw FormatError("grid header has " + std::to_string(header.size()) + " points but rows have " +
                        std::to_string(width) + " values");
    grid = Grid::trapezoid(std::move(header));
  } else {
    grid = Grid::sequence(width);
  }

  Matrix values = Eigen::Map<Matrix>(body.data(), static_cast<Eigen::Index>(rows),
                                     static_cast<Eigen::Index>(width));
  return FunctionalSample(std::move(grid), std::move(values), std::move(labels));
}

inline FunctionalSample load_csv(const std::string& path, const CsvOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_csv(in, opts);
}

inline FunctionalSample load_csv(const std::string& path, bool has_grid_header) {
  return load_csv(path, CsvOptions{has_grid_header, false});
}

/// Writes the grid header (when requested), then one row per curve.
inline void write_csv(std::ostream& out, const FunctionalSample& sample, bool with_grid_header = true) {
  auto emit_row = [&](auto&& get, std::size_t d) {
    for (std::size_t j = 0; j < d; ++j) {
      if (j) out << ',';
      out << detail::format_double(get(j));
    }
  };
  const std::size_t d = sample.dim();
  if (with_grid_header) {
    emit_row([&](std::size_t j) { return sample.grid().point(j); }, d);
    out << '\n';
  }
  for (std::size_t i = 0; i < sample.rows(); ++i) {
    emit_row([&](std::size_t j) { return sample(i, j); }, d);
    if (!sample.labels().empty()) out << ',' << sample.labels()[i];
    out << '\n';
  }
}

/// Depth output: `row_index,depth,kind`, row_index 0-based in input order.
inline void write_depth_csv(std::ostream& out, const std::vector<DepthResult>& results) {
  out << "row_index,depth,kind\n";
  for (const auto& r : results)
    for (std::size_t i = 0; i < r.values.size(); ++i)
      out << i << ',' << detail::format_double(r.values[i]) << ',' << to_string(r.kind) << '\n';
}

}  // namespace fundepth
