#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fcheb {

/// Writes through a temporary file in the target directory followed by a rename, creating the
/// directory when needed. Throws std::runtime_error on I/O failure.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

/// Header line then rows, comma separated, '\n' line ends. Fields containing a comma, quote or
/// newline are quoted.
std::string csv_text(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
};

/// Line chart with linear axes, one polyline per series, dashed vertical markers at `marks`.
std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<SvgSeries>& series, const std::vector<double>& marks = {});

}  // namespace fcheb
