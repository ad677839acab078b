#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mlev/exclusion.hpp"
#include "mlev/measurement.hpp"

namespace mlev {

// Shortest-exact decimal with 17 significant digits; round-trips any double.
std::string format_g17(double v);

// A parsed CSV: '#'-prefixed lines collected as comments, first non-comment
// line is the header, everything after is data. Errors carry 1-based line
// numbers. No quoting support; these are plain numeric tables.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> row_lines; // source line of each row
};

CsvTable read_csv(const std::filesystem::path& path);

// Column lookup that throws ValidationError naming the missing column.
std::size_t csv_column(const CsvTable& table, const std::string& name);

// Strict double parse; errors name the file line, column, and bad token.
double csv_number(const CsvTable& table, std::size_t row, std::size_t col,
                  const std::string& col_name);

// Measurement loaders. Expected headers:
//   ringdown: t_s, amplitude, sigma
//   pressure: pressure_mbar, linewidth_hz, sigma_hz
RingdownSeries load_ringdown_csv(const std::filesystem::path& path);
PressureSeries load_pressure_csv(const std::filesystem::path& path);

// Generic two-column polyline (overlay pass-through): header x, y.
std::vector<std::pair<double, double>> load_polyline_csv(const std::filesystem::path& path);

// Curve writer. Metadata lines first ('# key: value'), then the header, then
// one row per point with empty ordinates spelled "none". "\n" line endings.
void write_curve_csv(const std::filesystem::path& path, const ExclusionCurve& curve,
                     const std::vector<std::pair<std::string, std::string>>& metadata);

} // namespace mlev
