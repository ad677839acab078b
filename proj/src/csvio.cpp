#include "mlev/csvio.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "mlev/errors.hpp"

namespace mlev {

std::string format_g17(double v) {
    char buf[64];
    const std::to_chars_result res =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (res.ec != std::errc())
        throw NumericalError("number formatting failed");
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    for (std::string& f : out) {
        const std::size_t b = f.find_first_not_of(" \t");
        const std::size_t e = f.find_last_not_of(" \t");
        f = (b == std::string::npos) ? std::string() : f.substr(b, e - b + 1);
    }
    return out;
}

} // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open CSV file: " + path.string());

    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '#') {
            table.comments.push_back(line);
            continue;
        }
        if (line.find('"') != std::string::npos)
            throw ValidationError(path.string() + " line " +
                                  std::to_string(line_no) +
                                  ": quoted fields are not supported in "
                                  "numeric tables");
        std::vector<std::string> fields = split_fields(line);
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size())
            throw ValidationError(
                path.string() + " line " + std::to_string(line_no) + ": expected " +
                std::to_string(table.header.size()) + " fields, got " +
                std::to_string(fields.size()));
        table.rows.push_back(std::move(fields));
        table.row_lines.push_back(line_no);
    }
    if (table.header.empty())
        throw ValidationError(path.string() + ": no header row found");
    return table;
}

std::size_t csv_column(const CsvTable& table, const std::string& name) {
    for (std::size_t i = 0; i < table.header.size(); ++i)
        if (table.header[i] == name)
            return i;
    std::string have;
    for (std::size_t i = 0; i < table.header.size(); ++i)
        have += (i ? ", " : "") + table.header[i];
    throw ValidationError("CSV is missing required column '" + name +
                          "' (header has: " + have + ")");
}

double csv_number(const CsvTable& table, std::size_t row, std::size_t col,
                  const std::string& col_name) {
    const std::string& tok = table.rows[row][col];
    double v = 0.0;
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    const std::from_chars_result res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw ValidationError("line " + std::to_string(table.row_lines[row]) +
                              ": cannot parse '" + tok + "' as a number in "
                              "column '" + col_name + "'");
    return v;
}

RingdownSeries load_ringdown_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::size_t ct = csv_column(table, "t_s");
    const std::size_t ca = csv_column(table, "amplitude");
    const std::size_t cs = csv_column(table, "sigma");

    RingdownSeries out;
    out.samples.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        out.samples.push_back({csv_number(table, r, ct, "t_s"),
                               csv_number(table, r, ca, "amplitude"),
                               csv_number(table, r, cs, "sigma")});
    return out;
}

PressureSeries load_pressure_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::size_t cp = csv_column(table, "pressure_mbar");
    const std::size_t cl = csv_column(table, "linewidth_hz");
    const std::size_t cs = csv_column(table, "sigma_hz");

    PressureSeries out;
    out.points.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        out.points.push_back({csv_number(table, r, cp, "pressure_mbar"),
                              csv_number(table, r, cl, "linewidth_hz"),
                              csv_number(table, r, cs, "sigma_hz")});
    return out;
}

std::vector<std::pair<double, double>> load_polyline_csv(
    const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::size_t cx = csv_column(table, "x");
    const std::size_t cy = csv_column(table, "y");
    std::vector<std::pair<double, double>> out;
    out.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        out.emplace_back(csv_number(table, r, cx, "x"),
                         csv_number(table, r, cy, "y"));
    return out;
}

void write_curve_csv(const std::filesystem::path& path, const ExclusionCurve& curve,
                     const std::vector<std::pair<std::string, std::string>>& metadata) {
    std::ostringstream body;
    for (const auto& [key, value] : metadata)
        body << "# " << key << ": " << value << "\n";
    body << curve.abscissa << "," << curve.ordinate << "\n";
    for (const CurvePoint& p : curve.points) {
        body << format_g17(p.x) << ",";
        if (p.y)
            body << format_g17(*p.y);
        else
            body << "none";
        body << "\n";
    }

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot open output file: " + path.string());
    out << body.str();
    if (!out)
        throw ValidationError("write failed: " + path.string());
}

} // namespace mlev
