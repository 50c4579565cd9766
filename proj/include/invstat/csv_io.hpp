#ifndef INVSTAT_CSV_IO_HPP
#define INVSTAT_CSV_IO_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "invstat/errors.hpp"
#include "invstat/index.hpp"
#include "invstat/series.hpp"

// CSV dialect: comma-separated, no quoting; a mandatory header row; an
// optional leading ISO-8601 date column announced by a first header cell of
// "date"; the remaining columns are decimal closes. Lines starting with '#'
// before the header are metadata comments and are skipped on read. Values
// are written in shortest round-trip form, so write-then-read is exact.

namespace invstat {

inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, const std::string& where) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw validation_error(where + ": cannot parse number from '" + std::string(text) + "'");
    return v;
}

namespace detail {

struct csv_table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows; // same width as header
    bool has_dates = false;                     // first column is a date column
};

inline std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.emplace_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return cells;
}

inline bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

inline csv_table read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error(path + ": cannot open file");
    csv_table table;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header && line.front() == '#') continue;
        auto cells = split_csv_line(line);
        if (!saw_header) {
            table.header = std::move(cells);
            table.has_dates = iequals(table.header.front(), "date");
            saw_header = true;
            continue;
        }
        if (cells.size() != table.header.size())
            throw validation_error(path + ":" + std::to_string(lineno) + ": expected " +
                                   std::to_string(table.header.size()) + " cells, got " +
                                   std::to_string(cells.size()));
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (cells[c].empty())
                throw validation_error(path + ":" + std::to_string(lineno) + ": empty cell in column '" +
                                       table.header[c] + "' (missing values are rejected, not imputed)");
        table.rows.push_back(std::move(cells));
    }
    if (!saw_header) throw validation_error(path + ": no header row found");
    if (table.rows.empty()) throw validation_error(path + ": no data rows");
    return table;
}

inline double parse_cell(const std::string& path, std::size_t row_index, const std::string& cell) {
    // row_index is 0-based over data rows; data starts after the header.
    return parse_double(cell, path + ":data row " + std::to_string(row_index + 1));
}

} // namespace detail

/// Read a single-series CSV: optional date column plus exactly one value column.
inline PriceSeries read_price_series(const std::string& path) {
    const auto table = detail::read_csv(path);
    const std::size_t value_cols = table.header.size() - (table.has_dates ? 1 : 0);
    if (value_cols != 1)
        throw validation_error(path + ": expected a single value column, got " +
                               std::to_string(value_cols));
    const std::size_t vcol = table.has_dates ? 1 : 0;
    std::vector<double> values;
    std::vector<std::string> dates;
    values.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        values.push_back(detail::parse_cell(path, r, table.rows[r][vcol]));
        if (table.has_dates) dates.push_back(table.rows[r][0]);
    }
    try {
        return PriceSeries(std::move(values), table.header[vcol], std::move(dates));
    } catch (const validation_error& e) {
        throw validation_error(path + ": " + e.what());
    }
}

/// Read a wide panel CSV: optional date column plus >= 2 stock columns.
inline PricePanel read_price_panel(const std::string& path) {
    const auto table = detail::read_csv(path);
    const std::size_t first_value = table.has_dates ? 1 : 0;
    const std::size_t n_stocks = table.header.size() - first_value;
    if (n_stocks < 2)
        throw validation_error(path + ": a panel needs at least 2 stock columns, got " +
                               std::to_string(n_stocks));
    std::vector<std::string> names(table.header.begin() + static_cast<std::ptrdiff_t>(first_value),
                                   table.header.end());
    std::vector<std::vector<double>> rows(n_stocks,
                                          std::vector<double>(table.rows.size()));
    std::vector<std::string> dates;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t n = 0; n < n_stocks; ++n)
            rows[n][r] = detail::parse_cell(path, r, table.rows[r][first_value + n]);
        if (table.has_dates) dates.push_back(table.rows[r][0]);
    }
    try {
        return PricePanel(std::move(names), std::move(rows), std::move(dates));
    } catch (const validation_error& e) {
        throw validation_error(path + ": " + e.what());
    }
}

/// How a multi-file panel was aligned: the shared day grid and, per file,
/// how many of its days were dropped because the others lacked them.
struct PanelAlignment {
    std::vector<std::string> dates; // empty for dateless inputs
    std::vector<std::pair<std::string, std::size_t>> dropped_per_file;
};

/// Assemble a panel from one series file per stock. Dated files are aligned
/// on the intersection of their dates (dropped days reported); dateless
/// files must already agree in length. Mixing the two is rejected.
inline std::pair<PricePanel, PanelAlignment>
read_panel_from_series_files(const std::vector<std::string>& paths) {
    if (paths.size() < 2)
        throw validation_error("a panel needs at least 2 input files, got " +
                               std::to_string(paths.size()));
    std::vector<PriceSeries> series;
    series.reserve(paths.size());
    for (const auto& p : paths) series.push_back(read_price_series(p));

    const bool dated = !series.front().dates().empty();
    for (std::size_t i = 0; i < series.size(); ++i)
        if (series[i].dates().empty() == dated)
            throw validation_error(paths[i] + ": all panel inputs must either carry dates or none");

    PanelAlignment alignment;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> names;
    for (const auto& s : series) names.push_back(s.label());

    if (!dated) {
        const std::size_t len = series.front().size();
        for (std::size_t i = 0; i < series.size(); ++i)
            if (series[i].size() != len)
                throw validation_error(paths[i] + ": dateless panel inputs must have equal length (" +
                                       std::to_string(series[i].size()) + " vs " +
                                       std::to_string(len) + "); add a date column to align");
        for (const auto& s : series) rows.push_back(s.values());
    } else {
        // shared dates, in each file's (identical, validated) sorted order
        std::map<std::string, std::size_t> date_count;
        for (std::size_t i = 0; i < series.size(); ++i) {
            std::map<std::string, std::size_t> seen;
            for (const auto& d : series[i].dates())
                if (++seen[d] > 1)
                    throw validation_error(paths[i] + ": duplicate date " + d);
            for (const auto& [d, c] : seen) date_count[d] += c;
        }
        std::vector<std::string> common;
        for (const auto& [d, c] : date_count)
            if (c == series.size()) common.push_back(d);
        if (common.size() < 2)
            throw validation_error("panel alignment: only " + std::to_string(common.size()) +
                                   " shared dates across inputs");
        std::sort(common.begin(), common.end()); // ISO-8601 sorts chronologically
        for (std::size_t i = 0; i < series.size(); ++i) {
            std::map<std::string, double> by_date;
            for (std::size_t t = 0; t < series[i].size(); ++t)
                by_date[series[i].dates()[t]] = series[i][t];
            std::vector<double> row;
            row.reserve(common.size());
            for (const auto& d : common) row.push_back(by_date.at(d));
            rows.push_back(std::move(row));
            alignment.dropped_per_file.emplace_back(paths[i], series[i].size() - common.size());
        }
        alignment.dates = std::move(common);
    }
    return {PricePanel(std::move(names), std::move(rows), alignment.dates), std::move(alignment)};
}

namespace detail {

inline std::string sanitize_label(std::string label) {
    for (char& c : label)
        if (c == ',' || c == '\n' || c == '\r') c = '_';
    return label.empty() ? std::string("value") : label;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary: byte-identical across reruns
    if (!out) throw validation_error(path + ": cannot open for writing");
    return out;
}

} // namespace detail

inline void write_price_series(const std::string& path, const PriceSeries& series,
                               const std::vector<std::string>& comment_lines = {}) {
    auto out = detail::open_out(path);
    for (const auto& c : comment_lines) out << "# " << c << "\n";
    const bool dated = !series.dates().empty();
    if (dated) out << "date,";
    out << detail::sanitize_label(series.label()) << "\n";
    for (std::size_t t = 0; t < series.size(); ++t) {
        if (dated) out << series.dates()[t] << ",";
        out << format_double(series[t]) << "\n";
    }
}

inline void write_price_panel(const std::string& path, const PricePanel& panel,
                              const std::vector<std::string>& comment_lines = {}) {
    auto out = detail::open_out(path);
    for (const auto& c : comment_lines) out << "# " << c << "\n";
    const bool dated = !panel.dates().empty();
    if (dated) out << "date";
    for (std::size_t n = 0; n < panel.stocks(); ++n)
        out << (dated || n > 0 ? "," : "") << detail::sanitize_label(panel.name(n));
    out << "\n";
    for (std::size_t t = 0; t < panel.size(); ++t) {
        if (dated) out << panel.dates()[t];
        for (std::size_t n = 0; n < panel.stocks(); ++n)
            out << (dated || n > 0 ? "," : "") << format_double(panel.row(n)[t]);
        out << "\n";
    }
}

} // namespace invstat

#endif
