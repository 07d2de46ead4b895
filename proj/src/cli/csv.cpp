#include "ael/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ael/cli/config.hpp"

namespace ael::cli {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out.push_back(',');
        out += cells[i];
    }
    out.push_back('\n');
    return out;
}

std::size_t CsvTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw ConfigError("CSV has no column '" + std::string(name) + "'");
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        auto cell = line.substr(pos, comma == line.npos ? line.npos : comma - pos);
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.remove_suffix(1);
        while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
        out.push_back(cell);
        if (comma == line.npos) break;
        pos = comma + 1;
    }
    return out;
}

double parse_cell(std::string_view cell, std::size_t line_no) {
    if (cell == "nan") return std::nan("");
    if (cell == "inf") return INFINITY;
    if (cell == "-inf") return -INFINITY;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty())
        throw ConfigError("CSV line " + std::to_string(line_no) + ": bad number '" +
                          std::string(cell) + "'");
    return v;
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
    CsvTable t;
    bool have_header = false;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == text.npos ? text.npos : nl - pos);
        pos = nl == text.npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        const auto cells = split(line);
        if (!have_header) {
            for (const auto c : cells) t.columns.emplace_back(c);
            have_header = true;
            continue;
        }
        if (cells.size() != t.columns.size())
            throw ConfigError("CSV line " + std::to_string(line_no) + ": expected " +
                              std::to_string(t.columns.size()) + " cells");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto c : cells) row.push_back(parse_cell(c, line_no));
        t.rows.push_back(std::move(row));
    }
    if (!have_header) throw ConfigError("CSV has no header line");
    return t;
}

Strategy load_strategy(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open strategy file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const CsvTable t = parse_csv(ss.str());
    const std::size_t is = t.column_index("sigma");
    std::size_t id = 0;
    if (column.empty()) {
        id = t.columns.size();
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            if (t.columns[i].starts_with("delta")) {
                id = i;
                break;
            }
        if (id == t.columns.size()) throw ConfigError("strategy file '" + path + "' has no delta column");
    } else {
        id = t.column_index(column);
    }
    std::vector<double> grid;
    std::vector<double> values;
    for (const auto& row : t.rows) {
        grid.push_back(row[is]);
        values.push_back(row[id]);
    }
    try {
        return Strategy(std::move(grid), std::move(values));
    } catch (const Error& e) {
        throw ConfigError("strategy file '" + path + "': " + e.what());
    }
}

}  // namespace ael::cli
