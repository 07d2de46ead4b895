#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ael/model.hpp"

namespace ael::cli {

/// 17 significant digits in scientific notation; "nan"/"inf" for non-finite.
std::string format_double(double v);

std::string csv_row(const std::vector<std::string>& cells);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    /// Index of `name`; ConfigError-style Error when absent.
    std::size_t column_index(std::string_view name) const;
};

/// Numeric CSV: '#' lines are comments, the first other line is the header.
CsvTable parse_csv(std::string_view text);

/// Strategy from a solve-ne output: the `sigma` column plus `column`
/// (or the first delta column when empty).
Strategy load_strategy(const std::string& path, const std::string& column);

}  // namespace ael::cli
