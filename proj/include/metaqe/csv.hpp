#ifndef METAQE_CSV_HPP
#define METAQE_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "metaqe/types.hpp"

namespace metaqe::csv {

/// printf "%.17g": 17 significant digits (trailing zeros dropped), enough to round-trip any double.
std::string format_number(double value);

/// Header row plus one row per record, comma separated, LF line endings.
void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& columns);

/// Same layout for pre-formatted cells.
void write_rows(const std::filesystem::path& path, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows);

/// Axis column followed by every named column.
void write_trace(const std::filesystem::path& path, const Trace& trace);

}  // namespace metaqe::csv

#endif
