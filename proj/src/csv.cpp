#include "metaqe/csv.hpp"

#include <cstdio>
#include <fstream>

#include "metaqe/errors.hpp"

namespace metaqe::csv {

std::string format_number(double value)
{
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& columns)
{
    if (header.size() != columns.size())
        throw InvalidParameter("CSV header and column count differ");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows)
            throw GridError("CSV columns differ in length");

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open " + path.string() + " for writing");
    for (std::size_t j = 0; j < header.size(); ++j)
        out << (j ? "," : "") << header[j];
    out << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j)
            out << (j ? "," : "") << format_number(columns[j][i]);
        out << '\n';
    }
    if (!out)
        throw Error("failed writing " + path.string());
}

void write_rows(const std::filesystem::path& path, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open " + path.string() + " for writing");
    for (std::size_t j = 0; j < header.size(); ++j)
        out << (j ? "," : "") << header[j];
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw InvalidParameter("CSV row width differs from header");
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? "," : "") << row[j];
        out << '\n';
    }
    if (!out)
        throw Error("failed writing " + path.string());
}

void write_trace(const std::filesystem::path& path, const Trace& trace)
{
    std::vector<std::string> header{trace.axis_name};
    std::vector<std::vector<double>> columns{trace.axis};
    header.insert(header.end(), trace.names.begin(), trace.names.end());
    columns.insert(columns.end(), trace.columns.begin(), trace.columns.end());
    write_table(path, header, columns);
}

}  // namespace metaqe::csv
