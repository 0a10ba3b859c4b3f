#include <algorithm>

#include "metaqe/errors.hpp"
#include "metaqe/types.hpp"

namespace metaqe {

const std::vector<double>& Trace::column(std::string_view name) const
{
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw InvalidParameter("trace has no column '" + std::string(name) + "'");
    return columns[static_cast<std::size_t>(it - names.begin())];
}

void Trace::add_column(std::string name, std::vector<double> values)
{
    if (values.size() != axis.size())
        throw GridError("column '" + name + "' has " + std::to_string(values.size()) + " samples, axis has " +
                        std::to_string(axis.size()));
    names.push_back(std::move(name));
    columns.push_back(std::move(values));
}

}  // namespace metaqe
