#include "vfcm/error.hpp"

namespace vfcm {

namespace {

std::string locate(const std::string& what, std::optional<std::size_t> row,
                   std::optional<std::size_t> column) {
    std::string out = what;
    if (row) out += " (row " + std::to_string(*row);
    if (column) out += (row ? ", column " : " (column ") + std::to_string(*column);
    if (row || column) out += ")";
    return out;
}

std::string empty_cluster_message(std::size_t cluster, std::optional<std::size_t> dimension) {
    std::string out = "empty cluster: no membership mass for cluster " + std::to_string(cluster + 1);
    if (dimension) out += " in dimension " + std::to_string(*dimension + 1);
    return out;
}

}  // namespace

DatasetError::DatasetError(const std::string& what, std::optional<std::size_t> row,
                           std::optional<std::size_t> column)
    : Error(locate(what, row, column)), row_(row), column_(column) {}

EmptyClusterError::EmptyClusterError(std::size_t cluster, std::optional<std::size_t> dimension)
    : Error(empty_cluster_message(cluster, dimension)), cluster_(cluster), dimension_(dimension) {}

}  // namespace vfcm
