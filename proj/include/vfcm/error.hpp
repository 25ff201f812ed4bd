#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace vfcm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Raised while ingesting a CSV file. Row and column are 1-based when known.
class DatasetError : public Error {
public:
    DatasetError(const std::string& what, std::optional<std::size_t> row = std::nullopt,
                 std::optional<std::size_t> column = std::nullopt);

    std::optional<std::size_t> row() const noexcept { return row_; }
    std::optional<std::size_t> column() const noexcept { return column_; }

private:
    std::optional<std::size_t> row_;
    std::optional<std::size_t> column_;
};

// A cluster (or a cluster/dimension pair for VFC) lost all membership mass,
// so its center update divides by zero.
class EmptyClusterError : public Error {
public:
    EmptyClusterError(std::size_t cluster, std::optional<std::size_t> dimension = std::nullopt);

    std::size_t cluster() const noexcept { return cluster_; }
    std::optional<std::size_t> dimension() const noexcept { return dimension_; }

private:
    std::size_t cluster_;
    std::optional<std::size_t> dimension_;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

enum class PgmErrorKind {
    bad_magic,
    bad_header_token,
    maxval_too_large,
    truncated_payload,
    pixel_out_of_range,
};

class PgmError : public Error {
public:
    PgmError(PgmErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}

    PgmErrorKind kind() const noexcept { return kind_; }

private:
    PgmErrorKind kind_;
};

}  // namespace vfcm
