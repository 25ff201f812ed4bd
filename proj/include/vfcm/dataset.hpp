#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vfcm/matrix.hpp"

namespace vfcm {

/// N x D dataset. Rows are points, columns are features. Optional string
/// labels ride along for evaluation and are never used by the fits.
class DataMatrix {
public:
    DataMatrix() = default;

    /// Throws InvalidArgument when N or D is zero, any value is non-finite, or
    /// labels/feature_names have the wrong length.
    explicit DataMatrix(Matrix values, std::vector<std::string> labels = {},
                        std::vector<std::string> feature_names = {});

    std::size_t rows() const noexcept { return values_.rows(); }
    std::size_t dims() const noexcept { return values_.cols(); }

    const Matrix& values() const noexcept { return values_; }
    double operator()(std::size_t i, std::size_t k) const noexcept { return values_(i, k); }
    std::span<const double> point(std::size_t i) const noexcept { return values_.row(i); }

    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }

    /// Single column k as its own N x 1 dataset (labels dropped).
    DataMatrix column(std::size_t k) const;

private:
    Matrix values_;
    std::vector<std::string> labels_;
    std::vector<std::string> feature_names_;
};

struct FeatureStats {
    std::vector<double> min;
    std::vector<double> max;
    std::vector<double> mean;
    std::vector<double> stddev;   // sample standard deviation, 0 when N == 1
    std::vector<double> scatter;  // (max - min) / stddev, 0 for constant features
};

struct CsvOptions {
    bool has_header = false;
    std::optional<std::size_t> label_column;  // 0-based
};

DataMatrix parse_csv(std::string_view text, const CsvOptions& options = {});
DataMatrix load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Per-dimension summary including the degree of scattering
/// s_r = (max_r - min_r) / sigma_r.
FeatureStats compute_stats(const DataMatrix& data);

enum class Normalization { none, min_max, z_score };

/// Per-dimension rescaling. Constant dimensions map to 0 under both min-max
/// and z-score. Labels pass through.
DataMatrix normalize(const DataMatrix& data, Normalization mode);

Normalization parse_normalization(std::string_view name);
std::string_view to_string(Normalization mode);

}  // namespace vfcm
