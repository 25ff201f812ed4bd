#include "vfcm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vfcm/error.hpp"

namespace vfcm {

DataMatrix::DataMatrix(Matrix values, std::vector<std::string> labels,
                       std::vector<std::string> feature_names)
    : values_(std::move(values)), labels_(std::move(labels)), feature_names_(std::move(feature_names)) {
    if (values_.rows() == 0 || values_.cols() == 0) {
        throw InvalidArgument("dataset must have at least one row and one column");
    }
    if (!labels_.empty() && labels_.size() != values_.rows()) {
        throw InvalidArgument("label count does not match row count");
    }
    if (!feature_names_.empty() && feature_names_.size() != values_.cols()) {
        throw InvalidArgument("feature name count does not match column count");
    }
    for (double v : values_.flat()) {
        if (!std::isfinite(v)) throw InvalidArgument("dataset contains a non-finite value");
    }
}

DataMatrix DataMatrix::column(std::size_t k) const {
    Matrix col(rows(), 1);
    for (std::size_t i = 0; i < rows(); ++i) col(i, 0) = values_(i, k);
    std::vector<std::string> names;
    if (!feature_names_.empty()) names.push_back(feature_names_[k]);
    return DataMatrix(std::move(col), {}, std::move(names));
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

bool parse_double(std::string_view field, double& out) {
    if (field.empty()) return false;
    if (field.front() == '+') field.remove_prefix(1);
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

DataMatrix parse_csv(std::string_view text, const CsvOptions& options) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::vector<std::string> names;
    std::vector<std::string> labels;
    std::vector<double> values;
    std::size_t width = 0;
    std::size_t rows = 0;
    std::size_t line_no = 0;
    bool header_pending = options.has_header;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto line = trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (line.empty()) continue;

        const auto fields = split_fields(line);
        if (width == 0) {
            width = fields.size();
            if (options.label_column && *options.label_column >= width) {
                throw DatasetError("label column " + std::to_string(*options.label_column + 1) +
                                       " is out of range for " + std::to_string(width) + " columns",
                                   line_no);
            }
            if (options.label_column && width == 1) {
                throw DatasetError("no feature columns besides the label column", line_no);
            }
        } else if (fields.size() != width) {
            throw DatasetError("ragged row: expected " + std::to_string(width) + " fields, found " +
                                   std::to_string(fields.size()),
                               line_no);
        }

        if (header_pending) {
            header_pending = false;
            for (std::size_t c = 0; c < width; ++c) {
                if (options.label_column && c == *options.label_column) continue;
                names.emplace_back(fields[c]);
            }
            continue;
        }

        for (std::size_t c = 0; c < width; ++c) {
            if (options.label_column && c == *options.label_column) {
                labels.emplace_back(fields[c]);
                continue;
            }
            double v = 0.0;
            if (!parse_double(fields[c], v)) {
                throw DatasetError("cannot parse '" + std::string(fields[c]) + "' as a finite number",
                                   line_no, c + 1);
            }
            values.push_back(v);
        }
        ++rows;
    }

    if (rows == 0) throw DatasetError("no data rows");

    const std::size_t dims = width - (options.label_column ? 1 : 0);
    Matrix m(rows, dims);
    std::copy(values.begin(), values.end(), m.flat().begin());
    return DataMatrix(std::move(m), std::move(labels), std::move(names));
}

DataMatrix load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DatasetError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), options);
}

FeatureStats compute_stats(const DataMatrix& data) {
    const std::size_t n = data.rows();
    const std::size_t d = data.dims();
    FeatureStats st;
    st.min.assign(d, 0.0);
    st.max.assign(d, 0.0);
    st.mean.assign(d, 0.0);
    st.stddev.assign(d, 0.0);
    st.scatter.assign(d, 0.0);

    for (std::size_t k = 0; k < d; ++k) {
        double lo = data(0, k);
        double hi = data(0, k);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            lo = std::min(lo, data(i, k));
            hi = std::max(hi, data(i, k));
            sum += data(i, k);
        }
        // Rounding can push the mean a hair outside [lo, hi] for constant columns.
        const double mean = std::clamp(sum / static_cast<double>(n), lo, hi);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dev = data(i, k) - mean;
            ss += dev * dev;
        }
        const double sigma = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;

        st.min[k] = lo;
        st.max[k] = hi;
        st.mean[k] = mean;
        st.stddev[k] = sigma;
        st.scatter[k] = (sigma > 0.0 && hi > lo) ? (hi - lo) / sigma : 0.0;
    }
    return st;
}

DataMatrix normalize(const DataMatrix& data, Normalization mode) {
    if (mode == Normalization::none) return data;

    const auto st = compute_stats(data);
    Matrix out(data.rows(), data.dims());
    for (std::size_t k = 0; k < data.dims(); ++k) {
        const double range = st.max[k] - st.min[k];
        for (std::size_t i = 0; i < data.rows(); ++i) {
            const double x = data(i, k);
            if (mode == Normalization::min_max) {
                out(i, k) = range > 0.0 ? (x - st.min[k]) / range : 0.0;
            } else {
                out(i, k) = st.stddev[k] > 0.0 ? (x - st.mean[k]) / st.stddev[k] : 0.0;
            }
        }
    }
    return DataMatrix(std::move(out), data.labels(), data.feature_names());
}

Normalization parse_normalization(std::string_view name) {
    if (name == "none") return Normalization::none;
    if (name == "min-max" || name == "minmax") return Normalization::min_max;
    if (name == "z-score" || name == "zscore") return Normalization::z_score;
    throw InvalidArgument("unknown normalization '" + std::string(name) + "'");
}

std::string_view to_string(Normalization mode) {
    switch (mode) {
        case Normalization::none: return "none";
        case Normalization::min_max: return "min-max";
        case Normalization::z_score: return "z-score";
    }
    return "none";
}

}  // namespace vfcm
