#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vfcm {

/// Rows follow sorted distinct cluster ids, columns sorted distinct labels.
struct Contingency {
    std::vector<std::size_t> clusters;
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> counts;
};

struct Evaluation {
    double purity = 0.0;
    double rand_index = 0.0;
    Contingency contingency;
};

Contingency contingency_table(std::span<const std::size_t> assignments,
                              std::span<const std::string> labels);

double purity(std::span<const std::size_t> assignments, std::span<const std::string> labels);

/// Plain (unadjusted) Rand index over all unordered pairs.
double rand_index(std::span<const std::size_t> assignments, std::span<const std::string> labels);

Evaluation evaluate(std::span<const std::size_t> assignments, std::span<const std::string> labels);

/// Divides by the maximum entry. A trace whose maximum is not positive is
/// returned unchanged.
std::vector<double> normalize_trace(std::span<const double> trace);

}  // namespace vfcm
