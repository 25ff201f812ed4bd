#include "vfcm/metrics.hpp"

#include <algorithm>
#include <map>

#include "vfcm/error.hpp"

namespace vfcm {

namespace {

void check_lengths(std::span<const std::size_t> assignments, std::span<const std::string> labels,
                   std::size_t min_len) {
    if (assignments.size() != labels.size()) {
        throw InvalidArgument("assignments and labels differ in length (" +
                              std::to_string(assignments.size()) + " vs " +
                              std::to_string(labels.size()) + ")");
    }
    if (assignments.size() < min_len) {
        throw InvalidArgument("need at least " + std::to_string(min_len) + " points");
    }
}

// n choose 2 as a double; exact for any realistic N.
double pairs(std::size_t n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n == 0 ? 0 : n - 1); }

}  // namespace

Contingency contingency_table(std::span<const std::size_t> assignments,
                              std::span<const std::string> labels) {
    check_lengths(assignments, labels, 1);
    std::map<std::size_t, std::size_t> cluster_index;
    std::map<std::string, std::size_t> label_index;
    for (auto a : assignments) cluster_index.emplace(a, 0);
    for (const auto& l : labels) label_index.emplace(l, 0);

    Contingency table;
    for (auto& [id, idx] : cluster_index) {
        idx = table.clusters.size();
        table.clusters.push_back(id);
    }
    for (auto& [name, idx] : label_index) {
        idx = table.labels.size();
        table.labels.push_back(name);
    }
    table.counts.assign(table.clusters.size(), std::vector<std::size_t>(table.labels.size(), 0));
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        ++table.counts[cluster_index[assignments[i]]][label_index[labels[i]]];
    }
    return table;
}

double purity(std::span<const std::size_t> assignments, std::span<const std::string> labels) {
    const auto table = contingency_table(assignments, labels);
    std::size_t majority = 0;
    for (const auto& row : table.counts) majority += *std::max_element(row.begin(), row.end());
    return static_cast<double>(majority) / static_cast<double>(assignments.size());
}

// Agreements = same-same pairs + different-different pairs, computed from
// the contingency table: a = sum C(n_ij,2), same-cluster = sum C(a_i,2),
// same-label = sum C(b_j,2), agreements = total + 2a - same_cluster - same_label.
double rand_index(std::span<const std::size_t> assignments, std::span<const std::string> labels) {
    check_lengths(assignments, labels, 2);
    const auto table = contingency_table(assignments, labels);

    double both = 0.0;
    double same_cluster = 0.0;
    std::vector<std::size_t> label_totals(table.labels.size(), 0);
    for (const auto& row : table.counts) {
        std::size_t row_total = 0;
        for (std::size_t c = 0; c < row.size(); ++c) {
            both += pairs(row[c]);
            row_total += row[c];
            label_totals[c] += row[c];
        }
        same_cluster += pairs(row_total);
    }
    double same_label = 0.0;
    for (auto t : label_totals) same_label += pairs(t);

    const double total = pairs(assignments.size());
    return (total + 2.0 * both - same_cluster - same_label) / total;
}

Evaluation evaluate(std::span<const std::size_t> assignments, std::span<const std::string> labels) {
    Evaluation ev;
    ev.contingency = contingency_table(assignments, labels);
    ev.purity = purity(assignments, labels);
    ev.rand_index = assignments.size() >= 2 ? rand_index(assignments, labels) : 1.0;
    return ev;
}

std::vector<double> normalize_trace(std::span<const double> trace) {
    std::vector<double> out(trace.begin(), trace.end());
    if (out.empty()) return out;
    const double peak = *std::max_element(out.begin(), out.end());
    if (!(peak > 0.0)) return out;
    for (auto& v : out) v /= peak;
    return out;
}

}  // namespace vfcm
