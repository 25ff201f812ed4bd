#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace vfcm::detail {

// Fills out[j] = 1 / sum_n (dist[j] / dist[n])^(2/(m-1)), written as
// w_j / sum(w) with w_j = (d_min / d_j)^(2/(m-1)) so no term exceeds 1.
// Distances below delta trigger a crisp assignment to the nearest center.
// Both scalar and vector memberships go through here, which is what makes a
// one-dimensional VFC fit reproduce FCM.
inline void memberships_from_distances(std::span<const double> dist, double m, double delta,
                                       std::span<double> out) {
    const std::size_t c = dist.size();
    std::size_t nearest = 0;
    for (std::size_t j = 1; j < c; ++j) {
        if (dist[j] < dist[nearest]) nearest = j;
    }
    const double dmin = dist[nearest];
    if (dmin < delta) {
        for (std::size_t j = 0; j < c; ++j) out[j] = (j == nearest) ? 1.0 : 0.0;
        return;
    }
    const double exponent = 2.0 / (m - 1.0);
    double total = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
        out[j] = (j == nearest) ? 1.0 : std::pow(dmin / dist[j], exponent);
        total += out[j];
    }
    for (std::size_t j = 0; j < c; ++j) out[j] /= total;
}

}  // namespace vfcm::detail
