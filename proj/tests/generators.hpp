#pragma once

#include <cstddef>
#include <random>

#include "vfcm/dataset.hpp"
#include "vfcm/fit.hpp"

namespace gen {

struct Instance {
    vfcm::DataMatrix data;
    vfcm::Centers centers;
    double m = 2.0;
};

// Small random clustering problem: N <= 20, D <= 5, C <= 4 (C <= N),
// m in [1.2, 6]. Points are blobs around random anchors so the fits are not
// all trivially degenerate. Initial centers are perturbed data points.
inline Instance random_instance(std::mt19937_64& rng, std::size_t max_n = 20, std::size_t max_d = 5,
                                std::size_t max_c = 4) {
    std::uniform_int_distribution<std::size_t> pick_d(1, max_d);
    std::uniform_int_distribution<std::size_t> pick_n(2, max_n);
    std::uniform_real_distribution<double> pick_m(1.2, 6.0);
    std::uniform_real_distribution<double> anchor(-10.0, 10.0);
    std::normal_distribution<double> noise(0.0, 1.0);

    const std::size_t n = pick_n(rng);
    const std::size_t d = pick_d(rng);
    const std::size_t c = std::uniform_int_distribution<std::size_t>(1, std::min(max_c, n))(rng);

    std::vector<std::vector<double>> anchors(c, std::vector<double>(d));
    for (auto& a : anchors)
        for (auto& e : a) e = anchor(rng);

    vfcm::Matrix x(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = anchors[i % c];
        for (std::size_t k = 0; k < d; ++k) x(i, k) = a[k] + noise(rng);
    }
    vfcm::Centers v(c, d);
    for (std::size_t j = 0; j < c; ++j)
        for (std::size_t k = 0; k < d; ++k) v(j, k) = x(j, k) + 0.25 * noise(rng);

    return {vfcm::DataMatrix(std::move(x)), std::move(v), pick_m(rng)};
}

}  // namespace gen
