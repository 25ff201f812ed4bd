#include "vfcm/fcm.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kernels.hpp"
#include "vfcm/error.hpp"
#include "vfcm/vfc.hpp"

namespace vfcm {

namespace {

void check_centers(const DataMatrix& data, const Centers& centers) {
    if (centers.rows() < 1 || centers.cols() != data.dims()) {
        throw InvalidArgument("centers must be C x D with D matching the dataset");
    }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        s += diff * diff;
    }
    return s;
}

}  // namespace

MembershipMatrix fcm_update_memberships(const DataMatrix& data, const Centers& centers, double m,
                                        double singularity_delta) {
    check_centers(data, centers);
    const std::size_t n = data.rows();
    const std::size_t c = centers.rows();
    MembershipMatrix u(n, c);
    std::vector<double> dist(c);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            dist[j] = std::sqrt(squared_distance(data.point(i), centers.row(j)));
        }
        detail::memberships_from_distances(dist, m, singularity_delta, u.row(i));
    }
    return u;
}

Centers fcm_update_centers(const DataMatrix& data, const MembershipMatrix& memberships, double m) {
    const std::size_t n = data.rows();
    const std::size_t d = data.dims();
    const std::size_t c = memberships.cols();
    if (memberships.rows() != n) throw InvalidArgument("membership rows do not match dataset rows");

    Centers v(c, d);
    std::vector<double> num(d);
    for (std::size_t j = 0; j < c; ++j) {
        std::fill(num.begin(), num.end(), 0.0);
        double den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = std::pow(memberships(i, j), m);
            den += w;
            for (std::size_t k = 0; k < d; ++k) num[k] += w * data(i, k);
        }
        if (!(den > 0.0)) throw EmptyClusterError(j);
        for (std::size_t k = 0; k < d; ++k) v(j, k) = num[k] / den;
    }
    return v;
}

double fcm_objective(const DataMatrix& data, const Centers& centers,
                     const MembershipMatrix& memberships, double m) {
    check_centers(data, centers);
    double j_total = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t j = 0; j < centers.rows(); ++j) {
            j_total += std::pow(memberships(i, j), m) * squared_distance(data.point(i), centers.row(j));
        }
    }
    return j_total;
}

FcmResult fcm_fit(const DataMatrix& data, const FitConfig& config,
                  const std::optional<Centers>& initial_centers) {
    config.validate(data.rows());
    const double m = config.fuzziness;

    FcmResult result;
    result.config = config;
    if (initial_centers) {
        if (initial_centers->rows() != config.clusters) {
            throw InvalidArgument("initial centers must have one row per cluster");
        }
        check_centers(data, *initial_centers);
        result.centers = *initial_centers;
        result.config.init = InitMethod::given_centers;
    } else {
        if (config.init == InitMethod::given_centers) {
            throw InvalidArgument("init=given-centers requires initial centers");
        }
        result.centers = init_centers_scatter(data, config.clusters).centers;
    }

    auto& v = result.centers;
    auto u = fcm_update_memberships(data, v, m, config.singularity_delta);

    for (std::size_t iter = 1; iter <= config.max_iters; ++iter) {
        const double j_value = fcm_objective(data, v, u, m);
        result.objective_trace.push_back(j_value);
        result.literal_trace.push_back(j_value);

        v = fcm_update_centers(data, u, m);
        auto next = fcm_update_memberships(data, v, m, config.singularity_delta);

        double change = 0.0;
        const auto a = u.flat();
        const auto b = next.flat();
        for (std::size_t t = 0; t < a.size(); ++t) change = std::max(change, std::abs(b[t] - a[t]));
        u = std::move(next);
        result.iterations_run = iter;

        if (config.epsilon > 0.0 && change <= config.epsilon) {
            result.converged_by = StopReason::epsilon;
            break;
        }
    }
    result.memberships = std::move(u);
    return result;
}

}  // namespace vfcm
