#include "vfcm/vfc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kernels.hpp"
#include "vfcm/error.hpp"

namespace vfcm {

namespace {

void check_shapes(const DataMatrix& data, const Centers& centers) {
    if (centers.rows() < 1 || centers.cols() != data.dims()) {
        throw InvalidArgument("centers must be C x D with D matching the dataset");
    }
}

void check_shapes(const DataMatrix& data, const MembershipTensor& u) {
    if (u.points() != data.rows() || u.dims() != data.dims() || u.clusters() < 1) {
        throw InvalidArgument("membership tensor shape does not match the dataset");
    }
}

}  // namespace

Initialization init_centers_scatter(const DataMatrix& data, std::size_t clusters) {
    const std::size_t n = data.rows();
    const std::size_t d = data.dims();
    if (clusters < 1 || clusters > n) {
        throw InvalidArgument("cluster count must lie in [1, N] for scatter initialization");
    }

    const auto stats = compute_stats(data);
    InitPlan plan;
    plan.scatter = stats.scatter;
    plan.centroid = stats.mean;

    plan.weighted_distances.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double wd = 0.0;
        for (std::size_t k = 0; k < d; ++k) wd += plan.scatter[k] * std::abs(data(i, k) - plan.centroid[k]);
        plan.weighted_distances[i] = wd;
    }

    plan.sorted_order.resize(n);
    std::iota(plan.sorted_order.begin(), plan.sorted_order.end(), std::size_t{0});
    std::stable_sort(plan.sorted_order.begin(), plan.sorted_order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return plan.weighted_distances[a] < plan.weighted_distances[b];
                     });

    const std::size_t base = n / clusters;
    const std::size_t extra = n % clusters;
    Centers centers(clusters, d);
    std::size_t begin = 0;
    for (std::size_t j = 0; j < clusters; ++j) {
        const std::size_t end = begin + base + (j < extra ? 1 : 0);
        plan.chunk_bounds.emplace_back(begin, end);
        for (std::size_t k = 0; k < d; ++k) {
            double sum = 0.0;
            for (std::size_t p = begin; p < end; ++p) sum += data(plan.sorted_order[p], k);
            centers(j, k) = sum / static_cast<double>(end - begin);
        }
        begin = end;
    }
    return {std::move(centers), std::move(plan)};
}

MembershipTensor vfc_update_memberships(const DataMatrix& data, const Centers& centers, double m,
                                        double singularity_delta) {
    check_shapes(data, centers);
    const std::size_t n = data.rows();
    const std::size_t c = centers.rows();
    const std::size_t d = data.dims();

    MembershipTensor u(n, c, d);
    std::vector<double> dist(c);
    std::vector<double> slice(c);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t j = 0; j < c; ++j) dist[j] = std::abs(data(i, k) - centers(j, k));
            detail::memberships_from_distances(dist, m, singularity_delta, slice);
            for (std::size_t j = 0; j < c; ++j) u(i, j, k) = slice[j];
        }
    }
    return u;
}

Centers vfc_update_centers(const DataMatrix& data, const MembershipTensor& memberships, double m) {
    check_shapes(data, memberships);
    const std::size_t n = data.rows();
    const std::size_t c = memberships.clusters();
    const std::size_t d = data.dims();

    Centers v(c, d);
    for (std::size_t j = 0; j < c; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            double num = 0.0;
            double den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double w = std::pow(memberships(i, j, k), m);
                den += w;
                num += w * data(i, k);
            }
            if (!(den > 0.0)) throw EmptyClusterError(j, k);
            v(j, k) = num / den;
        }
    }
    return v;
}

double vfc_objective(const DataMatrix& data, const Centers& centers,
                     const MembershipTensor& memberships, double m, ObjectiveForm form) {
    check_shapes(data, centers);
    check_shapes(data, memberships);
    if (memberships.clusters() != centers.rows()) {
        throw InvalidArgument("membership tensor and centers disagree on cluster count");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t j = 0; j < centers.rows(); ++j) {
            for (std::size_t k = 0; k < data.dims(); ++k) {
                const double diff = data(i, k) - centers(j, k);
                const double u = memberships(i, j, k);
                const double weight = form == ObjectiveForm::exponentiated ? std::pow(u, m) : u;
                total += weight * (diff * diff);
            }
        }
    }
    return total;
}

VfcResult vfc_fit(const DataMatrix& data, const FitConfig& config,
                  const std::optional<Centers>& initial_centers) {
    config.validate(data.rows());
    const double m = config.fuzziness;

    VfcResult result;
    result.config = config;
    if (initial_centers) {
        if (initial_centers->rows() != config.clusters) {
            throw InvalidArgument("initial centers must have one row per cluster");
        }
        check_shapes(data, *initial_centers);
        result.centers = *initial_centers;
        result.config.init = InitMethod::given_centers;
    } else {
        if (config.init == InitMethod::given_centers) {
            throw InvalidArgument("init=given-centers requires initial centers");
        }
        result.centers = init_centers_scatter(data, config.clusters).centers;
    }

    auto& v = result.centers;
    auto u = vfc_update_memberships(data, v, m, config.singularity_delta);

    // objective -> centers -> memberships, one pass per iteration.
    for (std::size_t iter = 1; iter <= config.max_iters; ++iter) {
        result.objective_trace.push_back(vfc_objective(data, v, u, m, ObjectiveForm::exponentiated));
        result.literal_trace.push_back(vfc_objective(data, v, u, m, ObjectiveForm::literal));

        v = vfc_update_centers(data, u, m);
        auto next = vfc_update_memberships(data, v, m, config.singularity_delta);

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

std::vector<std::size_t> crisp_assign(const MembershipTensor& memberships) {
    std::vector<std::size_t> out(memberships.points(), 0);
    for (std::size_t i = 0; i < memberships.points(); ++i) {
        double best = -1.0;
        for (std::size_t j = 0; j < memberships.clusters(); ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < memberships.dims(); ++k) sum += memberships(i, j, k);
            if (sum > best) {
                best = sum;
                out[i] = j;
            }
        }
    }
    return out;
}

std::vector<std::size_t> crisp_assign(const MembershipMatrix& memberships) {
    std::vector<std::size_t> out(memberships.rows(), 0);
    for (std::size_t i = 0; i < memberships.rows(); ++i) {
        const auto row = memberships.row(i);
        out[i] = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    }
    return out;
}

}  // namespace vfcm
