#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vfcm/dataset.hpp"
#include "vfcm/fit.hpp"

namespace vfcm {

/// N x C x D per-dimension memberships u_ijk. For every (i, k) the slice over
/// clusters sums to 1.
class MembershipTensor {
public:
    MembershipTensor() = default;
    MembershipTensor(std::size_t points, std::size_t clusters, std::size_t dims, double fill = 0.0)
        : points_(points), clusters_(clusters), dims_(dims), data_(points * clusters * dims, fill) {}

    std::size_t points() const noexcept { return points_; }
    std::size_t clusters() const noexcept { return clusters_; }
    std::size_t dims() const noexcept { return dims_; }

    double& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept {
        return data_[(i * clusters_ + j) * dims_ + k];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
        return data_[(i * clusters_ + j) * dims_ + k];
    }

    std::span<const double> flat() const noexcept { return data_; }

    bool operator==(const MembershipTensor&) const = default;

private:
    std::size_t points_ = 0;
    std::size_t clusters_ = 0;
    std::size_t dims_ = 0;
    std::vector<double> data_;
};

using VfcResult = FitResult<MembershipTensor>;

enum class ObjectiveForm { literal, exponentiated };

/// Intermediate products of the scatter-based center initialization.
struct InitPlan {
    std::vector<double> scatter;
    std::vector<double> centroid;
    std::vector<double> weighted_distances;  // wd_i, indexed by original row
    std::vector<std::size_t> sorted_order;   // row indices, ascending wd, stable
    // Half-open [begin, end) ranges over positions in sorted_order.
    std::vector<std::pair<std::size_t, std::size_t>> chunk_bounds;
};

struct Initialization {
    Centers centers;
    InitPlan plan;
};

/// Orders points by scatter-weighted L1 distance from the centroid, cuts the
/// ordering into C contiguous chunks (earlier chunks take the N mod C extra
/// points) and returns each chunk's centroid.
Initialization init_centers_scatter(const DataMatrix& data, std::size_t clusters);

MembershipTensor vfc_update_memberships(const DataMatrix& data, const Centers& centers, double m,
                                        double singularity_delta = 1e-12);

/// Throws EmptyClusterError naming the (cluster, dimension) pair whose
/// denominator vanished.
Centers vfc_update_centers(const DataMatrix& data, const MembershipTensor& memberships, double m);

double vfc_objective(const DataMatrix& data, const Centers& centers,
                     const MembershipTensor& memberships, double m,
                     ObjectiveForm form = ObjectiveForm::exponentiated);

VfcResult vfc_fit(const DataMatrix& data, const FitConfig& config,
                  const std::optional<Centers>& initial_centers = std::nullopt);

/// Point i goes to argmax_j sum_k u_ijk, lowest j on ties.
std::vector<std::size_t> crisp_assign(const MembershipTensor& memberships);

/// Scalar-membership counterpart: argmax_j u_ij, lowest j on ties.
std::vector<std::size_t> crisp_assign(const MembershipMatrix& memberships);

}  // namespace vfcm
