#pragma once

#include <optional>

#include "vfcm/dataset.hpp"
#include "vfcm/fit.hpp"

namespace vfcm {

using FcmResult = FitResult<MembershipMatrix>;

/// u_ij = 1 / sum_k (d_ij / d_ik)^(2/(m-1)) with Euclidean d. A point within
/// `singularity_delta` of a center is assigned crisply to the nearest such
/// center (lowest index on ties).
MembershipMatrix fcm_update_memberships(const DataMatrix& data, const Centers& centers, double m,
                                        double singularity_delta = 1e-12);

/// v_j = sum_i u_ij^m x_i / sum_i u_ij^m. Throws EmptyClusterError when a
/// column carries no mass.
Centers fcm_update_centers(const DataMatrix& data, const MembershipMatrix& memberships, double m);

/// J = sum_i sum_j u_ij^m ||x_i - v_j||^2
double fcm_objective(const DataMatrix& data, const Centers& centers,
                     const MembershipMatrix& memberships, double m);

/// Alternating optimization from `initial_centers`, or from the scatter
/// initialization when none are given.
FcmResult fcm_fit(const DataMatrix& data, const FitConfig& config,
                  const std::optional<Centers>& initial_centers = std::nullopt);

}  // namespace vfcm
