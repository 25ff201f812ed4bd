#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "vfcm/matrix.hpp"

namespace vfcm {

/// C x D cluster centers, row j is v_j.
using Centers = Matrix;

/// N x C scalar memberships u_ij; every row sums to 1.
using MembershipMatrix = Matrix;

enum class InitMethod { scatter, given_centers };
enum class StopReason { max_iters, epsilon };

struct FitConfig {
    std::size_t clusters = 2;
    double fuzziness = 2.0;  // m, strictly greater than 1
    std::size_t max_iters = 100;
    double epsilon = 0.0;  // 0 disables the membership-change criterion
    InitMethod init = InitMethod::scatter;
    double singularity_delta = 1e-12;

    /// Throws InvalidArgument if the config is unusable for `points` rows.
    void validate(std::size_t points) const;
};

std::string_view to_string(InitMethod init);
std::string_view to_string(StopReason reason);

/// Fit products shared by FCM and VFC. `objective_trace[g]` is the
/// u^m-weighted objective at the start of iteration g+1 (before that
/// iteration's center update), so entry 0 is the initial state.
template <typename Memberships>
struct FitResult {
    Centers centers;
    Memberships memberships;
    std::vector<double> objective_trace;
    // Membership to the first power. Identical to objective_trace for FCM.
    std::vector<double> literal_trace;
    std::size_t iterations_run = 0;
    StopReason converged_by = StopReason::max_iters;
    FitConfig config;
};

}  // namespace vfcm
