#include "vfcm/fit.hpp"

#include <cmath>
#include <string>

#include "vfcm/error.hpp"

namespace vfcm {

void FitConfig::validate(std::size_t points) const {
    if (clusters < 1) throw InvalidArgument("cluster count must be at least 1");
    if (clusters > points) {
        throw InvalidArgument("cluster count " + std::to_string(clusters) + " exceeds point count " +
                              std::to_string(points));
    }
    if (!(fuzziness > 1.0) || !std::isfinite(fuzziness)) {
        throw InvalidArgument("fuzziness index m must be a finite value greater than 1");
    }
    if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InvalidArgument("epsilon must lie in [0, 1]");
    if (!(singularity_delta > 0.0)) throw InvalidArgument("singularity_delta must be positive");
}

std::string_view to_string(InitMethod init) {
    return init == InitMethod::scatter ? "scatter" : "given-centers";
}

std::string_view to_string(StopReason reason) {
    return reason == StopReason::max_iters ? "max-iters" : "epsilon";
}

}  // namespace vfcm
