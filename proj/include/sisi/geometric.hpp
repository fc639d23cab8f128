#pragma once

#include <cmath>
#include <cstdint>

namespace sisi {

/// Number of Bernoulli(beta) trials until the first success, inverted from a
/// uniform draw r in the open interval (0,1): ceil(log_{1-beta}(1-r)).
/// The open-interval draw keeps the result >= 1; beta = 1 degenerates to a
/// deterministic single step.
inline std::uint64_t geometric_steps(double beta, double r) {
    if (beta >= 1.0) return 1;
    double t = std::ceil(std::log1p(-r) / std::log1p(-beta));
    if (!(t >= 1.0)) return 1;
    if (t >= 9.0e18) return static_cast<std::uint64_t>(9.0e18);
    return static_cast<std::uint64_t>(t);
}

}  // namespace sisi
