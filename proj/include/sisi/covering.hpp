#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sisi/rrset.hpp"

namespace sisi {

/// Result of the one-pass primal-dual covering solve. x holds the fractional
/// node variables (indexed by NodeId, meaningful on the infected set), y the
/// per-blue-set variables; both are kept for inspection and tests.
struct CoveringSolution {
    std::vector<NodeId> sources;    // sorted; x_u reached 1 (within tolerance)
    bool fallback_used = false;     // no x reached 1, single-node fallback fired
    std::uint64_t clamp_events = 0; // times an x update had to be clamped to 1
    std::vector<double> x;
    std::vector<double> y;
};

/// Fractional-variable threshold for selecting nodes into the result.
inline constexpr double kSelectTolerance = 1e-9;

/// Single pass over the blue sets in generation order, raising node and set
/// variables by the cheapest amount that satisfies each covering constraint
/// max{max_{u in R_j} x_u, y_j} >= 1. The returned source set covers the
/// sampled objective within a factor of delta (the maximum RR-set size) of
/// its optimum. Errors when the pool has no blue set.
CoveringSolution solve_delta_approx(const RRCollection& collection);

/// Greedily removes the single node whose removal most decreases the
/// RR-pool estimate; stops when no removal strictly decreases it (ties keep
/// the node). May return the empty set only if that is strictly better.
std::vector<NodeId> post_optimize(std::span<const NodeId> sources, const RRCollection& collection,
                                  NodeId n);

}  // namespace sisi
