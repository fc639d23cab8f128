#pragma once

#include <cstdint>
#include <span>

#include "sisi/rrset.hpp"

namespace sisi {

struct CoverageCounts {
    std::uint64_t uncovered_blue = 0;  // blue sets S fails to intersect
    std::uint64_t covered_red = 0;     // red sets S mistakenly intersects
    std::uint64_t total = 0;           // all generated sets
};

/// Counts how the candidate set S relates to the pool: blue sets with
/// members disjoint from S and red sets intersecting S. S must be a subset
/// of the observed infected set (argument error otherwise; the empty set is
/// fine). Runs over the inverted node index, so the cost is proportional to
/// the total membership of S's sets.
CoverageCounts coverage(const RRCollection& collection, std::span<const NodeId> S);

/// RR-pool estimate of the expected symmetric difference of S:
/// n * (uncovered_blue + covered_red) / total. Errors on an empty pool.
double estimate_sd(const RRCollection& collection, std::span<const NodeId> S, NodeId n);

}  // namespace sisi
