#pragma once

#include <cstdint>
#include <span>

#include "sisi/cascade.hpp"
#include "sisi/graph.hpp"
#include "sisi/rng.hpp"

namespace sisi {

/// |S ∩ truth| / (2|S|) + |S ∩ truth| / (2|truth|), in [0,1]. Errors on
/// empty inputs.
double f1_score(std::span<const NodeId> S, std::span<const NodeId> truth);

/// 100 * |S ∩ truth| / |truth|.
double detection_rate(std::span<const NodeId> S, std::span<const NodeId> truth);

/// Ratio of the mean Jaccard similarity (to the observed infected set) of
/// cascades seeded from S versus from the true sources, each averaged over
/// `trials` forward simulations. Trial i of both estimates draws from
/// rng.split(i), so identical sets give exactly 1.
double jaccard_quality(const DirectedGraph& g, std::span<const NodeId> S,
                       std::span<const NodeId> truth, const Observation& obs,
                       std::uint64_t trials, Rng rng, unsigned threads = 1);

}  // namespace sisi
