#pragma once

#include <cstdint>
#include <vector>

#include "sisi/cascade.hpp"
#include "sisi/graph.hpp"
#include "sisi/rng.hpp"

namespace sisi {

/// Forward-Monte-Carlo greedy: repeatedly adds the infected node whose
/// addition gives the largest estimated drop of the expected symmetric
/// difference, using common random numbers across candidates within an
/// iteration; stops when no addition strictly decreases the estimate. Always
/// returns a non-empty subset of the infected set.
std::vector<NodeId> greedy_detect(const DirectedGraph& g, const Observation& obs,
                                  std::uint64_t trials_per_eval, Rng rng, unsigned threads = 1);

/// Ranks infected nodes by total degree (ties by NodeId) and adds them in
/// order while the estimated symmetric difference does not increase; stops at
/// the first increase. Always returns a non-empty subset.
std::vector<NodeId> max_degree_detect(const DirectedGraph& g, const Observation& obs,
                                      std::uint64_t trials_per_eval, Rng rng,
                                      unsigned threads = 1);

}  // namespace sisi
