#pragma once

// Test-side reference implementations. Everything here is written
// independently of the library's algorithmic paths (plain BFS, stepwise
// simulation, exhaustive enumeration) so it can serve as an oracle.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "sisi/cascade.hpp"
#include "sisi/graph.hpp"
#include "sisi/rrset.hpp"

namespace oracle {

using sisi::DirectedGraph;
using sisi::NodeId;

inline constexpr std::uint64_t kInfiniteTau = std::numeric_limits<std::uint64_t>::max();

/// Forward BFS: nodes within depth tau of the sources (sorted).
std::vector<NodeId> reach_within(const DirectedGraph& g, std::span<const NodeId> sources,
                                 std::uint64_t tau);

/// Reverse BFS: nodes that reach `root` within depth tau (sorted).
std::vector<NodeId> rev_reach_within(const DirectedGraph& g, NodeId root, std::uint64_t tau);

/// Exact symmetric difference for the deterministic beta = 1 regime.
std::uint64_t exact_sd_beta1(const DirectedGraph& g, std::span<const NodeId> S,
                             std::span<const NodeId> infected, std::uint64_t tau);

/// Stepwise SI reference: the infected set after each step 1..tau, literal
/// per-edge Bernoulli retries each step.
std::vector<std::vector<NodeId>> si_stepwise_trajectory(const DirectedGraph& g,
                                                        std::span<const NodeId> sources,
                                                        double beta, std::uint64_t tau,
                                                        std::mt19937_64& rng);

struct Stats {
    double mean = 0.0;
    double stderr_ = 0.0;
};
Stats mean_stderr(std::span<const double> xs);

/// Two-sample Kolmogorov-Smirnov statistic for integer-valued samples.
double ks_statistic(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// Critical value for the two-sample KS test at significance alpha.
double ks_critical(double alpha, std::size_t n, std::size_t m);

/// RR pool flattened to bitmasks over the infected-set ordering, for
/// exhaustive covering checks (requires |V_I| <= 20).
struct MaskInstance {
    std::size_t k = 0;
    std::uint64_t empty_red = 0;
    std::vector<std::uint32_t> blue, red;

    std::uint64_t cost(std::uint32_t S) const;      // uncovered blue + covered red
    std::uint64_t brute_force_opt() const;          // min cost over all 2^k subsets
    std::uint32_t node_bit(std::size_t idx) const { return 1u << idx; }
};
MaskInstance to_masks(const sisi::RRCollection& collection);

/// Monte-Carlo estimate of E[D(S)] for every subset S of the infected set at
/// once, SI model: per realization, geometric delays are drawn once per edge
/// and distances computed from each infected node, so all subsets share the
/// same randomness. Returns 2^k values indexed by subset mask over the sorted
/// infected list. Requires |V_I| <= 16.
std::vector<double> all_subset_expected_sd(const DirectedGraph& g, const sisi::Observation& obs,
                                           std::uint64_t realizations, std::uint64_t seed);

}  // namespace oracle
