#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sisi/cascade.hpp"
#include "sisi/graph.hpp"

namespace sisi {

enum class SisiMode { Strict, Relax };

/// Driver parameters. The sample budget is a guard on total stored RR-set
/// memberships (memory, not set count); the stopping rule normally fires
/// first. Relax trades the union-bound guarantee for far fewer samples and
/// is the practical default.
struct SisiConfig {
    double epsilon = 0.1;
    double delta = 0.01;
    SisiMode mode = SisiMode::Relax;
    std::uint64_t seed = 0;
    std::uint64_t max_samples = 50'000'000;
    unsigned threads = 1;
};

struct SolutionReport {
    std::vector<NodeId> sources;     // sorted
    double estimated_sd = 0.0;       // RR-pool estimate for `sources`
    std::uint64_t samples_used = 0;  // RR sets generated
    std::size_t delta_observed = 0;  // max RR-set size seen
    double epsilon_effective = 0.0;
    int rounds = 0;
    bool fallback_used = false;      // covering solve needed its fallback
    bool budget_exhausted = false;   // stopped by max_samples, best-so-far
};

/// Per-round progress record (also the driver's log line contents).
struct RoundInfo {
    int round = 0;
    std::uint64_t total_sets = 0;
    std::size_t delta = 0;
    double lambda = 0.0;
    std::uint64_t stopping_sum = 0;
    double estimate = 0.0;
};

using ProgressFn = std::function<void(const RoundInfo&)>;

/// Sample-count threshold of the stopping rule. Strict uses the k*ln(2)
/// union-bound term; Relax replaces it with ln(2k).
double compute_lambda(double epsilon, double delta, std::uint64_t k, SisiMode mode);

/// Full detection loop: sample-doubling rounds of RR generation, one
/// covering solve per round, the epsilon cap (Strict mode only), the
/// stopping rule, and a final removal pass. Deterministic given cfg.seed,
/// for any thread count.
SolutionReport run_sisi(const DirectedGraph& g, const Observation& obs, const SisiConfig& cfg,
                        const ProgressFn& progress = {});

}  // namespace sisi
