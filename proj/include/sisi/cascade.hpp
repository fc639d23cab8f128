#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "sisi/graph.hpp"
#include "sisi/rng.hpp"

namespace sisi {

enum class Model { SI, IC };

/// Cascade duration in discrete steps; may be infinite (run to fixpoint).
struct Tau {
    std::uint64_t steps = 0;
    bool is_infinite = false;

    static Tau finite(std::uint64_t t) { return Tau{t, false}; }
    static Tau infinite() { return Tau{0, true}; }

    bool operator==(const Tau&) const = default;
};

/// Diffusion model parameters. beta is the per-step infection probability
/// under SI and the one-shot edge probability under IC.
struct ModelParams {
    Model model = Model::SI;
    double beta = 0.0;
    Tau tau = Tau::finite(1);
};

/// Throws std::invalid_argument unless 0 < beta <= 1 and tau >= 1 (or infinite).
void validate_params(const ModelParams& params);

/// An observed infection snapshot: the infected node set plus the cascade
/// parameters that produced it. true_sources is present only for synthetic
/// cases. infected and true_sources are kept sorted and unique.
struct Observation {
    std::vector<NodeId> infected;
    ModelParams params;
    std::optional<std::vector<NodeId>> true_sources;
};

/// Checks the Observation invariants against a graph (infected within [0,n),
/// true_sources a subset of infected). Throws std::invalid_argument.
void validate_observation(const Observation& obs, const DirectedGraph& g);

/// Forward SI simulation: sources infected at t=0; at each step every edge
/// (u,v) with u infected and v not gets an independent Bernoulli(beta) trial;
/// nodes stay infected. For infinite tau this runs to the fixpoint, which for
/// beta > 0 is the forward-reachable set. Returns the sorted infected set.
std::vector<NodeId> simulate_si(const DirectedGraph& g, std::span<const NodeId> sources,
                                const ModelParams& params, Rng rng);

/// Forward IC simulation: each newly infected node gets exactly one
/// Bernoulli(beta) attempt per out-edge, in the step after its infection;
/// truncated after tau steps.
std::vector<NodeId> simulate_ic(const DirectedGraph& g, std::span<const NodeId> sources,
                                const ModelParams& params, Rng rng);

/// Dispatches on params.model.
std::vector<NodeId> simulate(const DirectedGraph& g, std::span<const NodeId> sources,
                             const ModelParams& params, Rng rng);

/// |infected \ cascade| + |cascade \ infected|. Inputs are sorted id sets.
std::uint64_t symmetric_difference(std::span<const NodeId> cascade,
                                   std::span<const NodeId> infected);

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};

/// Monte-Carlo estimate of the expected symmetric difference of the cascade
/// from S against obs.infected: `trials` independent forward simulations,
/// trial i drawing from rng.split(i). Deterministic for a fixed seed,
/// regardless of `threads`.
MeanStderr estimate_sd_forward(const DirectedGraph& g, std::span<const NodeId> sources,
                               const Observation& obs, std::uint64_t trials, Rng rng,
                               unsigned threads = 1);

/// Simulates one cascade from true_sources and wraps it as an Observation.
Observation make_observation(const DirectedGraph& g, std::span<const NodeId> true_sources,
                             const ModelParams& params, Rng rng);

/// Draws a single random trace (per-edge delays for SI, live edges for IC)
/// and scans tau = 1,2,3,... on that one trace until at least min_infected
/// nodes are infected. Throws std::runtime_error if the target is not reached
/// by tau_cap. The chosen tau is recorded in the returned params.
Observation make_observation_min_size(const DirectedGraph& g, std::span<const NodeId> true_sources,
                                      Model model, double beta, std::uint64_t min_infected,
                                      std::uint64_t tau_cap, Rng rng);

}  // namespace sisi
