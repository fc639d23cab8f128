#include "sisi/baselines.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "sisi/parallel.hpp"

namespace sisi {

namespace {

/// Mean symmetric difference of cascades from S over `trials` simulations,
/// trial i drawing from trial_base.split(i). Candidates evaluated with the
/// same trial_base share random numbers.
double mc_sd(const DirectedGraph& g, std::span<const NodeId> S, const Observation& obs,
             std::uint64_t trials, const Rng& trial_base) {
    double sum = 0.0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        auto cascade = simulate(g, S, obs.params, trial_base.split(i));
        sum += static_cast<double>(symmetric_difference(cascade, obs.infected));
    }
    return sum / static_cast<double>(trials);
}

void check_inputs(const Observation& obs, std::uint64_t trials_per_eval) {
    if (obs.infected.empty()) throw std::invalid_argument("infected set must be non-empty");
    if (trials_per_eval < 1) throw std::invalid_argument("trials_per_eval must be >= 1");
}

}  // namespace

std::vector<NodeId> greedy_detect(const DirectedGraph& g, const Observation& obs,
                                  std::uint64_t trials_per_eval, Rng rng, unsigned threads) {
    check_inputs(obs, trials_per_eval);
    std::vector<NodeId> selected;
    std::vector<NodeId> remaining(obs.infected.begin(), obs.infected.end());
    // The empty set infects nothing, so its symmetric difference is exactly k.
    double current = static_cast<double>(obs.infected.size());

    for (std::uint64_t iter = 0; !remaining.empty(); ++iter) {
        Rng trial_base = rng.split(iter);
        // Re-estimate the incumbent under this iteration's random numbers so
        // the strict-decrease test compares like with like.
        if (!selected.empty()) current = mc_sd(g, selected, obs, trials_per_eval, trial_base);

        std::vector<double> score(remaining.size());
        std::vector<NodeId> trial_set(selected.size() + 1);
        std::copy(selected.begin(), selected.end(), trial_set.begin());
        parallel_for(remaining.size(), threads, [&](std::uint64_t c) {
            auto candidate = trial_set;
            candidate.back() = remaining[c];
            score[c] = mc_sd(g, candidate, obs, trials_per_eval, trial_base);
        });

        std::size_t best = 0;
        for (std::size_t c = 1; c < remaining.size(); ++c)
            if (score[c] < score[best]) best = c;  // ties: smaller NodeId wins

        const bool improves = score[best] < current;
        if (!improves && !selected.empty()) break;
        selected.push_back(remaining[best]);
        std::sort(selected.begin(), selected.end());
        current = score[best];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return selected;
}

std::vector<NodeId> max_degree_detect(const DirectedGraph& g, const Observation& obs,
                                      std::uint64_t trials_per_eval, Rng rng, unsigned threads) {
    (void)threads;
    check_inputs(obs, trials_per_eval);
    std::vector<NodeId> order(obs.infected.begin(), obs.infected.end());
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        auto da = g.total_degree(a), db = g.total_degree(b);
        return da != db ? da > db : a < b;
    });

    std::vector<NodeId> selected;
    double current = static_cast<double>(obs.infected.size());
    for (std::uint64_t i = 0; i < order.size(); ++i) {
        Rng trial_base = rng.split(i);
        std::vector<NodeId> extended(selected);
        extended.push_back(order[i]);
        std::sort(extended.begin(), extended.end());
        if (!selected.empty()) current = mc_sd(g, selected, obs, trials_per_eval, trial_base);
        double with_next = mc_sd(g, extended, obs, trials_per_eval, trial_base);
        if (with_next > current && !selected.empty()) break;  // first increase stops
        selected = std::move(extended);
        current = with_next;
    }
    return selected;
}

}  // namespace sisi
