#include "sisi/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "sisi/geometric.hpp"
#include "sisi/parallel.hpp"

namespace sisi {

namespace {

constexpr std::uint64_t kUnreached = std::numeric_limits<std::uint64_t>::max();

void check_sources(std::span<const NodeId> sources, NodeId n) {
    if (sources.empty()) throw std::invalid_argument("source set must be non-empty");
    for (NodeId s : sources)
        if (s >= n) throw std::invalid_argument("source id out of range");
}

std::vector<NodeId> sorted_unique(std::vector<NodeId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

/// Multi-source infection times under SI: every edge carries an independent
/// geometric(beta) delay, drawn lazily when its tail is finalized. The
/// stepwise retry process and this truncated Dijkstra induce the same
/// distribution of infected sets. dist is written for reached nodes only
/// (bounded by tau); pass tau_bound = kUnreached for no bound.
void si_infection_times(const DirectedGraph& g, std::span<const NodeId> sources, double beta,
                        std::uint64_t tau_bound, Rng& rng, std::vector<std::uint64_t>& dist) {
    dist.assign(g.node_count(), kUnreached);
    using Item = std::pair<std::uint64_t, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (NodeId s : sources) {
        dist[s] = 0;
        pq.emplace(0, s);
    }
    std::vector<char> done(g.node_count(), 0);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (NodeId v : g.out_neighbors(u)) {
            if (done[v]) continue;
            std::uint64_t t = geometric_steps(beta, rng.open01());
            if (t > tau_bound - d) continue;  // past the horizon
            std::uint64_t nd = d + t;
            if (nd < dist[v]) {
                dist[v] = nd;
                if (nd < tau_bound) pq.emplace(nd, v);
            }
        }
    }
}

std::vector<NodeId> collect_within(const std::vector<std::uint64_t>& dist, std::uint64_t tau) {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < dist.size(); ++v)
        if (dist[v] <= tau) out.push_back(v);
    return out;
}

std::vector<NodeId> reachable_bfs(const DirectedGraph& g, std::span<const NodeId> sources) {
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> stack(sources.begin(), sources.end());
    for (NodeId s : stack) seen[s] = 1;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : g.out_neighbors(u))
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
    }
    std::vector<NodeId> out;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

}  // namespace

void validate_params(const ModelParams& params) {
    if (!(params.beta > 0.0) || params.beta > 1.0)
        throw std::invalid_argument("beta must be in (0,1]");
    if (!params.tau.is_infinite && params.tau.steps < 1)
        throw std::invalid_argument("tau must be >= 1 or infinite");
}

void validate_observation(const Observation& obs, const DirectedGraph& g) {
    validate_params(obs.params);
    for (NodeId v : obs.infected)
        if (v >= g.node_count()) throw std::invalid_argument("infected id out of range");
    if (!std::is_sorted(obs.infected.begin(), obs.infected.end()))
        throw std::invalid_argument("infected set must be sorted");
    if (obs.true_sources) {
        for (NodeId s : *obs.true_sources)
            if (!std::binary_search(obs.infected.begin(), obs.infected.end(), s))
                throw std::invalid_argument("true source outside infected set");
    }
}

std::vector<NodeId> simulate_si(const DirectedGraph& g, std::span<const NodeId> sources,
                                const ModelParams& params, Rng rng) {
    validate_params(params);
    if (params.model != Model::SI) throw std::invalid_argument("simulate_si requires SI params");
    check_sources(sources, g.node_count());
    // Infinite tau with beta > 0 converges to the reachable set; beta = 1
    // makes every delay exactly 1, so the Dijkstra below is depth-tau BFS.
    if (params.tau.is_infinite) return reachable_bfs(g, sources);
    std::vector<std::uint64_t> dist;
    si_infection_times(g, sources, params.beta, params.tau.steps, rng, dist);
    return collect_within(dist, params.tau.steps);
}

std::vector<NodeId> simulate_ic(const DirectedGraph& g, std::span<const NodeId> sources,
                                const ModelParams& params, Rng rng) {
    validate_params(params);
    if (params.model != Model::IC) throw std::invalid_argument("simulate_ic requires IC params");
    check_sources(sources, g.node_count());
    std::vector<char> infected(g.node_count(), 0);
    std::vector<NodeId> frontier = sorted_unique({sources.begin(), sources.end()});
    std::vector<NodeId> all(frontier);
    for (NodeId s : frontier) infected[s] = 1;
    std::uint64_t step = 0;
    while (!frontier.empty() && (params.tau.is_infinite || step < params.tau.steps)) {
        ++step;
        std::vector<NodeId> next;
        for (NodeId u : frontier) {
            for (NodeId v : g.out_neighbors(u)) {
                if (infected[v]) continue;
                if (rng.bernoulli(params.beta)) {
                    infected[v] = 1;
                    next.push_back(v);
                }
            }
        }
        std::sort(next.begin(), next.end());
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return sorted_unique(std::move(all));
}

std::vector<NodeId> simulate(const DirectedGraph& g, std::span<const NodeId> sources,
                             const ModelParams& params, Rng rng) {
    return params.model == Model::SI ? simulate_si(g, sources, params, rng)
                                     : simulate_ic(g, sources, params, rng);
}

std::uint64_t symmetric_difference(std::span<const NodeId> cascade,
                                   std::span<const NodeId> infected) {
    // both sorted; count |infected \ cascade| + |cascade \ infected|
    std::uint64_t missed = 0, spurious = 0;
    std::size_t i = 0, j = 0;
    while (i < cascade.size() && j < infected.size()) {
        if (cascade[i] == infected[j]) {
            ++i, ++j;
        } else if (cascade[i] < infected[j]) {
            ++spurious, ++i;
        } else {
            ++missed, ++j;
        }
    }
    spurious += cascade.size() - i;
    missed += infected.size() - j;
    return missed + spurious;
}

MeanStderr estimate_sd_forward(const DirectedGraph& g, std::span<const NodeId> sources,
                               const Observation& obs, std::uint64_t trials, Rng rng,
                               unsigned threads) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    check_sources(sources, g.node_count());
    std::vector<double> d(trials);
    parallel_for(trials, threads, [&](std::uint64_t i) {
        auto cascade = simulate(g, sources, obs.params, rng.split(i));
        d[i] = static_cast<double>(symmetric_difference(cascade, obs.infected));
    });
    double mean = 0.0;
    for (double x : d) mean += x;
    mean /= static_cast<double>(trials);
    double ss = 0.0;
    for (double x : d) ss += (x - mean) * (x - mean);
    double var = trials > 1 ? ss / static_cast<double>(trials - 1) : 0.0;
    return MeanStderr{mean, std::sqrt(var / static_cast<double>(trials))};
}

Observation make_observation(const DirectedGraph& g, std::span<const NodeId> true_sources,
                             const ModelParams& params, Rng rng) {
    auto infected = simulate(g, true_sources, params, rng);
    Observation obs;
    obs.infected = std::move(infected);
    obs.params = params;
    obs.true_sources = sorted_unique({true_sources.begin(), true_sources.end()});
    return obs;
}

Observation make_observation_min_size(const DirectedGraph& g, std::span<const NodeId> true_sources,
                                      Model model, double beta, std::uint64_t min_infected,
                                      std::uint64_t tau_cap, Rng rng) {
    ModelParams probe{model, beta, Tau::finite(1)};
    validate_params(probe);
    check_sources(true_sources, g.node_count());
    if (min_infected < 1) throw std::invalid_argument("min_infected must be >= 1");
    if (min_infected > g.node_count())
        throw std::invalid_argument("min_infected exceeds node count");

    // One fixed random trace: per-node infection times under that trace, then
    // the smallest tau whose infected set reaches the target size.
    std::vector<std::uint64_t> dist;
    if (model == Model::SI) {
        si_infection_times(g, true_sources, beta, tau_cap, rng, dist);
    } else {
        // IC: each edge live once with probability beta; hop distances on the
        // live subgraph.
        dist.assign(g.node_count(), kUnreached);
        std::vector<NodeId> frontier = sorted_unique({true_sources.begin(), true_sources.end()});
        for (NodeId s : frontier) dist[s] = 0;
        std::uint64_t depth = 0;
        while (!frontier.empty() && depth < tau_cap) {
            ++depth;
            std::vector<NodeId> next;
            for (NodeId u : frontier)
                for (NodeId v : g.out_neighbors(u))
                    if (dist[v] == kUnreached && rng.bernoulli(beta)) {
                        dist[v] = depth;
                        next.push_back(v);
                    }
            std::sort(next.begin(), next.end());
            frontier = std::move(next);
        }
    }

    std::vector<std::uint64_t> times;
    for (std::uint64_t t : dist)
        if (t != kUnreached) times.push_back(t);
    if (times.size() < min_infected)
        throw std::runtime_error("infection size target not reachable within tau cap");
    std::nth_element(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(min_infected) - 1,
                     times.end());
    std::uint64_t tau = std::max<std::uint64_t>(1, times[min_infected - 1]);

    Observation obs;
    obs.params = ModelParams{model, beta, Tau::finite(tau)};
    obs.infected = collect_within(dist, tau);
    obs.true_sources = sorted_unique({true_sources.begin(), true_sources.end()});
    return obs;
}

}  // namespace sisi
