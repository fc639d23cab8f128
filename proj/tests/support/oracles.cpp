#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace oracle {

namespace {

std::vector<NodeId> bfs(const DirectedGraph& g, std::span<const NodeId> starts, std::uint64_t tau,
                        bool reverse) {
    constexpr std::uint64_t kUnvisited = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> depth(g.node_count(), kUnvisited);
    std::queue<NodeId> q;
    for (NodeId s : starts) {
        depth[s] = 0;
        q.push(s);
    }
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        if (depth[u] >= tau) continue;
        auto nbrs = reverse ? g.in_neighbors(u) : g.out_neighbors(u);
        for (NodeId v : nbrs)
            if (depth[v] == kUnvisited) {
                depth[v] = depth[u] + 1;
                q.push(v);
            }
    }
    std::vector<NodeId> out;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (depth[v] != kUnvisited && depth[v] <= tau) out.push_back(v);
    return out;
}

}  // namespace

std::vector<NodeId> reach_within(const DirectedGraph& g, std::span<const NodeId> sources,
                                 std::uint64_t tau) {
    return bfs(g, sources, tau, false);
}

std::vector<NodeId> rev_reach_within(const DirectedGraph& g, NodeId root, std::uint64_t tau) {
    NodeId r[1] = {root};
    return bfs(g, r, tau, true);
}

std::uint64_t exact_sd_beta1(const DirectedGraph& g, std::span<const NodeId> S,
                             std::span<const NodeId> infected, std::uint64_t tau) {
    auto cascade = S.empty() ? std::vector<NodeId>{} : reach_within(g, S, tau);
    std::vector<std::uint8_t> in_cascade(g.node_count(), 0), in_obs(g.node_count(), 0);
    for (NodeId v : cascade) in_cascade[v] = 1;
    for (NodeId v : infected) in_obs[v] = 1;
    std::uint64_t d = 0;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (in_cascade[v] != in_obs[v]) ++d;
    return d;
}

std::vector<std::vector<NodeId>> si_stepwise_trajectory(const DirectedGraph& g,
                                                        std::span<const NodeId> sources,
                                                        double beta, std::uint64_t tau,
                                                        std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::uint8_t> infected(g.node_count(), 0);
    std::vector<NodeId> current(sources.begin(), sources.end());
    for (NodeId s : current) infected[s] = 1;
    std::vector<std::vector<NodeId>> steps;
    for (std::uint64_t t = 1; t <= tau; ++t) {
        std::vector<NodeId> fresh;
        for (NodeId u : current) {
            for (NodeId v : g.out_neighbors(u)) {
                if (infected[v]) continue;
                if (unif(rng) < beta) {
                    infected[v] = 2;  // marked, joins after the step
                    fresh.push_back(v);
                }
            }
        }
        for (NodeId v : fresh) infected[v] = 1;
        current.insert(current.end(), fresh.begin(), fresh.end());
        std::vector<NodeId> snapshot(current);
        std::sort(snapshot.begin(), snapshot.end());
        steps.push_back(std::move(snapshot));
    }
    return steps;
}

Stats mean_stderr(std::span<const double> xs) {
    Stats s;
    if (xs.empty()) return s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    double var = xs.size() > 1 ? ss / static_cast<double>(xs.size() - 1) : 0.0;
    s.stderr_ = std::sqrt(var / static_cast<double>(xs.size()));
    return s;
}

double ks_statistic(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    std::uint32_t hi = 0;
    for (auto x : a) hi = std::max(hi, x);
    for (auto x : b) hi = std::max(hi, x);
    std::vector<std::uint64_t> ca(hi + 2, 0), cb(hi + 2, 0);
    for (auto x : a) ++ca[x];
    for (auto x : b) ++cb[x];
    double d = 0.0, fa = 0.0, fb = 0.0;
    for (std::uint32_t v = 0; v <= hi; ++v) {
        fa += static_cast<double>(ca[v]) / static_cast<double>(a.size());
        fb += static_cast<double>(cb[v]) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

double ks_critical(double alpha, std::size_t n, std::size_t m) {
    double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    return c * std::sqrt(static_cast<double>(n + m) /
                         (static_cast<double>(n) * static_cast<double>(m)));
}

std::uint64_t MaskInstance::cost(std::uint32_t S) const {
    std::uint64_t c = 0;
    for (std::uint32_t bm : blue)
        if ((bm & S) == 0) ++c;
    for (std::uint32_t rm : red)
        if ((rm & S) != 0) ++c;
    return c;
}

std::uint64_t MaskInstance::brute_force_opt() const {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    const std::uint32_t limit = 1u << k;
    for (std::uint32_t S = 0; S < limit; ++S) best = std::min(best, cost(S));
    return best;
}

MaskInstance to_masks(const sisi::RRCollection& collection) {
    auto infected = collection.infected();
    if (infected.size() > 20) throw std::invalid_argument("mask instance limited to 20 nodes");
    std::vector<std::uint32_t> bit_of(collection.node_count(), 0);
    for (std::size_t i = 0; i < infected.size(); ++i) bit_of[infected[i]] = 1u << i;

    MaskInstance mi;
    mi.k = infected.size();
    mi.empty_red = collection.empty_red_count();
    for (std::size_t j = 0; j < collection.blue_count(); ++j) {
        std::uint32_t m = 0;
        for (NodeId v : collection.blue_members(j)) m |= bit_of[v];
        mi.blue.push_back(m);
    }
    for (std::size_t t = 0; t < collection.stored_red_count(); ++t) {
        std::uint32_t m = 0;
        for (NodeId v : collection.red_members(t)) m |= bit_of[v];
        mi.red.push_back(m);
    }
    return mi;
}

std::vector<double> all_subset_expected_sd(const DirectedGraph& g, const sisi::Observation& obs,
                                           std::uint64_t realizations, std::uint64_t seed) {
    const auto& infected = obs.infected;
    const std::size_t k = infected.size();
    if (k > 16) throw std::invalid_argument("subset oracle limited to 16 infected nodes");
    if (obs.params.model != sisi::Model::SI)
        throw std::invalid_argument("subset oracle supports SI only");
    const NodeId n = g.node_count();
    const std::uint64_t tau = obs.params.tau.is_infinite ? kInfiniteTau : obs.params.tau.steps;
    const std::uint32_t kMasks = 1u << k;

    // Flat edge ids for per-realization delay tables.
    std::vector<std::size_t> edge_base(n + 1, 0);
    for (NodeId u = 0; u < n; ++u) edge_base[u + 1] = edge_base[u] + g.out_degree(u);
    const std::size_t m = edge_base[n];

    std::mt19937_64 rng(seed);
    std::geometric_distribution<std::uint64_t> geo(obs.params.beta);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    // H[v][A] = number of realizations where the set of infected nodes able
    // to reach v within tau is exactly A.
    std::vector<std::vector<std::uint32_t>> hist(n, std::vector<std::uint32_t>(kMasks, 0));
    std::vector<std::uint64_t> delay(m), dist(n);
    std::vector<char> done(n);

    for (std::uint64_t r = 0; r < realizations; ++r) {
        if (obs.params.beta >= 1.0)
            std::fill(delay.begin(), delay.end(), 1);
        else
            for (std::size_t e = 0; e < m; ++e) delay[e] = geo(rng) + 1;

        std::vector<std::uint32_t> reach_mask(n, 0);
        for (std::size_t i = 0; i < k; ++i) {
            // Dijkstra from infected[i] over this realization's delays.
            std::fill(dist.begin(), dist.end(), kInfiniteTau);
            std::fill(done.begin(), done.end(), 0);
            using Item = std::pair<std::uint64_t, NodeId>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            dist[infected[i]] = 0;
            pq.emplace(0, infected[i]);
            while (!pq.empty()) {
                auto [d, u] = pq.top();
                pq.pop();
                if (done[u]) continue;
                done[u] = 1;
                auto nbrs = g.out_neighbors(u);
                for (std::size_t e = 0; e < nbrs.size(); ++e) {
                    std::uint64_t w = delay[edge_base[u] + e];
                    if (w > tau - d) continue;
                    std::uint64_t nd = d + w;
                    if (nd < dist[nbrs[e]]) {
                        dist[nbrs[e]] = nd;
                        if (nd < tau) pq.emplace(nd, nbrs[e]);
                    }
                }
            }
            for (NodeId v = 0; v < n; ++v)
                if (dist[v] <= tau) reach_mask[v] |= 1u << i;
        }
        for (NodeId v = 0; v < n; ++v) ++hist[v][reach_mask[v]];
    }

    // g_v(S) = #realizations with reach_mask[v] disjoint from S, via a
    // subset-sum transform over the complement.
    std::vector<std::uint8_t> is_infected(n, 0);
    for (NodeId v : infected) is_infected[v] = 1;
    std::vector<double> expected(kMasks, 0.0);
    std::vector<std::uint64_t> sos(kMasks);
    for (NodeId v = 0; v < n; ++v) {
        for (std::uint32_t a = 0; a < kMasks; ++a) sos[a] = hist[v][a];
        for (std::size_t b = 0; b < k; ++b)
            for (std::uint32_t a = 0; a < kMasks; ++a)
                if (a & (1u << b)) sos[a] += sos[a ^ (1u << b)];
        // sos[C] = #realizations with reach_mask[v] subset of C
        for (std::uint32_t S = 0; S < kMasks; ++S) {
            std::uint64_t not_infected_by_S = sos[(kMasks - 1) ^ S];
            if (is_infected[v])
                expected[S] += static_cast<double>(not_infected_by_S);
            else
                expected[S] += static_cast<double>(realizations - not_infected_by_S);
        }
    }
    for (auto& e : expected) e /= static_cast<double>(realizations);
    return expected;
}

}  // namespace oracle
