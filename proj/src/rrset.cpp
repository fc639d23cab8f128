#include "sisi/rrset.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "sisi/geometric.hpp"
#include "sisi/parallel.hpp"

namespace sisi {

namespace {

constexpr std::uint64_t kUnreached = std::numeric_limits<std::uint64_t>::max();

std::vector<NodeId> finish_members(std::vector<NodeId> members) {
    std::sort(members.begin(), members.end());
    return members;
}

/// Reverse reachability closure: the almost-sure fixpoint of reverse SI with
/// infinite tau (and of the stepwise process run forever).
RRSet reverse_closure(const DirectedGraph& g, const InfectedMask& mask, NodeId root) {
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> stack{root}, members;
    seen[root] = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        if (mask.contains(v)) members.push_back(v);
        for (NodeId u : g.in_neighbors(v))
            if (!seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
    }
    return RRSet{root, mask.contains(root), finish_members(std::move(members))};
}

}  // namespace

InfectedMask InfectedMask::build(std::span<const NodeId> infected, NodeId n) {
    InfectedMask m;
    m.in.assign(n, 0);
    for (NodeId v : infected) {
        if (v >= n) throw std::invalid_argument("infected id out of range");
        m.in[v] = 1;
    }
    m.count = infected.size();
    return m;
}

RRCollection::RRCollection(NodeId n, std::span<const NodeId> infected)
    : n_(n),
      infected_(infected.begin(), infected.end()),
      mask_(InfectedMask::build(infected, n)),
      node_blue_(n),
      node_red_(n) {
    std::sort(infected_.begin(), infected_.end());
}

void RRCollection::add(RRSet set) {
    for (NodeId v : set.members)
        if (!mask_.contains(v)) throw std::invalid_argument("RR member outside infected set");
    ++total_;
    delta_ = std::max(delta_, set.members.size());
    if (!set.blue && set.members.empty()) {
        ++empty_red_;
        return;
    }
    if (set.blue && set.members.empty())
        throw std::invalid_argument("blue RR set must contain its src");
    total_memberships_ += set.members.size();
    if (set.blue) {
        auto id = static_cast<std::uint32_t>(blue_members_.size());
        for (NodeId v : set.members) node_blue_[v].push_back(id);
        blue_members_.push_back(std::move(set.members));
        blue_src_.push_back(set.src);
    } else {
        auto id = static_cast<std::uint32_t>(red_members_.size());
        for (NodeId v : set.members) node_red_[v].push_back(id);
        red_members_.push_back(std::move(set.members));
        red_src_.push_back(set.src);
    }
}

void RRCollection::dump(std::ostream& out) const {
    for (std::size_t j = 0; j < blue_members_.size(); ++j) {
        out << "B " << blue_src_[j] << ":";
        for (NodeId v : blue_members_[j]) out << " " << v;
        out << "\n";
    }
    for (std::size_t t = 0; t < red_members_.size(); ++t) {
        out << "R " << red_src_[t] << ":";
        for (NodeId v : red_members_[t]) out << " " << v;
        out << "\n";
    }
    if (empty_red_ > 0) out << "# empty red sets: " << empty_red_ << "\n";
}

RRSet sample_rr_naive_rooted(const DirectedGraph& g, const InfectedMask& mask, double beta,
                             Tau tau, NodeId root, Rng rng) {
    if (tau.is_infinite) return reverse_closure(g, mask, root);

    std::vector<char> infected(g.node_count(), 0);
    std::vector<NodeId> infected_list{root}, fresh;
    infected[root] = 1;
    for (std::uint64_t step = 1; step <= tau.steps; ++step) {
        fresh.clear();
        std::uint64_t candidate_edges = 0;
        // One trial per edge (u,v) with v currently infected, u not.
        for (NodeId v : infected_list) {
            for (NodeId u : g.in_neighbors(v)) {
                if (infected[u] == 1) continue;
                ++candidate_edges;
                if (infected[u] == 2) continue;  // already marked this step
                if (rng.bernoulli(beta)) {
                    infected[u] = 2;
                    fresh.push_back(u);
                }
            }
        }
        if (candidate_edges == 0) break;  // nothing can ever change
        for (NodeId u : fresh) {
            infected[u] = 1;
            infected_list.push_back(u);
        }
    }
    std::vector<NodeId> members;
    for (NodeId v : infected_list)
        if (mask.contains(v)) members.push_back(v);
    return RRSet{root, mask.contains(root), finish_members(std::move(members))};
}

RRSet sample_rr_fast_rooted(const DirectedGraph& g, const InfectedMask& mask, double beta,
                            Tau tau, NodeId root, Rng rng) {
    if (tau.is_infinite) return reverse_closure(g, mask, root);

    const std::uint64_t bound = tau.steps;
    std::vector<std::uint64_t> dist(g.node_count(), kUnreached);
    std::vector<char> done(g.node_count(), 0);
    std::vector<NodeId> touched{root};
    using Item = std::pair<std::uint64_t, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[root] = 0;
    pq.emplace(0, root);
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (done[v]) continue;
        done[v] = 1;
        for (NodeId u : g.in_neighbors(v)) {
            if (done[u]) continue;
            std::uint64_t t = geometric_steps(beta, rng.open01());
            if (t > bound - d) continue;
            std::uint64_t nd = d + t;
            if (nd < dist[u]) {
                if (dist[u] == kUnreached) touched.push_back(u);
                dist[u] = nd;
                // Nodes landing exactly on the horizon are members but can
                // contribute nothing further (every delay is >= 1).
                if (nd < bound) pq.emplace(nd, u);
            }
        }
    }
    std::vector<NodeId> members;
    for (NodeId v : touched)
        if (mask.contains(v)) members.push_back(v);
    return RRSet{root, mask.contains(root), finish_members(std::move(members))};
}

RRSet sample_rr_ic_rooted(const DirectedGraph& g, const InfectedMask& mask, double beta,
                          Tau tau, NodeId root, Rng rng) {
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> frontier{root}, members;
    seen[root] = 1;
    if (mask.contains(root)) members.push_back(root);
    std::uint64_t depth = 0;
    while (!frontier.empty() && (tau.is_infinite || depth < tau.steps)) {
        ++depth;
        std::vector<NodeId> next;
        for (NodeId v : frontier) {
            for (NodeId u : g.in_neighbors(v)) {
                if (seen[u]) continue;
                if (rng.bernoulli(beta)) {
                    seen[u] = 1;
                    if (mask.contains(u)) members.push_back(u);
                    next.push_back(u);
                }
            }
        }
        frontier = std::move(next);
    }
    return RRSet{root, mask.contains(root), finish_members(std::move(members))};
}

namespace {

RRSet sample_one(const DirectedGraph& g, const InfectedMask& mask, const ModelParams& params,
                 Rng rng) {
    auto root = static_cast<NodeId>(rng.below(g.node_count()));
    if (params.model == Model::SI)
        return sample_rr_fast_rooted(g, mask, params.beta, params.tau, root, rng);
    return sample_rr_ic_rooted(g, mask, params.beta, params.tau, root, rng);
}

}  // namespace

RRSet sample_rr_naive(const DirectedGraph& g, const Observation& obs, Rng rng) {
    if (obs.params.model != Model::SI)
        throw std::invalid_argument("sample_rr_naive requires SI params");
    auto mask = InfectedMask::build(obs.infected, g.node_count());
    auto root = static_cast<NodeId>(rng.below(g.node_count()));
    return sample_rr_naive_rooted(g, mask, obs.params.beta, obs.params.tau, root, rng);
}

RRSet sample_rr_fast(const DirectedGraph& g, const Observation& obs, Rng rng) {
    if (obs.params.model != Model::SI)
        throw std::invalid_argument("sample_rr_fast requires SI params");
    auto mask = InfectedMask::build(obs.infected, g.node_count());
    auto root = static_cast<NodeId>(rng.below(g.node_count()));
    return sample_rr_fast_rooted(g, mask, obs.params.beta, obs.params.tau, root, rng);
}

RRSet sample_rr_ic(const DirectedGraph& g, const Observation& obs, Rng rng) {
    if (obs.params.model != Model::IC)
        throw std::invalid_argument("sample_rr_ic requires IC params");
    auto mask = InfectedMask::build(obs.infected, g.node_count());
    auto root = static_cast<NodeId>(rng.below(g.node_count()));
    return sample_rr_ic_rooted(g, mask, obs.params.beta, obs.params.tau, root, rng);
}

void batch_sample(const DirectedGraph& g, const Observation& obs, std::uint64_t count,
                  const Rng& rng, RRCollection& collection, unsigned threads) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    validate_params(obs.params);
    const std::uint64_t base = collection.total();
    std::vector<RRSet> slots(count);
    const InfectedMask& mask = collection.infected_mask();
    parallel_for(count, threads, [&](std::uint64_t i) {
        slots[i] = sample_one(g, mask, obs.params, rng.split(base + i));
    });
    for (auto& s : slots) collection.add(std::move(s));
}

}  // namespace sisi
