#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "sisi/cascade.hpp"
#include "sisi/graph.hpp"
#include "sisi/rng.hpp"

namespace sisi {

/// One truncated reverse-reachable sample. members is sorted and always a
/// subset of the observed infected set; a blue set (src infected) contains
/// its src, so blue sets are never empty.
struct RRSet {
    NodeId src = 0;
    bool blue = false;
    std::vector<NodeId> members;
};

/// Membership mask over [0,n) for the observed infected set.
struct InfectedMask {
    std::vector<std::uint8_t> in;
    std::uint64_t count = 0;

    static InfectedMask build(std::span<const NodeId> infected, NodeId n);
    bool contains(NodeId v) const { return in[v] != 0; }
};

/// The growing pool of RR sets with blue/red partition, running max set size
/// (delta) and an inverted node index for coverage queries. Red sets with
/// empty members can never be covered and are kept as a counter only; they
/// still count toward total() for the estimator denominator.
class RRCollection {
public:
    RRCollection(NodeId n, std::span<const NodeId> infected);

    void add(RRSet set);

    NodeId node_count() const { return n_; }
    std::span<const NodeId> infected() const { return infected_; }
    const InfectedMask& infected_mask() const { return mask_; }

    std::uint64_t total() const { return total_; }
    std::uint64_t total_memberships() const { return total_memberships_; }
    std::size_t delta() const { return delta_; }

    std::size_t blue_count() const { return blue_members_.size(); }
    std::uint64_t red_count() const { return red_members_.size() + empty_red_; }
    std::size_t stored_red_count() const { return red_members_.size(); }
    std::uint64_t empty_red_count() const { return empty_red_; }

    std::span<const NodeId> blue_members(std::size_t j) const { return blue_members_[j]; }
    std::span<const NodeId> red_members(std::size_t t) const { return red_members_[t]; }
    NodeId blue_src(std::size_t j) const { return blue_src_[j]; }
    NodeId red_src(std::size_t t) const { return red_src_[t]; }

    /// Ids of blue / stored-red sets containing node u.
    std::span<const std::uint32_t> blue_sets_of(NodeId u) const { return node_blue_[u]; }
    std::span<const std::uint32_t> red_sets_of(NodeId u) const { return node_red_[u]; }

    /// Debug dump, one set per line: `B|R src: members...`.
    void dump(std::ostream& out) const;

private:
    NodeId n_;
    std::vector<NodeId> infected_;
    InfectedMask mask_;

    std::uint64_t total_ = 0;
    std::uint64_t total_memberships_ = 0;
    std::size_t delta_ = 0;
    std::uint64_t empty_red_ = 0;

    std::vector<std::vector<NodeId>> blue_members_, red_members_;
    std::vector<NodeId> blue_src_, red_src_;
    std::vector<std::vector<std::uint32_t>> node_blue_, node_red_;
};

/// Reverse SI sampling by literal stepwise simulation (steps 1..tau, one
/// Bernoulli(beta) trial per frontier edge per step). The reference sampler;
/// slow for large tau.
RRSet sample_rr_naive(const DirectedGraph& g, const Observation& obs, Rng rng);

/// Same distribution as sample_rr_naive via geometric edge delays and a
/// truncated reverse Dijkstra; roughly tau times faster.
RRSet sample_rr_fast(const DirectedGraph& g, const Observation& obs, Rng rng);

/// Reverse IC sampling: breadth-first expansion over reversed edges, each
/// edge kept once with probability beta, limited to depth tau.
RRSet sample_rr_ic(const DirectedGraph& g, const Observation& obs, Rng rng);

/// Rooted variants: identical cascades but with the root supplied instead of
/// drawn uniformly. Useful for stratified checks and hand-traced tests.
RRSet sample_rr_naive_rooted(const DirectedGraph& g, const InfectedMask& mask, double beta,
                             Tau tau, NodeId root, Rng rng);
RRSet sample_rr_fast_rooted(const DirectedGraph& g, const InfectedMask& mask, double beta,
                            Tau tau, NodeId root, Rng rng);
RRSet sample_rr_ic_rooted(const DirectedGraph& g, const InfectedMask& mask, double beta,
                          Tau tau, NodeId root, Rng rng);

/// Appends `count` independent RR sets (fast sampler for SI, reverse BFS for
/// IC). Set i of the batch draws everything from rng.split(collection.total()
/// at call time + i), so the pool contents depend only on (seed, generation
/// order), never on the thread schedule.
void batch_sample(const DirectedGraph& g, const Observation& obs, std::uint64_t count,
                  const Rng& rng, RRCollection& collection, unsigned threads = 1);

}  // namespace sisi
