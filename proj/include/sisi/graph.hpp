#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sisi/rng.hpp"

namespace sisi {

using NodeId = std::uint32_t;

/// Immutable directed graph with forward and reverse adjacency.
///
/// Node ids are dense in [0, n). No self-loops, no parallel edges; both are
/// rejected at construction. Read-only after construction, so any number of
/// worker threads may share a graph without synchronization.
class DirectedGraph {
public:
    DirectedGraph() = default;  // empty graph

    /// Builds a graph from an explicit edge list. Adjacency lists come out
    /// sorted ascending. Throws std::invalid_argument on out-of-range ids,
    /// self-loops or duplicate edges.
    static DirectedGraph from_edges(NodeId n, std::span<const std::pair<NodeId, NodeId>> edges);

    NodeId node_count() const { return n_; }
    std::uint64_t edge_count() const { return m_; }

    std::span<const NodeId> out_neighbors(NodeId u) const { return out_adj_[u]; }
    std::span<const NodeId> in_neighbors(NodeId u) const { return in_adj_[u]; }

    std::size_t out_degree(NodeId u) const { return out_adj_[u].size(); }
    std::size_t in_degree(NodeId u) const { return in_adj_[u].size(); }
    std::size_t total_degree(NodeId u) const { return out_degree(u) + in_degree(u); }

    /// Edges in canonical (sorted) order, mainly for serialization.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

private:
    NodeId n_ = 0;
    std::uint64_t m_ = 0;
    std::vector<std::vector<NodeId>> out_adj_;
    std::vector<std::vector<NodeId>> in_adj_;
};

/// A loaded graph plus the id remapping: external_ids[dense] = original id.
struct LoadedGraph {
    DirectedGraph graph;
    std::vector<std::uint64_t> external_ids;
    std::unordered_map<std::uint64_t, NodeId> dense_of;

    /// Dense id for an external id; throws if the id is unknown.
    NodeId to_dense(std::uint64_t external) const;

    /// Identity mapping for a graph that was built with dense ids already.
    static LoadedGraph identity(DirectedGraph g);
};

/// Parses edge-list text: one `u v` pair per line, `#` starts a comment,
/// blank lines ignored. Ids need not be dense; they are remapped to dense
/// NodeIds in order of first appearance. Throws std::runtime_error naming
/// the offending line on malformed input, self-loops or duplicate edges.
LoadedGraph load_edge_list(std::istream& in);
LoadedGraph load_edge_list_file(const std::string& path);

/// Writes the graph back as edge-list text (external ids if provided).
void write_edge_list(std::ostream& out, const DirectedGraph& g,
                     const std::vector<std::uint64_t>* external_ids = nullptr);

/// rows x cols lattice; every undirected 4-neighbor adjacency becomes two
/// directed edges, so m = 2*(rows*(cols-1) + cols*(rows-1)).
DirectedGraph gen_grid(NodeId rows, NodeId cols);

/// m distinct directed non-self-loop edges drawn uniformly without
/// replacement; deterministic for a fixed seed. Requires m <= n*(n-1).
DirectedGraph gen_random_graph(NodeId n, std::uint64_t m, Rng rng);

}  // namespace sisi
