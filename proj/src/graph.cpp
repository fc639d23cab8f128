#include "sisi/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <set>
#include <unordered_set>

namespace sisi {

namespace {

[[noreturn]] void load_fail(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("edge list, line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

DirectedGraph DirectedGraph::from_edges(NodeId n, std::span<const std::pair<NodeId, NodeId>> edges) {
    DirectedGraph g;
    g.n_ = n;
    g.out_adj_.assign(n, {});
    g.in_adj_.assign(n, {});
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v)
            throw std::invalid_argument("self-loop " + std::to_string(u));
        g.out_adj_[u].push_back(v);
        g.in_adj_[v].push_back(u);
    }
    for (NodeId u = 0; u < n; ++u) {
        auto& out = g.out_adj_[u];
        std::sort(out.begin(), out.end());
        if (std::adjacent_find(out.begin(), out.end()) != out.end())
            throw std::invalid_argument("duplicate edge from node " + std::to_string(u));
        std::sort(g.in_adj_[u].begin(), g.in_adj_[u].end());
    }
    g.m_ = edges.size();
    return g;
}

std::vector<std::pair<NodeId, NodeId>> DirectedGraph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> result;
    result.reserve(m_);
    for (NodeId u = 0; u < n_; ++u)
        for (NodeId v : out_adj_[u]) result.emplace_back(u, v);
    return result;
}

NodeId LoadedGraph::to_dense(std::uint64_t external) const {
    auto it = dense_of.find(external);
    if (it == dense_of.end())
        throw std::invalid_argument("unknown node id " + std::to_string(external));
    return it->second;
}

LoadedGraph LoadedGraph::identity(DirectedGraph g) {
    LoadedGraph lg;
    lg.external_ids.resize(g.node_count());
    lg.dense_of.reserve(g.node_count());
    for (NodeId i = 0; i < g.node_count(); ++i) {
        lg.external_ids[i] = i;
        lg.dense_of.emplace(i, i);
    }
    lg.graph = std::move(g);
    return lg;
}

LoadedGraph load_edge_list(std::istream& in) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv(line);
        if (auto pos = sv.find('#'); pos != std::string_view::npos) sv = sv.substr(0, pos);
        std::size_t a = sv.find_first_not_of(" \t\r");
        if (a == std::string_view::npos) continue;

        std::istringstream fields{std::string(sv)};
        std::uint64_t eu, ev;
        if (!(fields >> eu >> ev)) load_fail(line_no, "expected two node ids");
        std::string extra;
        if (fields >> extra) load_fail(line_no, "trailing content '" + extra + "'");
        if (eu == ev) load_fail(line_no, "self-loop " + std::to_string(eu));
        if (!seen.emplace(eu, ev).second)
            load_fail(line_no, "duplicate edge " + std::to_string(eu) + " " + std::to_string(ev));
        raw.emplace_back(eu, ev);
    }

    // Dense ids follow the numeric order of the external ids, so a file that
    // is already dense loads with the identity mapping.
    LoadedGraph lg;
    for (const auto& [u, v] : raw) {
        lg.external_ids.push_back(u);
        lg.external_ids.push_back(v);
    }
    std::sort(lg.external_ids.begin(), lg.external_ids.end());
    lg.external_ids.erase(std::unique(lg.external_ids.begin(), lg.external_ids.end()),
                          lg.external_ids.end());
    lg.dense_of.reserve(lg.external_ids.size());
    for (NodeId i = 0; i < lg.external_ids.size(); ++i) lg.dense_of.emplace(lg.external_ids[i], i);

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(raw.size());
    for (const auto& [u, v] : raw) edges.emplace_back(lg.dense_of.at(u), lg.dense_of.at(v));
    lg.graph = DirectedGraph::from_edges(static_cast<NodeId>(lg.external_ids.size()), edges);
    return lg;
}

LoadedGraph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const DirectedGraph& g,
                     const std::vector<std::uint64_t>* external_ids) {
    out << "# nodes " << g.node_count() << " edges " << g.edge_count() << "\n";
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v : g.out_neighbors(u)) {
            if (external_ids)
                out << (*external_ids)[u] << " " << (*external_ids)[v] << "\n";
            else
                out << u << " " << v << "\n";
        }
    }
}

DirectedGraph gen_grid(NodeId rows, NodeId cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("grid dimensions must be positive");
    auto id = [cols](NodeId r, NodeId c) { return r * cols + c; };
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(2ull * (static_cast<std::uint64_t>(rows) * (cols - 1) +
                          static_cast<std::uint64_t>(cols) * (rows - 1)));
    for (NodeId r = 0; r < rows; ++r) {
        for (NodeId c = 0; c < cols; ++c) {
            if (c + 1 < cols) {
                edges.emplace_back(id(r, c), id(r, c + 1));
                edges.emplace_back(id(r, c + 1), id(r, c));
            }
            if (r + 1 < rows) {
                edges.emplace_back(id(r, c), id(r + 1, c));
                edges.emplace_back(id(r + 1, c), id(r, c));
            }
        }
    }
    return DirectedGraph::from_edges(rows * cols, edges);
}

DirectedGraph gen_random_graph(NodeId n, std::uint64_t m, Rng rng) {
    const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n > 0 ? n - 1 : 0);
    if (m > max_edges)
        throw std::invalid_argument("requested " + std::to_string(m) + " edges, graph holds at most " +
                                    std::to_string(max_edges));
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(m);
    if (max_edges <= 50'000'000 && m * 2 > max_edges) {
        // Dense request: partial Fisher-Yates over the full pair universe.
        std::vector<std::uint64_t> pool(max_edges);
        std::uint64_t idx = 0;
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = 0; v < n; ++v)
                if (u != v) pool[idx++] = (static_cast<std::uint64_t>(u) << 32) | v;
        for (std::uint64_t i = 0; i < m; ++i) {
            std::uint64_t j = i + rng.below(max_edges - i);
            std::swap(pool[i], pool[j]);
            edges.emplace_back(static_cast<NodeId>(pool[i] >> 32), static_cast<NodeId>(pool[i] & 0xffffffffu));
        }
    } else {
        std::unordered_set<std::uint64_t> used;
        used.reserve(m * 2);
        while (edges.size() < m) {
            auto u = static_cast<NodeId>(rng.below(n));
            auto v = static_cast<NodeId>(rng.below(n));
            if (u == v) continue;
            std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
            if (used.insert(key).second) edges.emplace_back(u, v);
        }
    }
    return DirectedGraph::from_edges(n, edges);
}

}  // namespace sisi
