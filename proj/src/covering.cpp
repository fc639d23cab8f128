#include "sisi/covering.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "sisi/estimator.hpp"

namespace sisi {

CoveringSolution solve_delta_approx(const RRCollection& collection) {
    if (collection.blue_count() == 0)
        throw std::invalid_argument("covering instance has no blue RR sets");

    CoveringSolution sol;
    sol.x.assign(collection.node_count(), 0.0);
    sol.y.assign(collection.blue_count(), 0.0);
    // Cached max_{v in R_t} x_v per stored red set, updated as x rises.
    std::vector<double> red_max(collection.stored_red_count(), 0.0);

    auto red_slack = [&](NodeId u) {
        double s = 0.0;
        for (std::uint32_t t : collection.red_sets_of(u)) s += 1.0 - red_max[t];
        return s;
    };

    for (std::size_t j = 0; j < collection.blue_count(); ++j) {
        auto members = collection.blue_members(j);
        double theta = std::numeric_limits<double>::infinity();
        for (NodeId u : members) theta = std::min(theta, red_slack(u));
        theta = std::min(theta, 1.0 - sol.y[j]);

        for (NodeId u : members) {  // members are sorted: ascending NodeId
            auto reds = collection.red_sets_of(u);
            if (reds.empty()) {
                sol.x[u] = 1.0;
            } else {
                double sum_max = 0.0;
                for (std::uint32_t t : reds) sum_max += red_max[t];
                double nx = (theta + sum_max) / static_cast<double>(reds.size());
                if (nx > 1.0) {
                    nx = 1.0;
                    ++sol.clamp_events;
                }
                sol.x[u] = std::max(sol.x[u], nx);
            }
            for (std::uint32_t t : reds) red_max[t] = std::max(red_max[t], sol.x[u]);
        }
        sol.y[j] = std::min(1.0, sol.y[j] + theta);
    }

    for (NodeId u : collection.infected())
        if (sol.x[u] >= 1.0 - kSelectTolerance) sol.sources.push_back(u);

    if (sol.sources.empty()) {
        // Every constraint got paid through y; the problem still asks for a
        // source set, so pick the single node with the best blue-minus-red
        // cover count.
        sol.fallback_used = true;
        NodeId best = collection.infected().front();
        std::int64_t best_score = std::numeric_limits<std::int64_t>::min();
        for (NodeId u : collection.infected()) {
            auto score = static_cast<std::int64_t>(collection.blue_sets_of(u).size()) -
                         static_cast<std::int64_t>(collection.red_sets_of(u).size());
            if (score > best_score) {
                best_score = score;
                best = u;
            }
        }
        sol.sources.push_back(best);
    }
    return sol;
}

std::vector<NodeId> post_optimize(std::span<const NodeId> sources, const RRCollection& collection,
                                  NodeId n) {
    if (sources.empty()) throw std::invalid_argument("post_optimize requires a non-empty set");
    std::vector<NodeId> current(sources.begin(), sources.end());
    std::sort(current.begin(), current.end());
    double current_sd = estimate_sd(collection, current, n);

    for (;;) {
        double best_sd = current_sd;
        std::size_t best_idx = current.size();
        std::vector<NodeId> reduced(current.size() - 1);
        for (std::size_t i = 0; i < current.size(); ++i) {
            reduced.clear();
            for (std::size_t k = 0; k < current.size(); ++k)
                if (k != i) reduced.push_back(current[k]);
            double sd = estimate_sd(collection, reduced, n);
            if (sd < best_sd) {  // strict improvement only; ties keep the node
                best_sd = sd;
                best_idx = i;
            }
        }
        if (best_idx == current.size()) break;
        current.erase(current.begin() + static_cast<std::ptrdiff_t>(best_idx));
        current_sd = best_sd;
        if (current.empty()) break;
    }
    return current;
}

}  // namespace sisi
