#include "sisi/estimator.hpp"

#include <stdexcept>
#include <vector>

namespace sisi {

CoverageCounts coverage(const RRCollection& collection, std::span<const NodeId> S) {
    for (NodeId u : S)
        if (u >= collection.node_count() || !collection.infected_mask().contains(u))
            throw std::invalid_argument("candidate set must be a subset of the infected set");

    std::vector<std::uint8_t> blue_hit(collection.blue_count(), 0);
    std::vector<std::uint8_t> red_hit(collection.stored_red_count(), 0);
    std::uint64_t covered_blue = 0, covered_red = 0;
    for (NodeId u : S) {
        for (std::uint32_t j : collection.blue_sets_of(u))
            if (!blue_hit[j]) {
                blue_hit[j] = 1;
                ++covered_blue;
            }
        for (std::uint32_t t : collection.red_sets_of(u))
            if (!red_hit[t]) {
                red_hit[t] = 1;
                ++covered_red;
            }
    }
    return CoverageCounts{collection.blue_count() - covered_blue, covered_red, collection.total()};
}

double estimate_sd(const RRCollection& collection, std::span<const NodeId> S, NodeId n) {
    if (collection.total() < 1) throw std::invalid_argument("empty RR collection");
    auto c = coverage(collection, S);
    return static_cast<double>(n) * static_cast<double>(c.uncovered_blue + c.covered_red) /
           static_cast<double>(c.total);
}

}  // namespace sisi
