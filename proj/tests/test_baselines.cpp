#include <doctest.h>

#include <stdexcept>

#include "sisi/baselines.hpp"
#include "support/oracles.hpp"

using namespace sisi;

namespace {

DirectedGraph path_graph(NodeId len) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i + 1 < len; ++i) e.emplace_back(i, i + 1);
    return DirectedGraph::from_edges(len, e);
}

}  // namespace

TEST_CASE("greedy recovers a deterministic single source") {
    auto g = path_graph(8);
    std::vector<NodeId> truth{0};
    auto obs = make_observation(g, truth, ModelParams{Model::SI, 1.0, Tau::finite(4)}, Rng(0));
    auto found = greedy_detect(g, obs, 50, Rng(1));
    CHECK(found == truth);
}

TEST_CASE("greedy finds both sources of two deterministic components") {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i + 1 < 5; ++i) e.emplace_back(i, i + 1);
    for (NodeId i = 5; i + 1 < 10; ++i) e.emplace_back(i, i + 1);
    auto g = DirectedGraph::from_edges(10, e);
    std::vector<NodeId> truth{0, 5};
    auto obs = make_observation(g, truth, ModelParams{Model::SI, 1.0, Tau::finite(2)}, Rng(0));
    auto found = greedy_detect(g, obs, 50, Rng(1));
    CHECK(found == truth);
}

TEST_CASE("baselines return non-empty subsets and are deterministic") {
    auto g = gen_random_graph(30, 120, Rng(2));
    std::vector<NodeId> truth{7};
    auto obs = make_observation(g, truth, ModelParams{Model::SI, 0.4, Tau::finite(3)}, Rng(5));
    REQUIRE(!obs.infected.empty());

    auto g1 = greedy_detect(g, obs, 100, Rng(9));
    auto g2 = greedy_detect(g, obs, 100, Rng(9));
    CHECK(g1 == g2);
    CHECK(!g1.empty());
    for (NodeId v : g1)
        CHECK(std::binary_search(obs.infected.begin(), obs.infected.end(), v));
    auto g3 = greedy_detect(g, obs, 100, Rng(9), 4);  // thread independence
    CHECK(g1 == g3);

    auto m1 = max_degree_detect(g, obs, 100, Rng(9));
    auto m2 = max_degree_detect(g, obs, 100, Rng(9));
    CHECK(m1 == m2);
    CHECK(!m1.empty());
    for (NodeId v : m1)
        CHECK(std::binary_search(obs.infected.begin(), obs.infected.end(), v));
}

TEST_CASE("single infected node is returned by both baselines") {
    auto g = path_graph(3);
    Observation obs;
    obs.infected = {1};
    obs.params = ModelParams{Model::SI, 0.5, Tau::finite(1)};
    CHECK(greedy_detect(g, obs, 50, Rng(0)) == std::vector<NodeId>{1});
    CHECK(max_degree_detect(g, obs, 50, Rng(0)) == std::vector<NodeId>{1});
}

TEST_CASE("max-degree picks the hub first and stops at the first increase") {
    // center 0 -> leaves 1..15; leaf 1 additionally points at 10 outside nodes
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId l = 1; l <= 15; ++l) e.emplace_back(0, l);
    for (NodeId x = 16; x < 26; ++x) e.emplace_back(1, x);
    auto g = DirectedGraph::from_edges(26, e);

    Observation obs;
    for (NodeId v = 0; v <= 15; ++v) obs.infected.push_back(v);
    obs.params = ModelParams{Model::SI, 1.0, Tau::finite(1)};

    // degree order: 0 (15), then 1 (11), then the rest; adding 1 infects the
    // ten outside nodes and must stop the scan
    auto found = max_degree_detect(g, obs, 80, Rng(3));
    CHECK(found == std::vector<NodeId>{0});
}

TEST_CASE("greedy stops once the estimate cannot strictly improve") {
    // A perfect single source: the second pick could only add overshoot.
    auto g = path_graph(6);
    std::vector<NodeId> truth{0};
    auto obs = make_observation(g, truth, ModelParams{Model::SI, 1.0, Tau::finite(3)}, Rng(0));
    auto found = greedy_detect(g, obs, 40, Rng(2));
    CHECK(found.size() == 1);
}
