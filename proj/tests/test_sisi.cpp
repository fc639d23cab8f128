#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "sisi/sisi.hpp"
#include "support/oracles.hpp"

using namespace sisi;

namespace {

/// Path 0->1->...->(len-1).
DirectedGraph path_graph(NodeId len) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i + 1 < len; ++i) e.emplace_back(i, i + 1);
    return DirectedGraph::from_edges(len, e);
}

}  // namespace

TEST_CASE("compute_lambda against an independent high-precision evaluation") {
    // mpmath, 50 digits: (1+eps)*2*(2*(e-2))*(ln(2/delta)+k*ln 2+1)/eps^2
    const double frozen_strict = 23897.046509002669868431481762389;
    double strict = compute_lambda(0.1, 0.01, 100, SisiMode::Strict);
    CHECK(std::abs(strict - frozen_strict) < 1e-6);
    CHECK(std::abs(strict - 23897.0) <= 1.0);

    const double frozen_relax = 3665.0468800263646193472881245870;
    double relax = compute_lambda(0.1, 0.01, 100, SisiMode::Relax);
    CHECK(std::abs(relax - frozen_relax) < 1e-6);
}

TEST_CASE("relaxed lambda is strictly smaller for k >= 3") {
    for (std::uint64_t k : {3ull, 5ull, 10ull, 100ull, 1000ull}) {
        CHECK(compute_lambda(0.2, 0.05, k, SisiMode::Relax) <
              compute_lambda(0.2, 0.05, k, SisiMode::Strict));
    }
    // ln(2k) = k ln 2 exactly at k = 1 and k = 2, so the modes coincide there
    for (std::uint64_t k : {1ull, 2ull}) {
        CHECK(compute_lambda(0.2, 0.05, k, SisiMode::Relax) ==
              doctest::Approx(compute_lambda(0.2, 0.05, k, SisiMode::Strict)));
    }
}

TEST_CASE("halving epsilon scales lambda by 4(1+eps/2)/(1+eps)") {
    for (double eps : {0.1, 0.2, 0.4}) {
        double ratio = compute_lambda(eps / 2, 0.01, 50, SisiMode::Strict) /
                       compute_lambda(eps, 0.01, 50, SisiMode::Strict);
        CHECK(ratio == doctest::Approx(4.0 * (1 + eps / 2) / (1 + eps)));
        CHECK(ratio > 3.0);
        CHECK(ratio < 4.0);  // the (1+eps) factor shrinks as well
    }
}

TEST_CASE("compute_lambda rejects out-of-range input") {
    CHECK_THROWS_AS(compute_lambda(0.0, 0.01, 10, SisiMode::Strict), std::invalid_argument);
    CHECK_THROWS_AS(compute_lambda(1.0, 0.01, 10, SisiMode::Strict), std::invalid_argument);
    CHECK_THROWS_AS(compute_lambda(0.1, 0.0, 10, SisiMode::Strict), std::invalid_argument);
    CHECK_THROWS_AS(compute_lambda(0.1, 0.01, 0, SisiMode::Strict), std::invalid_argument);
}

TEST_CASE("single-source deterministic instance is recovered") {
    auto g = path_graph(8);
    std::vector<NodeId> truth{0};
    auto obs = make_observation(g, truth, ModelParams{Model::SI, 1.0, Tau::finite(4)}, Rng(0));
    REQUIRE(obs.infected == std::vector<NodeId>{0, 1, 2, 3, 4});

    // exhaustive oracle: {0} is the unique minimizer of the exact D
    std::uint64_t best = oracle::exact_sd_beta1(g, truth, obs.infected, 4);
    CHECK(best == 0);
    int zero_count = 0;
    for (std::uint32_t m = 1; m < (1u << 5); ++m) {
        std::vector<NodeId> S;
        for (std::uint32_t b = 0; b < 5; ++b)
            if (m & (1u << b)) S.push_back(obs.infected[b]);
        if (oracle::exact_sd_beta1(g, S, obs.infected, 4) == 0) ++zero_count;
    }
    CHECK(zero_count == 1);

    SisiConfig cfg;
    cfg.mode = SisiMode::Relax;
    cfg.seed = 7;
    cfg.max_samples = 30000;  // the perfect fit keeps the stopping sum at zero
    auto report = run_sisi(g, obs, cfg);
    CHECK(report.sources == std::vector<NodeId>{0});
    CHECK(report.budget_exhausted);
    CHECK(report.estimated_sd == doctest::Approx(0.0));
}

TEST_CASE("two disconnected components yield both sources") {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i + 1 < 5; ++i) e.emplace_back(i, i + 1);          // 0..4
    for (NodeId i = 5; i + 1 < 10; ++i) e.emplace_back(i, i + 1);        // 5..9
    auto g = DirectedGraph::from_edges(10, e);
    std::vector<NodeId> truth{0, 5};
    auto obs = make_observation(g, truth, ModelParams{Model::SI, 1.0, Tau::finite(2)}, Rng(0));
    REQUIRE(obs.infected == std::vector<NodeId>{0, 1, 2, 5, 6, 7});

    // exhaustive: {0,5} is the unique zero of the exact objective
    int zero_count = 0;
    for (std::uint32_t m = 1; m < (1u << 6); ++m) {
        std::vector<NodeId> S;
        for (std::uint32_t b = 0; b < 6; ++b)
            if (m & (1u << b)) S.push_back(obs.infected[b]);
        if (oracle::exact_sd_beta1(g, S, obs.infected, 2) == 0) {
            ++zero_count;
            CHECK(S == truth);
        }
    }
    CHECK(zero_count == 1);

    SisiConfig cfg;
    cfg.mode = SisiMode::Relax;
    cfg.seed = 3;
    cfg.max_samples = 50000;
    auto report = run_sisi(g, obs, cfg);
    CHECK(report.sources == truth);
}

TEST_CASE("same inputs and seed give identical reports, regardless of threads") {
    auto g = gen_random_graph(40, 160, Rng(19));
    std::vector<NodeId> truth{3, 27};
    auto obs = make_observation(g, truth, ModelParams{Model::SI, 0.4, Tau::finite(3)}, Rng(1));
    REQUIRE(!obs.infected.empty());

    SisiConfig cfg;
    cfg.mode = SisiMode::Relax;
    cfg.seed = 11;
    auto a = run_sisi(g, obs, cfg);
    auto b = run_sisi(g, obs, cfg);
    cfg.threads = 4;
    auto c = run_sisi(g, obs, cfg);
    CHECK(a.sources == b.sources);
    CHECK(a.estimated_sd == b.estimated_sd);
    CHECK(a.samples_used == b.samples_used);
    CHECK(a.rounds == b.rounds);
    CHECK(a.sources == c.sources);
    CHECK(a.estimated_sd == c.estimated_sd);
    CHECK(a.samples_used == c.samples_used);
}

TEST_CASE("stopping rule: on a normal exit the final sum reaches lambda") {
    auto g = gen_random_graph(30, 100, Rng(23));
    std::vector<NodeId> truth{4};
    auto obs = make_observation(g, truth, ModelParams{Model::SI, 0.4, Tau::finite(3)}, Rng(2));
    REQUIRE(obs.infected.size() >= 2);

    SisiConfig cfg;
    cfg.mode = SisiMode::Relax;
    cfg.seed = 5;
    RoundInfo last;
    std::vector<std::uint64_t> totals;
    auto report = run_sisi(g, obs, cfg, [&](const RoundInfo& info) {
        last = info;
        totals.push_back(info.total_sets);
    });
    REQUIRE(!report.budget_exhausted);
    CHECK(double(last.stopping_sum) >= last.lambda);
    CHECK(report.samples_used == last.total_sets);
    CHECK(double(report.samples_used) >= last.lambda);

    // sample doubling: round r holds ceil(lambda) * 2^(r-1) sets
    double lambda = compute_lambda(cfg.epsilon, cfg.delta, obs.infected.size(), SisiMode::Relax);
    auto first = static_cast<std::uint64_t>(std::ceil(lambda));
    for (std::size_t r = 0; r < totals.size(); ++r) CHECK(totals[r] == first << r);
}

TEST_CASE("strict mode applies the epsilon cap when delta is large") {
    auto g = path_graph(14);
    std::vector<NodeId> truth{0};
    // tau=12 makes reverse sets as large as the whole infected prefix
    auto obs = make_observation(g, truth, ModelParams{Model::SI, 1.0, Tau::finite(12)}, Rng(0));
    REQUIRE(obs.infected.size() == 13);

    SisiConfig cfg;
    cfg.mode = SisiMode::Strict;
    cfg.epsilon = 0.1;
    cfg.seed = 1;
    cfg.max_samples = 30000;
    auto report = run_sisi(g, obs, cfg);
    REQUIRE(report.delta_observed >= 10);
    CHECK(report.epsilon_effective ==
          doctest::Approx(1.0 / (1.0 + double(report.delta_observed))));

    // relax mode never rewrites epsilon
    cfg.mode = SisiMode::Relax;
    auto relax_report = run_sisi(g, obs, cfg);
    CHECK(relax_report.epsilon_effective == doctest::Approx(0.1));
}

TEST_CASE("empty infected set is rejected") {
    auto g = path_graph(4);
    Observation obs;
    obs.params = ModelParams{Model::SI, 0.5, Tau::finite(2)};
    SisiConfig cfg;
    CHECK_THROWS_AS(run_sisi(g, obs, cfg), std::invalid_argument);
}
