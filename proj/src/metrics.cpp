#include "sisi/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "sisi/parallel.hpp"

namespace sisi {

namespace {

std::uint64_t intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) {
    std::vector<NodeId> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::uint64_t count = 0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        if (sa[i] == sb[j]) ++count, ++i, ++j;
        else if (sa[i] < sb[j]) ++i;
        else ++j;
    }
    return count;
}

double jaccard(std::span<const NodeId> a, std::span<const NodeId> b) {
    std::uint64_t inter = intersection_size(a, b);
    std::uint64_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double mean_jaccard(const DirectedGraph& g, std::span<const NodeId> sources,
                    const Observation& obs, std::uint64_t trials, const Rng& rng,
                    unsigned threads) {
    std::vector<double> sims(trials);
    parallel_for(trials, threads, [&](std::uint64_t i) {
        auto cascade = simulate(g, sources, obs.params, rng.split(i));
        sims[i] = jaccard(cascade, obs.infected);
    });
    double sum = 0.0;
    for (double s : sims) sum += s;
    return sum / static_cast<double>(trials);
}

}  // namespace

double f1_score(std::span<const NodeId> S, std::span<const NodeId> truth) {
    if (S.empty() || truth.empty()) throw std::invalid_argument("f1_score requires non-empty sets");
    auto inter = static_cast<double>(intersection_size(S, truth));
    return inter / (2.0 * static_cast<double>(S.size())) +
           inter / (2.0 * static_cast<double>(truth.size()));
}

double detection_rate(std::span<const NodeId> S, std::span<const NodeId> truth) {
    if (truth.empty()) throw std::invalid_argument("detection_rate requires non-empty truth");
    return 100.0 * static_cast<double>(intersection_size(S, truth)) /
           static_cast<double>(truth.size());
}

double jaccard_quality(const DirectedGraph& g, std::span<const NodeId> S,
                       std::span<const NodeId> truth, const Observation& obs,
                       std::uint64_t trials, Rng rng, unsigned threads) {
    if (S.empty() || truth.empty())
        throw std::invalid_argument("jaccard_quality requires non-empty sets");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    double num = mean_jaccard(g, S, obs, trials, rng, threads);
    double den = mean_jaccard(g, truth, obs, trials, rng, threads);
    if (den == 0.0) throw std::runtime_error("degenerate instance: zero denominator estimate");
    return num / den;
}

}  // namespace sisi
