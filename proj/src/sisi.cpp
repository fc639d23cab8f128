#include "sisi/sisi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sisi/covering.hpp"
#include "sisi/estimator.hpp"
#include "sisi/rrset.hpp"

namespace sisi {

double compute_lambda(double epsilon, double delta, std::uint64_t k, SisiMode mode) {
    if (!(epsilon > 0.0) || epsilon >= 1.0) throw std::invalid_argument("epsilon must be in (0,1)");
    if (!(delta > 0.0) || delta >= 1.0) throw std::invalid_argument("delta must be in (0,1)");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const double c = 2.0 * (std::exp(1.0) - 2.0);
    const double kd = static_cast<double>(k);
    const double union_term = mode == SisiMode::Strict ? kd * std::log(2.0) : std::log(2.0 * kd);
    return (1.0 + epsilon) * 2.0 * c * (std::log(2.0 / delta) + union_term + 1.0) /
           (epsilon * epsilon);
}

SolutionReport run_sisi(const DirectedGraph& g, const Observation& obs, const SisiConfig& cfg,
                        const ProgressFn& progress) {
    validate_observation(obs, g);
    if (obs.infected.empty()) throw std::invalid_argument("infected set must be non-empty");
    const NodeId n = g.node_count();
    const std::uint64_t k = obs.infected.size();

    double eps_eff = cfg.epsilon;
    double lambda = compute_lambda(eps_eff, cfg.delta, k, cfg.mode);

    RRCollection pool(n, obs.infected);
    Rng sample_rng = Rng(cfg.seed).split(0);

    SolutionReport report;
    report.epsilon_effective = eps_eff;
    std::vector<NodeId> candidate;

    auto batch = static_cast<std::uint64_t>(std::ceil(lambda));
    for (;;) {
        batch_sample(g, obs, batch, sample_rng, pool, cfg.threads);
        ++report.rounds;
        batch = pool.total();  // next round doubles the pool

        std::uint64_t stopping_sum = 0;
        if (pool.blue_count() > 0) {
            auto sol = solve_delta_approx(pool);
            candidate = std::move(sol.sources);
            report.fallback_used = sol.fallback_used;

            if (cfg.mode == SisiMode::Strict) {
                const double cap = 1.0 / (1.0 + static_cast<double>(pool.delta()));
                if (eps_eff > cap) {
                    eps_eff = cap;
                    lambda = compute_lambda(eps_eff, cfg.delta, k, SisiMode::Strict);
                }
            }

            auto cov = coverage(pool, candidate);
            stopping_sum = cov.uncovered_blue + cov.covered_red;
        }

        if (progress) {
            RoundInfo info;
            info.round = report.rounds;
            info.total_sets = pool.total();
            info.delta = pool.delta();
            info.lambda = lambda;
            info.stopping_sum = stopping_sum;
            info.estimate = static_cast<double>(n) * static_cast<double>(stopping_sum) /
                            static_cast<double>(pool.total());
            progress(info);
        }

        if (!candidate.empty() && static_cast<double>(stopping_sum) >= lambda) break;
        if (pool.total_memberships() >= cfg.max_samples) {
            report.budget_exhausted = true;
            break;
        }
    }

    if (candidate.empty()) {
        // Budget ran out before any blue set appeared; fall back to the
        // smallest infected node so that a source set is always returned.
        report.fallback_used = true;
        candidate.push_back(obs.infected.front());
    }
    report.sources = post_optimize(candidate, pool, n);
    report.estimated_sd = estimate_sd(pool, report.sources, n);
    report.samples_used = pool.total();
    report.delta_observed = pool.delta();
    report.epsilon_effective = eps_eff;
    return report;
}

}  // namespace sisi
