#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sisi/baselines.hpp"
#include "sisi/cascade.hpp"
#include "sisi/covering.hpp"
#include "sisi/estimator.hpp"
#include "sisi/graph.hpp"
#include "sisi/io.hpp"
#include "sisi/metrics.hpp"
#include "sisi/rng.hpp"
#include "sisi/sisi.hpp"

using json = nlohmann::ordered_json;

namespace {

using namespace sisi;

// Stream ordinals hung off the user seed; keeps the per-purpose randomness
// decoupled so adding a feature never shifts another one's draws.
enum Stream : std::uint64_t {
    kDetectStream = 0,
    kEvalStream = 1,
    kQjdStream = 2,
    kSourcePickStream = 3,
    kTraceStream = 4,
};

std::vector<NodeId> pick_distinct_nodes(NodeId n, std::uint64_t count, Rng rng) {
    if (count > n) throw std::invalid_argument("more sources requested than nodes");
    std::vector<NodeId> picked;
    std::vector<std::uint8_t> used(n, 0);
    while (picked.size() < count) {
        auto v = static_cast<NodeId>(rng.below(n));
        if (!used[v]) {
            used[v] = 1;
            picked.push_back(v);
        }
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct DetectOutcome {
    std::vector<NodeId> sources;  // dense, sorted
    double estimated_sd = 0.0;
    std::uint64_t samples_used = 0;
    std::size_t delta = 0;
    double epsilon_effective = 0.0;
    int rounds = 0;
    bool fallback_used = false;
    bool budget_exhausted = false;
    double runtime_ms = 0.0;
};

DetectOutcome run_detector(const std::string& algo, const DirectedGraph& g, const Observation& obs,
                           double epsilon, double delta, std::uint64_t seed,
                           std::uint64_t trials_per_eval, std::uint64_t eval_trials,
                           std::uint64_t max_samples, unsigned threads, bool log_progress) {
    DetectOutcome out;
    auto t0 = std::chrono::steady_clock::now();
    if (algo == "sisi" || algo == "sisi-relax") {
        SisiConfig cfg;
        cfg.epsilon = epsilon;
        cfg.delta = delta;
        cfg.mode = algo == "sisi" ? SisiMode::Strict : SisiMode::Relax;
        cfg.seed = seed;
        cfg.max_samples = max_samples;
        cfg.threads = threads;
        ProgressFn progress;
        if (log_progress) {
            progress = [](const RoundInfo& r) {
                std::cerr << "round=" << r.round << " sets=" << r.total_sets
                          << " delta=" << r.delta << " lambda=" << r.lambda
                          << " stop_sum=" << r.stopping_sum << " est_sd=" << r.estimate << "\n";
            };
        }
        auto report = run_sisi(g, obs, cfg, progress);
        out.sources = report.sources;
        out.estimated_sd = report.estimated_sd;
        out.samples_used = report.samples_used;
        out.delta = report.delta_observed;
        out.epsilon_effective = report.epsilon_effective;
        out.rounds = report.rounds;
        out.fallback_used = report.fallback_used;
        out.budget_exhausted = report.budget_exhausted;
    } else if (algo == "greedy" || algo == "max-degree") {
        Rng rng = Rng(seed).split(kDetectStream);
        out.sources = algo == "greedy" ? greedy_detect(g, obs, trials_per_eval, rng, threads)
                                       : max_degree_detect(g, obs, trials_per_eval, rng, threads);
        out.estimated_sd =
            estimate_sd_forward(g, out.sources, obs, eval_trials, Rng(seed).split(kEvalStream),
                                threads)
                .mean;
        out.samples_used = eval_trials;
    } else {
        throw std::invalid_argument("unknown algorithm '" + algo + "'");
    }
    out.runtime_ms = elapsed_ms(t0);
    return out;
}

json report_json(const DetectOutcome& out, const LoadedGraph& lg, const Observation& obs,
                 const std::string& algo, std::uint64_t seed, std::uint64_t qjd_trials,
                 unsigned threads, bool timing) {
    std::vector<std::uint64_t> external;
    external.reserve(out.sources.size());
    for (NodeId v : out.sources) external.push_back(lg.external_ids[v]);
    std::sort(external.begin(), external.end());

    json j;
    j["algo"] = algo;
    j["seed"] = seed;
    j["sources"] = external;
    j["estimated_sd"] = out.estimated_sd;
    j["samples_used"] = out.samples_used;
    j["delta"] = out.delta;
    j["epsilon_effective"] = out.epsilon_effective;
    j["rounds"] = out.rounds;
    j["fallback_used"] = out.fallback_used;
    j["budget_exhausted"] = out.budget_exhausted;
    j["runtime_ms"] = timing ? out.runtime_ms : 0.0;
    if (obs.true_sources && !out.sources.empty()) {
        j["f1"] = f1_score(out.sources, *obs.true_sources);
        j["detection_rate"] = detection_rate(out.sources, *obs.true_sources);
        j["q_jd"] = jaccard_quality(lg.graph, out.sources, *obs.true_sources, obs, qjd_trials,
                                    Rng(seed).split(kQjdStream), threads);
    } else {
        j["f1"] = nullptr;
        j["detection_rate"] = nullptr;
        j["q_jd"] = nullptr;
    }
    return j;
}

int cmd_gen_grid(NodeId rows, NodeId cols, const std::string& out_path) {
    auto g = gen_grid(rows, cols);
    std::ostringstream os;
    write_edge_list(os, g);
    write_text_file(out_path, os.str());
    std::cerr << "grid graph: " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
    return 0;
}

int cmd_gen_random(NodeId nodes, std::uint64_t edges, std::uint64_t seed,
                   const std::string& out_path) {
    auto g = gen_random_graph(nodes, edges, Rng(seed));
    std::ostringstream os;
    write_edge_list(os, g);
    write_text_file(out_path, os.str());
    std::cerr << "random graph: " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
    return 0;
}

int cmd_simulate(const std::string& graph_path, const std::string& model_name, double beta,
                 std::uint64_t source_count, std::uint64_t min_infected, std::uint64_t tau_cap,
                 std::uint64_t seed, const std::string& out_path) {
    auto lg = load_edge_list_file(graph_path);
    Model model = model_name == "ic" ? Model::IC : Model::SI;
    auto sources =
        pick_distinct_nodes(lg.graph.node_count(), source_count, Rng(seed).split(kSourcePickStream));
    auto obs = make_observation_min_size(lg.graph, sources, model, beta, min_infected, tau_cap,
                                         Rng(seed).split(kTraceStream));
    std::ostringstream os;
    write_observation(os, obs, lg);
    write_text_file(out_path, os.str());
    std::cerr << "observation: " << obs.infected.size() << " infected, tau=" << obs.params.tau.steps
              << ", sources=" << sources.size() << "\n";
    return 0;
}

int cmd_detect(const std::string& graph_path, const std::string& obs_path, const std::string& algo,
               double epsilon, double delta, std::uint64_t seed, std::uint64_t trials_per_eval,
               std::uint64_t eval_trials, std::uint64_t qjd_trials, std::uint64_t max_samples,
               unsigned threads, bool timing, const std::string& out_path) {
    auto lg = load_edge_list_file(graph_path);
    auto obs = read_observation_file(obs_path, lg);
    auto out = run_detector(algo, lg.graph, obs, epsilon, delta, seed, trials_per_eval,
                            eval_trials, max_samples, threads, true);
    json j = report_json(out, lg, obs, algo, seed, qjd_trials, threads, timing);
    std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
    std::cerr << "detected " << out.sources.size() << " source(s)\n";
    return 0;
}

int cmd_benchmark(const std::string& graph_path, const std::string& model_name, double beta,
                  const std::vector<std::uint64_t>& source_counts,
                  const std::vector<std::uint64_t>& size_targets, std::uint64_t cases,
                  const std::vector<std::string>& algos, double epsilon, double delta,
                  std::uint64_t seed, std::uint64_t trials_per_eval, std::uint64_t eval_trials,
                  std::uint64_t qjd_trials, std::uint64_t tau_cap, std::uint64_t max_samples,
                  unsigned threads, bool timing, const std::string& out_path) {
    if (algos.empty()) throw std::invalid_argument("at least one algorithm required");
    if (cases < 1) throw std::invalid_argument("cases must be >= 1");
    auto lg = load_edge_list_file(graph_path);
    const auto& g = lg.graph;
    Model model = model_name == "ic" ? Model::IC : Model::SI;

    std::ostringstream csv;
    csv << "sources,target_size,algo,cases,mean_symmetric_difference,mean_f1,"
           "mean_detection_rate,mean_qjd,mean_runtime_ms\n";

    std::uint64_t cell = 0;
    for (std::uint64_t s : source_counts) {
        for (std::uint64_t z : size_targets) {
            struct Accum {
                double sd = 0, f1 = 0, det = 0, qjd = 0, ms = 0;
            };
            std::vector<Accum> acc(algos.size());
            for (std::uint64_t c = 0; c < cases; ++c) {
                Rng case_rng = Rng(seed).split(cell).split(c);
                auto truth = pick_distinct_nodes(g.node_count(), s, case_rng.split(0));
                auto obs = make_observation_min_size(g, truth, model, beta, z, tau_cap,
                                                     case_rng.split(1));
                std::uint64_t case_seed = case_rng.split(2).root();
                for (std::size_t a = 0; a < algos.size(); ++a) {
                    auto out = run_detector(algos[a], g, obs, epsilon, delta, case_seed,
                                            trials_per_eval, eval_trials, max_samples, threads,
                                            false);
                    // Forward-oracle symmetric difference with common random
                    // numbers across algorithms of the same case.
                    auto sd = estimate_sd_forward(g, out.sources, obs, eval_trials,
                                                  case_rng.split(3), threads);
                    acc[a].sd += sd.mean;
                    acc[a].f1 += f1_score(out.sources, truth);
                    acc[a].det += detection_rate(out.sources, truth);
                    acc[a].qjd += jaccard_quality(g, out.sources, truth, obs, qjd_trials,
                                                  case_rng.split(4), threads);
                    acc[a].ms += out.runtime_ms;
                    std::cerr << "cell(s=" << s << ",size=" << z << ") case " << c << " "
                              << algos[a] << ": |S|=" << out.sources.size()
                              << " sd=" << sd.mean << "\n";
                }
            }
            for (std::size_t a = 0; a < algos.size(); ++a) {
                auto mean = [&](double v) { return format_double(v / static_cast<double>(cases)); };
                csv << s << "," << z << "," << algos[a] << "," << cases << "," << mean(acc[a].sd)
                    << "," << mean(acc[a].f1) << "," << mean(acc[a].det) << "," << mean(acc[a].qjd)
                    << "," << (timing ? mean(acc[a].ms) : "0") << "\n";
            }
            ++cell;
        }
    }
    if (out_path.empty())
        std::cout << csv.str();
    else
        write_text_file(out_path, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Infection-source identification: simulators, detectors, benchmarks"};
    app.require_subcommand(1);

    // ---- gen
    auto* gen = app.add_subcommand("gen", "Generate a graph file");
    gen->require_subcommand(1);
    NodeId rows = 0, cols = 0, nodes = 0;
    std::uint64_t edges = 0, gen_seed = 0;
    std::string gen_out;
    auto* grid = gen->add_subcommand("grid", "4-neighbor lattice");
    grid->add_option("--rows", rows, "grid rows")->required();
    grid->add_option("--cols", cols, "grid columns")->required();
    grid->add_option("-o,--output", gen_out, "output edge list")->required();
    auto* rnd = gen->add_subcommand("random", "uniform random directed graph");
    rnd->add_option("--nodes", nodes, "node count")->required();
    rnd->add_option("--edges", edges, "edge count")->required();
    rnd->add_option("--seed", gen_seed, "rng seed")->default_val(0);
    rnd->add_option("-o,--output", gen_out, "output edge list")->required();

    // ---- simulate
    auto* sim = app.add_subcommand("simulate", "Generate a ground-truth observation");
    std::string sim_graph, sim_model = "si", sim_out;
    double sim_beta = 0.05;
    std::uint64_t sim_sources = 1, sim_min_infected = 1, sim_tau_cap = 1'000'000, sim_seed = 0;
    sim->add_option("--graph", sim_graph, "edge list file")->required();
    sim->add_option("--model", sim_model, "si or ic")->check(CLI::IsMember({"si", "ic"}));
    sim->add_option("--beta", sim_beta, "infection probability");
    sim->add_option("--sources", sim_sources, "number of uniform random sources");
    sim->add_option("--min-infected", sim_min_infected, "scan tau until this infection size");
    sim->add_option("--tau-cap", sim_tau_cap, "upper bound for the tau scan");
    sim->add_option("--seed", sim_seed, "rng seed");
    sim->add_option("-o,--output", sim_out, "output observation file")->required();

    // ---- detect
    auto* det = app.add_subcommand("detect", "Identify infection sources");
    std::string det_graph, det_obs, det_algo = "sisi-relax", det_out;
    double det_eps = 0.1, det_delta = 0.01;
    std::uint64_t det_seed = 0, det_tpe = 200, det_eval = 1000, det_qjd = 10'000;
    std::uint64_t det_max_samples = 50'000'000;
    unsigned det_threads = 1;
    bool det_timing = false;
    det->add_option("--graph", det_graph, "edge list file")->required();
    det->add_option("--obs", det_obs, "observation file")->required();
    det->add_option("--algo", det_algo, "sisi | sisi-relax | greedy | max-degree")
        ->check(CLI::IsMember({"sisi", "sisi-relax", "greedy", "max-degree"}));
    det->add_option("--epsilon", det_eps, "approximation error");
    det->add_option("--delta", det_delta, "failure probability");
    det->add_option("--seed", det_seed, "rng seed");
    det->add_option("--trials-per-eval", det_tpe, "forward trials per greedy evaluation");
    det->add_option("--eval-trials", det_eval, "forward trials for baseline sd estimates");
    det->add_option("--qjd-trials", det_qjd, "forward trials per Jaccard estimate");
    det->add_option("--max-samples", det_max_samples, "cap on stored RR-set memberships");
    det->add_option("--threads", det_threads, "worker threads");
    det->add_flag("--timing", det_timing, "emit measured runtime_ms instead of 0");
    det->add_option("-o,--output", det_out, "report JSON (stdout if omitted)");

    // ---- benchmark
    auto* bench = app.add_subcommand("benchmark", "Run the evaluation protocol, emit CSV");
    std::string b_graph, b_model = "si", b_out;
    double b_beta = 0.05, b_eps = 0.1, b_delta = 0.01;
    std::vector<std::uint64_t> b_sources{1, 5, 10, 20}, b_sizes{100, 500, 1000};
    std::vector<std::string> b_algos{"sisi-relax", "greedy", "max-degree"};
    std::uint64_t b_cases = 10, b_seed = 0, b_tpe = 200, b_eval = 1000, b_qjd = 2000,
                  b_tau_cap = 1'000'000, b_max_samples = 50'000'000;
    unsigned b_threads = 1;
    bool b_timing = false;
    bench->add_option("--graph", b_graph, "edge list file")->required();
    bench->add_option("--model", b_model, "si or ic")->check(CLI::IsMember({"si", "ic"}));
    bench->add_option("--beta", b_beta, "infection probability");
    bench->add_option("--sources", b_sources, "source counts per cell")->delimiter(',');
    bench->add_option("--sizes", b_sizes, "infection size targets per cell")->delimiter(',');
    bench->add_option("--cases", b_cases, "random test cases per cell");
    bench->add_option("--algos", b_algos, "algorithms to run")
        ->delimiter(',')
        ->check(CLI::IsMember({"sisi", "sisi-relax", "greedy", "max-degree"}));
    bench->add_option("--epsilon", b_eps, "approximation error");
    bench->add_option("--delta", b_delta, "failure probability");
    bench->add_option("--seed", b_seed, "rng seed");
    bench->add_option("--trials-per-eval", b_tpe, "forward trials per greedy evaluation");
    bench->add_option("--eval-trials", b_eval, "forward trials for sd evaluation");
    bench->add_option("--qjd-trials", b_qjd, "forward trials per Jaccard estimate");
    bench->add_option("--tau-cap", b_tau_cap, "upper bound for the tau scan");
    bench->add_option("--max-samples", b_max_samples, "cap on stored RR-set memberships");
    bench->add_option("--threads", b_threads, "worker threads");
    bench->add_flag("--timing", b_timing, "emit measured runtimes instead of 0");
    bench->add_option("-o,--output", b_out, "results CSV (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (grid->parsed()) return cmd_gen_grid(rows, cols, gen_out);
        if (rnd->parsed()) return cmd_gen_random(nodes, edges, gen_seed, gen_out);
        if (sim->parsed())
            return cmd_simulate(sim_graph, sim_model, sim_beta, sim_sources, sim_min_infected,
                                sim_tau_cap, sim_seed, sim_out);
        if (det->parsed())
            return cmd_detect(det_graph, det_obs, det_algo, det_eps, det_delta, det_seed, det_tpe,
                              det_eval, det_qjd, det_max_samples, det_threads, det_timing,
                              det_out);
        if (bench->parsed())
            return cmd_benchmark(b_graph, b_model, b_beta, b_sources, b_sizes, b_cases, b_algos,
                                 b_eps, b_delta, b_seed, b_tpe, b_eval, b_qjd, b_tau_cap,
                                 b_max_samples, b_threads, b_timing, b_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
