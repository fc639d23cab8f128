#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "sisi/baselines.hpp"
#include "sisi/cascade.hpp"
#include "sisi/covering.hpp"
#include "sisi/estimator.hpp"
#include "sisi/graph.hpp"
#include "sisi/io.hpp"
#include "sisi/metrics.hpp"
#include "sisi/rng.hpp"
#include "sisi/rrset.hpp"
#include "sisi/sisi.hpp"

namespace py = pybind11;
using namespace sisi;

PYBIND11_MODULE(_sisi, m) {
    m.doc() = "Infection-source identification: cascade simulators, reverse "
              "infection sampling, covering solver, detectors and metrics.";

    py::class_<DirectedGraph>(m, "DirectedGraph")
        .def_static(
            "from_edges",
            [](NodeId n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
                return DirectedGraph::from_edges(n, edges);
            },
            py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &DirectedGraph::node_count)
        .def_property_readonly("m", &DirectedGraph::edge_count)
        .def("out_neighbors",
             [](const DirectedGraph& g, NodeId u) {
                 auto s = g.out_neighbors(u);
                 return std::vector<NodeId>(s.begin(), s.end());
             })
        .def("in_neighbors",
             [](const DirectedGraph& g, NodeId u) {
                 auto s = g.in_neighbors(u);
                 return std::vector<NodeId>(s.begin(), s.end());
             })
        .def("edges", &DirectedGraph::edges);

    m.def("gen_grid", &gen_grid, py::arg("rows"), py::arg("cols"));
    m.def(
        "gen_random_graph",
        [](NodeId n, std::uint64_t edges, std::uint64_t seed) {
            return gen_random_graph(n, edges, Rng(seed));
        },
        py::arg("n"), py::arg("m"), py::arg("seed") = 0);
    m.def("load_edge_list", [](const std::string& path) {
        auto lg = load_edge_list_file(path);
        return py::make_tuple(lg.graph, lg.external_ids);
    });

    py::enum_<Model>(m, "Model").value("SI", Model::SI).value("IC", Model::IC);

    py::class_<Tau>(m, "Tau")
        .def_static("finite", &Tau::finite, py::arg("steps"))
        .def_static("infinite", &Tau::infinite)
        .def_readonly("steps", &Tau::steps)
        .def_readonly("is_infinite", &Tau::is_infinite);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](Model model, double beta, Tau tau) {
                 ModelParams p{model, beta, tau};
                 validate_params(p);
                 return p;
             }),
             py::arg("model"), py::arg("beta"), py::arg("tau"))
        .def_readonly("model", &ModelParams::model)
        .def_readonly("beta", &ModelParams::beta)
        .def_readonly("tau", &ModelParams::tau);

    py::class_<Observation>(m, "Observation")
        .def(py::init([](std::vector<NodeId> infected, ModelParams params,
                         std::optional<std::vector<NodeId>> true_sources) {
                 Observation o;
                 std::sort(infected.begin(), infected.end());
                 o.infected = std::move(infected);
                 o.params = params;
                 if (true_sources) {
                     std::sort(true_sources->begin(), true_sources->end());
                     o.true_sources = std::move(true_sources);
                 }
                 return o;
             }),
             py::arg("infected"), py::arg("params"), py::arg("true_sources") = std::nullopt)
        .def_readonly("infected", &Observation::infected)
        .def_readonly("params", &Observation::params)
        .def_readonly("true_sources", &Observation::true_sources);

    m.def(
        "simulate_si",
        [](const DirectedGraph& g, const std::vector<NodeId>& sources, const ModelParams& p,
           std::uint64_t seed) { return simulate_si(g, sources, p, Rng(seed)); },
        py::arg("graph"), py::arg("sources"), py::arg("params"), py::arg("seed") = 0);
    m.def(
        "simulate_ic",
        [](const DirectedGraph& g, const std::vector<NodeId>& sources, const ModelParams& p,
           std::uint64_t seed) { return simulate_ic(g, sources, p, Rng(seed)); },
        py::arg("graph"), py::arg("sources"), py::arg("params"), py::arg("seed") = 0);
    m.def(
        "symmetric_difference",
        [](std::vector<NodeId> cascade, std::vector<NodeId> infected) {
            std::sort(cascade.begin(), cascade.end());
            std::sort(infected.begin(), infected.end());
            return symmetric_difference(cascade, infected);
        },
        py::arg("cascade"), py::arg("infected"));
    m.def(
        "estimate_sd_forward",
        [](const DirectedGraph& g, const std::vector<NodeId>& sources, const Observation& obs,
           std::uint64_t trials, std::uint64_t seed, unsigned threads) {
            auto r = estimate_sd_forward(g, sources, obs, trials, Rng(seed), threads);
            return py::make_tuple(r.mean, r.stderr_);
        },
        py::arg("graph"), py::arg("sources"), py::arg("obs"), py::arg("trials"),
        py::arg("seed") = 0, py::arg("threads") = 1);
    m.def(
        "make_observation",
        [](const DirectedGraph& g, const std::vector<NodeId>& sources, const ModelParams& p,
           std::uint64_t seed) { return make_observation(g, sources, p, Rng(seed)); },
        py::arg("graph"), py::arg("true_sources"), py::arg("params"), py::arg("seed") = 0);
    m.def(
        "make_observation_min_size",
        [](const DirectedGraph& g, const std::vector<NodeId>& sources, Model model, double beta,
           std::uint64_t min_infected, std::uint64_t tau_cap, std::uint64_t seed) {
            return make_observation_min_size(g, sources, model, beta, min_infected, tau_cap,
                                             Rng(seed));
        },
        py::arg("graph"), py::arg("true_sources"), py::arg("model"), py::arg("beta"),
        py::arg("min_infected"), py::arg("tau_cap") = 1'000'000, py::arg("seed") = 0);

    py::class_<RRSet>(m, "RRSet")
        .def_readonly("src", &RRSet::src)
        .def_readonly("blue", &RRSet::blue)
        .def_readonly("members", &RRSet::members);

    py::class_<RRCollection>(m, "RRCollection")
        .def(py::init([](NodeId n, const std::vector<NodeId>& infected) {
                 return RRCollection(n, infected);
             }),
             py::arg("n"), py::arg("infected"))
        .def("add", &RRCollection::add)
        .def_property_readonly("total", &RRCollection::total)
        .def_property_readonly("delta", &RRCollection::delta)
        .def_property_readonly("blue_count", &RRCollection::blue_count)
        .def_property_readonly("red_count", &RRCollection::red_count)
        .def_property_readonly("empty_red_count", &RRCollection::empty_red_count)
        .def_property_readonly("total_memberships", &RRCollection::total_memberships)
        .def("dump", [](const RRCollection& c) {
            std::ostringstream os;
            c.dump(os);
            return os.str();
        });

    m.def(
        "sample_rr_naive",
        [](const DirectedGraph& g, const Observation& obs, std::uint64_t seed) {
            return sample_rr_naive(g, obs, Rng(seed));
        },
        py::arg("graph"), py::arg("obs"), py::arg("seed") = 0);
    m.def(
        "sample_rr_fast",
        [](const DirectedGraph& g, const Observation& obs, std::uint64_t seed) {
            return sample_rr_fast(g, obs, Rng(seed));
        },
        py::arg("graph"), py::arg("obs"), py::arg("seed") = 0);
    m.def(
        "sample_rr_ic",
        [](const DirectedGraph& g, const Observation& obs, std::uint64_t seed) {
            return sample_rr_ic(g, obs, Rng(seed));
        },
        py::arg("graph"), py::arg("obs"), py::arg("seed") = 0);
    m.def(
        "batch_sample",
        [](const DirectedGraph& g, const Observation& obs, std::uint64_t count, std::uint64_t seed,
           RRCollection& collection, unsigned threads) {
            batch_sample(g, obs, count, Rng(seed), collection, threads);
        },
        py::arg("graph"), py::arg("obs"), py::arg("count"), py::arg("seed"),
        py::arg("collection"), py::arg("threads") = 1);

    py::class_<CoverageCounts>(m, "CoverageCounts")
        .def_readonly("uncovered_blue", &CoverageCounts::uncovered_blue)
        .def_readonly("covered_red", &CoverageCounts::covered_red)
        .def_readonly("total", &CoverageCounts::total);

    m.def(
        "coverage",
        [](const RRCollection& c, const std::vector<NodeId>& S) { return coverage(c, S); },
        py::arg("collection"), py::arg("S"));
    m.def(
        "estimate_sd",
        [](const RRCollection& c, const std::vector<NodeId>& S, NodeId n) {
            return estimate_sd(c, S, n);
        },
        py::arg("collection"), py::arg("S"), py::arg("n"));

    py::class_<CoveringSolution>(m, "CoveringSolution")
        .def_readonly("sources", &CoveringSolution::sources)
        .def_readonly("fallback_used", &CoveringSolution::fallback_used)
        .def_readonly("clamp_events", &CoveringSolution::clamp_events);

    m.def("solve_delta_approx", &solve_delta_approx, py::arg("collection"));
    m.def(
        "post_optimize",
        [](const std::vector<NodeId>& sources, const RRCollection& c, NodeId n) {
            return post_optimize(sources, c, n);
        },
        py::arg("sources"), py::arg("collection"), py::arg("n"));

    py::enum_<SisiMode>(m, "SisiMode")
        .value("Strict", SisiMode::Strict)
        .value("Relax", SisiMode::Relax);

    m.def("compute_lambda", &compute_lambda, py::arg("epsilon"), py::arg("delta"), py::arg("k"),
          py::arg("mode"));

    py::class_<SisiConfig>(m, "SisiConfig")
        .def(py::init<>())
        .def_readwrite("epsilon", &SisiConfig::epsilon)
        .def_readwrite("delta", &SisiConfig::delta)
        .def_readwrite("mode", &SisiConfig::mode)
        .def_readwrite("seed", &SisiConfig::seed)
        .def_readwrite("max_samples", &SisiConfig::max_samples)
        .def_readwrite("threads", &SisiConfig::threads);

    py::class_<SolutionReport>(m, "SolutionReport")
        .def_readonly("sources", &SolutionReport::sources)
        .def_readonly("estimated_sd", &SolutionReport::estimated_sd)
        .def_readonly("samples_used", &SolutionReport::samples_used)
        .def_readonly("delta_observed", &SolutionReport::delta_observed)
        .def_readonly("epsilon_effective", &SolutionReport::epsilon_effective)
        .def_readonly("rounds", &SolutionReport::rounds)
        .def_readonly("fallback_used", &SolutionReport::fallback_used)
        .def_readonly("budget_exhausted", &SolutionReport::budget_exhausted);

    m.def(
        "run_sisi",
        [](const DirectedGraph& g, const Observation& obs, const SisiConfig& cfg) {
            return run_sisi(g, obs, cfg);
        },
        py::arg("graph"), py::arg("obs"), py::arg("config"));

    m.def(
        "greedy_detect",
        [](const DirectedGraph& g, const Observation& obs, std::uint64_t trials_per_eval,
           std::uint64_t seed, unsigned threads) {
            return greedy_detect(g, obs, trials_per_eval, Rng(seed), threads);
        },
        py::arg("graph"), py::arg("obs"), py::arg("trials_per_eval") = 200, py::arg("seed") = 0,
        py::arg("threads") = 1);
    m.def(
        "max_degree_detect",
        [](const DirectedGraph& g, const Observation& obs, std::uint64_t trials_per_eval,
           std::uint64_t seed, unsigned threads) {
            return max_degree_detect(g, obs, trials_per_eval, Rng(seed), threads);
        },
        py::arg("graph"), py::arg("obs"), py::arg("trials_per_eval") = 200, py::arg("seed") = 0,
        py::arg("threads") = 1);

    m.def(
        "f1_score",
        [](const std::vector<NodeId>& S, const std::vector<NodeId>& truth) {
            return f1_score(S, truth);
        },
        py::arg("S"), py::arg("truth"));
    m.def(
        "detection_rate",
        [](const std::vector<NodeId>& S, const std::vector<NodeId>& truth) {
            return detection_rate(S, truth);
        },
        py::arg("S"), py::arg("truth"));
    m.def(
        "jaccard_quality",
        [](const DirectedGraph& g, const std::vector<NodeId>& S, const std::vector<NodeId>& truth,
           const Observation& obs, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
            return jaccard_quality(g, S, truth, obs, trials, Rng(seed), threads);
        },
        py::arg("graph"), py::arg("S"), py::arg("truth"), py::arg("obs"),
        py::arg("trials") = 10'000, py::arg("seed") = 0, py::arg("threads") = 1);
}
