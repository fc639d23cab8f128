#include "sisi/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sisi {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

namespace {

std::string model_name(Model m) { return m == Model::SI ? "si" : "ic"; }

Model parse_model(const std::string& s) {
    if (s == "si") return Model::SI;
    if (s == "ic") return Model::IC;
    throw std::runtime_error("unknown model '" + s + "'");
}

}  // namespace

void write_observation(std::ostream& out, const Observation& obs, const LoadedGraph& lg) {
    out << model_name(obs.params.model) << " " << format_double(obs.params.beta) << " ";
    if (obs.params.tau.is_infinite)
        out << "inf";
    else
        out << obs.params.tau.steps;
    out << "\n";
    bool first = true;
    for (NodeId v : obs.infected) {
        if (!first) out << " ";
        out << lg.external_ids[v];
        first = false;
    }
    out << "\n";
    if (obs.true_sources) {
        out << "sources:";
        for (NodeId s : *obs.true_sources) out << " " << lg.external_ids[s];
        out << "\n";
    }
}

Observation read_observation(std::istream& in, const LoadedGraph& lg) {
    Observation obs;
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("observation file: missing header");
    {
        std::istringstream hs(header);
        std::string model, tau;
        double beta;
        if (!(hs >> model >> beta >> tau))
            throw std::runtime_error("observation file: bad header '" + header + "'");
        obs.params.model = parse_model(model);
        obs.params.beta = beta;
        if (tau == "inf") {
            obs.params.tau = Tau::infinite();
        } else {
            std::uint64_t steps = 0;
            auto [p, ec] = std::from_chars(tau.data(), tau.data() + tau.size(), steps);
            if (ec != std::errc{} || p != tau.data() + tau.size())
                throw std::runtime_error("observation file: bad tau '" + tau + "'");
            obs.params.tau = Tau::finite(steps);
        }
    }
    validate_params(obs.params);

    std::string infected_line;
    if (!std::getline(in, infected_line))
        throw std::runtime_error("observation file: missing infected set line");
    {
        std::istringstream is(infected_line);
        std::uint64_t ext;
        while (is >> ext) obs.infected.push_back(lg.to_dense(ext));
        std::sort(obs.infected.begin(), obs.infected.end());
        obs.infected.erase(std::unique(obs.infected.begin(), obs.infected.end()),
                           obs.infected.end());
    }

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("sources:", 0) != 0)
            throw std::runtime_error("observation file: unexpected line '" + line + "'");
        std::istringstream ss(line.substr(8));
        std::vector<NodeId> sources;
        std::uint64_t ext;
        while (ss >> ext) sources.push_back(lg.to_dense(ext));
        std::sort(sources.begin(), sources.end());
        obs.true_sources = std::move(sources);
    }
    validate_observation(obs, lg.graph);
    return obs;
}

void write_observation_file(const std::string& path, const Observation& obs,
                            const LoadedGraph& lg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write observation file: " + path);
    write_observation(out, obs, lg);
}

Observation read_observation_file(const std::string& path, const LoadedGraph& lg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open observation file: " + path);
    return read_observation(in, lg);
}

}  // namespace sisi
