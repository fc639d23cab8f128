#pragma once

#include <iosfwd>
#include <string>

#include "sisi/cascade.hpp"
#include "sisi/graph.hpp"

namespace sisi {

/// Shortest round-trip decimal rendering of a double (stable across runs).
std::string format_double(double v);

/// Observation file format: a header line `model beta tau` (tau is an
/// integer or `inf`), one line of space-separated infected node ids, and an
/// optional line `sources: id id ...`. Files speak external ids; the loaded
/// graph's remapping translates them.
void write_observation(std::ostream& out, const Observation& obs, const LoadedGraph& lg);
Observation read_observation(std::istream& in, const LoadedGraph& lg);

void write_observation_file(const std::string& path, const Observation& obs,
                            const LoadedGraph& lg);
Observation read_observation_file(const std::string& path, const LoadedGraph& lg);

}  // namespace sisi
