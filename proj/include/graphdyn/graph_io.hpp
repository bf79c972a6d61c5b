#pragma once

#include <string>

#include "graphdyn/sampler.hpp"

namespace graphdyn {

/// Text graph format, bit-exact round trip:
///   graphdyn-graph v1
///   n=<int> rho=<17 significant digits> seed=<uint64> variant=<name>
///   i j          (one line per edge, 1 <= i <= j <= n, lexicographic)
std::string graph_to_string(const SampledGraph& graph);
void save_graph(const SampledGraph& graph, const std::string& path);

/// Parses and validates (header, bounds, canonical edge order); the result
/// carries no node data until a kernel is attached.
SampledGraph load_graph(const std::string& path);
SampledGraph load_graph(const std::string& path, const GraphonSpec& spec);
SampledGraph graph_from_string(const std::string& text,
                               const std::string& origin = "<string>");

}  // namespace graphdyn
