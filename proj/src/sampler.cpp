#include "graphdyn/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "graphdyn/rng.hpp"

namespace graphdyn {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double pair_probability(const GridKernel& kernel, double rho, int i, int j,
                        GraphVariant variant) {
  if (variant == GraphVariant::pointwise)
    return std::min(1.0, rho * kernel.w(i, j));
  const double p = rho * kernel.galerkin_w(i, j);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

Grid build_grid(int n) {
  require(n >= 2, "grid: n must be >= 2");
  return Grid{n};
}

const char* to_string(GraphVariant v) {
  return v == GraphVariant::pointwise ? "pointwise" : "cell_averaged";
}

GraphVariant variant_from_string(const std::string& s) {
  if (s == "pointwise") return GraphVariant::pointwise;
  if (s == "cell_averaged") return GraphVariant::cell_averaged;
  throw std::invalid_argument("unknown graph variant: " + s);
}

std::size_t SampledGraph::loop_count() const {
  std::size_t loops = 0;
  for (int i = 0; i < n; ++i) {
    const auto r = row(i);
    if (std::binary_search(r.begin(), r.end(), static_cast<std::uint32_t>(i)))
      ++loops;
  }
  return loops;
}

std::size_t SampledGraph::edge_count() const {
  return (neighbors.size() + loop_count()) / 2;
}

double edge_probability(const GraphonSpec& spec, double rho, int n, int i,
                        int j, GraphVariant variant) {
  require(n >= 2, "edge_probability: n must be >= 2");
  require(rho > 0.0 && rho <= 1.0, "edge_probability: rho must lie in (0,1]");
  require(i >= 0 && i < n && j >= 0 && j < n, "edge_probability: node out of range");
  const GridKernel kernel(spec, n);
  return pair_probability(kernel, rho, i, j, variant);
}

double edge_probability(const GraphonSpec& spec, const DensitySchedule& schedule,
                        int n, int i, int j, GraphVariant variant) {
  return edge_probability(spec, schedule.rho(n), n, i, j, variant);
}

std::vector<double> node_weights(const GraphonSpec& spec, double rho, int n) {
  require(n >= 2, "node_weights: n must be >= 2");
  require(rho > 0.0 && rho <= 1.0, "node_weights: rho must lie in (0,1]");
  const GridKernel kernel(spec, n);
  const double rho_inv = 1.0 / rho;
  std::vector<double> weights(n);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += kernel.truncated(rho_inv, i, j);
    weights[i] = sum / n;
  }
  return weights;
}

std::vector<double> expected_degrees(const GraphonSpec& spec, double rho, int n) {
  const auto weights = node_weights(spec, rho, n);
  std::vector<double> degrees(n);
  for (int i = 0; i < n; ++i) {
    degrees[i] = rho * n * weights[i];
    if (degrees[i] == 0.0)
      throw std::runtime_error("expected_degrees: node with zero expected degree");
  }
  return degrees;
}

std::vector<double> expected_degrees(const GraphonSpec& spec,
                                     const DensitySchedule& schedule, int n) {
  return expected_degrees(spec, schedule.rho(n), n);
}

SampledGraph sample_graph(const GraphonSpec& spec, double rho, int n,
                          std::uint64_t seed, GraphVariant variant) {
  require(n >= 2, "sample_graph: n must be >= 2");
  require(rho > 0.0 && rho <= 1.0, "sample_graph: rho must lie in (0,1]");

  const GridKernel kernel(spec, n);
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double p = pair_probability(kernel, rho, i, j, variant);
      if (uniform01(pair_stream(seed, static_cast<std::uint64_t>(i),
                                static_cast<std::uint64_t>(j))) < p) {
        adj[i].push_back(static_cast<std::uint32_t>(j));
        if (j != i) adj[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }

  SampledGraph graph;
  graph.n = n;
  graph.rho = rho;
  graph.seed = seed;
  graph.variant = variant;
  graph.offsets.resize(n + 1, 0);
  for (int i = 0; i < n; ++i) graph.offsets[i + 1] = graph.offsets[i] + adj[i].size();
  graph.neighbors.reserve(graph.offsets[n]);
  for (int i = 0; i < n; ++i)
    graph.neighbors.insert(graph.neighbors.end(), adj[i].begin(), adj[i].end());

  graph.node_weights = node_weights(spec, rho, n);
  graph.expected_degrees.resize(n);
  for (int i = 0; i < n; ++i)
    graph.expected_degrees[i] = rho * n * graph.node_weights[i];
  return graph;
}

SampledGraph sample_graph(const GraphonSpec& spec, const DensitySchedule& schedule,
                          int n, std::uint64_t seed, GraphVariant variant) {
  return sample_graph(spec, schedule.rho(n), n, seed, variant);
}

void attach_node_data(SampledGraph& graph, const GraphonSpec& spec) {
  graph.node_weights = node_weights(spec, graph.rho, graph.n);
  graph.expected_degrees.resize(graph.n);
  for (int i = 0; i < graph.n; ++i)
    graph.expected_degrees[i] = graph.rho * graph.n * graph.node_weights[i];
}

DegreeStatistics degree_statistics(const SampledGraph& graph) {
  DegreeStatistics stats;
  stats.degree.resize(graph.n);
  for (int i = 0; i < graph.n; ++i)
    stats.degree[i] = static_cast<std::uint32_t>(graph.offsets[i + 1] - graph.offsets[i]);
  stats.loops = graph.loop_count();
  stats.edges = (graph.neighbors.size() + stats.loops) / 2;
  double sum = 0.0;
  for (auto d : stats.degree) sum += d;
  stats.mean_degree = graph.n > 0 ? sum / graph.n : 0.0;
  const double pairs = 0.5 * graph.n * (graph.n + 1);
  stats.edge_density = pairs > 0 ? static_cast<double>(stats.edges) / pairs : 0.0;
  return stats;
}

}  // namespace graphdyn
