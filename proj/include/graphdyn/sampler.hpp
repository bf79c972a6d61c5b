#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graphdyn/graphon.hpp"

namespace graphdyn {

/// Uniform grid x_i = (i+1)/n with cells I_i = (i/n, (i+1)/n], 0-based index.
struct Grid {
  int n = 0;
  double point(int k) const { return static_cast<double>(k + 1) / n; }
  double cell_lo(int k) const { return static_cast<double>(k) / n; }
  double cell_hi(int k) const { return static_cast<double>(k + 1) / n; }
};

Grid build_grid(int n);  // throws if n < 2

enum class GraphVariant { pointwise, cell_averaged };

const char* to_string(GraphVariant v);
GraphVariant variant_from_string(const std::string& s);

/// One realization of the W-random graph G(W, rho_n, X_n).
///
/// Adjacency is stored as CSR with per-row ascending neighbor lists;
/// self-loops are permitted and appear once. Node data:
///   node_weights     G_i = n^-1 sum_j Wbar_n(x_i, x_j)
///   expected_degrees d_i = rho * n * G_i   (exactly that product)
/// Graphs loaded from disk carry no node data until a kernel is attached.
struct SampledGraph {
  int n = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  GraphVariant variant = GraphVariant::pointwise;
  std::vector<std::size_t> offsets;      // size n+1
  std::vector<std::uint32_t> neighbors;  // 0-based, ascending within a row
  std::vector<double> expected_degrees;
  std::vector<double> node_weights;

  std::span<const std::uint32_t> row(int i) const {
    return {neighbors.data() + offsets[i], neighbors.data() + offsets[i + 1]};
  }
  std::size_t loop_count() const;
  std::size_t edge_count() const;  // unordered pairs, loops included
  bool has_node_data() const { return !expected_degrees.empty(); }
};

/// Probability that pair {i, j} (0-based) forms an edge.
///   pointwise:     min(1, rho * W(x_i, x_j))
///   cell_averaged: clamp(rho * n^2 * integral of W over I_i x I_j, 0, 1)
double edge_probability(const GraphonSpec& spec, double rho, int n, int i,
                        int j, GraphVariant variant);
double edge_probability(const GraphonSpec& spec, const DensitySchedule& schedule,
                        int n, int i, int j, GraphVariant variant);

/// G_i = n^-1 sum_j Wbar_n(x_i, x_j) over the grid.
std::vector<double> node_weights(const GraphonSpec& spec, double rho, int n);

/// d_i = rho * n * G_i; throws if any entry vanishes.
std::vector<double> expected_degrees(const GraphonSpec& spec, double rho, int n);
std::vector<double> expected_degrees(const GraphonSpec& spec,
                                     const DensitySchedule& schedule, int n);

/// Draws every unordered pair {i, j}, i <= j (loops included) independently
/// with its edge probability. The per-pair RNG stream is derived from
/// (seed, i, j), so identical inputs give a bit-identical graph.
SampledGraph sample_graph(const GraphonSpec& spec, double rho, int n,
                          std::uint64_t seed,
                          GraphVariant variant = GraphVariant::pointwise);
SampledGraph sample_graph(const GraphonSpec& spec, const DensitySchedule& schedule,
                          int n, std::uint64_t seed,
                          GraphVariant variant = GraphVariant::pointwise);

/// Recomputes node weights and expected degrees for a loaded graph.
void attach_node_data(SampledGraph& graph, const GraphonSpec& spec);

struct DegreeStatistics {
  std::vector<std::uint32_t> degree;  // realized degree, loops count once
  double mean_degree = 0.0;
  std::size_t edges = 0;
  std::size_t loops = 0;
  double edge_density = 0.0;  // edges / (n(n+1)/2)
};

DegreeStatistics degree_statistics(const SampledGraph& graph);

}  // namespace graphdyn
