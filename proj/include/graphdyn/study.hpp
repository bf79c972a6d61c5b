#pragma once

#include <string>
#include <utility>
#include <vector>

#include "graphdyn/analysis.hpp"
#include "graphdyn/config.hpp"
#include "graphdyn/graph_io.hpp"

namespace graphdyn {

/// Report plus run-wide diagnostics: the largest sup norm seen across every
/// integrated trajectory, and the a priori bound it must stay under.
struct StudyResult {
  ErrorReport report;
  double max_sup_observed = 0.0;
  double sup_bound = 0.0;
};

/// Per-record seed: stable hash of (master seed, n, replicate index).
std::uint64_t record_seed(std::uint64_t master, int n, int replicate);

/// Sampled model vs the restricted fine-Galerkin reference; records the
/// space-time L2 error (primary) and the sup-over-time weighted gap.
StudyResult run_continuum_convergence(const StudyConfig& cfg);

/// Sampled model vs the averaged model from identical initial data; the
/// primary metric is the max-over-time G_n-weighted gap.
StudyResult run_averaging(const StudyConfig& cfg);

/// Averaged (V) vs Galerkin (U) models, deterministic, one record per n.
StudyResult run_galerkin_vs_averaged(const StudyConfig& cfg);

struct DegreeLawProbe {
  int node = 0;  // 1-based
  double predicted = 0;
  double mc_mean = 0;
  double rel_err = 0;
};

struct DegreeLawReport {
  std::string graphon;
  double gamma = 0;
  int n = 0;
  int seeds = 0;
  std::vector<DegreeLawProbe> probes;
  double density_predicted = 0;
  double density_mc = 0;
  double density_rel_err = 0;
};

/// Monte-Carlo realized degrees at the probe nodes against the power-law
/// prediction (1-a) n^{1+a-g} i^-a, and empirical edge density against
/// n^-g * total mass.
DegreeLawReport run_degree_law(const StudyConfig& cfg);
std::string degree_law_to_json(const DegreeLawReport& report);

struct KernelDistanceReport {
  std::string graphon;
  double gamma = 0;
  std::vector<std::pair<int, double>> distances;  // (n, L4 distance)
};

KernelDistanceReport run_kernel_distance(const StudyConfig& cfg);
std::string kernel_distance_to_json(const KernelDistanceReport& report);

/// Writes trajectory.csv for n <= 1024; otherwise observables.csv plus a
/// 16-node down-sampled states16.csv.
void write_trajectory_csv(const Trajectory& traj, const std::string& dir);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace graphdyn
