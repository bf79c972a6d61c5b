#include "graphdyn/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "graphdyn/parallel.hpp"
#include "graphdyn/rng.hpp"

namespace graphdyn {

namespace {

struct RecordOutcome {
  ErrorRecord record;
  double max_sup = 0.0;
};

double trajectory_max_sup(const Trajectory& traj) {
  double worst = 0.0;
  for (const double s : traj.sup_norms) worst = std::max(worst, s);
  return worst;
}

Trajectory restrict_trajectory(const Trajectory& fine, int n) {
  Trajectory coarse;
  coarse.n = n;
  coarse.times = fine.times;
  coarse.fingerprint = fine.fingerprint;
  coarse.states.reserve(fine.states.size());
  for (const auto& state : fine.states)
    coarse.states.push_back(restrict_to_coarse(state, n));
  for (const auto& state : coarse.states) {
    coarse.sup_norms.push_back(sup_norm(state));
    coarse.weighted_norms.push_back(step_l2_norm(state));
  }
  return coarse;
}

double study_lipschitz(const StudyConfig& cfg) {
  return std::max(cfg.reaction.lipschitz(), cfg.coupling.lipschitz);
}

std::vector<ErrorAggregate> aggregate_by_n(
    const std::vector<int>& n_list, const std::vector<ErrorRecord>& records,
    bool use_gap) {
  std::vector<ErrorAggregate> out;
  for (const int n : n_list) {
    std::vector<double> values;
    for (const auto& r : records)
      if (r.n == n && !r.failed)
        values.push_back(use_gap ? r.sup_gn_gap : r.spacetime_l2);
    if (values.empty()) continue;
    out.push_back({n, median(values), interquartile_range(values)});
  }
  return out;
}

}  // namespace

std::uint64_t record_seed(std::uint64_t master, int n, int replicate) {
  return derive_seed(master, static_cast<std::uint64_t>(n),
                     static_cast<std::uint64_t>(replicate));
}

StudyResult run_continuum_convergence(const StudyConfig& config) {
  StudyConfig cfg = config;
  cfg.study = StudyKind::continuum_convergence;
  cfg.validate();
  const int threads = resolve_threads(cfg.threads);
  const KernelChoice kernel =
      cfg.scaling == ScalingKind::expected_degree ? KernelChoice::U : KernelChoice::W;

  const Trajectory reference =
      continuum_reference(cfg.graphon, kernel, cfg.ic, cfg.reaction, cfg.coupling,
                          cfg.M, cfg.T, cfg.dt, cfg.output_stride, threads);

  std::vector<Trajectory> restricted;
  restricted.reserve(cfg.n_list.size());
  for (const int n : cfg.n_list) restricted.push_back(restrict_trajectory(reference, n));

  const int reps = cfg.seeds;
  const int total = static_cast<int>(cfg.n_list.size()) * reps;
  std::vector<RecordOutcome> outcomes(total);
  parallel_tasks(total, threads, [&](int task) {
    const int n_idx = task / reps;
    const int rep = task % reps;
    const int n = cfg.n_list[n_idx];
    RecordOutcome& out = outcomes[task];
    out.record.n = n;
    out.record.seed = record_seed(cfg.master_seed, n, rep);
    try {
      const SampledGraph graph =
          sample_graph(cfg.graphon, cfg.schedule(), n, out.record.seed, cfg.variant);
      ModelConfig model;
      model.model = Model::sampled(graph, cfg.scaling);
      model.coupling = cfg.coupling;
      model.reaction = cfg.reaction;
      model.T = cfg.T;
      model.dt = cfg.dt;
      model.output_stride = cfg.output_stride;
      model.weights = graph.node_weights;
      const Trajectory traj =
          integrate(model, cell_average_ic(cfg.ic, build_grid(n)));
      out.record.spacetime_l2 = spacetime_l2_error(traj, restricted[n_idx]);
      out.record.sup_gn_gap =
          sup_gn_gap(traj, restricted[n_idx], graph.node_weights);
      out.max_sup = trajectory_max_sup(traj);
    } catch (const std::exception& e) {
      out.record.failed = true;
      out.record.error = e.what();
    }
  });

  StudyResult result;
  result.report.study = to_string(StudyKind::continuum_convergence);
  result.report.graphon = cfg.graphon.describe();
  result.report.gamma = cfg.gamma;
  result.report.T = cfg.T;
  result.report.M = cfg.M;
  result.max_sup_observed = trajectory_max_sup(reference);
  for (const auto& out : outcomes) {
    result.report.records.push_back(out.record);
    result.max_sup_observed = std::max(result.max_sup_observed, out.max_sup);
  }
  result.report.aggregates =
      aggregate_by_n(cfg.n_list, result.report.records, /*use_gap=*/false);
  result.sup_bound =
      a_priori_bound(study_lipschitz(cfg), cfg.T, cfg.ic.sup_norm()) + 1e-6;
  return result;
}

StudyResult run_averaging(const StudyConfig& config) {
  StudyConfig cfg = config;
  cfg.study = StudyKind::averaging;
  cfg.validate();
  const int threads = resolve_threads(cfg.threads);

  // Deterministic per-n data shared read-only by all records.
  const int n_count = static_cast<int>(cfg.n_list.size());
  std::vector<CouplingMatrix> averaged(n_count);
  std::vector<Trajectory> averaged_traj(n_count);
  std::vector<std::vector<double>> weights(n_count);
  for (int k = 0; k < n_count; ++k) {
    const int n = cfg.n_list[k];
    const double rho = cfg.schedule().rho(n);
    averaged[k] = averaged_matrix(cfg.graphon, rho, n);
    weights[k] = node_weights(cfg.graphon, rho, n);
    ModelConfig model;
    model.model = Model::averaged(averaged[k]);
    model.coupling = cfg.coupling;
    model.reaction = cfg.reaction;
    model.T = cfg.T;
    model.dt = cfg.dt;
    model.output_stride = cfg.output_stride;
    model.weights = weights[k];
    model.threads = threads;
    averaged_traj[k] = integrate(model, cell_average_ic(cfg.ic, build_grid(n)));
  }

  const int reps = cfg.seeds;
  const int total = n_count * reps;
  std::vector<RecordOutcome> outcomes(total);
  parallel_tasks(total, threads, [&](int task) {
    const int n_idx = task / reps;
    const int rep = task % reps;
    const int n = cfg.n_list[n_idx];
    RecordOutcome& out = outcomes[task];
    out.record.n = n;
    out.record.seed = record_seed(cfg.master_seed, n, rep);
    try {
      const SampledGraph graph =
          sample_graph(cfg.graphon, cfg.schedule(), n, out.record.seed, cfg.variant);
      ModelConfig model;
      model.model = Model::sampled(graph, cfg.scaling);
      model.coupling = cfg.coupling;
      model.reaction = cfg.reaction;
      model.T = cfg.T;
      model.dt = cfg.dt;
      model.output_stride = cfg.output_stride;
      model.weights = weights[n_idx];
      const Trajectory traj =
          integrate(model, cell_average_ic(cfg.ic, build_grid(n)));
      out.record.sup_gn_gap = sup_gn_gap(traj, averaged_traj[n_idx], weights[n_idx]);
      out.record.spacetime_l2 = spacetime_l2_error(traj, averaged_traj[n_idx]);
      out.max_sup = trajectory_max_sup(traj);
    } catch (const std::exception& e) {
      out.record.failed = true;
      out.record.error = e.what();
    }
  });

  StudyResult result;
  result.report.study = to_string(StudyKind::averaging);
  result.report.graphon = cfg.graphon.describe();
  result.report.gamma = cfg.gamma;
  result.report.T = cfg.T;
  result.report.M = cfg.M;
  for (const auto& traj : averaged_traj)
    result.max_sup_observed = std::max(result.max_sup_observed, trajectory_max_sup(traj));
  for (const auto& out : outcomes) {
    result.report.records.push_back(out.record);
    result.max_sup_observed = std::max(result.max_sup_observed, out.max_sup);
  }
  result.report.aggregates =
      aggregate_by_n(cfg.n_list, result.report.records, /*use_gap=*/true);
  result.sup_bound =
      a_priori_bound(study_lipschitz(cfg), cfg.T, cfg.ic.sup_norm()) + 1e-6;
  return result;
}

StudyResult run_galerkin_vs_averaged(const StudyConfig& config) {
  StudyConfig cfg = config;
  cfg.study = StudyKind::galerkin_vs_averaged;
  cfg.validate();
  const int threads = resolve_threads(cfg.threads);

  const int n_count = static_cast<int>(cfg.n_list.size());
  std::vector<RecordOutcome> outcomes(n_count);
  parallel_tasks(n_count, threads, [&](int k) {
    const int n = cfg.n_list[k];
    RecordOutcome& out = outcomes[k];
    out.record.n = n;
    out.record.seed = 0;  // deterministic study
    try {
      const double rho = cfg.schedule().rho(n);
      const CouplingMatrix v = averaged_matrix(cfg.graphon, rho, n);
      const CouplingMatrix u = galerkin_matrix(cfg.graphon, n, KernelChoice::U);
      const auto g = node_weights(cfg.graphon, rho, n);
      const auto u0 = cell_average_ic(cfg.ic, build_grid(n));

      ModelConfig model;
      model.coupling = cfg.coupling;
      model.reaction = cfg.reaction;
      model.T = cfg.T;
      model.dt = cfg.dt;
      model.output_stride = cfg.output_stride;
      model.weights = g;
      model.model = Model::averaged(v);
      const Trajectory traj_v = integrate(model, u0);
      model.model = Model::galerkin(u);
      const Trajectory traj_u = integrate(model, u0);

      out.record.sup_gn_gap = sup_gn_gap(traj_u, traj_v, g);
      out.record.spacetime_l2 = spacetime_l2_error(traj_u, traj_v);
      out.max_sup = std::max(trajectory_max_sup(traj_u), trajectory_max_sup(traj_v));
    } catch (const std::exception& e) {
      out.record.failed = true;
      out.record.error = e.what();
    }
  });

  StudyResult result;
  result.report.study = to_string(StudyKind::galerkin_vs_averaged);
  result.report.graphon = cfg.graphon.describe();
  result.report.gamma = cfg.gamma;
  result.report.T = cfg.T;
  result.report.M = cfg.M;
  for (const auto& out : outcomes) {
    result.report.records.push_back(out.record);
    result.max_sup_observed = std::max(result.max_sup_observed, out.max_sup);
  }
  result.report.aggregates =
      aggregate_by_n(cfg.n_list, result.report.records, /*use_gap=*/true);
  result.sup_bound =
      a_priori_bound(study_lipschitz(cfg), cfg.T, cfg.ic.sup_norm()) + 1e-6;
  return result;
}

DegreeLawReport run_degree_law(const StudyConfig& config) {
  StudyConfig cfg = config;
  cfg.study = StudyKind::degree_law;
  cfg.validate();
  const int threads = resolve_threads(cfg.threads);
  const int n = cfg.n_list.back();
  std::vector<int> probes = cfg.probe_nodes;
  if (probes.empty()) probes = {1, n};

  const int reps = cfg.seeds;
  std::vector<std::vector<std::uint32_t>> probe_degrees(reps);
  std::vector<std::size_t> edges(reps);
  parallel_tasks(reps, threads, [&](int rep) {
    const SampledGraph graph = sample_graph(
        cfg.graphon, cfg.schedule(), n, record_seed(cfg.master_seed, n, rep),
        cfg.variant);
    auto& mine = probe_degrees[rep];
    mine.reserve(probes.size());
    for (const int p : probes)
      mine.push_back(static_cast<std::uint32_t>(graph.offsets[p] - graph.offsets[p - 1]));
    edges[rep] = graph.edge_count();
  });

  DegreeLawReport report;
  report.graphon = cfg.graphon.describe();
  report.gamma = cfg.gamma;
  report.n = n;
  report.seeds = reps;
  const double alpha = cfg.graphon.alpha;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    DegreeLawProbe probe;
    probe.node = probes[k];
    probe.predicted = (1.0 - alpha) *
                      std::pow(static_cast<double>(n), 1.0 + alpha - cfg.gamma) *
                      std::pow(static_cast<double>(probes[k]), -alpha);
    double sum = 0.0;
    for (int rep = 0; rep < reps; ++rep) sum += probe_degrees[rep][k];
    probe.mc_mean = sum / reps;
    probe.rel_err = std::abs(probe.mc_mean - probe.predicted) / probe.predicted;
    report.probes.push_back(probe);
  }
  report.density_predicted =
      std::pow(static_cast<double>(n), -cfg.gamma) * total_mass(cfg.graphon);
  double edge_sum = 0.0;
  for (const auto e : edges) edge_sum += static_cast<double>(e);
  report.density_mc = edge_sum / reps / (0.5 * n * (n + 1));
  report.density_rel_err =
      std::abs(report.density_mc - report.density_predicted) / report.density_predicted;
  return report;
}

std::string degree_law_to_json(const DegreeLawReport& report) {
  nlohmann::ordered_json j;
  j["study"] = "degree_law";
  j["graphon"] = report.graphon;
  j["gamma"] = report.gamma;
  j["n"] = report.n;
  j["seeds"] = report.seeds;
  j["probes"] = nlohmann::ordered_json::array();
  for (const auto& p : report.probes) {
    nlohmann::ordered_json jp;
    jp["node"] = p.node;
    jp["predicted"] = p.predicted;
    jp["mc_mean"] = p.mc_mean;
    jp["rel_err"] = p.rel_err;
    j["probes"].push_back(std::move(jp));
  }
  j["density"] = {{"predicted", report.density_predicted},
                  {"empirical", report.density_mc},
                  {"rel_err", report.density_rel_err}};
  return j.dump(2) + "\n";
}

KernelDistanceReport run_kernel_distance(const StudyConfig& config) {
  StudyConfig cfg = config;
  cfg.study = StudyKind::kernel_distance;
  cfg.validate();
  KernelDistanceReport report;
  report.graphon = cfg.graphon.describe();
  report.gamma = cfg.gamma;
  for (const int n : cfg.n_list)
    report.distances.emplace_back(n,
                                  kernel_l4_distance(cfg.graphon, cfg.schedule(), n));
  return report;
}

std::string kernel_distance_to_json(const KernelDistanceReport& report) {
  nlohmann::ordered_json j;
  j["study"] = "kernel_distance";
  j["graphon"] = report.graphon;
  j["gamma"] = report.gamma;
  j["distances"] = nlohmann::ordered_json::array();
  for (const auto& [n, d] : report.distances) {
    nlohmann::ordered_json jd;
    jd["n"] = n;
    jd["l4"] = d;
    j["distances"].push_back(std::move(jd));
  }
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_trajectory_csv(const Trajectory& traj, const std::string& dir) {
  std::filesystem::create_directories(dir);
  char buf[64];
  if (traj.n <= 1024) {
    std::string csv = "t";
    for (int i = 1; i <= traj.n; ++i) {
      std::snprintf(buf, sizeof buf, ",u_%d", i);
      csv += buf;
    }
    csv += "\n";
    for (int k = 0; k < traj.snapshots(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", traj.times[k]);
      csv += buf;
      for (const double v : traj.states[k]) {
        std::snprintf(buf, sizeof buf, ",%.17g", v);
        csv += buf;
      }
      csv += "\n";
    }
    write_text_file(dir + "/trajectory.csv", csv);
    return;
  }

  std::string obs = "t,mean,l2,linf,gn_norm\n";
  char wide[160];
  for (int k = 0; k < traj.snapshots(); ++k) {
    double mean = 0.0;
    for (const double v : traj.states[k]) mean += v;
    mean /= traj.n;
    std::snprintf(wide, sizeof wide, "%.17g,%.17g,%.17g,%.17g,%.17g\n", traj.times[k],
                  mean, step_l2_norm(traj.states[k]), traj.sup_norms[k],
                  traj.weighted_norms[k]);
    obs += wide;
  }
  write_text_file(dir + "/observables.csv", obs);

  const int stride = traj.n / 16;
  std::string ds = "t";
  for (int k = 1; k <= 16; ++k) {
    std::snprintf(buf, sizeof buf, ",u_%d", k * stride);
    ds += buf;
  }
  ds += "\n";
  for (int k = 0; k < traj.snapshots(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.times[k]);
    ds += buf;
    for (int p = 1; p <= 16; ++p) {
      std::snprintf(buf, sizeof buf, ",%.17g", traj.states[k][p * stride - 1]);
      ds += buf;
    }
    ds += "\n";
  }
  write_text_file(dir + "/states16.csv", ds);
}

}  // namespace graphdyn
