#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "graphdyn/analysis.hpp"
#include "graphdyn/config.hpp"
#include "graphdyn/graph_io.hpp"
#include "graphdyn/parallel.hpp"
#include "graphdyn/study.hpp"

namespace {

using graphdyn::StudyConfig;

struct Overrides {
  std::optional<double> gamma, T, dt;
  std::optional<int> seeds, M, output_stride, threads, n;
  std::optional<std::uint64_t> master_seed;
  std::optional<std::string> variant, study, out_dir;
  std::vector<int> n_list;
};

void apply(const Overrides& o, StudyConfig& cfg) {
  if (o.gamma) cfg.gamma = *o.gamma;
  if (o.T) cfg.T = *o.T;
  if (o.dt) cfg.dt = *o.dt;
  if (o.seeds) cfg.seeds = *o.seeds;
  if (o.M) cfg.M = *o.M;
  if (o.output_stride) cfg.output_stride = *o.output_stride;
  if (o.threads) cfg.threads = *o.threads;
  if (o.master_seed) cfg.master_seed = *o.master_seed;
  if (o.variant) cfg.variant = graphdyn::variant_from_string(*o.variant);
  if (o.study) cfg.study = graphdyn::study_from_string(*o.study);
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  if (!o.n_list.empty()) cfg.n_list = o.n_list;
  if (o.n) cfg.n_list = {*o.n};
}

void add_common_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--gamma", o.gamma, "density exponent override");
  cmd->add_option("--T", o.T, "time horizon override");
  cmd->add_option("--dt", o.dt, "time step override");
  cmd->add_option("--seeds", o.seeds, "replicate count override");
  cmd->add_option("--M", o.M, "reference resolution override");
  cmd->add_option("--output-stride", o.output_stride, "snapshot stride override");
  cmd->add_option("--threads", o.threads, "worker count override (0 = hardware)");
  cmd->add_option("--master-seed", o.master_seed, "master seed override");
  cmd->add_option("--variant", o.variant, "graph variant: pointwise|cell_averaged");
  cmd->add_option("--n-list", o.n_list, "resolution list override");
  cmd->add_option("--n", o.n, "single resolution override");
}

graphdyn::CouplingMatrix build_matrix(const StudyConfig& cfg,
                                      graphdyn::ModelKind kind, int n) {
  using namespace graphdyn;
  if (kind == ModelKind::averaged) {
    if (cfg.scaling != ScalingKind::expected_degree)
      throw config_error("the averaged model requires expected_degree scaling");
    return averaged_matrix(cfg.graphon, cfg.schedule(), n);
  }
  const KernelChoice kernel = cfg.scaling == ScalingKind::expected_degree
                                  ? KernelChoice::U
                                  : KernelChoice::W;
  return galerkin_matrix(cfg.graphon, n, kernel);
}

int run_study_command(const StudyConfig& cfg) {
  using namespace graphdyn;
  const std::string report_path = cfg.out_dir + "/report.json";
  switch (cfg.study) {
    case StudyKind::continuum_convergence:
    case StudyKind::averaging:
    case StudyKind::galerkin_vs_averaged: {
      StudyResult result;
      if (cfg.study == StudyKind::continuum_convergence)
        result = run_continuum_convergence(cfg);
      else if (cfg.study == StudyKind::averaging)
        result = run_averaging(cfg);
      else
        result = run_galerkin_vs_averaged(cfg);
      write_text_file(report_path, report_to_json(result.report));
      std::printf("study=%s graphon=%s gamma=%g\n", result.report.study.c_str(),
                  result.report.graphon.c_str(), result.report.gamma);
      for (const auto& a : result.report.aggregates)
        std::printf("  n=%-6d median=%.6e iqr=%.6e\n", a.n, a.median, a.iqr);
      std::printf("  sup-norm max %.6e within bound %.6e: %s\n",
                  result.max_sup_observed, result.sup_bound,
                  result.max_sup_observed <= result.sup_bound ? "yes" : "NO");
      std::printf("  report: %s\n", report_path.c_str());
      return 0;
    }
    case StudyKind::kernel_distance: {
      const auto report = run_kernel_distance(cfg);
      write_text_file(report_path, kernel_distance_to_json(report));
      for (const auto& [n, d] : report.distances)
        std::printf("  n=%-6d l4=%.6e\n", n, d);
      std::printf("  report: %s\n", report_path.c_str());
      return 0;
    }
    case StudyKind::degree_law: {
      const auto report = run_degree_law(cfg);
      write_text_file(report_path, degree_law_to_json(report));
      for (const auto& p : report.probes)
        std::printf("  node=%-6d predicted=%.4f mc=%.4f rel_err=%.4f\n", p.node,
                    p.predicted, p.mc_mean, p.rel_err);
      std::printf("  density predicted=%.6f empirical=%.6f rel_err=%.4f\n",
                  report.density_predicted, report.density_mc,
                  report.density_rel_err);
      std::printf("  report: %s\n", report_path.c_str());
      return 0;
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphdyn: coupled dynamics on sparse W-random graphs"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;
  std::string out_path;
  std::string model_name;
  std::optional<std::uint64_t> sample_seed;

  auto* sample = app.add_subcommand("sample", "sample one graph and save it");
  sample->add_option("--config", config_path, "JSON config")->required();
  sample->add_option("--out", out_path, "output graph file")->required();
  sample->add_option("--seed", sample_seed, "sampling seed (default: master seed)");
  add_common_overrides(sample, overrides);

  std::string dump_matrix_path;
  auto* run = app.add_subcommand("run", "integrate one model and dump CSV");
  run->add_option("--config", config_path, "JSON config")->required();
  run->add_option("--model", model_name, "sampled|averaged|galerkin")->required();
  run->add_option("--out", out_path, "output directory");
  run->add_option("--seed", sample_seed, "sampling seed (default: master seed)");
  run->add_option("--dump-matrix", dump_matrix_path,
                  "write the coupling matrix as CSV (matrix models only)");
  add_common_overrides(run, overrides);

  auto* study = app.add_subcommand("study", "run a full study and write report.json");
  study->add_option("--config", config_path, "JSON config")->required();
  study->add_option("--out", out_path, "output directory (overrides out_dir)");
  study->add_option("--study", overrides.study, "study kind override");
  add_common_overrides(study, overrides);

  auto* check = app.add_subcommand("check", "print the kernel assumption report");
  check->add_option("--config", config_path, "JSON config")->required();
  add_common_overrides(check, overrides);

  auto* kdist = app.add_subcommand("kernel-dist", "print Galerkin/averaged L4 distances");
  kdist->add_option("--config", config_path, "JSON config")->required();
  add_common_overrides(kdist, overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  StudyConfig cfg;
  try {
    cfg = graphdyn::load_study_config(config_path);
    apply(overrides, cfg);
    if (!out_path.empty() && study->parsed()) cfg.out_dir = out_path;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  }

  try {
    using namespace graphdyn;
    if (sample->parsed()) {
      const int n = cfg.n_list.front();
      DensitySchedule schedule = cfg.schedule();
      validate_pairing(cfg.graphon, schedule);
      const std::uint64_t seed = sample_seed.value_or(cfg.master_seed);
      const SampledGraph graph =
          sample_graph(cfg.graphon, schedule, n, seed, cfg.variant);
      save_graph(graph, out_path);
      const auto stats = degree_statistics(graph);
      std::printf("sampled n=%d seed=%llu edges=%zu density=%.6g -> %s\n", n,
                  static_cast<unsigned long long>(seed), stats.edges,
                  stats.edge_density, out_path.c_str());
      return 0;
    }

    if (run->parsed()) {
      const int n = cfg.n_list.front();
      const ModelKind kind = model_from_string(model_name);
      const double rho = cfg.schedule().rho(n);
      const auto weights = node_weights(cfg.graphon, rho, n);

      ModelConfig model;
      model.coupling = cfg.coupling;
      model.reaction = cfg.reaction;
      model.T = cfg.T;
      model.dt = cfg.dt;
      model.output_stride = cfg.output_stride;
      model.weights = weights;
      model.threads = resolve_threads(cfg.threads);

      SampledGraph graph;
      CouplingMatrix matrix;
      if (kind == ModelKind::sampled) {
        graph = sample_graph(cfg.graphon, rho, n,
                             sample_seed.value_or(cfg.master_seed), cfg.variant);
        model.model = Model::sampled(graph, cfg.scaling);
      } else {
        matrix = build_matrix(cfg, kind, n);
        model.model =
            kind == ModelKind::averaged ? Model::averaged(matrix) : Model::galerkin(matrix);
        if (!dump_matrix_path.empty())
          write_text_file(dump_matrix_path, matrix_to_csv(matrix));
      }
      const Trajectory traj =
          integrate(model, cell_average_ic(cfg.ic, build_grid(n)));
      const std::string dir = out_path.empty() ? cfg.out_dir : out_path;
      write_trajectory_csv(traj, dir);
      std::printf("model=%s n=%d snapshots=%d final_l2=%.9g final_linf=%.9g -> %s\n",
                  to_string(kind), n, traj.snapshots(),
                  step_l2_norm(traj.final_state()), sup_norm(traj.final_state()),
                  dir.c_str());
      return 0;
    }

    if (study->parsed()) {
      cfg.validate();
      return run_study_command(cfg);
    }

    if (check->parsed()) {
      nlohmann::ordered_json out;
      out["graphon"] = cfg.graphon.describe();
      out["gamma"] = cfg.gamma;
      out["reports"] = nlohmann::ordered_json::array();
      for (const int n : cfg.n_list) {
        const auto rep = check_assumptions(cfg.graphon, cfg.schedule(), n);
        nlohmann::ordered_json jr;
        jr["n"] = rep.n;
        jr["total_mass"] = rep.total_mass;
        jr["nu"] = rep.nu;
        jr["delta_sup"] = rep.delta_sup;
        jr["l4_row_bound"] = rep.l4_row_bound;
        jr["l2"] = rep.l2;
        jr["l4"] = rep.l4;
        out["reports"].push_back(std::move(jr));
      }
      std::printf("%s\n", out.dump(2).c_str());
      return 0;
    }

    if (kdist->parsed()) {
      const auto report = run_kernel_distance(cfg);
      std::printf("%s", kernel_distance_to_json(report).c_str());
      return 0;
    }
  } catch (const graphdyn::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
