#include "graphdyn/config.hpp"

#include <cmath>
#include <fstream>

namespace graphdyn {

namespace {

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

void check(bool ok, const std::string& msg) {
  if (!ok) throw config_error(msg);
}

CouplingFn coupling_from_json(const nlohmann::json& j) {
  const auto name = j.get<std::string>();
  if (name == "identity") return CouplingFn::identity();
  if (name == "sine") return CouplingFn::sine();
  throw config_error("unknown coupling: " + name);
}

ReactionFn reaction_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "zero") return ReactionFn::zero();
  if (kind == "affine")
    return ReactionFn::affine(j.at("a").get<double>(), j.at("b").get<double>());
  if (kind == "sine_scaled") return ReactionFn::sine_scaled(j.at("kappa").get<double>());
  throw config_error("unknown reaction kind: " + kind);
}

InitialCondition ic_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "constant") return InitialCondition::constant(j.at("c").get<double>());
  if (kind == "linear") return InitialCondition::linear();
  if (kind == "sine_wave") return InitialCondition::sine_wave(j.at("k").get<int>());
  if (kind == "indicator")
    return InitialCondition::indicator(j.at("a").get<double>(), j.at("b").get<double>());
  throw config_error("unknown initial condition kind: " + kind);
}

}  // namespace

const char* to_string(StudyKind s) {
  switch (s) {
    case StudyKind::continuum_convergence:
      return "continuum_convergence";
    case StudyKind::averaging:
      return "averaging";
    case StudyKind::galerkin_vs_averaged:
      return "galerkin_vs_averaged";
    case StudyKind::kernel_distance:
      return "kernel_distance";
    case StudyKind::degree_law:
      return "degree_law";
  }
  return "?";
}

StudyKind study_from_string(const std::string& s) {
  if (s == "continuum_convergence") return StudyKind::continuum_convergence;
  if (s == "averaging") return StudyKind::averaging;
  if (s == "galerkin_vs_averaged") return StudyKind::galerkin_vs_averaged;
  if (s == "kernel_distance") return StudyKind::kernel_distance;
  if (s == "degree_law") return StudyKind::degree_law;
  throw config_error("unknown study: " + s);
}

nlohmann::ordered_json graphon_to_json(const GraphonSpec& spec, double gamma) {
  nlohmann::ordered_json j;
  switch (spec.kind) {
    case GraphonKind::power_law:
      j["kind"] = "power_law";
      j["alpha"] = spec.alpha;
      break;
    case GraphonKind::constant:
      j["kind"] = "constant";
      j["c"] = spec.c;
      break;
    case GraphonKind::block:
      j["kind"] = "block";
      j["boundaries"] = spec.boundaries;
      j["b"] = spec.blocks;
      break;
  }
  j["gamma"] = gamma;
  return j;
}

GraphonSpec graphon_from_json(const nlohmann::json& j, double* gamma_out) {
  if (gamma_out) *gamma_out = j.value("gamma", 0.5);
  const auto kind = j.at("kind").get<std::string>();
  try {
    if (kind == "power_law") return GraphonSpec::power_law(j.at("alpha").get<double>());
    if (kind == "constant") return GraphonSpec::constant(j.at("c").get<double>());
    if (kind == "block")
      return GraphonSpec::block(j.at("boundaries").get<std::vector<double>>(),
                                j.at("b").get<std::vector<std::vector<double>>>());
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("graphon: ") + e.what());
  }
  throw config_error("unknown graphon kind: " + kind);
}

StudyConfig parse_study_config(const nlohmann::json& j) {
  StudyConfig cfg;
  try {
    check(j.contains("graphon"), "config requires a 'graphon' object");
    cfg.graphon = graphon_from_json(j.at("graphon"), &cfg.gamma);
    if (j.contains("study")) cfg.study = study_from_string(j.at("study").get<std::string>());
    if (j.contains("n_list")) cfg.n_list = j.at("n_list").get<std::vector<int>>();
    cfg.M = j.value("M", cfg.M);
    cfg.seeds = j.value("seeds", cfg.seeds);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    if (j.contains("model")) {
      const auto& m = j.at("model");
      if (m.contains("coupling")) cfg.coupling = coupling_from_json(m.at("coupling"));
      if (m.contains("reaction")) cfg.reaction = reaction_from_json(m.at("reaction"));
      if (m.contains("scaling"))
        cfg.scaling = scaling_from_string(m.at("scaling").get<std::string>());
      cfg.T = m.value("T", cfg.T);
      cfg.dt = m.value("dt", cfg.dt);
      cfg.output_stride = m.value("output_stride", cfg.output_stride);
    }
    if (j.contains("ic")) cfg.ic = ic_from_json(j.at("ic"));
    if (j.contains("variant"))
      cfg.variant = variant_from_string(j.at("variant").get<std::string>());
    cfg.threads = j.value("threads", cfg.threads);
    cfg.allow_large_dense = j.value("allow_large_dense", cfg.allow_large_dense);
    if (j.contains("probe_nodes"))
      cfg.probe_nodes = j.at("probe_nodes").get<std::vector<int>>();
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(std::string("config parse: ") + e.what());
  }
  return cfg;
}

StudyConfig load_study_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw config_error(path + ": " + e.what());
  }
  return parse_study_config(j);
}

void StudyConfig::validate() const {
  check(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0,1)");
  if (graphon.kind == GraphonKind::power_law)
    check(graphon.alpha < gamma, "power_law pairing requires alpha < gamma");

  check(!n_list.empty(), "n_list must not be empty");
  int prev = 1;
  for (const int n : n_list) {
    check(n >= 2, "n_list entries must be >= 2");
    check(is_power_of_two(n), "n_list entries must be powers of two");
    check(n > prev, "n_list must be strictly increasing");
    prev = n;
  }
  check(seeds >= 1, "seeds must be >= 1");
  check(T > 0.0 && dt > 0.0 && dt <= T, "need 0 < dt <= T");
  const long long steps = std::llround(T / dt);
  check(steps >= 1 && std::abs(steps * dt - T) <= 1e-9 * std::max(1.0, T),
        "T must be an integer multiple of dt");
  if (output_stride > 0)
    check(steps % output_stride == 0, "output_stride must divide the step count");
  check(threads >= 0, "threads must be >= 0");

  const int n_max = n_list.back();
  switch (study) {
    case StudyKind::continuum_convergence:
      check(is_power_of_two(M), "M must be a power of two");
      check(M >= 2 * n_max, "M must be at least 2x the largest study n");
      for (const int n : n_list) check(M % n == 0, "every n must divide M");
      if (!allow_large_dense)
        check(M <= 8192, "M above 8192 needs allow_large_dense");
      break;
    case StudyKind::averaging:
    case StudyKind::galerkin_vs_averaged:
      check(scaling == ScalingKind::expected_degree,
            "averaged-model studies require expected_degree scaling");
      if (!allow_large_dense)
        check(n_max <= 4096, "dense-model n above 4096 needs allow_large_dense");
      break;
    case StudyKind::kernel_distance:
      check(graphon.fourth_integrable(),
            "kernel_distance requires an L4-integrable graphon");
      if (!allow_large_dense)
        check(n_max <= 4096, "dense-model n above 4096 needs allow_large_dense");
      break;
    case StudyKind::degree_law:
      check(graphon.kind == GraphonKind::power_law,
            "degree_law requires a power_law graphon");
      for (const int p : probe_nodes)
        check(p >= 1 && p <= n_max, "probe nodes must lie in [1, n]");
      break;
  }
}

}  // namespace graphdyn
