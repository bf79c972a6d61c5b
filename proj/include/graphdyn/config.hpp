#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "graphdyn/functions.hpp"
#include "graphdyn/operators.hpp"

namespace graphdyn {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class StudyKind {
  continuum_convergence,
  averaging,
  galerkin_vs_averaged,
  kernel_distance,
  degree_law
};

const char* to_string(StudyKind s);
StudyKind study_from_string(const std::string& s);

/// One experiment configuration; mirrors the JSON config document.
struct StudyConfig {
  GraphonSpec graphon = GraphonSpec::constant(1.0);
  double gamma = 0.5;
  StudyKind study = StudyKind::averaging;
  std::vector<int> n_list{128, 512, 2048};
  int M = 8192;
  int seeds = 10;
  std::uint64_t master_seed = 1;
  CouplingFn coupling = CouplingFn::identity();
  ReactionFn reaction = ReactionFn::zero();
  ScalingKind scaling = ScalingKind::expected_degree;
  double T = 1.0;
  double dt = 1e-3;
  int output_stride = 0;  // 0 = auto (~100 snapshots)
  InitialCondition ic = InitialCondition::sine_wave(1);
  GraphVariant variant = GraphVariant::pointwise;
  int threads = 0;  // 0 = hardware concurrency
  bool allow_large_dense = false;
  std::vector<int> probe_nodes;  // 1-based; degree_law defaults to {1, n}
  std::string out_dir = "out";

  DensitySchedule schedule() const { return DensitySchedule(gamma); }
  void validate() const;  // throws config_error
};

/// Graphon (de)serialization; gamma rides along inside the graphon object:
///   {"kind": "power_law", "alpha": 0.2, "gamma": 0.5}
///   {"kind": "constant", "c": 1.0, "gamma": 0.5}
///   {"kind": "block", "boundaries": [...], "b": [[...]], "gamma": 0.5}
nlohmann::ordered_json graphon_to_json(const GraphonSpec& spec, double gamma);
GraphonSpec graphon_from_json(const nlohmann::json& j, double* gamma_out);

StudyConfig parse_study_config(const nlohmann::json& j);
StudyConfig load_study_config(const std::string& path);

}  // namespace graphdyn
