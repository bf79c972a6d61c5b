#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "graphdyn/study.hpp"

using namespace graphdyn;

namespace {

StudyConfig small_config(StudyKind kind) {
  StudyConfig cfg;
  cfg.graphon = GraphonSpec::power_law(0.2);
  cfg.gamma = 0.5;
  cfg.study = kind;
  cfg.n_list = {16, 32};
  cfg.M = 128;
  cfg.seeds = 2;
  cfg.master_seed = 9;
  cfg.T = 0.25;
  cfg.dt = 1.25e-3;
  cfg.output_stride = 20;
  cfg.ic = InitialCondition::sine_wave(1);
  cfg.threads = 2;
  return cfg;
}

}  // namespace

TEST_CASE("record seeds are a stable function of (master, n, replicate)") {
  CHECK(record_seed(1, 128, 0) == record_seed(1, 128, 0));
  CHECK(record_seed(1, 128, 0) != record_seed(1, 128, 1));
  CHECK(record_seed(1, 128, 0) != record_seed(1, 256, 0));
  CHECK(record_seed(1, 128, 0) != record_seed(2, 128, 0));
}

TEST_CASE("averaging smoke run emits finite records") {
  auto cfg = small_config(StudyKind::averaging);
  cfg.n_list = {2};
  cfg.seeds = 1;
  const auto result = run_averaging(cfg);
  REQUIRE(result.report.records.size() == 1);
  CHECK_FALSE(result.report.records[0].failed);
  CHECK(std::isfinite(result.report.records[0].sup_gn_gap));
  CHECK(result.report.records[0].sup_gn_gap >= 0.0);
  CHECK(result.max_sup_observed <= result.sup_bound);
}

TEST_CASE("averaging gap vanishes for constant data") {
  auto cfg = small_config(StudyKind::averaging);
  cfg.graphon = GraphonSpec::constant(1.0);
  cfg.ic = InitialCondition::constant(0.7);
  cfg.reaction = ReactionFn::zero();
  const auto result = run_averaging(cfg);
  for (const auto& r : result.report.records) {
    REQUIRE_FALSE(r.failed);
    CHECK(r.sup_gn_gap <= 1e-8);
  }
}

TEST_CASE("continuum study: constant kernel and constant data give zero error") {
  auto cfg = small_config(StudyKind::continuum_convergence);
  cfg.graphon = GraphonSpec::constant(1.0);
  cfg.ic = InitialCondition::constant(0.4);
  const auto result = run_continuum_convergence(cfg);
  REQUIRE(result.report.records.size() == 4);
  for (const auto& r : result.report.records) {
    REQUIRE_FALSE(r.failed);
    CHECK(r.spacetime_l2 <= 1e-8);
  }
  CHECK(result.report.aggregates.size() == 2);
}

TEST_CASE("continuum study validates the resolution chain") {
  auto cfg = small_config(StudyKind::continuum_convergence);
  cfg.M = 48;  // not a power of two
  CHECK_THROWS_AS(run_continuum_convergence(cfg), config_error);
  cfg.M = 16;  // smaller than 2 * n_max
  CHECK_THROWS_AS(run_continuum_convergence(cfg), config_error);
}

TEST_CASE("galerkin-vs-averaged gaps") {
  SUBCASE("constant kernel: identical operators, zero gap") {
    auto cfg = small_config(StudyKind::galerkin_vs_averaged);
    cfg.graphon = GraphonSpec::constant(1.0);
    const auto result = run_galerkin_vs_averaged(cfg);
    for (const auto& r : result.report.records) {
      REQUIRE_FALSE(r.failed);
      CHECK(r.sup_gn_gap <= 1e-8);
    }
  }
  SUBCASE("aligned block kernel with inactive truncation: zero gap") {
    auto cfg = small_config(StudyKind::galerkin_vs_averaged);
    cfg.graphon = GraphonSpec::block({0.0, 0.5, 1.0}, {{1.0, 0.0}, {0.0, 1.0}});
    cfg.n_list = {4, 8};  // boundaries align with both grids
    const auto result = run_galerkin_vs_averaged(cfg);
    for (const auto& r : result.report.records) {
      REQUIRE_FALSE(r.failed);
      CHECK(r.sup_gn_gap <= 1e-8);
    }
  }
  SUBCASE("power law: deterministic gap decays with n") {
    auto cfg = small_config(StudyKind::galerkin_vs_averaged);
    cfg.n_list = {16, 256};
    const auto result = run_galerkin_vs_averaged(cfg);
    REQUIRE(result.report.records.size() == 2);
    CHECK(result.report.records[1].sup_gn_gap < result.report.records[0].sup_gn_gap);
  }
}

TEST_CASE("degree law study matches the exact expected degrees") {
  StudyConfig cfg;
  cfg.graphon = GraphonSpec::power_law(0.2);
  cfg.gamma = 0.5;
  cfg.study = StudyKind::degree_law;
  cfg.n_list = {64};
  cfg.seeds = 64;
  cfg.master_seed = 123;
  const auto report = run_degree_law(cfg);
  REQUIRE(report.probes.size() == 2);
  CHECK(report.probes[0].node == 1);
  CHECK(report.probes[1].node == 64);

  // the MC mean is an unbiased estimate of d_i: compare with 4 binomial-ish SEs
  const auto d = expected_degrees(cfg.graphon, DensitySchedule(0.5), 64);
  const double se1 = std::sqrt(d[0] / cfg.seeds);  // at most Poisson-scale noise
  CHECK(std::abs(report.probes[0].mc_mean - d[0]) < 4.0 * se1);
  const double sen = std::sqrt(d[63] / cfg.seeds);
  CHECK(std::abs(report.probes[1].mc_mean - d[63]) < 4.0 * sen);
  CHECK(report.density_predicted == doctest::Approx(std::pow(64.0, -0.5)).epsilon(1e-12));
}

TEST_CASE("kernel distance study decays past the pre-asymptotic bump") {
  // below n ~ 64 the distance still grows; the decay regime starts there
  auto cfg = small_config(StudyKind::kernel_distance);
  cfg.n_list = {64, 256, 1024};
  const auto report = run_kernel_distance(cfg);
  REQUIRE(report.distances.size() == 3);
  CHECK(report.distances[1].second < report.distances[0].second);
  CHECK(report.distances[2].second < report.distances[1].second);
}

TEST_CASE("studies are deterministic and schedule-independent") {
  auto cfg = small_config(StudyKind::averaging);
  const auto a = run_averaging(cfg);
  const auto b = run_averaging(cfg);
  CHECK(report_to_json(a.report) == report_to_json(b.report));

  auto serial = cfg;
  serial.threads = 1;
  const auto c = run_averaging(serial);
  CHECK(report_to_json(a.report) == report_to_json(c.report));

  auto wide = cfg;
  wide.threads = 4;
  const auto d = run_averaging(wide);
  CHECK(report_to_json(a.report) == report_to_json(d.report));
}

TEST_CASE("continuum study is deterministic across thread counts") {
  auto cfg = small_config(StudyKind::continuum_convergence);
  const auto a = run_continuum_convergence(cfg);
  auto serial = cfg;
  serial.threads = 1;
  const auto b = run_continuum_convergence(serial);
  CHECK(report_to_json(a.report) == report_to_json(b.report));
}

TEST_CASE("trajectory CSV layouts") {
  const auto dir = std::filesystem::temp_directory_path() / "graphdyn_csv_test";
  std::filesystem::remove_all(dir);

  Trajectory small;
  small.n = 4;
  small.times = {0.0, 0.5};
  small.states = {{1, 2, 3, 4}, {1, 1, 1, 1}};
  small.sup_norms = {4, 1};
  small.weighted_norms = {2.7, 1};
  write_trajectory_csv(small, dir.string());
  CHECK(std::filesystem::exists(dir / "trajectory.csv"));

  Trajectory big;
  big.n = 2048;
  big.times = {0.0};
  big.states = {std::vector<double>(2048, 0.5)};
  big.sup_norms = {0.5};
  big.weighted_norms = {0.5};
  write_trajectory_csv(big, dir.string());
  CHECK(std::filesystem::exists(dir / "observables.csv"));
  CHECK(std::filesystem::exists(dir / "states16.csv"));
  std::filesystem::remove_all(dir);
}
