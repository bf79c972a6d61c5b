#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "graphdyn/graph_io.hpp"
#include "graphdyn/rng.hpp"
#include "graphdyn/sampler.hpp"

using namespace graphdyn;

TEST_CASE("grid points and cells") {
  const Grid g = build_grid(4);
  CHECK(g.point(0) == 0.25);
  CHECK(g.point(3) == 1.0);
  CHECK(g.cell_lo(0) == 0.0);
  CHECK(g.cell_hi(0) == 0.25);
  const Grid g2 = build_grid(2);
  CHECK(g2.cell_lo(1) == 0.5);
  CHECK(g2.cell_hi(1) == 1.0);
  CHECK_THROWS_AS(build_grid(1), std::invalid_argument);
}

TEST_CASE("edge probabilities") {
  CHECK(edge_probability(GraphonSpec::constant(4.0), 0.25, 8, 1, 2,
                         GraphVariant::pointwise) == 1.0);
  // generalized Erdos-Renyi: constant kernel gives p = rho everywhere
  const double rho = std::pow(64.0, -0.3);
  CHECK(edge_probability(GraphonSpec::constant(1.0), rho, 64, 5, 9,
                         GraphVariant::pointwise) == doctest::Approx(rho).epsilon(1e-15));
  // power law at n=2, nodes (1,1) in math indexing -> (0,0) here
  const double expected = 0.5 * 0.64 * std::pow(0.25, -0.2);
  CHECK(edge_probability(GraphonSpec::power_law(0.2), 0.5, 2, 0, 0,
                         GraphVariant::pointwise) ==
        doctest::Approx(expected).epsilon(1e-13));
  CHECK(expected == doctest::Approx(0.42226).epsilon(1e-4));
}

TEST_CASE("cell-averaged probability uses the cell integral") {
  const auto pl = GraphonSpec::power_law(0.2);
  const double got =
      edge_probability(pl, 0.5, 2, 0, 0, GraphVariant::cell_averaged);
  // rho * n^2 * integral of W over (0,1/2]^2, via the antiderivative:
  // (1-a) * integral of x^-a over the cell = 0.5^{1-a}
  const double aint = std::pow(0.5, 0.8);
  CHECK(got == doctest::Approx(0.5 * 4.0 * aint * aint).epsilon(1e-12));
  // constant kernel: identical to pointwise up to clamping
  CHECK(edge_probability(GraphonSpec::constant(1.0), 0.25, 8, 2, 3,
                         GraphVariant::cell_averaged) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("probability-one edges give the complete graph with loops") {
  const auto graph = sample_graph(GraphonSpec::constant(4.0), 0.25, 3, 99);
  CHECK(graph.edge_count() == 6);  // 3 pairs + 3 loops
  for (int i = 0; i < 3; ++i) CHECK(graph.row(i).size() == 3);
  const auto stats = degree_statistics(graph);
  CHECK(stats.edge_density == 1.0);
  CHECK(stats.loops == 3);
}

TEST_CASE("expected degrees and node weights") {
  const auto d = expected_degrees(GraphonSpec::constant(1.0), 0.5, 2);
  CHECK(d[0] == 1.0);
  CHECK(d[1] == 1.0);
  const auto d2 = expected_degrees(GraphonSpec::constant(4.0), 0.25, 3);
  CHECK(d2[0] == 3.0);  // truncation binds at 1/rho = 4

  // power law at n=1024: d_1 tracks the asymptotic prediction
  const auto d3 = expected_degrees(GraphonSpec::power_law(0.2), DensitySchedule(0.5), 1024);
  CHECK(d3[0] == doctest::Approx(102.4).epsilon(0.01));

  // d_i = rho * n * G_i exactly, for every catalog kind
  for (const auto& spec :
       {GraphonSpec::power_law(0.3), GraphonSpec::constant(2.0),
        GraphonSpec::block({0.0, 0.5, 1.0}, {{1.0, 2.0}, {2.0, 1.0}})}) {
    const double rho = 0.37;
    const auto weights = node_weights(spec, rho, 7);
    const auto degrees = expected_degrees(spec, rho, 7);
    for (int i = 0; i < 7; ++i) CHECK(degrees[i] == rho * 7 * weights[i]);
  }
}

TEST_CASE("sampled graphs attach the same node data") {
  const auto spec = GraphonSpec::power_law(0.2);
  const auto graph = sample_graph(spec, 0.25, 32, 5);
  const auto weights = node_weights(spec, 0.25, 32);
  for (int i = 0; i < 32; ++i) {
    CHECK(graph.node_weights[i] == weights[i]);
    CHECK(graph.expected_degrees[i] == 0.25 * 32 * weights[i]);
  }
}

TEST_CASE("determinism: same inputs, same bytes") {
  const auto spec = GraphonSpec::power_law(0.2);
  const auto a = sample_graph(spec, DensitySchedule(0.5), 128, 12345);
  const auto b = sample_graph(spec, DensitySchedule(0.5), 128, 12345);
  CHECK(graph_to_string(a) == graph_to_string(b));
  const auto c = sample_graph(spec, DensitySchedule(0.5), 128, 12346);
  CHECK(graph_to_string(a) != graph_to_string(c));
}

TEST_CASE("adjacency symmetry on random small graphs") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 100; ++it) {
    const int n = 2 + int(rng() % 40);
    const double gamma = 0.3 + 0.4 * (double(rng() % 1000) / 1000.0);
    const auto graph = sample_graph(GraphonSpec::power_law(0.25),
                                    DensitySchedule(gamma), n, rng());
    for (int i = 0; i < n; ++i)
      for (const auto j : graph.row(i)) {
        const auto r = graph.row(j);
        CHECK(std::binary_search(r.begin(), r.end(), std::uint32_t(i)));
      }
    // rows sorted strictly ascending
    for (int i = 0; i < n; ++i) {
      const auto r = graph.row(i);
      for (std::size_t k = 1; k < r.size(); ++k) CHECK(r[k - 1] < r[k]);
    }
  }
}

TEST_CASE("unbiasedness of a single pair at n=2") {
  const auto spec = GraphonSpec::constant(1.0);
  const int trials = 100000;
  int hits = 0;
  for (int seed = 0; seed < trials; ++seed) {
    const auto graph = sample_graph(spec, 0.5, 2, std::uint64_t(seed));
    const auto r = graph.row(0);
    if (std::binary_search(r.begin(), r.end(), 1u)) ++hits;
  }
  const double freq = double(hits) / trials;
  const double se = std::sqrt(0.25 / trials);
  CHECK(std::abs(freq - 0.5) < 3.0 * se);
}

TEST_CASE("monte-carlo edge density matches n^-gamma for the constant kernel") {
  const auto spec = GraphonSpec::constant(1.0);
  const int n = 1024, seeds = 200;
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const auto graph = sample_graph(spec, DensitySchedule(0.5), n, derive_seed(1, n, s));
    sum += degree_statistics(graph).edge_density;
  }
  const double density = sum / seeds;
  CHECK(std::abs(density - 0.03125) / 0.03125 < 0.05);
}

TEST_CASE("monte-carlo mean degree of the first node for the power law") {
  const auto spec = GraphonSpec::power_law(0.2);
  const int n = 1024, seeds = 200;
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const auto graph = sample_graph(spec, DensitySchedule(0.5), n, derive_seed(2, n, s));
    sum += double(graph.row(0).size());
  }
  const double mean = sum / seeds;
  CHECK(std::abs(mean - 102.4) / 102.4 < 0.05);  // (1-a) n^{1+a-g} at i=1
}

TEST_CASE("degree statistics of the empty graph") {
  const auto graph = sample_graph(GraphonSpec::constant(0.0), 0.5, 8, 3);
  const auto stats = degree_statistics(graph);
  CHECK(stats.edges == 0);
  CHECK(stats.edge_density == 0.0);
  for (const auto d : stats.degree) CHECK(d == 0);
}

TEST_CASE("edge probabilities stay in [0,1] for both variants") {
  std::mt19937_64 rng(55);
  const auto pl = GraphonSpec::power_law(0.35);
  const int n = 16;
  for (int it = 0; it < 200; ++it) {
    const double rho = 0.05 + 0.9 * (double(rng() % 1000) / 1000.0);
    const int i = int(rng() % n), j = int(rng() % n);
    for (const auto variant : {GraphVariant::pointwise, GraphVariant::cell_averaged}) {
      const double p = edge_probability(pl, rho, n, i, j, variant);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
}

TEST_CASE("pair stream is order- and seed-sensitive") {
  CHECK(pair_stream(1, 2, 3) != pair_stream(1, 3, 2));
  CHECK(pair_stream(1, 2, 3) != pair_stream(2, 2, 3));
  const double u = uniform01(pair_stream(9, 8, 7));
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
}
