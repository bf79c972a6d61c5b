#include "graphdyn/operators.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "graphdyn/parallel.hpp"

namespace graphdyn {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

template <class D>
void coupling_rows(const CouplingMatrix& m, std::span<const double> u,
                   std::span<double> out, int threads, D d) {
  const int n = m.n;
  const double inv_n = 1.0 / n;
  parallel_blocks(n, threads, [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      const double* row = m.entries.data() + static_cast<std::size_t>(i) * n;
      const double ui = u[i];
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += row[j] * d(u[j] - ui);
      out[i] = acc * inv_n;
    }
  });
}

template <class D>
void sampled_rows(const SampledGraph& g, std::span<const double> u,
                  std::span<double> out, ScalingKind scaling, D d) {
  const double c_global =
      scaling == ScalingKind::edge_density ? 1.0 / (g.n * g.rho) : 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double ui = u[i];
    double acc = 0.0;
    for (const auto j : g.row(i)) acc += d(u[j] - ui);
    const double ci = scaling == ScalingKind::expected_degree
                          ? 1.0 / g.expected_degrees[i]
                          : c_global;
    out[i] = ci * acc;
  }
}

}  // namespace

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::averaged_V:
      return "averaged_V";
    case Provenance::galerkin_U:
      return "galerkin_U";
    case Provenance::galerkin_W:
      return "galerkin_W";
  }
  return "?";
}

const char* to_string(ScalingKind s) {
  return s == ScalingKind::expected_degree ? "expected_degree" : "edge_density";
}

ScalingKind scaling_from_string(const std::string& s) {
  if (s == "expected_degree") return ScalingKind::expected_degree;
  if (s == "edge_density") return ScalingKind::edge_density;
  throw std::invalid_argument("unknown scaling: " + s);
}

double CouplingMatrix::row_mean(int i) const {
  const auto row = rowspan(i);
  double sum = 0.0;
  for (const double v : row) sum += v;
  return sum / n;
}

CouplingMatrix averaged_matrix(const GraphonSpec& spec, double rho, int n) {
  require(n >= 2, "averaged_matrix: n must be >= 2");
  const auto weights = node_weights(spec, rho, n);
  const GridKernel kernel(spec, n);
  const double rho_inv = 1.0 / rho;

  CouplingMatrix m;
  m.n = n;
  m.provenance = Provenance::averaged_V;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s rho=%.12g", spec.describe().c_str(), rho);
  m.kernel_id = buf;
  m.entries.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (weights[i] == 0.0)
      throw std::runtime_error("averaged_matrix: zero row weight G_i");
    const double inv_g = 1.0 / weights[i];
    double* row = m.entries.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) row[j] = kernel.truncated(rho_inv, i, j) * inv_g;
  }
  return m;
}

CouplingMatrix averaged_matrix(const GraphonSpec& spec,
                               const DensitySchedule& schedule, int n) {
  return averaged_matrix(spec, schedule.rho(n), n);
}

CouplingMatrix galerkin_matrix(const GraphonSpec& spec, int n, KernelChoice kernel) {
  require(n >= 2, "galerkin_matrix: n must be >= 2");
  const GridKernel grid(spec, n);
  CouplingMatrix m;
  m.n = n;
  m.provenance =
      kernel == KernelChoice::U ? Provenance::galerkin_U : Provenance::galerkin_W;
  m.kernel_id = spec.describe();
  m.entries.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    double* row = m.entries.data() + static_cast<std::size_t>(i) * n;
    if (kernel == KernelChoice::U)
      for (int j = 0; j < n; ++j) row[j] = grid.galerkin_u(i, j);
    else
      for (int j = 0; j < n; ++j) row[j] = grid.galerkin_w(i, j);
  }
  return m;
}

void apply_coupling_into(const CouplingMatrix& m, std::span<const double> u,
                         const CouplingFn& coupling, std::span<double> out,
                         int threads) {
  require(static_cast<int>(u.size()) == m.n && out.size() == u.size(),
          "apply_coupling: dimension mismatch");
  switch (coupling.kind) {
    case CouplingFn::Kind::identity:
      coupling_rows(m, u, out, threads, [](double v) { return v; });
      break;
    case CouplingFn::Kind::sine:
      coupling_rows(m, u, out, threads, [](double v) { return std::sin(v); });
      break;
    case CouplingFn::Kind::custom:
      coupling_rows(m, u, out, threads, [&](double v) { return coupling.fn(v); });
      break;
  }
}

std::vector<double> apply_coupling(const CouplingMatrix& m,
                                   std::span<const double> u,
                                   const CouplingFn& coupling) {
  std::vector<double> out(u.size());
  apply_coupling_into(m, u, coupling, out, 1);
  return out;
}

void apply_sampled_coupling_into(const SampledGraph& graph,
                                 std::span<const double> u,
                                 const CouplingFn& coupling, ScalingKind scaling,
                                 std::span<double> out) {
  require(static_cast<int>(u.size()) == graph.n && out.size() == u.size(),
          "apply_sampled_coupling: dimension mismatch");
  if (scaling == ScalingKind::expected_degree) {
    if (!graph.has_node_data())
      throw std::runtime_error(
          "apply_sampled_coupling: graph carries no expected degrees");
    for (const double d : graph.expected_degrees)
      if (d <= 0.0)
        throw std::runtime_error("apply_sampled_coupling: zero expected degree");
  }
  switch (coupling.kind) {
    case CouplingFn::Kind::identity:
      sampled_rows(graph, u, out, scaling, [](double v) { return v; });
      break;
    case CouplingFn::Kind::sine:
      sampled_rows(graph, u, out, scaling, [](double v) { return std::sin(v); });
      break;
    case CouplingFn::Kind::custom:
      sampled_rows(graph, u, out, scaling, [&](double v) { return coupling.fn(v); });
      break;
  }
}

std::vector<double> apply_sampled_coupling(const SampledGraph& graph,
                                           std::span<const double> u,
                                           const CouplingFn& coupling,
                                           ScalingKind scaling) {
  std::vector<double> out(u.size());
  apply_sampled_coupling_into(graph, u, coupling, scaling, out);
  return out;
}

std::string matrix_to_csv(const CouplingMatrix& m) {
  std::string csv;
  csv.reserve(static_cast<std::size_t>(m.n) * m.n * 20);
  char buf[32];
  for (int i = 0; i < m.n; ++i) {
    const auto row = m.rowspan(i);
    for (int j = 0; j < m.n; ++j) {
      std::snprintf(buf, sizeof buf, j == 0 ? "%.17g" : ",%.17g", row[j]);
      csv += buf;
    }
    csv += '\n';
  }
  return csv;
}

}  // namespace graphdyn
