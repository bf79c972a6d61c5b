#include "graphdyn/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace graphdyn {

namespace {

constexpr double kBlowUpGuard = 1e12;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void add_reaction(const ReactionFn& f, std::span<const double> u,
                  std::span<double> out) {
  const int n = static_cast<int>(u.size());
  switch (f.kind) {
    case ReactionFn::Kind::zero:
      return;
    case ReactionFn::Kind::affine:
      for (int i = 0; i < n; ++i) out[i] += f.a + f.b * u[i];
      return;
    case ReactionFn::Kind::sine_scaled:
      for (int i = 0; i < n; ++i) out[i] += f.kappa * std::sin(u[i]);
      return;
  }
}

}  // namespace

const char* to_string(ModelKind m) {
  switch (m) {
    case ModelKind::sampled:
      return "sampled";
    case ModelKind::averaged:
      return "averaged";
    case ModelKind::galerkin:
      return "galerkin";
  }
  return "?";
}

ModelKind model_from_string(const std::string& s) {
  if (s == "sampled") return ModelKind::sampled;
  if (s == "averaged") return ModelKind::averaged;
  if (s == "galerkin") return ModelKind::galerkin;
  throw std::invalid_argument("unknown model: " + s);
}

Model Model::sampled(const SampledGraph& g, ScalingKind scaling) {
  Model m;
  m.kind = ModelKind::sampled;
  m.graph = &g;
  m.scaling = scaling;
  return m;
}

Model Model::averaged(const CouplingMatrix& mat) {
  Model m;
  m.kind = ModelKind::averaged;
  m.matrix = &mat;
  return m;
}

Model Model::galerkin(const CouplingMatrix& mat) {
  Model m;
  m.kind = ModelKind::galerkin;
  m.matrix = &mat;
  return m;
}

int Model::dim() const {
  return kind == ModelKind::sampled ? graph->n : matrix->n;
}

std::vector<double> cell_average_ic(const InitialCondition& g, const Grid& grid) {
  require(grid.n >= 2, "cell_average_ic: invalid grid");
  std::vector<double> u0(grid.n);
  for (int i = 0; i < grid.n; ++i)
    u0[i] = g.cell_average(grid.cell_lo(i), grid.cell_hi(i));
  return u0;
}

void rhs_into(const ModelConfig& config, std::span<const double> u,
              std::span<double> out) {
  require(static_cast<int>(u.size()) == config.model.dim() && out.size() == u.size(),
          "rhs: dimension mismatch");
  switch (config.model.kind) {
    case ModelKind::sampled:
      apply_sampled_coupling_into(*config.model.graph, u, config.coupling,
                                  config.model.scaling, out);
      break;
    case ModelKind::averaged:
    case ModelKind::galerkin:
      apply_coupling_into(*config.model.matrix, u, config.coupling, out,
                          config.threads);
      break;
  }
  add_reaction(config.reaction, u, out);
}

std::vector<double> rhs(const ModelConfig& config, std::span<const double> u) {
  std::vector<double> out(u.size());
  rhs_into(config, u, out);
  return out;
}

int choose_stride(long long steps, int target_snapshots) {
  long long s = std::max(1LL, steps / std::max(1, target_snapshots));
  while (s > 1 && steps % s != 0) --s;
  return static_cast<int>(s);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

namespace {

std::uint64_t config_fingerprint(const ModelConfig& config, int n, double dt) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s|%s|%s|%s|n=%d|T=%.17g|dt=%.17g|stride=%d",
                to_string(config.model.kind), config.coupling.name.c_str(),
                config.reaction.describe().c_str(),
                config.model.kind == ModelKind::sampled
                    ? to_string(config.model.scaling)
                    : to_string(config.model.matrix->provenance),
                n, config.T, dt, config.output_stride);
  return fnv1a64(buf);
}

// max_i of the row scale of the diffusion operator: row mean for the dense
// operators, scaled realized degree for the sampled one
double coupling_row_scale(const Model& model) {
  double scale = 0.0;
  if (model.kind == ModelKind::sampled) {
    const SampledGraph& g = *model.graph;
    for (int i = 0; i < g.n; ++i) {
      const double rowsize = static_cast<double>(g.row(i).size());
      const double ci = model.scaling == ScalingKind::expected_degree
                            ? 1.0 / g.expected_degrees[i]
                            : 1.0 / (g.n * g.rho);
      scale = std::max(scale, ci * rowsize);
    }
  } else {
    for (int i = 0; i < model.matrix->n; ++i)
      scale = std::max(scale, model.matrix->row_mean(i));
  }
  return scale;
}

}  // namespace

Trajectory integrate(const ModelConfig& config, std::span<const double> u0) {
  const int n = config.model.dim();
  require(static_cast<int>(u0.size()) == n, "integrate: dimension mismatch");
  require(config.dt >= 0.0 && config.T > 0.0, "integrate: need dt >= 0 and T > 0");
  double dt = config.dt;
  if (dt == 0.0) {
    const double scale = coupling_row_scale(config.model);
    const double raw = 1e-3 * std::min(1.0, scale > 0.0 ? 1.0 / scale : 1.0);
    const auto auto_steps = static_cast<long long>(std::ceil(config.T / raw - 1e-9));
    dt = config.T / static_cast<double>(std::max(1LL, auto_steps));
  }
  require(dt > 0.0 && dt <= config.T, "integrate: need 0 < dt <= T");
  if (!config.weights.empty())
    require(static_cast<int>(config.weights.size()) == n,
            "integrate: weight dimension mismatch");

  const long long steps = std::llround(config.T / dt);
  require(steps >= 1 && std::abs(steps * dt - config.T) <= 1e-9 * std::max(1.0, config.T),
          "integrate: T must be an integer multiple of dt");
  const int stride =
      config.output_stride > 0 ? config.output_stride : choose_stride(steps);
  require(steps % stride == 0, "integrate: output_stride must divide the step count");

  Trajectory traj;
  traj.n = n;
  traj.fingerprint = config_fingerprint(config, n, dt);
  const int snapshots = static_cast<int>(steps / stride) + 1;
  traj.times.reserve(snapshots);
  traj.states.reserve(snapshots);
  traj.sup_norms.reserve(snapshots);
  traj.weighted_norms.reserve(snapshots);

  std::vector<double> u(u0.begin(), u0.end());
  std::vector<double> k1(n), k2(n), k3(n), k4(n), stage(n);

  auto snapshot = [&](long long step) {
    traj.times.push_back(static_cast<double>(step) * dt);
    traj.states.push_back(u);
    double sup = 0.0, wsum = 0.0;
    for (int i = 0; i < n; ++i) {
      sup = std::max(sup, std::abs(u[i]));
      const double g = config.weights.empty() ? 1.0 : config.weights[i];
      wsum += g * u[i] * u[i];
    }
    traj.sup_norms.push_back(sup);
    traj.weighted_norms.push_back(std::sqrt(wsum / n));
  };

  snapshot(0);
  for (long long step = 1; step <= steps; ++step) {
    rhs_into(config, u, k1);
    for (int i = 0; i < n; ++i) stage[i] = u[i] + 0.5 * dt * k1[i];
    rhs_into(config, stage, k2);
    for (int i = 0; i < n; ++i) stage[i] = u[i] + 0.5 * dt * k2[i];
    rhs_into(config, stage, k3);
    for (int i = 0; i < n; ++i) stage[i] = u[i] + dt * k3[i];
    rhs_into(config, stage, k4);
    for (int i = 0; i < n; ++i)
      u[i] += dt / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);

    for (int i = 0; i < n; ++i)
      if (!(std::abs(u[i]) <= kBlowUpGuard))
        throw std::runtime_error("integrate: state blow-up (misconfigured run)");
    if (step % stride == 0) snapshot(step);
  }
  return traj;
}

Trajectory continuum_reference(const GraphonSpec& spec, KernelChoice kernel,
                               const InitialCondition& g, const ReactionFn& f,
                               const CouplingFn& coupling, int M, double T,
                               double dt, int output_stride, int threads) {
  require(M >= 2 && (M & (M - 1)) == 0, "continuum_reference: M must be a power of two");
  const CouplingMatrix mat = galerkin_matrix(spec, M, kernel);
  ModelConfig config;
  config.model = Model::galerkin(mat);
  config.coupling = coupling;
  config.reaction = f;
  config.T = T;
  config.dt = dt;
  config.output_stride = output_stride;
  config.threads = threads;
  const auto u0 = cell_average_ic(g, build_grid(M));
  return integrate(config, u0);
}

}  // namespace graphdyn
