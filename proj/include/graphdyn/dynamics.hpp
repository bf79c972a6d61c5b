#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "graphdyn/functions.hpp"
#include "graphdyn/operators.hpp"

namespace graphdyn {

enum class ModelKind { sampled, averaged, galerkin };

const char* to_string(ModelKind m);
ModelKind model_from_string(const std::string& s);

/// Non-owning handle to one of the three model families. The referenced
/// graph/matrix must outlive the model.
struct Model {
  ModelKind kind = ModelKind::averaged;
  const SampledGraph* graph = nullptr;
  const CouplingMatrix* matrix = nullptr;
  ScalingKind scaling = ScalingKind::expected_degree;

  static Model sampled(const SampledGraph& g,
                       ScalingKind scaling = ScalingKind::expected_degree);
  static Model averaged(const CouplingMatrix& m);
  static Model galerkin(const CouplingMatrix& m);
  int dim() const;
};

struct ModelConfig {
  Model model;
  CouplingFn coupling = CouplingFn::identity();
  ReactionFn reaction = ReactionFn::zero();
  double T = 1.0;
  double dt = 1e-3;  // 0: auto, 1e-3 * min(1, 1/row scale), fitted to T
  int output_stride = 0;  // 0: pick a divisor of the step count near 100 snapshots
  std::vector<double> weights;  // diagnostic norm weights; empty means all-ones
  int threads = 1;              // data parallelism inside the matvec
};

/// Step-function states of one run: one state vector per saved time, plus
/// per-snapshot sup and weighted norms. Times are uniformly spaced
/// dt * output_stride, starting at 0 and ending at T.
struct Trajectory {
  int n = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<double> sup_norms;
  std::vector<double> weighted_norms;
  std::uint64_t fingerprint = 0;

  int snapshots() const { return static_cast<int>(times.size()); }
  const std::vector<double>& final_state() const { return states.back(); }
};

/// Exact cell averages u_i(0) = n * integral of g over I_i.
std::vector<double> cell_average_ic(const InitialCondition& g, const Grid& grid);

/// Right-hand side: coupling term of the chosen model plus pointwise reaction.
void rhs_into(const ModelConfig& config, std::span<const double> u,
              std::span<double> out);
std::vector<double> rhs(const ModelConfig& config, std::span<const double> u);

/// Classic fixed-step RK4. Deterministic: fixed summation order everywhere,
/// snapshots every output_stride steps. Throws on state blow-up (|u| > 1e12)
/// and when T is not an integer multiple of dt.
Trajectory integrate(const ModelConfig& config, std::span<const double> u0);

/// Fine-resolution Galerkin run used as the continuum surrogate. M must be a
/// power of two. Kernel U corresponds to degree scaling, W to the nrho one.
Trajectory continuum_reference(const GraphonSpec& spec, KernelChoice kernel,
                               const InitialCondition& g, const ReactionFn& f,
                               const CouplingFn& coupling, int M, double T,
                               double dt, int output_stride = 0, int threads = 1);

/// Largest divisor of `steps` that is <= max(1, steps / target).
int choose_stride(long long steps, int target_snapshots = 100);

std::uint64_t fnv1a64(const std::string& s);

}  // namespace graphdyn
