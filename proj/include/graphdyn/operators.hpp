#pragma once

#include <span>
#include <string>
#include <vector>

#include "graphdyn/functions.hpp"
#include "graphdyn/sampler.hpp"

namespace graphdyn {

enum class Provenance { averaged_V, galerkin_U, galerkin_W };
enum class KernelChoice { U, W };

/// How the sampled diffusion sum is scaled:
///   expected_degree: 1 / d_i          (degree-normalized)
///   edge_density:    1 / (n rho_n)    (alternative scaling)
enum class ScalingKind { expected_degree, edge_density };

const char* to_string(Provenance p);
const char* to_string(ScalingKind s);
ScalingKind scaling_from_string(const std::string& s);

/// Dense row-major coupling operator with provenance.
struct CouplingMatrix {
  int n = 0;
  Provenance provenance = Provenance::averaged_V;
  std::string kernel_id;  // graphon description, plus rho for averaged_V
  std::vector<double> entries;

  double operator()(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * n + j];
  }
  double& at(int i, int j) { return entries[static_cast<std::size_t>(i) * n + j]; }
  std::span<const double> rowspan(int i) const {
    return {entries.data() + static_cast<std::size_t>(i) * n,
            static_cast<std::size_t>(n)};
  }
  double row_mean(int i) const;
};

/// Averaged operator V_ij = Wbar_n(x_i, x_j) / G_i built from the truncated
/// kernel; row means are 1 by construction. Throws if some G_i vanishes.
CouplingMatrix averaged_matrix(const GraphonSpec& spec, double rho, int n);
CouplingMatrix averaged_matrix(const GraphonSpec& spec,
                               const DensitySchedule& schedule, int n);

/// Galerkin operator with entries n^2 * integral of the kernel over
/// I_i x I_j, from the untruncated kernel (U or W), assembled with the
/// analytic antiderivatives of the catalog.
CouplingMatrix galerkin_matrix(const GraphonSpec& spec, int n, KernelChoice kernel);

/// w_i = n^-1 sum_j M_ij D(u_j - u_i). Row-local fixed-order summation, so
/// results do not depend on the thread count.
void apply_coupling_into(const CouplingMatrix& m, std::span<const double> u,
                         const CouplingFn& coupling, std::span<double> out,
                         int threads = 1);
std::vector<double> apply_coupling(const CouplingMatrix& m,
                                   std::span<const double> u,
                                   const CouplingFn& coupling);

/// w_i = c_i sum_{j in N(i)} D(u_j - u_i), c_i per ScalingKind; O(|E|).
void apply_sampled_coupling_into(const SampledGraph& graph,
                                 std::span<const double> u,
                                 const CouplingFn& coupling, ScalingKind scaling,
                                 std::span<double> out);
std::vector<double> apply_sampled_coupling(const SampledGraph& graph,
                                           std::span<const double> u,
                                           const CouplingFn& coupling,
                                           ScalingKind scaling);

/// CSV dump for cross-implementation diffing: one row per line, entries as
/// 17-significant-digit decimals.
std::string matrix_to_csv(const CouplingMatrix& m);

}  // namespace graphdyn
