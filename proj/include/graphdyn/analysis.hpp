#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graphdyn/dynamics.hpp"

namespace graphdyn {

/// Discrete L2 norm sqrt(n^-1 sum u_i^2); equals the L2(I) norm of the
/// induced step function.
double step_l2_norm(std::span<const double> u);

double sup_norm(std::span<const double> u);

/// Weighted norm sqrt(n^-1 sum G_i u_i^2); throws on nonpositive weights.
double gn_norm(std::span<const double> u, std::span<const double> weights);

/// Exact L2 projection between nested step spaces: coarse value = mean of
/// the M/n fine values in the cell. Throws unless n divides the fine size.
std::vector<double> restrict_to_coarse(std::span<const double> fine, int n);

/// sqrt of the trapezoidal time integral of the squared step-L2 distance.
/// Requires equal time grids; nested state dimensions are compared after
/// restriction to the coarser grid.
double spacetime_l2_error(const Trajectory& a, const Trajectory& b);

/// max over snapshots of the weighted-norm gap; dimensions must match.
double sup_gn_gap(const Trajectory& a, const Trajectory& b,
                  std::span<const double> weights);

/// Exact L4(I^2) distance between the Galerkin step kernel U_n (cell
/// integrals) and the averaged step kernel V_n (grid-point values):
/// (n^-2 sum |U_ij - V_ij|^4)^(1/4). Requires the L4 integrability flag.
double kernel_l4_distance(const GraphonSpec& spec, double rho, int n);
double kernel_l4_distance(const GraphonSpec& spec, const DensitySchedule& schedule,
                          int n);

struct DissipationCheck {
  double lhs = 0;  // sum_ij W_ij (theta_j - theta_i) theta_i
  double rhs = 0;  // -1/2 sum_ij W_ij (theta_j - theta_i)^2
};

/// Both sides of the discrete dissipation identity; throws if the matrix is
/// asymmetric beyond 1e-12 relative.
DissipationCheck dissipation_identity_check(int n, std::span<const double> w_rowmajor,
                                            std::span<const double> theta);

/// (1 + 3 L T e^{3 L T}) * sup0, the a priori sup bound constant.
double a_priori_bound(double lipschitz, double T, double sup0);

// ---------------------------------------------------------------------------
// Convergence-study reports

struct ErrorRecord {
  int n = 0;
  std::uint64_t seed = 0;
  double spacetime_l2 = 0;
  double sup_gn_gap = 0;
  bool failed = false;
  std::string error;
};

struct ErrorAggregate {
  int n = 0;
  double median = 0;
  double iqr = 0;
};

struct ErrorReport {
  std::string study;
  std::string graphon;
  double gamma = 0;
  double T = 0;
  int M = 0;
  std::vector<ErrorRecord> records;
  std::vector<ErrorAggregate> aggregates;
};

/// Median / interquartile range with linearly interpolated quantiles.
double median(std::vector<double> values);
double interquartile_range(std::vector<double> values);

/// Deterministic JSON serialization (fixed field order, two-space indent).
std::string report_to_json(const ErrorReport& report);
ErrorReport report_from_json(const std::string& text);

}  // namespace graphdyn
