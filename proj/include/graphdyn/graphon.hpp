#pragma once

#include <functional>
#include <string>
#include <vector>

namespace graphdyn {

enum class GraphonKind { power_law, constant, block };

/// Analytic symmetric kernel on the unit square with closed-form integrals.
///
/// Catalog:
///   power_law(alpha): W(x,y) = (1-alpha)^2 (xy)^-alpha, alpha in (0,1),
///                     singular along the axes; evaluated on (0,1]^2 only
///   constant(c):      W(x,y) = c, c >= 0
///   block(v, b):      W(x,y) = b[p][q] on V_p x V_q, where the V_p are the
///                     half-open intervals (v_p, v_{p+1}] of a partition of
///                     [0,1] (first interval closed at 0). Boundary ties go
///                     left, the same orientation as the grid cells, so a
///                     grid point i/n on a block boundary agrees with the
///                     block covering its cell.
struct GraphonSpec {
  GraphonKind kind = GraphonKind::constant;
  double alpha = 0.0;                       // power_law exponent
  double c = 1.0;                           // constant value
  std::vector<double> boundaries;           // block: 0 = v_0 < ... < v_k = 1
  std::vector<std::vector<double>> blocks;  // block: symmetric nonneg k x k

  static GraphonSpec power_law(double alpha);
  static GraphonSpec constant(double c);
  static GraphonSpec block(std::vector<double> boundaries,
                           std::vector<std::vector<double>> blocks);

  /// Integrability flags: power_law is L2 iff alpha < 1/2 and L4 iff
  /// alpha < 1/4; the bounded kinds carry both.
  bool square_integrable() const;
  bool fourth_integrable() const;

  int block_count() const { return static_cast<int>(blocks.size()); }
  int block_index(double x) const;  // block kind only

  std::string describe() const;
};

/// Density schedule rho_n = n^-gamma with gamma in (0,1), so that
/// rho_n -> 0 and n rho_n -> oo.
struct DensitySchedule {
  double gamma;
  explicit DensitySchedule(double gamma);
  double rho(int n) const;
};

/// Throws if the spec/schedule pairing is invalid (power_law needs
/// alpha < gamma for the degree asymptotics to apply).
void validate_pairing(const GraphonSpec& spec, const DensitySchedule& schedule);

/// Diagnostic summary of the kernel assumptions at resolution n.
/// delta_sup is reported, never asserted: it is the worst relative deviation
/// of the truncated row Riemann sums from the degree function over the
/// interior grid points {1/n, ..., (n-1)/n}.
struct AssumptionReport {
  int n = 0;
  double total_mass = 0;     // integral of W over the unit square
  double nu = 0;             // inf_x of the degree function
  double delta_sup = 0;      // max_i |n^-1 sum_j Wbar(x_i,x_j) / deg(x_i) - 1|
  double l4_row_bound = 0;   // n^-2 sum_ij Wbar(x_i,x_j)^2
  bool l2 = false;
  bool l4 = false;
};

double eval_w(const GraphonSpec& spec, double x, double y);
double truncate_w(const GraphonSpec& spec, double rho, double x, double y);

/// Degree function deg(x) = integral of W(x, .) over I, closed form.
double degree_g(const GraphonSpec& spec, double x);

/// Degree-normalized kernel U(x,y) = W(x,y) / deg(x).
double eval_u(const GraphonSpec& spec, double x, double y);

double total_mass(const GraphonSpec& spec);

/// inf over x in (0,1] of deg(x); throws if the infimum is not positive.
double nu_inf(const GraphonSpec& spec);

AssumptionReport check_assumptions(const GraphonSpec& spec, double rho, int n);
AssumptionReport check_assumptions(const GraphonSpec& spec,
                                   const DensitySchedule& schedule, int n);

/// Exact integrals of W and U = W/deg over [x0,x1] x [y0,y1] inside I^2.
double cell_integral_w(const GraphonSpec& spec, double x0, double x1,
                       double y0, double y1);
double cell_integral_u(const GraphonSpec& spec, double x0, double x1,
                       double y0, double y1);

/// 16-point tensor Gauss-Legendre with a one-level refinement check; throws
/// when the two levels disagree beyond 1e-8. Generic fallback for kernels
/// without a closed form; unusable next to the power-law singularity.
double cell_integral_quadrature(const std::function<double(double, double)>& f,
                                double x0, double x1, double y0, double y1);

/// O(1)-per-pair evaluation of W on the uniform grid {(i+1)/n} after an
/// O(n) setup. Also provides the exact Galerkin cell entries
///   n^2 * integral of the kernel over I_i x I_j.
/// Nodes are 0-based throughout.
class GridKernel {
 public:
  GridKernel(const GraphonSpec& spec, int n);

  int n() const { return n_; }
  double w(int i, int j) const;
  double truncated(double rho_inv, int i, int j) const;
  double galerkin_w(int i, int j) const;
  double galerkin_u(int i, int j) const;

 private:
  GraphonSpec spec_;
  int n_ = 0;
  double scale_ = 0;               // power_law: (1-alpha)^2
  std::vector<double> f_;          // power_law: x_i^-alpha
  std::vector<double> npf_;        // power_law: n * (x_i^{1-a} - x_{i-1}^{1-a})
  std::vector<int> cell_;          // block: node -> block index
  std::vector<double> nov_;        // block: n * |I_i ^ V_p|, row-major n x k
  std::vector<double> deg_;        // block: degree per block interval
};

}  // namespace graphdyn
