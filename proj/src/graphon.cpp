#include "graphdyn/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace graphdyn {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_unit_interval(const GraphonSpec& spec, double x, double y) {
  if (spec.kind == GraphonKind::constant) return;  // defined everywhere
  if (!(x > 0.0 && x <= 1.0 && y > 0.0 && y <= 1.0))
    throw std::domain_error("graphon arguments must lie in (0,1]");
}

// integral of t^-alpha over [lo, hi], 0 <= lo < hi <= 1
double power_integral(double alpha, double lo, double hi) {
  const double p = 1.0 - alpha;
  return (std::pow(hi, p) - std::pow(lo, p)) / p;
}

double overlap(double lo, double hi, double a, double b) {
  return std::max(0.0, std::min(hi, b) - std::max(lo, a));
}

}  // namespace

GraphonSpec GraphonSpec::power_law(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "power_law: alpha must lie in (0,1)");
  GraphonSpec s;
  s.kind = GraphonKind::power_law;
  s.alpha = alpha;
  return s;
}

GraphonSpec GraphonSpec::constant(double c) {
  require(c >= 0.0, "constant: c must be nonnegative");
  GraphonSpec s;
  s.kind = GraphonKind::constant;
  s.c = c;
  return s;
}

GraphonSpec GraphonSpec::block(std::vector<double> boundaries,
                               std::vector<std::vector<double>> blocks) {
  require(boundaries.size() >= 2, "block: need at least one interval");
  require(boundaries.front() == 0.0 && boundaries.back() == 1.0,
          "block: boundaries must start at 0 and end at 1");
  for (std::size_t i = 1; i < boundaries.size(); ++i)
    require(boundaries[i] > boundaries[i - 1],
            "block: boundaries must be strictly increasing");
  const std::size_t k = boundaries.size() - 1;
  require(blocks.size() == k, "block: matrix must be k x k");
  double sum = 0.0;
  for (std::size_t p = 0; p < k; ++p) {
    require(blocks[p].size() == k, "block: matrix must be k x k");
    for (std::size_t q = 0; q < k; ++q) {
      require(blocks[p][q] >= 0.0, "block: entries must be nonnegative");
      require(blocks[p][q] == blocks[q][p], "block: matrix must be symmetric");
      sum += blocks[p][q];
    }
  }
  require(sum > 0.0, "block: matrix must have positive total");
  GraphonSpec s;
  s.kind = GraphonKind::block;
  s.boundaries = std::move(boundaries);
  s.blocks = std::move(blocks);
  return s;
}

bool GraphonSpec::square_integrable() const {
  return kind == GraphonKind::power_law ? alpha < 0.5 : true;
}

bool GraphonSpec::fourth_integrable() const {
  return kind == GraphonKind::power_law ? alpha < 0.25 : true;
}

int GraphonSpec::block_index(double x) const {
  // intervals (v_p, v_{p+1}], first closed at 0: same orientation as the
  // grid cells, so a grid point on a block boundary stays with its cell
  auto it = std::lower_bound(boundaries.begin(), boundaries.end(), x);
  const int idx = static_cast<int>(it - boundaries.begin()) - 1;
  return std::clamp(idx, 0, block_count() - 1);
}

std::string GraphonSpec::describe() const {
  char buf[64];
  switch (kind) {
    case GraphonKind::power_law:
      std::snprintf(buf, sizeof buf, "power_law(alpha=%.12g)", alpha);
      break;
    case GraphonKind::constant:
      std::snprintf(buf, sizeof buf, "constant(c=%.12g)", c);
      break;
    case GraphonKind::block:
      std::snprintf(buf, sizeof buf, "block(k=%d)", block_count());
      break;
  }
  return buf;
}

DensitySchedule::DensitySchedule(double gamma_) : gamma(gamma_) {
  require(gamma > 0.0 && gamma < 1.0, "density schedule: gamma must lie in (0,1)");
}

double DensitySchedule::rho(int n) const {
  require(n >= 2, "density schedule: n must be >= 2");
  return std::pow(static_cast<double>(n), -gamma);
}

void validate_pairing(const GraphonSpec& spec, const DensitySchedule& schedule) {
  if (spec.kind == GraphonKind::power_law && !(spec.alpha < schedule.gamma))
    throw std::invalid_argument("power_law pairing requires alpha < gamma");
}

double eval_w(const GraphonSpec& spec, double x, double y) {
  check_unit_interval(spec, x, y);
  switch (spec.kind) {
    case GraphonKind::power_law: {
      const double a = spec.alpha;
      return (1.0 - a) * (1.0 - a) * std::pow(x * y, -a);
    }
    case GraphonKind::constant:
      return spec.c;
    case GraphonKind::block:
      return spec.blocks[spec.block_index(x)][spec.block_index(y)];
  }
  return 0.0;
}

double truncate_w(const GraphonSpec& spec, double rho, double x, double y) {
  require(rho > 0.0 && rho <= 1.0, "truncate_w: rho must lie in (0,1]");
  return std::min(1.0 / rho, eval_w(spec, x, y));
}

double degree_g(const GraphonSpec& spec, double x) {
  check_unit_interval(spec, x, x);
  switch (spec.kind) {
    case GraphonKind::power_law:
      return (1.0 - spec.alpha) * std::pow(x, -spec.alpha);
    case GraphonKind::constant:
      return spec.c;
    case GraphonKind::block: {
      const int p = spec.block_index(x);
      double deg = 0.0;
      for (int q = 0; q < spec.block_count(); ++q)
        deg += spec.blocks[p][q] * (spec.boundaries[q + 1] - spec.boundaries[q]);
      return deg;
    }
  }
  return 0.0;
}

double eval_u(const GraphonSpec& spec, double x, double y) {
  const double deg = degree_g(spec, x);
  if (deg < std::numeric_limits<double>::min())
    throw std::domain_error("eval_u: degree function vanishes (singular kernel)");
  return eval_w(spec, x, y) / deg;
}

double total_mass(const GraphonSpec& spec) {
  switch (spec.kind) {
    case GraphonKind::power_law:
      return 1.0;  // (1-a)^2 * (1/(1-a))^2
    case GraphonKind::constant:
      return spec.c;
    case GraphonKind::block: {
      double mass = 0.0;
      for (int p = 0; p < spec.block_count(); ++p) {
        const double lp = spec.boundaries[p + 1] - spec.boundaries[p];
        for (int q = 0; q < spec.block_count(); ++q)
          mass += spec.blocks[p][q] * lp * (spec.boundaries[q + 1] - spec.boundaries[q]);
      }
      return mass;
    }
  }
  return 0.0;
}

namespace {

double nu_value(const GraphonSpec& spec) {
  switch (spec.kind) {
    case GraphonKind::power_law:
      return 1.0 - spec.alpha;  // deg is decreasing in x, infimum at x = 1
    case GraphonKind::constant:
      return spec.c;
    case GraphonKind::block: {
      double nu = std::numeric_limits<double>::infinity();
      for (int p = 0; p < spec.block_count(); ++p) {
        double deg = 0.0;
        for (int q = 0; q < spec.block_count(); ++q)
          deg += spec.blocks[p][q] * (spec.boundaries[q + 1] - spec.boundaries[q]);
        nu = std::min(nu, deg);
      }
      return nu;
    }
  }
  return 0.0;
}

}  // namespace

double nu_inf(const GraphonSpec& spec) {
  const double nu = nu_value(spec);
  if (!(nu > 0.0))
    throw std::domain_error("nu_inf: degree function is not bounded below by a positive constant");
  return nu;
}

AssumptionReport check_assumptions(const GraphonSpec& spec, double rho, int n) {
  require(n >= 2, "check_assumptions: n must be >= 2");
  require(rho > 0.0 && rho <= 1.0, "check_assumptions: rho must lie in (0,1]");
  AssumptionReport rep;
  rep.n = n;
  rep.total_mass = total_mass(spec);
  rep.nu = nu_value(spec);
  rep.l2 = spec.square_integrable();
  rep.l4 = spec.fourth_integrable();

  const GridKernel kernel(spec, n);
  const double rho_inv = 1.0 / rho;
  double l4sum = 0.0;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double rowsum = 0.0;
    double rowsq = 0.0;
    for (int j = 0; j < n; ++j) {
      const double wb = kernel.truncated(rho_inv, i, j);
      rowsum += wb;
      rowsq += wb * wb;
    }
    l4sum += rowsq;
    if (i + 1 < n) {  // interior grid points only
      const double deg = degree_g(spec, static_cast<double>(i + 1) / n);
      if (deg > 0.0) worst = std::max(worst, std::abs(rowsum / n / deg - 1.0));
    }
  }
  rep.delta_sup = worst;
  rep.l4_row_bound = l4sum / (static_cast<double>(n) * n);
  return rep;
}

AssumptionReport check_assumptions(const GraphonSpec& spec,
                                   const DensitySchedule& schedule, int n) {
  return check_assumptions(spec, schedule.rho(n), n);
}

double cell_integral_w(const GraphonSpec& spec, double x0, double x1,
                       double y0, double y1) {
  require(x0 >= 0.0 && x0 < x1 && x1 <= 1.0 && y0 >= 0.0 && y0 < y1 && y1 <= 1.0,
          "cell_integral: cell must be a nonempty rectangle inside the unit square");
  switch (spec.kind) {
    case GraphonKind::power_law: {
      const double a = spec.alpha;
      const double s = (1.0 - a) * (1.0 - a);
      return s * power_integral(a, x0, x1) * power_integral(a, y0, y1);
    }
    case GraphonKind::constant:
      return spec.c * (x1 - x0) * (y1 - y0);
    case GraphonKind::block: {
      double sum = 0.0;
      for (int p = 0; p < spec.block_count(); ++p) {
        const double ox = overlap(x0, x1, spec.boundaries[p], spec.boundaries[p + 1]);
        if (ox == 0.0) continue;
        for (int q = 0; q < spec.block_count(); ++q) {
          const double oy = overlap(y0, y1, spec.boundaries[q], spec.boundaries[q + 1]);
          if (oy > 0.0) sum += spec.blocks[p][q] * ox * oy;
        }
      }
      return sum;
    }
  }
  return 0.0;
}

double cell_integral_u(const GraphonSpec& spec, double x0, double x1,
                       double y0, double y1) {
  require(x0 >= 0.0 && x0 < x1 && x1 <= 1.0 && y0 >= 0.0 && y0 < y1 && y1 <= 1.0,
          "cell_integral: cell must be a nonempty rectangle inside the unit square");
  switch (spec.kind) {
    case GraphonKind::power_law:
      // U(x,y) = (1-a) y^-a does not depend on x
      return (x1 - x0) * (1.0 - spec.alpha) * power_integral(spec.alpha, y0, y1);
    case GraphonKind::constant: {
      if (spec.c < std::numeric_limits<double>::min())
        throw std::domain_error("cell_integral_u: degree function vanishes");
      return (x1 - x0) * (y1 - y0);
    }
    case GraphonKind::block: {
      double sum = 0.0;
      for (int p = 0; p < spec.block_count(); ++p) {
        const double ox = overlap(x0, x1, spec.boundaries[p], spec.boundaries[p + 1]);
        if (ox == 0.0) continue;
        double deg = 0.0;
        for (int q = 0; q < spec.block_count(); ++q)
          deg += spec.blocks[p][q] * (spec.boundaries[q + 1] - spec.boundaries[q]);
        if (deg < std::numeric_limits<double>::min())
          throw std::domain_error("cell_integral_u: degree function vanishes on a block");
        for (int q = 0; q < spec.block_count(); ++q) {
          const double oy = overlap(y0, y1, spec.boundaries[q], spec.boundaries[q + 1]);
          if (oy > 0.0) sum += spec.blocks[p][q] / deg * ox * oy;
        }
      }
      return sum;
    }
  }
  return 0.0;
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half)
constexpr double kGlNode[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeight[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

double gl16_tensor(const std::function<double(double, double)>& f, double x0,
                   double x1, double y0, double y1) {
  const double cx = 0.5 * (x0 + x1), hx = 0.5 * (x1 - x0);
  const double cy = 0.5 * (y0 + y1), hy = 0.5 * (y1 - y0);
  double xs[16], ws[16], ys[16];
  for (int k = 0; k < 8; ++k) {
    xs[2 * k] = cx - hx * kGlNode[k];
    xs[2 * k + 1] = cx + hx * kGlNode[k];
    ys[2 * k] = cy - hy * kGlNode[k];
    ys[2 * k + 1] = cy + hy * kGlNode[k];
    ws[2 * k] = ws[2 * k + 1] = kGlWeight[k];
  }
  double sum = 0.0;
  for (int a = 0; a < 16; ++a) {
    double inner = 0.0;
    for (int b = 0; b < 16; ++b) inner += ws[b] * f(xs[a], ys[b]);
    sum += ws[a] * inner;
  }
  return sum * hx * hy;
}

}  // namespace

double cell_integral_quadrature(const std::function<double(double, double)>& f,
                                double x0, double x1, double y0, double y1) {
  const double coarse = gl16_tensor(f, x0, x1, y0, y1);
  const double mx = 0.5 * (x0 + x1), my = 0.5 * (y0 + y1);
  const double fine = gl16_tensor(f, x0, mx, y0, my) + gl16_tensor(f, mx, x1, y0, my) +
                      gl16_tensor(f, x0, mx, my, y1) + gl16_tensor(f, mx, x1, my, y1);
  if (std::abs(coarse - fine) > 1e-8 * std::max(1.0, std::abs(fine)))
    throw std::runtime_error("cell quadrature failed to converge across refinement levels");
  return fine;
}

GridKernel::GridKernel(const GraphonSpec& spec, int n) : spec_(spec), n_(n) {
  require(n >= 2, "grid kernel: n must be >= 2");
  switch (spec_.kind) {
    case GraphonKind::power_law: {
      const double a = spec_.alpha;
      scale_ = (1.0 - a) * (1.0 - a);
      f_.resize(n_);
      npf_.resize(n_);
      double prev = 0.0;
      for (int i = 0; i < n_; ++i) {
        const double x = static_cast<double>(i + 1) / n_;
        f_[i] = std::pow(x, -a);
        const double cur = std::pow(x, 1.0 - a);
        npf_[i] = n_ * (cur - prev);
        prev = cur;
      }
      break;
    }
    case GraphonKind::constant:
      break;
    case GraphonKind::block: {
      const int k = spec_.block_count();
      cell_.resize(n_);
      nov_.assign(static_cast<std::size_t>(n_) * k, 0.0);
      for (int i = 0; i < n_; ++i) {
        cell_[i] = spec_.block_index(static_cast<double>(i + 1) / n_);
        const double lo = static_cast<double>(i) / n_;
        const double hi = static_cast<double>(i + 1) / n_;
        for (int p = 0; p < k; ++p)
          nov_[static_cast<std::size_t>(i) * k + p] =
              n_ * overlap(lo, hi, spec_.boundaries[p], spec_.boundaries[p + 1]);
      }
      deg_.resize(k);
      for (int p = 0; p < k; ++p) {
        double deg = 0.0;
        for (int q = 0; q < k; ++q)
          deg += spec_.blocks[p][q] * (spec_.boundaries[q + 1] - spec_.boundaries[q]);
        deg_[p] = deg;
      }
      break;
    }
  }
}

double GridKernel::w(int i, int j) const {
  switch (spec_.kind) {
    case GraphonKind::power_law:
      return scale_ * f_[i] * f_[j];
    case GraphonKind::constant:
      return spec_.c;
    case GraphonKind::block:
      return spec_.blocks[cell_[i]][cell_[j]];
  }
  return 0.0;
}

double GridKernel::truncated(double rho_inv, int i, int j) const {
  return std::min(rho_inv, w(i, j));
}

double GridKernel::galerkin_w(int i, int j) const {
  switch (spec_.kind) {
    case GraphonKind::power_law:
      return npf_[i] * npf_[j];  // n^2 (1-a)^2 A_i A_j with (1-a) A_i folded in
    case GraphonKind::constant:
      return spec_.c;
    case GraphonKind::block: {
      const int k = spec_.block_count();
      double sum = 0.0;
      for (int p = 0; p < k; ++p) {
        const double ox = nov_[static_cast<std::size_t>(i) * k + p];
        if (ox == 0.0) continue;
        for (int q = 0; q < k; ++q) {
          const double oy = nov_[static_cast<std::size_t>(j) * k + q];
          if (oy > 0.0) sum += spec_.blocks[p][q] * ox * oy;
        }
      }
      return sum;
    }
  }
  return 0.0;
}

double GridKernel::galerkin_u(int i, int j) const {
  switch (spec_.kind) {
    case GraphonKind::power_law:
      return npf_[j];  // n * (x_j^{1-a} - x_{j-1}^{1-a}); no x dependence
    case GraphonKind::constant:
      if (spec_.c < std::numeric_limits<double>::min())
        throw std::domain_error("galerkin_u: degree function vanishes");
      return 1.0;
    case GraphonKind::block: {
      const int k = spec_.block_count();
      double sum = 0.0;
      for (int p = 0; p < k; ++p) {
        const double ox = nov_[static_cast<std::size_t>(i) * k + p];
        if (ox == 0.0) continue;
        if (deg_[p] < std::numeric_limits<double>::min())
          throw std::domain_error("galerkin_u: degree function vanishes on a block");
        for (int q = 0; q < k; ++q) {
          const double oy = nov_[static_cast<std::size_t>(j) * k + q];
          if (oy > 0.0) sum += spec_.blocks[p][q] / deg_[p] * ox * oy;
        }
      }
      return sum;
    }
  }
  return 0.0;
}

}  // namespace graphdyn
