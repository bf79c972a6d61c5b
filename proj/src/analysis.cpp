#include "graphdyn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace graphdyn {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double quantile(const std::vector<double>& sorted, double p) {
  const std::size_t count = sorted.size();
  if (count == 1) return sorted[0];
  const double pos = p * static_cast<double>(count - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, count - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double step_l2_norm(std::span<const double> u) {
  require(!u.empty(), "step_l2_norm: empty state");
  double sum = 0.0;
  for (const double v : u) sum += v * v;
  return std::sqrt(sum / static_cast<double>(u.size()));
}

double sup_norm(std::span<const double> u) {
  require(!u.empty(), "sup_norm: empty state");
  double sup = 0.0;
  for (const double v : u) sup = std::max(sup, std::abs(v));
  return sup;
}

double gn_norm(std::span<const double> u, std::span<const double> weights) {
  require(!u.empty() && u.size() == weights.size(), "gn_norm: dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(weights[i] > 0.0))
      throw std::invalid_argument("gn_norm: weights must be positive");
    sum += weights[i] * u[i] * u[i];
  }
  return std::sqrt(sum / static_cast<double>(u.size()));
}

std::vector<double> restrict_to_coarse(std::span<const double> fine, int n) {
  const int m = static_cast<int>(fine.size());
  require(n >= 1 && m >= n && m % n == 0,
          "restrict_to_coarse: coarse size must divide the fine size");
  const int ratio = m / n;
  std::vector<double> coarse(n);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int r = 0; r < ratio; ++r) sum += fine[static_cast<std::size_t>(i) * ratio + r];
    coarse[i] = sum / ratio;
  }
  return coarse;
}

namespace {

double distance_at_snapshot(const std::vector<double>& a,
                            const std::vector<double>& b) {
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  if (na == nb) {
    double sum = 0.0;
    for (int i = 0; i < na; ++i) {
      const double d = a[i] - b[i];
      sum += d * d;
    }
    return sum / na;
  }
  const auto& fine = na > nb ? a : b;
  const auto& coarse = na > nb ? b : a;
  const auto restricted = restrict_to_coarse(fine, static_cast<int>(coarse.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    const double d = restricted[i] - coarse[i];
    sum += d * d;
  }
  return sum / static_cast<double>(coarse.size());
}

}  // namespace

double spacetime_l2_error(const Trajectory& a, const Trajectory& b) {
  require(a.snapshots() == b.snapshots() && a.snapshots() >= 2,
          "spacetime_l2_error: time grids differ");
  for (int k = 0; k < a.snapshots(); ++k)
    if (std::abs(a.times[k] - b.times[k]) > 1e-12 * std::max(1.0, std::abs(b.times[k])))
      throw std::invalid_argument("spacetime_l2_error: time grids differ");
  const int coarse = std::min(a.n, b.n);
  const int fine = std::max(a.n, b.n);
  require(fine % coarse == 0, "spacetime_l2_error: state dimensions are not nested");

  double integral = 0.0;
  double prev = distance_at_snapshot(a.states[0], b.states[0]);
  for (int k = 1; k < a.snapshots(); ++k) {
    const double cur = distance_at_snapshot(a.states[k], b.states[k]);
    integral += 0.5 * (prev + cur) * (a.times[k] - a.times[k - 1]);
    prev = cur;
  }
  return std::sqrt(integral);
}

double sup_gn_gap(const Trajectory& a, const Trajectory& b,
                  std::span<const double> weights) {
  require(a.n == b.n && a.snapshots() == b.snapshots(),
          "sup_gn_gap: trajectory shapes differ");
  std::vector<double> diff(a.n);
  double worst = 0.0;
  for (int k = 0; k < a.snapshots(); ++k) {
    for (int i = 0; i < a.n; ++i) diff[i] = a.states[k][i] - b.states[k][i];
    worst = std::max(worst, gn_norm(diff, weights));
  }
  return worst;
}

double kernel_l4_distance(const GraphonSpec& spec, double rho, int n) {
  if (!spec.fourth_integrable())
    throw std::domain_error("kernel_l4_distance: kernel is not L4-integrable");
  const CouplingMatrix u = galerkin_matrix(spec, n, KernelChoice::U);
  const CouplingMatrix v = averaged_matrix(spec, rho, n);
  double sum = 0.0;
  for (std::size_t idx = 0; idx < u.entries.size(); ++idx) {
    const double d = u.entries[idx] - v.entries[idx];
    const double d2 = d * d;
    sum += d2 * d2;
  }
  return std::pow(sum / (static_cast<double>(n) * n), 0.25);
}

double kernel_l4_distance(const GraphonSpec& spec, const DensitySchedule& schedule,
                          int n) {
  return kernel_l4_distance(spec, schedule.rho(n), n);
}

DissipationCheck dissipation_identity_check(int n,
                                            std::span<const double> w_rowmajor,
                                            std::span<const double> theta) {
  require(n >= 1 && w_rowmajor.size() == static_cast<std::size_t>(n) * n &&
              theta.size() == static_cast<std::size_t>(n),
          "dissipation_identity_check: dimension mismatch");
  double scale = 0.0;
  for (const double w : w_rowmajor) scale = std::max(scale, std::abs(w));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double wij = w_rowmajor[static_cast<std::size_t>(i) * n + j];
      const double wji = w_rowmajor[static_cast<std::size_t>(j) * n + i];
      if (std::abs(wij - wji) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("dissipation_identity_check: matrix not symmetric");
    }

  DissipationCheck check;
  for (int i = 0; i < n; ++i) {
    const double ti = theta[i];
    const double* row = w_rowmajor.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double d = theta[j] - ti;
      check.lhs += row[j] * d * ti;
      check.rhs += row[j] * d * d;
    }
  }
  check.rhs *= -0.5;
  return check;
}

double a_priori_bound(double lipschitz, double T, double sup0) {
  const double lt = 3.0 * lipschitz * T;
  return (1.0 + lt * std::exp(lt)) * sup0;
}

double median(std::vector<double> values) {
  require(!values.empty(), "median: empty sample");
  std::sort(values.begin(), values.end());
  return quantile(values, 0.5);
}

double interquartile_range(std::vector<double> values) {
  require(!values.empty(), "interquartile_range: empty sample");
  std::sort(values.begin(), values.end());
  return quantile(values, 0.75) - quantile(values, 0.25);
}

std::string report_to_json(const ErrorReport& report) {
  nlohmann::ordered_json j;
  j["study"] = report.study;
  j["graphon"] = report.graphon;
  j["gamma"] = report.gamma;
  j["T"] = report.T;
  j["M"] = report.M;
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : report.records) {
    nlohmann::ordered_json jr;
    jr["n"] = r.n;
    jr["seed"] = r.seed;
    if (r.failed) {
      jr["spacetime_l2"] = nullptr;
      jr["sup_gn_gap"] = nullptr;
      jr["failed"] = true;
      jr["error"] = r.error;
    } else {
      jr["spacetime_l2"] = r.spacetime_l2;
      jr["sup_gn_gap"] = r.sup_gn_gap;
    }
    j["records"].push_back(std::move(jr));
  }
  j["aggregates"] = nlohmann::ordered_json::array();
  for (const auto& a : report.aggregates) {
    nlohmann::ordered_json ja;
    ja["n"] = a.n;
    ja["median"] = a.median;
    ja["iqr"] = a.iqr;
    j["aggregates"].push_back(std::move(ja));
  }
  return j.dump(2) + "\n";
}

ErrorReport report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ErrorReport report;
  report.study = j.at("study").get<std::string>();
  report.graphon = j.at("graphon").get<std::string>();
  report.gamma = j.at("gamma").get<double>();
  report.T = j.at("T").get<double>();
  report.M = j.at("M").get<int>();
  for (const auto& jr : j.at("records")) {
    ErrorRecord r;
    r.n = jr.at("n").get<int>();
    r.seed = jr.at("seed").get<std::uint64_t>();
    if (jr.contains("failed") && jr.at("failed").get<bool>()) {
      r.failed = true;
      r.error = jr.value("error", "");
    } else {
      r.spacetime_l2 = jr.at("spacetime_l2").get<double>();
      r.sup_gn_gap = jr.at("sup_gn_gap").get<double>();
    }
    report.records.push_back(std::move(r));
  }
  for (const auto& ja : j.at("aggregates")) {
    ErrorAggregate a;
    a.n = ja.at("n").get<int>();
    a.median = ja.at("median").get<double>();
    a.iqr = ja.at("iqr").get<double>();
    report.aggregates.push_back(a);
  }
  return report;
}

}  // namespace graphdyn
