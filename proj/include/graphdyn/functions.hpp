#pragma once

#include <cmath>
#include <functional>
#include <string>

namespace graphdyn {

/// Coupling nonlinearity D: odd with D(0) = 0 for catalog members, with a
/// known Lipschitz constant. The sine coupling satisfies the sign condition
/// u D(u) >= 0 only for |u| <= pi.
struct CouplingFn {
  enum class Kind { identity, sine, custom };
  Kind kind = Kind::identity;
  std::string name = "identity";
  double lipschitz = 1.0;
  std::function<double(double)> fn;  // custom only

  double operator()(double u) const {
    switch (kind) {
      case Kind::identity:
        return u;
      case Kind::sine:
        return std::sin(u);
      case Kind::custom:
        return fn(u);
    }
    return 0.0;
  }

  static CouplingFn identity();
  static CouplingFn sine();
  static CouplingFn custom(std::string name, double lipschitz,
                           std::function<double(double)> fn);
};

/// Reaction term f with a known Lipschitz constant:
///   zero, affine(a, b): a + b u, sine_scaled(kappa): kappa sin(u)
struct ReactionFn {
  enum class Kind { zero, affine, sine_scaled };
  Kind kind = Kind::zero;
  double a = 0.0, b = 0.0, kappa = 0.0;

  double operator()(double u) const {
    switch (kind) {
      case Kind::zero:
        return 0.0;
      case Kind::affine:
        return a + b * u;
      case Kind::sine_scaled:
        return kappa * std::sin(u);
    }
    return 0.0;
  }
  double lipschitz() const {
    switch (kind) {
      case Kind::zero:
        return 0.0;
      case Kind::affine:
        return std::abs(b);
      case Kind::sine_scaled:
        return kappa;
    }
    return 0.0;
  }
  std::string describe() const;

  static ReactionFn zero();
  static ReactionFn affine(double a, double b);
  static ReactionFn sine_scaled(double kappa);
};

/// Bounded initial data g on I with exact cell averages.
///   constant(c), linear: g(x) = x, sine_wave(k): g(x) = sin(2 pi k x),
///   indicator(a, b): 1 on [a, b)
struct InitialCondition {
  enum class Kind { constant, linear, sine_wave, indicator };
  Kind kind = Kind::constant;
  double c = 0.0;
  int k = 1;
  double a = 0.0, b = 1.0;

  double operator()(double x) const;
  double sup_norm() const;
  /// Average of g over [lo, hi] via the closed-form antiderivative.
  double cell_average(double lo, double hi) const;
  std::string describe() const;

  static InitialCondition constant(double c);
  static InitialCondition linear();
  static InitialCondition sine_wave(int k);
  static InitialCondition indicator(double a, double b);
};

}  // namespace graphdyn
