#include "graphdyn/functions.hpp"

#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace graphdyn {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

CouplingFn CouplingFn::identity() { return CouplingFn{}; }

CouplingFn CouplingFn::sine() {
  CouplingFn d;
  d.kind = Kind::sine;
  d.name = "sine";
  d.lipschitz = 1.0;
  return d;
}

CouplingFn CouplingFn::custom(std::string name, double lipschitz,
                              std::function<double(double)> fn) {
  require(lipschitz > 0.0, "coupling: Lipschitz constant must be positive");
  require(static_cast<bool>(fn), "coupling: custom function required");
  CouplingFn d;
  d.kind = Kind::custom;
  d.name = std::move(name);
  d.lipschitz = lipschitz;
  d.fn = std::move(fn);
  return d;
}

std::string ReactionFn::describe() const {
  char buf[64];
  switch (kind) {
    case Kind::zero:
      return "zero";
    case Kind::affine:
      std::snprintf(buf, sizeof buf, "affine(%.12g,%.12g)", a, b);
      return buf;
    case Kind::sine_scaled:
      std::snprintf(buf, sizeof buf, "sine_scaled(%.12g)", kappa);
      return buf;
  }
  return "?";
}

ReactionFn ReactionFn::zero() { return ReactionFn{}; }

ReactionFn ReactionFn::affine(double a, double b) {
  ReactionFn f;
  f.kind = Kind::affine;
  f.a = a;
  f.b = b;
  return f;
}

ReactionFn ReactionFn::sine_scaled(double kappa) {
  require(kappa >= 0.0, "reaction: kappa must be nonnegative");
  ReactionFn f;
  f.kind = Kind::sine_scaled;
  f.kappa = kappa;
  return f;
}

double InitialCondition::operator()(double x) const {
  switch (kind) {
    case Kind::constant:
      return c;
    case Kind::linear:
      return x;
    case Kind::sine_wave:
      return std::sin(2.0 * std::numbers::pi * k * x);
    case Kind::indicator:
      return (x >= a && x < b) ? 1.0 : 0.0;
  }
  return 0.0;
}

double InitialCondition::sup_norm() const {
  switch (kind) {
    case Kind::constant:
      return std::abs(c);
    case Kind::linear:
      return 1.0;
    case Kind::sine_wave:
      return 1.0;
    case Kind::indicator:
      return 1.0;
  }
  return 0.0;
}

double InitialCondition::cell_average(double lo, double hi) const {
  const double width = hi - lo;
  switch (kind) {
    case Kind::constant:
      return c;
    case Kind::linear:
      return 0.5 * (lo + hi);
    case Kind::sine_wave: {
      const double w = 2.0 * std::numbers::pi * k;
      return (std::cos(w * lo) - std::cos(w * hi)) / (w * width);
    }
    case Kind::indicator: {
      const double cover = std::max(0.0, std::min(hi, b) - std::max(lo, a));
      return cover / width;
    }
  }
  return 0.0;
}

std::string InitialCondition::describe() const {
  char buf[64];
  switch (kind) {
    case Kind::constant:
      std::snprintf(buf, sizeof buf, "constant(%.12g)", c);
      return buf;
    case Kind::linear:
      return "linear";
    case Kind::sine_wave:
      std::snprintf(buf, sizeof buf, "sine_wave(%d)", k);
      return buf;
    case Kind::indicator:
      std::snprintf(buf, sizeof buf, "indicator(%.12g,%.12g)", a, b);
      return buf;
  }
  return "?";
}

InitialCondition InitialCondition::constant(double c) {
  InitialCondition g;
  g.kind = Kind::constant;
  g.c = c;
  return g;
}

InitialCondition InitialCondition::linear() {
  InitialCondition g;
  g.kind = Kind::linear;
  return g;
}

InitialCondition InitialCondition::sine_wave(int k) {
  require(k >= 1, "initial condition: wave number must be >= 1");
  InitialCondition g;
  g.kind = Kind::sine_wave;
  g.k = k;
  return g;
}

InitialCondition InitialCondition::indicator(double a, double b) {
  require(a >= 0.0 && a < b && b <= 1.0, "initial condition: need 0 <= a < b <= 1");
  InitialCondition g;
  g.kind = Kind::indicator;
  g.a = a;
  g.b = b;
  return g;
}

}  // namespace graphdyn
