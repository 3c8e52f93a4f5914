#pragma once

#include <cmath>
#include <random>

#include "frameforge/congruence.hpp"

namespace ff_test {

using namespace frameforge;

inline constexpr double kPi = 3.14159265358979323846;

// Default rotating fixture: small circle of radius 1/sqrt2, rotated in xi and eta.
inline RotationCongruence rot_spec(std::size_t ns = 161, std::size_t n = 13) {
  RotationCongruence rc;
  rc.base = AnalyticCurve::small_circle(1.0 / std::sqrt(2.0));
  const double r = rc.base.r;
  rc.A.w = {0.3, 0.0, 1.0, 0.0, 0.0, 1.5};
  rc.C.w = rc.A.w;
  rc.origin = {r * kPi / 4, 0.0, 0.0};
  rc.extent = {r * kPi / 2, 0.5, 0.5};
  rc.shape = {ns, n, n};
  return rc;
}

// Rigid copies of one curve: no xi or eta dependence at all.
inline RotationCongruence const_spec(AnalyticCurve base, std::size_t ns = 41, std::size_t n = 9) {
  RotationCongruence rc;
  rc.base = base;
  const auto [a, b] = base.default_interval();
  rc.origin = {a, 0.0, 0.0};
  rc.extent = {b - a, 0.5, 0.5};
  rc.shape = {ns, n, n};
  return rc;
}

inline const CongruenceGrid& rot_grid() {
  static const CongruenceGrid g = build_congruence(rot_spec());
  return g;
}

inline double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

// Deterministic source for hand-rolled property generators.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  double uniform(double a = -1.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int sign() { return uniform() < 0 ? -1 : 1; }
  Eps eps() { return {sign(), sign(), sign()}; }
  AmbientVector vec(int v) { return AmbientVector({uniform(), uniform(), uniform(), uniform()}, MetricIndex{v}); }
};

}  // namespace ff_test
