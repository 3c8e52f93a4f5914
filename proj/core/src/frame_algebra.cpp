#include "frameforge/frame_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace frameforge {

FrameVector frame_cross(const FrameVector& a, const FrameVector& b, const Eps& e) {
  // (a_t T + a_n N + a_b B) x (b_t T + b_n N + b_b B) with the signed table.
  return {e.e1 * (a.n * b.b - a.b * b.n), e.e2 * (a.b * b.t - a.t * b.b),
          e.e3 * (a.t * b.n - a.n * b.t)};
}

double frame_dot(const FrameVector& a, const FrameVector& b, const Eps& e) {
  return e.e1 * a.t * b.t + e.e2 * a.n * b.n + e.e3 * a.b * b.b;
}

FrameVector row(const Mat3& M, int i) {
  const auto& r = M[static_cast<std::size_t>(i)];
  return {r[0], r[1], r[2]};
}

double eps_antisymmetry_defect(const Mat3& M, const Eps& e) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      worst = std::max(worst, std::abs(e[i] * M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                                       e[j] * M[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]));
  return worst;
}

double metric_compatibility_defect(const Mat3& M, const Eps& e) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      worst = std::max(worst, std::abs(M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * e[j] +
                                       M[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * e[i]));
  return worst;
}

FrameVector frame_components(const AmbientVector& v, const FrenetSample& f) {
  return {f.eps.e1 * inner(v, f.T), f.eps.e2 * inner(v, f.N), f.eps.e3 * inner(v, f.B)};
}

AmbientVector to_ambient(const FrameVector& a, const FrenetSample& f) {
  return a.t * f.T + a.n * f.N + a.b * f.B;
}

}  // namespace frameforge
