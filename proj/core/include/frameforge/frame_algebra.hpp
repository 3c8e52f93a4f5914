#pragma once

#include <array>

#include "frameforge/frenet.hpp"

namespace frameforge {

// Which transcription of a displayed formula to evaluate. Corrected forms are
// the ones the frame algebra actually produces; Printed reproduces the typeset
// expressions, slips included, for comparison.
enum class Formulas { Corrected, Printed };

// Components in the {T, N, B} basis. `tg` carries the coefficient of the
// ambient T x gamma term that curls along s produce; it lies outside the frame
// span and is kept apart from the frame components.
struct FrameVector {
  double t = 0.0;
  double n = 0.0;
  double b = 0.0;
  double tg = 0.0;

  double operator[](int i) const { return i == 0 ? t : (i == 1 ? n : b); }
  FrameVector& operator+=(const FrameVector& o) {
    t += o.t;
    n += o.n;
    b += o.b;
    tg += o.tg;
    return *this;
  }
  friend FrameVector operator+(FrameVector a, const FrameVector& b) { return a += b; }
  friend FrameVector operator-(const FrameVector& a, const FrameVector& b) {
    return {a.t - b.t, a.n - b.n, a.b - b.b, a.tg - b.tg};
  }
  friend FrameVector operator*(double s, const FrameVector& a) {
    return {s * a.t, s * a.n, s * a.b, s * a.tg};
  }
};

inline constexpr FrameVector kT{1, 0, 0};
inline constexpr FrameVector kN{0, 1, 0};
inline constexpr FrameVector kB{0, 0, 1};

// T x N = e3 B, N x B = e1 T, B x T = e2 N, extended antisymmetrically.
FrameVector frame_cross(const FrameVector& a, const FrameVector& b, const Eps& e);

// Metric pairing of frame components: e1 a_t b_t + e2 a_n b_n + e3 a_b b_b.
double frame_dot(const FrameVector& a, const FrameVector& b, const Eps& e);

using Mat3 = std::array<std::array<double, 3>, 3>;

// Row i of M applied to (T, N, B).
FrameVector row(const Mat3& M, int i);

// max |(D M)_ij + (D M)_ji| with D = diag(eps): the left-weighted form.
double eps_antisymmetry_defect(const Mat3& M, const Eps& e);
// max |(M D)_ij + (M D)_ji|: metric compatibility <dX_i, X_j> + <X_i, dX_j> = 0.
double metric_compatibility_defect(const Mat3& M, const Eps& e);

// Component of an ambient vector along the frame, e_X <v, X>.
FrameVector frame_components(const AmbientVector& v, const FrenetSample& f);
AmbientVector to_ambient(const FrameVector& a, const FrenetSample& f);

}  // namespace frameforge
