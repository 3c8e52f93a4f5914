#pragma once

#include <array>
#include <cmath>

namespace frameforge {

// Number of leading negative-signature axes of R^4_v.
struct MetricIndex {
  int v = 0;
  friend bool operator==(MetricIndex, MetricIndex) = default;
};

struct AmbientVector {
  std::array<double, 4> x{};
  MetricIndex idx{};

  AmbientVector() = default;
  AmbientVector(std::array<double, 4> c, MetricIndex m) : x(c), idx(m) {}

  double& operator[](int i) { return x[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }

  AmbientVector& operator+=(const AmbientVector& o);
  AmbientVector& operator-=(const AmbientVector& o);
  AmbientVector& operator*=(double a);
};

AmbientVector operator+(AmbientVector a, const AmbientVector& b);
AmbientVector operator-(AmbientVector a, const AmbientVector& b);
AmbientVector operator-(AmbientVector a);
AmbientVector operator*(double s, AmbientVector a);
AmbientVector operator*(AmbientVector a, double s);
AmbientVector operator/(AmbientVector a, double s);

enum class CausalCharacter { Spacelike, Timelike, Lightlike };

inline constexpr double kLightlikeTol = 1e-10;

// Sign of axis i under index v: -1 for the first v axes.
inline double axis_sign(int i, MetricIndex m) { return i < m.v ? -1.0 : 1.0; }

double inner(const AmbientVector& u, const AmbientVector& w);
double norm(const AmbientVector& u);
CausalCharacter causal_character(const AmbientVector& u, double tol = kLightlikeTol);
const char* to_string(CausalCharacter c);

// +1 for spacelike, -1 for timelike; lightlike input is rejected.
int causal_sign(const AmbientVector& u, double tol = kLightlikeTol);

// Euclidean determinant of the 4x4 matrix whose columns are a, b, c, d.
double det4(const AmbientVector& a, const AmbientVector& b, const AmbientVector& c,
            const AmbientVector& d);

// The vector X with <X, w> = det[w, a, b, c] for every w. Orthogonal to a, b, c
// under the ambient metric.
AmbientVector generalized_cross(const AmbientVector& a, const AmbientVector& b,
                                const AmbientVector& c);

}  // namespace frameforge
