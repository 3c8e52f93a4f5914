#include "frameforge/metric.hpp"

#include "frameforge/errors.hpp"

namespace frameforge {

AmbientVector& AmbientVector::operator+=(const AmbientVector& o) {
  for (int i = 0; i < 4; ++i) (*this)[i] += o[i];
  return *this;
}

AmbientVector& AmbientVector::operator-=(const AmbientVector& o) {
  for (int i = 0; i < 4; ++i) (*this)[i] -= o[i];
  return *this;
}

AmbientVector& AmbientVector::operator*=(double a) {
  for (auto& c : x) c *= a;
  return *this;
}

AmbientVector operator+(AmbientVector a, const AmbientVector& b) { return a += b; }
AmbientVector operator-(AmbientVector a, const AmbientVector& b) { return a -= b; }
AmbientVector operator-(AmbientVector a) { return a *= -1.0; }
AmbientVector operator*(double s, AmbientVector a) { return a *= s; }
AmbientVector operator*(AmbientVector a, double s) { return a *= s; }
AmbientVector operator/(AmbientVector a, double s) { return a *= 1.0 / s; }

double inner(const AmbientVector& u, const AmbientVector& w) {
  if (u.idx != w.idx) throw ContractViolation("inner: metric index mismatch");
  double neg = 0.0;
  double pos = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (i < u.idx.v)
      neg += u[i] * w[i];
    else
      pos += u[i] * w[i];
  }
  return pos - neg;
}

double norm(const AmbientVector& u) { return std::sqrt(std::abs(inner(u, u))); }

CausalCharacter causal_character(const AmbientVector& u, double tol) {
  if (!(tol > 0.0)) throw ContractViolation("causal_character: tol must be positive");
  bool zero = true;
  for (double c : u.x) zero = zero && c == 0.0;
  if (zero) return CausalCharacter::Spacelike;
  const double q = inner(u, u);
  if (q > tol) return CausalCharacter::Spacelike;
  if (q < -tol) return CausalCharacter::Timelike;
  return CausalCharacter::Lightlike;
}

const char* to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::Spacelike: return "spacelike";
    case CausalCharacter::Timelike: return "timelike";
    case CausalCharacter::Lightlike: return "lightlike";
  }
  return "?";
}

int causal_sign(const AmbientVector& u, double tol) {
  switch (causal_character(u, tol)) {
    case CausalCharacter::Spacelike: return 1;
    case CausalCharacter::Timelike: return -1;
    case CausalCharacter::Lightlike: break;
  }
  throw NonNullViolation("vector is lightlike");
}

namespace {

double det3(double a00, double a01, double a02, double a10, double a11, double a12, double a20,
            double a21, double a22) {
  return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
         a02 * (a10 * a21 - a11 * a20);
}

// Cofactor of row i in the matrix with rows (e_i placeholder) and columns a, b, c
// occupying the remaining three slots: C_i = (-1)^i det(minor_i).
std::array<double, 4> cofactors(const AmbientVector& a, const AmbientVector& b,
                                const AmbientVector& c) {
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    int r[3];
    int k = 0;
    for (int j = 0; j < 4; ++j)
      if (j != i) r[k++] = j;
    const double m = det3(a[r[0]], b[r[0]], c[r[0]], a[r[1]], b[r[1]], c[r[1]], a[r[2]],
                          b[r[2]], c[r[2]]);
    out[static_cast<std::size_t>(i)] = (i % 2 == 0) ? m : -m;
  }
  return out;
}

}  // namespace

double det4(const AmbientVector& a, const AmbientVector& b, const AmbientVector& c,
            const AmbientVector& d) {
  const auto cof = cofactors(b, c, d);
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += a[i] * cof[static_cast<std::size_t>(i)];
  return s;
}

AmbientVector generalized_cross(const AmbientVector& a, const AmbientVector& b,
                                const AmbientVector& c) {
  if (a.idx != b.idx || a.idx != c.idx)
    throw ContractViolation("generalized_cross: metric index mismatch");
  const auto cof = cofactors(a, b, c);
  AmbientVector out({}, a.idx);
  // Raise the index so that inner(out, w) reproduces det[w, a, b, c].
  for (int i = 0; i < 4; ++i) out[i] = axis_sign(i, a.idx) * cof[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace frameforge
