#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace frameforge {

struct DerivConfig {
  int order = 4;  // 2 or 4
  void validate() const;
};

// Finite-difference weights for derivative `m` at x0 over arbitrary nodes (Fornberg).
std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int m);

// A stencil on a uniform grid: offsets relative to the evaluation index and
// weights for unit spacing (divide by h^m).
struct Stencil {
  int first = 0;  // offset of weights[0]
  std::vector<double> weights;
};

// Stencil for derivative m (1..3) at index i of an n-point line. Central where
// the window fits, shifted one-sided near the ends. Cached per (m, order, position).
const Stencil& stencil_for(int m, int order, std::size_t i, std::size_t n);

// Minimum line length any stencil needs.
inline constexpr std::size_t kMinSamples = 7;

// m-th derivative of a uniformly sampled sequence. T needs +=, scalar * and a
// zero value supplied by `zero`.
template <class T>
T derivative_at(std::span<const T> f, std::size_t i, double h, int m, int order, T zero) {
  const Stencil& st = stencil_for(m, order, i, f.size());
  T acc = zero;
  for (std::size_t k = 0; k < st.weights.size(); ++k) {
    const auto j = static_cast<std::size_t>(static_cast<long>(i) + st.first + static_cast<long>(k));
    acc += st.weights[k] * f[j];
  }
  double hm = h;
  for (int p = 1; p < m; ++p) hm *= h;
  acc *= 1.0 / hm;
  return acc;
}

template <class T>
std::vector<T> derivative(std::span<const T> f, double h, int m, int order, T zero) {
  std::vector<T> out;
  out.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(derivative_at(f, i, h, m, order, zero));
  return out;
}

// Lagrange interpolation of a uniform sequence at fractional index t, using
// `width` nodes centred on t.
template <class T>
T interpolate(std::span<const T> f, double t, int width, T zero) {
  const long n = static_cast<long>(f.size());
  long lo = static_cast<long>(std::floor(t)) - width / 2 + 1;
  if (lo < 0) lo = 0;
  if (lo + width > n) lo = n - width;
  T acc = zero;
  for (long j = lo; j < lo + width; ++j) {
    double w = 1.0;
    for (long k = lo; k < lo + width; ++k)
      if (k != j) w *= (t - static_cast<double>(k)) / static_cast<double>(j - k);
    acc += w * f[static_cast<std::size_t>(j)];
  }
  return acc;
}

}  // namespace frameforge
