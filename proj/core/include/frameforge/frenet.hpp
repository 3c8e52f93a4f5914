#pragma once

#include <array>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "frameforge/metric.hpp"
#include "frameforge/space_form.hpp"
#include "frameforge/stencil.hpp"

namespace frameforge {

inline constexpr double kKappaMin = 1e-8;

// Causal characters of T, N, B.
struct Eps {
  int e1 = 1;
  int e2 = 1;
  int e3 = 1;
  int operator[](int i) const { return i == 0 ? e1 : (i == 1 ? e2 : e3); }
  friend bool operator==(const Eps&, const Eps&) = default;
};

struct FrenetSample {
  double s = 0.0;
  AmbientVector gamma, T, N, B;
  double kappa = 0.0;
  double tau = 0.0;
  Eps eps;
  bool degenerate = false;  // kappa below kappa_min; N, B are parallel-propagated
};

enum class CurveFamily { GreatCircle, SmallCircle, DeSitterGeodesic, HopfHelix, HyperbolicGeodesic };

const char* to_string(CurveFamily f);
CurveFamily curve_family_from_string(const std::string& name);

// Built-in curves with closed-form derivatives of every order.
struct AnalyticCurve {
  CurveFamily family = CurveFamily::GreatCircle;
  double r = 0.7071067811865476;  // small circle radius
  double a = 0.6;                 // helix: angle between the two circles
  double alpha = 1.1;             // helix: first angular speed; beta follows from unit speed

  static AnalyticCurve great_circle();
  static AnalyticCurve small_circle(double r);
  static AnalyticCurve de_sitter_geodesic();
  static AnalyticCurve hopf_helix(double a, double alpha);
  static AnalyticCurve hyperbolic_geodesic();

  SpaceForm form() const;
  double beta() const;
  // Natural parameter interval used for one "period" of sampling.
  std::pair<double, double> default_interval() const;
  // m-th derivative of gamma with respect to arc length, m = 0..3.
  AmbientVector jet(double s, int m) const;
  void validate() const;
};

struct SampledCurve {
  std::vector<AmbientVector> points;
  double s0 = 0.0;
  double h = 0.0;
  SpaceForm form;
};

struct AnalyticSpec {
  AnalyticCurve curve;
  double s0 = 0.0;
  double s1 = 0.0;
  std::size_t samples = 2001;
  bool exact = true;  // use closed-form derivatives rather than FD on samples
};

using CurveSpec = std::variant<AnalyticSpec, SampledCurve>;

struct FrameOptions {
  double kappa_min = kKappaMin;
  double lightlike_tol = kLightlikeTol;
  bool reparametrize = true;  // sampled input only
};

struct DegenerateWindow {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
};

struct FrenetResult {
  std::vector<FrenetSample> samples;
  std::vector<DegenerateWindow> degenerate_windows;
  SpaceForm form;
  double h = 0.0;
};

SampledCurve sample_curve(const AnalyticCurve& c, double s0, double s1, std::size_t n);

// Resamples onto a uniform arc-length grid: FD speed, cumulative integral,
// Lagrange inversion, re-projection onto the quadric.
SampledCurve reparametrize_arclength(const SampledCurve& in);

FrenetResult frenet_frame(const CurveSpec& curve, const DerivConfig& fd,
                          const FrameOptions& opt = {});

// Frame at one point from gamma and its first three arc-length derivatives.
// Returns false when kappa < kappa_min (N, B left unset).
bool frame_from_jets(const AmbientVector& g, const AmbientVector& d1, const AmbientVector& d2,
                     const AmbientVector& d3, const SpaceForm& form, const FrameOptions& opt,
                     FrenetSample& out);

// Seeds N, B orthogonal to gamma and T from the coordinate axes.
void canonical_normals(FrenetSample& f, const SpaceForm& form);

// Covariant-constant transport M' = -c <M, T> gamma, RK4 with Lagrange
// interpolation of gamma and T at half steps.
std::vector<AmbientVector> parallel_transport(const std::vector<FrenetSample>& frames,
                                              const AmbientVector& m0, const SpaceForm& form,
                                              double h);
std::vector<AmbientVector> parallel_transport(const FrenetResult& fr, const AmbientVector& m0);

// Euclidean size of the three Frenet-equation defects per sample, FD in s.
std::vector<std::array<double, 3>> frenet_residuals(const std::vector<FrenetSample>& frames,
                                                    const SpaceForm& form, double h,
                                                    const DerivConfig& fd);
std::vector<std::array<double, 3>> frenet_residuals(const FrenetResult& fr, const DerivConfig& fd);

// Largest |<X,Y> - target| over the ten pairs of {gamma, T, N, B}.
double orthonormality_defect(const FrenetSample& f, const SpaceForm& form);

// CSV with header `s,x0,x1,x2,x3`. Throws ValidationError naming the bad row.
SampledCurve read_curve_csv(const std::string& path, const SpaceForm& form);

}  // namespace frameforge
