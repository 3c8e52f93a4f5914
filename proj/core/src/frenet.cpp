#include "frameforge/frenet.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "csv.hpp"
#include "frameforge/errors.hpp"
#include "frameforge/parallel.hpp"

namespace frameforge {

namespace {

constexpr double kPi = std::numbers::pi;

// (cos, sin) of theta advanced by m quarter turns, i.e. the m-th derivative of
// (cos theta, sin theta) with respect to theta.
std::pair<double, double> rotated(double theta, int m) {
  return {std::cos(theta + m * kPi / 2), std::sin(theta + m * kPi / 2)};
}

// m-th derivative of (cosh s, sinh s).
std::pair<double, double> hyper(double s, int m) {
  return m % 2 == 0 ? std::pair{std::cosh(s), std::sinh(s)} : std::pair{std::sinh(s), std::cosh(s)};
}

AmbientVector zero_like(const SpaceForm& f) { return AmbientVector({}, f.v); }

}  // namespace

const char* to_string(CurveFamily f) {
  switch (f) {
    case CurveFamily::GreatCircle: return "great-circle";
    case CurveFamily::SmallCircle: return "small-circle";
    case CurveFamily::DeSitterGeodesic: return "de-sitter";
    case CurveFamily::HopfHelix: return "hopf-helix";
    case CurveFamily::HyperbolicGeodesic: return "hyperbolic";
  }
  return "?";
}

CurveFamily curve_family_from_string(const std::string& name) {
  for (auto f : {CurveFamily::GreatCircle, CurveFamily::SmallCircle, CurveFamily::DeSitterGeodesic,
                 CurveFamily::HopfHelix, CurveFamily::HyperbolicGeodesic})
    if (name == to_string(f)) return f;
  throw ValidationError("unknown curve family '" + name + "'");
}

AnalyticCurve AnalyticCurve::great_circle() { return {CurveFamily::GreatCircle}; }

AnalyticCurve AnalyticCurve::small_circle(double r) {
  AnalyticCurve c{CurveFamily::SmallCircle};
  c.r = r;
  return c;
}

AnalyticCurve AnalyticCurve::de_sitter_geodesic() { return {CurveFamily::DeSitterGeodesic}; }

AnalyticCurve AnalyticCurve::hopf_helix(double a, double alpha) {
  AnalyticCurve c{CurveFamily::HopfHelix};
  c.a = a;
  c.alpha = alpha;
  return c;
}

AnalyticCurve AnalyticCurve::hyperbolic_geodesic() { return {CurveFamily::HyperbolicGeodesic}; }

SpaceForm AnalyticCurve::form() const {
  switch (family) {
    case CurveFamily::DeSitterGeodesic: return SpaceForm::make(1, 1);
    case CurveFamily::HyperbolicGeodesic: return SpaceForm::make(0, -1);
    default: return SpaceForm::make(0, 1);
  }
}

double AnalyticCurve::beta() const {
  const double ca = std::cos(a);
  const double sa = std::sin(a);
  return std::sqrt((1.0 - alpha * alpha * ca * ca) / (sa * sa));
}

void AnalyticCurve::validate() const {
  if (family == CurveFamily::SmallCircle && !(r > 0.0 && r < 1.0))
    throw ValidationError("small-circle radius must lie in (0, 1)");
  if (family == CurveFamily::HopfHelix) {
    const double ca = std::cos(a);
    if (std::abs(std::sin(a)) < 1e-6 || alpha * alpha * ca * ca >= 1.0)
      throw ValidationError("hopf-helix parameters admit no unit-speed beta");
  }
}

std::pair<double, double> AnalyticCurve::default_interval() const {
  switch (family) {
    case CurveFamily::SmallCircle: return {0.0, 2 * kPi * r};
    case CurveFamily::DeSitterGeodesic:
    case CurveFamily::HyperbolicGeodesic: return {-kPi, kPi};
    default: return {0.0, 2 * kPi};
  }
}

AmbientVector AnalyticCurve::jet(double s, int m) const {
  AmbientVector out = zero_like(form());
  switch (family) {
    case CurveFamily::GreatCircle: {
      auto [c, sn] = rotated(s, m);
      out.x = {c, sn, 0.0, 0.0};
      break;
    }
    case CurveFamily::SmallCircle: {
      auto [c, sn] = rotated(s / r, m);
      const double scale = r * std::pow(r, -m);
      out.x = {scale * c, scale * sn, m == 0 ? std::sqrt(1.0 - r * r) : 0.0, 0.0};
      break;
    }
    case CurveFamily::DeSitterGeodesic: {
      auto [ch, sh] = hyper(s, m);
      out.x = {sh, 0.0, ch, 0.0};
      break;
    }
    case CurveFamily::HopfHelix: {
      const double b = beta();
      auto [c1, s1] = rotated(alpha * s, m);
      auto [c2, s2] = rotated(b * s, m);
      const double k1 = std::cos(a) * std::pow(alpha, m);
      const double k2 = std::sin(a) * std::pow(b, m);
      out.x = {k1 * c1, k1 * s1, k2 * c2, k2 * s2};
      break;
    }
    case CurveFamily::HyperbolicGeodesic: {
      auto [ch, sh] = hyper(s, m);
      out.x = {ch, sh, 0.0, 0.0};
      break;
    }
  }
  return out;
}

SampledCurve sample_curve(const AnalyticCurve& c, double s0, double s1, std::size_t n) {
  if (n < kMinSamples) throw ValidationError("curve needs at least 7 samples");
  SampledCurve out;
  out.form = c.form();
  out.s0 = s0;
  out.h = (s1 - s0) / static_cast<double>(n - 1);
  out.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.points.push_back(c.jet(s0 + static_cast<double>(i) * out.h, 0));
  return out;
}

SampledCurve reparametrize_arclength(const SampledCurve& in) {
  const std::size_t n = in.points.size();
  if (n < kMinSamples) throw ValidationError("curve needs at least 7 samples");
  const AmbientVector zero = zero_like(in.form);
  std::span<const AmbientVector> pts(in.points);

  // Speed with respect to sample index.
  std::vector<double> speed(n);
  for (std::size_t i = 0; i < n; ++i) speed[i] = norm(derivative_at(pts, i, 1.0, 1, 4, zero));

  // Cumulative arc length, integrating the cubic through four neighbouring speeds.
  std::vector<double> S(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double seg;
    if (i == 0)
      seg = (9 * speed[0] + 19 * speed[1] - 5 * speed[2] + speed[3]) / 24;
    else if (i + 2 == n)
      seg = (9 * speed[n - 1] + 19 * speed[n - 2] - 5 * speed[n - 3] + speed[n - 4]) / 24;
    else
      seg = (-speed[i - 1] + 13 * speed[i] + 13 * speed[i + 1] - speed[i + 2]) / 24;
    S[i + 1] = S[i] + seg;
  }
  const double L = S.back();

  SampledCurve out;
  out.form = in.form;
  out.s0 = in.s0;
  out.h = L / static_cast<double>(n - 1);
  out.points.resize(n);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double target = static_cast<double>(k) * out.h;
    while (seg + 2 < n && S[seg + 1] < target) ++seg;
    // Invert S(t) with a Lagrange fit of t against S on six nodes around the segment.
    const long width = 6;
    long lo = static_cast<long>(seg) - width / 2 + 1;
    lo = std::clamp(lo, 0L, static_cast<long>(n) - width);
    double t = 0.0;
    for (long j = lo; j < lo + width; ++j) {
      double w = 1.0;
      for (long m = lo; m < lo + width; ++m)
        if (m != j)
          w *= (target - S[static_cast<std::size_t>(m)]) /
               (S[static_cast<std::size_t>(j)] - S[static_cast<std::size_t>(m)]);
      t += w * static_cast<double>(j);
    }
    t = std::clamp(t, 0.0, static_cast<double>(n - 1));
    out.points[k] = project_to_form(interpolate(pts, t, 6, zero), in.form);
  }
  return out;
}

bool frame_from_jets(const AmbientVector& g, const AmbientVector& d1, const AmbientVector& d2,
                     const AmbientVector& d3, const SpaceForm& form, const FrameOptions& opt,
                     FrenetSample& out) {
  const int c = form.c;
  out.gamma = g;
  const int e1 = causal_sign(d1, opt.lightlike_tol);
  out.T = d1 / norm(d1);
  out.eps.e1 = e1;

  // Tangential part of the acceleration: drop the -e1 c gamma term and any T leak.
  AmbientVector a = d2 + (e1 * c) * g;
  a -= (e1 * inner(a, out.T)) * out.T;
  a -= (c * inner(a, g)) * g;
  const double q = inner(a, a);
  const double kappa = std::sqrt(std::abs(q));
  if (kappa < opt.kappa_min) {
    out.kappa = 0.0;
    out.tau = 0.0;
    out.degenerate = true;
    return false;
  }
  const int e2 = q > 0 ? 1 : -1;
  out.kappa = kappa;
  out.eps.e2 = e2;
  out.N = (e2 / kappa) * a;

  AmbientVector B = generalized_cross(g, out.T, out.N);
  const double qb = inner(B, B);
  out.eps.e3 = qb > 0 ? 1 : -1;
  B = B / std::sqrt(std::abs(qb));
  if (det4(g, out.T, out.N, B) < 0) B = -B;
  out.B = B;
  out.tau = e2 * inner(d3, B) / kappa;
  out.degenerate = false;
  return true;
}

void canonical_normals(FrenetSample& f, const SpaceForm& form) {
  const int c = form.c;
  // Gram-Schmidt of the coordinate axes against gamma and T; keep the best two.
  std::vector<AmbientVector> basis;
  for (int k = 0; k < 4 && basis.size() < 2; ++k) {
    AmbientVector e({}, form.v);
    e[k] = 1.0;
    AmbientVector w = e - (c * inner(e, f.gamma)) * f.gamma - (f.eps.e1 * inner(e, f.T)) * f.T;
    for (const auto& b : basis) w -= (inner(w, b) / inner(b, b)) * b;
    if (std::abs(inner(w, w)) > 1e-6) basis.push_back(w / norm(w));
  }
  if (basis.size() < 2) throw FrameDegenerate("cannot complete frame from coordinate axes");
  f.N = basis[0];
  f.eps.e2 = inner(f.N, f.N) > 0 ? 1 : -1;
  AmbientVector B = generalized_cross(f.gamma, f.T, f.N);
  const double qb = inner(B, B);
  f.eps.e3 = qb > 0 ? 1 : -1;
  B = B / std::sqrt(std::abs(qb));
  if (det4(f.gamma, f.T, f.N, B) < 0) B = -B;
  f.B = B;
}

namespace {

// Transport M from sample `from` to sample `to` (inclusive), writing every step.
void transport_range(std::span<const AmbientVector> gam, std::span<const AmbientVector> T, int c,
                     double h, long from, long to, AmbientVector m,
                     std::vector<AmbientVector>& out) {
  const AmbientVector zero = AmbientVector({}, m.idx);
  const long step = to >= from ? 1 : -1;
  const double hs = h * static_cast<double>(step);
  auto rhs = [&](double t, const AmbientVector& M) {
    const AmbientVector g = interpolate(gam, t, 6, zero);
    const AmbientVector tt = interpolate(T, t, 6, zero);
    return (-c * inner(M, tt)) * g;
  };
  auto exact_rhs = [&](long i, const AmbientVector& M) {
    return (-c * inner(M, T[static_cast<std::size_t>(i)])) * gam[static_cast<std::size_t>(i)];
  };
  out[static_cast<std::size_t>(from)] = m;
  for (long i = from; i != to; i += step) {
    const double tm = static_cast<double>(i) + 0.5 * static_cast<double>(step);
    const AmbientVector k1 = exact_rhs(i, m);
    const AmbientVector k2 = rhs(tm, m + (0.5 * hs) * k1);
    const AmbientVector k3 = rhs(tm, m + (0.5 * hs) * k2);
    const AmbientVector k4 = exact_rhs(i + step, m + hs * k3);
    m += (hs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out[static_cast<std::size_t>(i + step)] = m;
  }
}

void fill_degenerate(FrenetResult& fr) {
  auto& S = fr.samples;
  const long n = static_cast<long>(S.size());
  std::vector<AmbientVector> gam(S.size());
  std::vector<AmbientVector> T(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    gam[i] = S[i].gamma;
    T[i] = S[i].T;
  }
  long i = 0;
  while (i < n) {
    if (!S[static_cast<std::size_t>(i)].degenerate) {
      ++i;
      continue;
    }
    long j = i;
    while (j + 1 < n && S[static_cast<std::size_t>(j + 1)].degenerate) ++j;
    fr.degenerate_windows.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});

    long seed;
    long target;
    if (i > 0) {
      seed = i - 1;
      target = j;
    } else if (j + 1 < n) {
      seed = j + 1;
      target = i;
    } else {
      canonical_normals(S[0], fr.form);
      seed = 0;
      target = n - 1;
    }
    const FrenetSample& src = S[static_cast<std::size_t>(seed)];
    std::vector<AmbientVector> Nout(S.size());
    std::vector<AmbientVector> Bout(S.size());
    transport_range(gam, T, fr.form.c, fr.h, seed, target, src.N, Nout);
    transport_range(gam, T, fr.form.c, fr.h, seed, target, src.B, Bout);
    const long lo = std::min(seed, target);
    const long hi = std::max(seed, target);
    const Eps e = src.eps;
    for (long k = lo; k <= hi; ++k) {
      auto& f = S[static_cast<std::size_t>(k)];
      if (k == seed || !f.degenerate) continue;
      f.N = Nout[static_cast<std::size_t>(k)];
      f.B = Bout[static_cast<std::size_t>(k)];
      f.eps.e2 = e.e2;
      f.eps.e3 = e.e3;
    }
    i = j + 1;
  }
}

FrenetResult frame_sampled(const SampledCurve& raw, const DerivConfig& fd, const FrameOptions& opt) {
  fd.validate();
  const SampledCurve c = opt.reparametrize ? reparametrize_arclength(raw) : raw;
  const std::size_t n = c.points.size();
  if (n < kMinSamples) throw ValidationError("curve needs at least 7 samples");
  FrenetResult fr;
  fr.form = c.form;
  fr.h = c.h;
  fr.samples.resize(n);
  const AmbientVector zero = zero_like(c.form);
  std::span<const AmbientVector> pts(c.points);
  parallel_for(n, [&](std::size_t i) {
    FrenetSample& f = fr.samples[i];
    f.s = c.s0 + static_cast<double>(i) * c.h;
    frame_from_jets(pts[i], derivative_at(pts, i, c.h, 1, fd.order, zero),
                    derivative_at(pts, i, c.h, 2, fd.order, zero),
                    derivative_at(pts, i, c.h, 3, fd.order, zero), c.form, opt, f);
  });
  fill_degenerate(fr);
  return fr;
}

FrenetResult frame_exact(const AnalyticSpec& spec, const FrameOptions& opt) {
  spec.curve.validate();
  const std::size_t n = spec.samples;
  if (n < kMinSamples) throw ValidationError("curve needs at least 7 samples");
  FrenetResult fr;
  fr.form = spec.curve.form();
  fr.h = (spec.s1 - spec.s0) / static_cast<double>(n - 1);
  fr.samples.resize(n);
  parallel_for(n, [&](std::size_t i) {
    const double s = spec.s0 + static_cast<double>(i) * fr.h;
    FrenetSample& f = fr.samples[i];
    f.s = s;
    frame_from_jets(spec.curve.jet(s, 0), spec.curve.jet(s, 1), spec.curve.jet(s, 2),
                    spec.curve.jet(s, 3), fr.form, opt, f);
  });
  fill_degenerate(fr);
  return fr;
}

}  // namespace

FrenetResult frenet_frame(const CurveSpec& curve, const DerivConfig& fd, const FrameOptions& opt) {
  if (const auto* a = std::get_if<AnalyticSpec>(&curve)) {
    if (a->exact) return frame_exact(*a, opt);
    a->curve.validate();
    FrameOptions o = opt;
    o.reparametrize = false;  // samples are already uniform in arc length
    return frame_sampled(sample_curve(a->curve, a->s0, a->s1, a->samples), fd, o);
  }
  return frame_sampled(std::get<SampledCurve>(curve), fd, opt);
}

std::vector<AmbientVector> parallel_transport(const std::vector<FrenetSample>& frames,
                                              const AmbientVector& m0, const SpaceForm& form,
                                              double h) {
  if (frames.size() < kMinSamples) throw PreconditionError("parallel_transport: too few samples");
  if (std::abs(inner(m0, frames.front().gamma)) > 1e-8)
    throw PreconditionError("parallel_transport: seed is not tangent to the form");
  std::vector<AmbientVector> gam(frames.size());
  std::vector<AmbientVector> T(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    gam[i] = frames[i].gamma;
    T[i] = frames[i].T;
  }
  std::vector<AmbientVector> out(frames.size());
  transport_range(gam, T, form.c, h, 0, static_cast<long>(frames.size()) - 1, m0, out);
  return out;
}

std::vector<AmbientVector> parallel_transport(const FrenetResult& fr, const AmbientVector& m0) {
  return parallel_transport(fr.samples, m0, fr.form, fr.h);
}

namespace {

double euclid(const AmbientVector& v) {
  double s = 0.0;
  for (double c : v.x) s += c * c;
  return std::sqrt(s);
}

}  // namespace

std::vector<std::array<double, 3>> frenet_residuals(const std::vector<FrenetSample>& frames,
                                                    const SpaceForm& form, double h,
                                                    const DerivConfig& fd) {
  fd.validate();
  const std::size_t n = frames.size();
  std::vector<AmbientVector> T(n), N(n), B(n);
  for (std::size_t i = 0; i < n; ++i) {
    T[i] = frames[i].T;
    N[i] = frames[i].N;
    B[i] = frames[i].B;
  }
  const AmbientVector zero = zero_like(form);
  std::vector<std::array<double, 3>> out(n);
  parallel_for(n, [&](std::size_t i) {
    const FrenetSample& f = frames[i];
    const auto dT = derivative_at<AmbientVector>(T, i, h, 1, fd.order, zero);
    const auto dN = derivative_at<AmbientVector>(N, i, h, 1, fd.order, zero);
    const auto dB = derivative_at<AmbientVector>(B, i, h, 1, fd.order, zero);
    const Eps e = f.eps;
    out[i] = {euclid(dT + (e.e1 * form.c) * f.gamma - (e.e2 * f.kappa) * f.N),
              euclid(dN + (e.e1 * f.kappa) * f.T - (e.e3 * f.tau) * f.B),
              euclid(dB + (e.e2 * f.tau) * f.N)};
  });
  return out;
}

std::vector<std::array<double, 3>> frenet_residuals(const FrenetResult& fr, const DerivConfig& fd) {
  return frenet_residuals(fr.samples, fr.form, fr.h, fd);
}

double orthonormality_defect(const FrenetSample& f, const SpaceForm& form) {
  const AmbientVector* v[4] = {&f.gamma, &f.T, &f.N, &f.B};
  const double target[4] = {static_cast<double>(form.c), static_cast<double>(f.eps.e1),
                            static_cast<double>(f.eps.e2), static_cast<double>(f.eps.e3)};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      const double want = i == j ? target[i] : 0.0;
      worst = std::max(worst, std::abs(inner(*v[i], *v[j]) - want));
    }
  return worst;
}

SampledCurve read_curve_csv(const std::string& path, const SpaceForm& form) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open curve CSV '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != "s,x0,x1,x2,x3")
    throw ValidationError("row 1: curve CSV header must be 's,x0,x1,x2,x3'");
  std::vector<double> s;
  SampledCurve out;
  out.form = form;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto v = detail::parse_csv_numbers(line, 5, row);
    if (!s.empty() && v[0] <= s.back())
      throw ValidationError("row " + std::to_string(row) + ": s must increase strictly");
    AmbientVector p({v[1], v[2], v[3], v[4]}, form.v);
    if (std::abs(inner(p, p) - form.c) > 1e-3)
      throw ValidationError("row " + std::to_string(row) + ": point is not on the space form");
    s.push_back(v[0]);
    out.points.push_back(project_to_form(p, form));
  }
  if (out.points.size() < kMinSamples) throw ValidationError("curve CSV needs at least 7 rows");
  out.s0 = s.front();
  out.h = (s.back() - s.front()) / static_cast<double>(s.size() - 1);
  return out;
}

}  // namespace frameforge
