#include "frameforge/congruence.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "csv.hpp"
#include "frameforge/errors.hpp"
#include "frameforge/parallel.hpp"

namespace frameforge {

namespace {

constexpr int kPlanes[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

using M4 = std::array<std::array<double, 4>, 4>;

AmbientVector act(const M4& R, const AmbientVector& x) {
  AmbientVector out({}, x.idx);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i] += R[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * x[j];
  return out;
}

Eigen::Matrix4d to_eigen(const M4& m) {
  Eigen::Matrix4d e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return e;
}

M4 from_eigen(const Eigen::Matrix4d& e) {
  M4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e(i, j);
  return m;
}

std::vector<AmbientVector> field_of(const CongruenceGrid& g, AmbientVector FrenetSample::*member) {
  std::vector<AmbientVector> out(g.frames.size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = g.frames[p].*member;
  return out;
}

AmbientVector zero_vec(const CongruenceGrid& g) { return AmbientVector({}, g.form.v); }

}  // namespace

void CongruenceGrid::validate() const {
  if (shape.ns < kMinSamples || shape.nxi < kMinSamples || shape.neta < kMinSamples)
    throw ValidationError("congruence grid needs at least 7 points along every axis");
  if (frames.size() != shape.size()) throw ValidationError("congruence grid size mismatch");
  for (double h : step)
    if (!(h > 0.0)) throw ValidationError("congruence grid steps must be positive");
}

M4 Generator::matrix(MetricIndex v) const {
  M4 m{};
  for (int p = 0; p < 6; ++p) {
    const int i = kPlanes[p][0];
    const int j = kPlanes[p][1];
    // K_ij = eta_jj E_ij - eta_ii E_ji keeps the metric invariant.
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += w[static_cast<std::size_t>(p)] * axis_sign(j, v);
    m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -= w[static_cast<std::size_t>(p)] * axis_sign(i, v);
  }
  return m;
}

double RotationCongruence::phi(double xi) const { return xi + ramp_xi * std::sin(xi); }
double RotationCongruence::dphi(double xi) const { return 1.0 + ramp_xi * std::cos(xi); }
double RotationCongruence::psi(double eta) const { return eta + ramp_eta * std::sin(eta); }
double RotationCongruence::dpsi(double eta) const { return 1.0 + ramp_eta * std::cos(eta); }

M4 RotationCongruence::isometry(double xi, double eta) const {
  const MetricIndex v = base.form().v;
  const Eigen::Matrix4d a = to_eigen(A.matrix(v)) * phi(xi);
  const Eigen::Matrix4d c = to_eigen(C.matrix(v)) * psi(eta);
  const Eigen::Matrix4d ea = a.exp();
  const Eigen::Matrix4d ec = c.exp();
  return from_eigen(ea * ec);
}

CongruenceGrid build_congruence(const RotationCongruence& spec, const FrameOptions& opt) {
  CongruenceGrid g;
  g.shape = spec.shape;
  g.origin = spec.origin;
  g.form = spec.base.form();
  for (int a = 0; a < 3; ++a) {
    const auto n = g.shape.extent(static_cast<Axis>(a));
    if (n < kMinSamples) throw ValidationError("congruence grid needs at least 7 points along every axis");
    g.step[static_cast<std::size_t>(a)] = spec.extent[static_cast<std::size_t>(a)] / static_cast<double>(n - 1);
  }
  AnalyticSpec base{spec.base, spec.origin[0], spec.origin[0] + spec.extent[0], g.shape.ns, true};
  const FrenetResult fr = frenet_frame(base, DerivConfig{}, opt);
  g.degenerate_windows = fr.degenerate_windows;
  g.eps = fr.samples.front().eps;
  g.frames.resize(g.shape.size());
  parallel_for(g.shape.nxi * g.shape.neta, [&](std::size_t jk) {
    const std::size_t j = jk / g.shape.neta;
    const std::size_t k = jk % g.shape.neta;
    const M4 R = spec.isometry(g.coord(Axis::Xi, j), g.coord(Axis::Eta, k));
    for (std::size_t i = 0; i < g.shape.ns; ++i) {
      FrenetSample f = fr.samples[i];
      f.gamma = act(R, f.gamma);
      f.T = act(R, f.T);
      f.N = act(R, f.N);
      f.B = act(R, f.B);
      g.frames[g.shape.index(i, j, k)] = f;
    }
  });
  g.validate();
  return g;
}

CongruenceGrid congruence_from_points(std::vector<AmbientVector> points, GridShape shape,
                                      std::array<double, 3> step, const SpaceForm& form,
                                      const DerivConfig& fd, const FrameOptions& opt) {
  CongruenceGrid g;
  g.shape = shape;
  g.step = step;
  g.form = form;
  g.frames.resize(shape.size());
  if (points.size() != shape.size()) throw ValidationError("congruence point count mismatch");
  if (shape.ns < kMinSamples || shape.nxi < kMinSamples || shape.neta < kMinSamples)
    throw ValidationError("congruence grid needs at least 7 points along every axis");
  FrameOptions o = opt;
  o.reparametrize = false;
  std::vector<FrenetResult> lines(shape.nxi * shape.neta);
  parallel_for(lines.size(), [&](std::size_t jk) {
    const std::size_t j = jk / shape.neta;
    const std::size_t k = jk % shape.neta;
    SampledCurve c;
    c.form = form;
    c.h = step[0];
    for (std::size_t i = 0; i < shape.ns; ++i) c.points.push_back(points[shape.index(i, j, k)]);
    lines[jk] = frenet_frame(CurveSpec{c}, fd, o);
  });
  g.eps = lines.front().samples.front().eps;
  for (std::size_t jk = 0; jk < lines.size(); ++jk) {
    const std::size_t j = jk / shape.neta;
    const std::size_t k = jk % shape.neta;
    for (const auto& w : lines[jk].degenerate_windows) g.degenerate_windows.push_back(w);
    for (std::size_t i = 0; i < shape.ns; ++i) {
      const FrenetSample& f = lines[jk].samples[i];
      if (!(f.eps == g.eps))
        throw ValidationError("congruence s-lines disagree on the causal characters of the frame");
      g.frames[shape.index(i, j, k)] = f;
    }
  }
  g.validate();
  return g;
}

CongruenceGrid read_congruence_csv(const std::string& path, const DerivConfig& fd,
                                   const FrameOptions& opt) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open congruence CSV '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || detail::trim(line).rfind("#", 0) != 0)
    throw ValidationError("row 1: expected '# hs=<v> hxi=<v> heta=<v> q=<v> c=<v>'");
  std::map<std::string, double> meta;
  {
    std::stringstream ss(detail::trim(line).substr(1));
    std::string tok;
    while (ss >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw ValidationError("row 1: malformed token '" + tok + "'");
      try {
        meta[tok.substr(0, eq)] = std::stod(tok.substr(eq + 1));
      } catch (...) {
        throw ValidationError("row 1: malformed value in '" + tok + "'");
      }
    }
  }
  for (const char* key : {"hs", "hxi", "heta", "q", "c"})
    if (!meta.count(key)) throw ValidationError(std::string("row 1: missing ") + key);
  const SpaceForm form = SpaceForm::make(static_cast<int>(meta["q"]), static_cast<int>(meta["c"]));
  if (!std::getline(in, line) || detail::trim(line) != "i,j,k,x0,x1,x2,x3")
    throw ValidationError("row 2: header must be 'i,j,k,x0,x1,x2,x3'");

  std::vector<std::array<double, 7>> rows;
  std::size_t row = 2;
  std::array<std::size_t, 3> n{0, 0, 0};
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto v = detail::parse_csv_numbers(line, 7, row);
    for (int a = 0; a < 3; ++a) {
      if (v[static_cast<std::size_t>(a)] < 0 || v[static_cast<std::size_t>(a)] != std::floor(v[static_cast<std::size_t>(a)]))
        throw ValidationError("row " + std::to_string(row) + ": grid index must be a nonnegative integer");
      n[static_cast<std::size_t>(a)] = std::max(n[static_cast<std::size_t>(a)], static_cast<std::size_t>(v[static_cast<std::size_t>(a)]) + 1);
    }
    std::array<double, 7> r{};
    std::copy(v.begin(), v.end(), r.begin());
    rows.push_back(r);
  }
  GridShape shape{n[0], n[1], n[2]};
  if (shape.ns < kMinSamples || shape.nxi < kMinSamples || shape.neta < kMinSamples)
    throw ValidationError("congruence grid needs at least 7 points along every axis");
  if (rows.size() != shape.size())
    throw ValidationError("congruence CSV has " + std::to_string(rows.size()) + " rows, grid needs " +
                          std::to_string(shape.size()));
  std::vector<AmbientVector> pts(shape.size());
  std::vector<char> seen(shape.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& v = rows[r];
    const std::size_t p = shape.index(static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]),
                                      static_cast<std::size_t>(v[2]));
    if (seen[p]) throw ValidationError("row " + std::to_string(r + 3) + ": duplicate grid index");
    seen[p] = 1;
    AmbientVector x({v[3], v[4], v[5], v[6]}, form.v);
    if (std::abs(inner(x, x) - form.c) > 1e-3)
      throw ValidationError("row " + std::to_string(r + 3) + ": point is not on the space form");
    pts[p] = project_to_form(x, form);
  }
  return congruence_from_points(std::move(pts), shape, {meta["hs"], meta["hxi"], meta["heta"]}, form,
                                fd, opt);
}

namespace {

template <class T>
std::vector<T> partial_impl(const std::vector<T>& f, const CongruenceGrid& g, Axis a,
                            const DerivConfig& fd, T zero) {
  fd.validate();
  const std::size_t n = g.shape.extent(a);
  const std::size_t stride = g.shape.stride(a);
  const double h = g.step[static_cast<std::size_t>(a)];
  std::vector<T> out(f.size(), zero);
  parallel_for(f.size(), [&](std::size_t p) {
    const std::size_t i = g.shape.unravel(p)[static_cast<std::size_t>(a)];
    const Stencil& st = stencil_for(1, fd.order, i, n);
    T acc = zero;
    for (std::size_t k = 0; k < st.weights.size(); ++k) {
      const long off = st.first + static_cast<long>(k);
      acc += st.weights[k] * f[static_cast<std::size_t>(static_cast<long>(p) + off * static_cast<long>(stride))];
    }
    acc *= 1.0 / h;
    out[p] = acc;
  });
  return out;
}

// Small wrapper so doubles fit the `acc *= s` / `acc += w * x` pattern.
struct Num {
  double v = 0.0;
  Num& operator+=(const Num& o) {
    v += o.v;
    return *this;
  }
  Num& operator*=(double s) {
    v *= s;
    return *this;
  }
  friend Num operator*(double s, const Num& a) { return {s * a.v}; }
};

}  // namespace

ScalarField partial(const ScalarField& f, const CongruenceGrid& g, Axis a, const DerivConfig& fd) {
  std::vector<Num> in(f.size());
  for (std::size_t p = 0; p < f.size(); ++p) in[p].v = f[p];
  const auto d = partial_impl(in, g, a, fd, Num{});
  ScalarField out(f.size());
  for (std::size_t p = 0; p < f.size(); ++p) out[p] = d[p].v;
  return out;
}

std::vector<AmbientVector> partial(const std::vector<AmbientVector>& f, const CongruenceGrid& g,
                                   Axis a, const DerivConfig& fd) {
  return partial_impl(f, g, a, fd, zero_vec(g));
}

std::array<ScalarField, 3> xi_coefficients(const CongruenceGrid& g, const DerivConfig& fd) {
  const auto dT = partial(field_of(g, &FrenetSample::T), g, Axis::Xi, fd);
  const auto dN = partial(field_of(g, &FrenetSample::N), g, Axis::Xi, fd);
  std::array<ScalarField, 3> out{ScalarField(dT.size()), ScalarField(dT.size()), ScalarField(dT.size())};
  for (std::size_t p = 0; p < dT.size(); ++p) {
    const auto& f = g.frames[p];
    out[0][p] = inner(dT[p], f.N);
    out[1][p] = inner(dT[p], f.B);
    out[2][p] = inner(dN[p], f.B);
  }
  return out;
}

std::array<ScalarField, 3> eta_coefficients(const CongruenceGrid& g, const DerivConfig& fd) {
  const auto dT = partial(field_of(g, &FrenetSample::T), g, Axis::Eta, fd);
  const auto dN = partial(field_of(g, &FrenetSample::N), g, Axis::Eta, fd);
  std::array<ScalarField, 3> out{ScalarField(dT.size()), ScalarField(dT.size()), ScalarField(dT.size())};
  for (std::size_t p = 0; p < dT.size(); ++p) {
    const auto& f = g.frames[p];
    out[0][p] = inner(dT[p], f.N);
    out[1][p] = inner(dT[p], f.B);
    out[2][p] = inner(dN[p], f.B);
  }
  return out;
}

FrameCoefficients coefficients(const CongruenceGrid& g, const DerivConfig& fd) {
  auto x = xi_coefficients(g, fd);
  auto e = eta_coefficients(g, fd);
  return {std::move(x[0]), std::move(x[1]), std::move(x[2]),
          std::move(e[0]), std::move(e[1]), std::move(e[2])};
}

Mat3 xi_matrix(const FrameCoefficients& c, std::size_t p, const Eps& e) {
  return {{{0.0, e.e2 * c.g_tn[p], e.e3 * c.g_tb[p]},
           {-e.e1 * c.g_tn[p], 0.0, e.e3 * c.g_nb[p]},
           {-e.e1 * c.g_tb[p], -e.e2 * c.g_nb[p], 0.0}}};
}

Mat3 eta_matrix(const FrameCoefficients& c, std::size_t p, const Eps& e) {
  return {{{0.0, e.e2 * c.u_tn[p], e.e3 * c.u_tb[p]},
           {-e.e1 * c.u_tn[p], 0.0, e.e3 * c.u_nb[p]},
           {-e.e1 * c.u_tb[p], -e.e2 * c.u_nb[p], 0.0}}};
}

std::vector<FrameVector> gradient(const ScalarField& h, const CongruenceGrid& g, const DerivConfig& fd) {
  const auto hs = partial(h, g, Axis::S, fd);
  const auto hx = partial(h, g, Axis::Xi, fd);
  const auto he = partial(h, g, Axis::Eta, fd);
  std::vector<FrameVector> out(h.size());
  for (std::size_t p = 0; p < h.size(); ++p) out[p] = {hs[p], hx[p], he[p]};
  return out;
}

namespace {

std::vector<AmbientVector> ambient_of(const std::vector<FrameVector>& F, const CongruenceGrid& g) {
  std::vector<AmbientVector> out(F.size());
  for (std::size_t p = 0; p < F.size(); ++p) out[p] = to_ambient(F[p], g.frames[p]);
  return out;
}

}  // namespace

ScalarField divergence(const std::vector<AmbientVector>& F, const CongruenceGrid& g,
                       const DerivConfig& fd, Contraction how) {
  const auto ds = partial(F, g, Axis::S, fd);
  const auto dx = partial(F, g, Axis::Xi, fd);
  const auto de = partial(F, g, Axis::Eta, fd);
  ScalarField out(F.size());
  for (std::size_t p = 0; p < F.size(); ++p) {
    const auto& f = g.frames[p];
    const double a = inner(ds[p], f.T);
    const double b = inner(dx[p], f.N);
    const double c = inner(de[p], f.B);
    out[p] = how == Contraction::Frame ? f.eps.e1 * a + f.eps.e2 * b + f.eps.e3 * c : a + b + c;
  }
  return out;
}

ScalarField divergence(const std::vector<FrameVector>& F, const CongruenceGrid& g,
                       const DerivConfig& fd, Contraction how) {
  return divergence(ambient_of(F, g), g, fd, how);
}

std::vector<FrameVector> curl(const std::vector<AmbientVector>& F, const CongruenceGrid& g,
                              const DerivConfig& fd) {
  const auto ds = partial(F, g, Axis::S, fd);
  const auto dx = partial(F, g, Axis::Xi, fd);
  const auto de = partial(F, g, Axis::Eta, fd);
  std::vector<FrameVector> out(F.size());
  for (std::size_t p = 0; p < F.size(); ++p) {
    const auto& f = g.frames[p];
    FrameVector r = frame_cross(kT, frame_components(ds[p], f), f.eps) +
                    frame_cross(kN, frame_components(dx[p], f), f.eps) +
                    frame_cross(kB, frame_components(de[p], f), f.eps);
    r.tg = g.form.c * inner(ds[p], f.gamma);
    out[p] = r;
  }
  return out;
}

std::vector<FrameVector> curl(const std::vector<FrameVector>& F, const CongruenceGrid& g,
                              const DerivConfig& fd) {
  return curl(ambient_of(F, g), g, fd);
}

double FrameDifferentials::curl_dot(int x, int y, std::size_t p, const Eps& e) const {
  const auto& field = x == 0 ? curl_t : (x == 1 ? curl_n : curl_b);
  return e[y] * field[p][y];
}

FrameDifferentials differentials(const CongruenceGrid& g, const DerivConfig& fd) {
  FrameDifferentials d;
  const auto T = field_of(g, &FrenetSample::T);
  const auto N = field_of(g, &FrenetSample::N);
  const auto B = field_of(g, &FrenetSample::B);
  d.div_t = divergence(T, g, fd);
  d.div_n = divergence(N, g, fd);
  d.div_b = divergence(B, g, fd);
  d.curl_t = curl(T, g, fd);
  d.curl_n = curl(N, g, fd);
  d.curl_b = curl(B, g, fd);
  const std::size_t n = g.frames.size();
  d.psi_t.resize(n);
  d.psi_n.resize(n);
  d.psi_b.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    d.psi_t[p] = d.curl_dot(0, 0, p, g.eps);
    d.psi_n[p] = d.curl_dot(1, 1, p, g.eps);
    d.psi_b[p] = d.curl_dot(2, 2, p, g.eps);
  }
  return d;
}

FrameDifferentials differentials_from_coefficients(const FrameCoefficients& c,
                                                   const ScalarField& kappa,
                                                   const ScalarField& tau, const Eps& e, int cform,
                                                   Formulas variant) {
  const std::size_t n = kappa.size();
  FrameDifferentials d;
  d.div_t.resize(n);
  d.div_n.resize(n);
  d.div_b.resize(n);
  d.curl_t.resize(n);
  d.curl_n.resize(n);
  d.curl_b.resize(n);
  d.psi_t.resize(n);
  d.psi_n.resize(n);
  d.psi_b.resize(n);
  const int e1 = e.e1, e2 = e.e2, e3 = e.e3;
  const bool printed = variant == Formulas::Printed;
  for (std::size_t p = 0; p < n; ++p) {
    const double gtn = c.g_tn[p], gtb = c.g_tb[p], gnb = c.g_nb[p];
    const double utn = c.u_tn[p], utb = c.u_tb[p], unb = c.u_nb[p];
    const double k = kappa[p], t = tau[p];
    d.div_t[p] = e2 * gtn + e3 * utb;
    d.div_n[p] = -e1 * k + e3 * unb;
    d.div_b[p] = printed ? -gnb : -e2 * gnb;
    d.curl_t[p] = {e1 * e3 * gtb - e1 * e2 * utn, 0.0, e2 * e3 * k, static_cast<double>(-e1 * cform)};
    d.curl_n[p] = {e1 * e3 * gnb, -e1 * e2 * utn - e2 * e3 * t, e1 * e3 * gtn};
    if (printed)
      d.curl_b[p] = {e1 * e2 * unb, -t - e1 * e2 * utb, e1 * e3 * gtb};
    else
      d.curl_b[p] = {e1 * e2 * unb, -e1 * e2 * utb, e1 * e3 * gtb - e2 * e3 * t};
    d.psi_t[p] = d.curl_dot(0, 0, p, e);
    d.psi_n[p] = d.curl_dot(1, 1, p, e);
    d.psi_b[p] = d.curl_dot(2, 2, p, e);
  }
  return d;
}

ScalarField kappa_field(const CongruenceGrid& g) {
  ScalarField out(g.frames.size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = g.frames[p].kappa;
  return out;
}

ScalarField tau_field(const CongruenceGrid& g) {
  ScalarField out(g.frames.size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = g.frames[p].tau;
  return out;
}

std::array<ScalarField, 3> abnormalities(const CongruenceGrid& g, const FrameCoefficients& c,
                                         Formulas variant) {
  const std::size_t n = g.frames.size();
  std::array<ScalarField, 3> out{ScalarField(n), ScalarField(n), ScalarField(n)};
  const Eps e = g.eps;
  for (std::size_t p = 0; p < n; ++p) {
    const double t = g.frames[p].tau;
    out[0][p] = e.e3 * c.g_tb[p] - e.e2 * c.u_tn[p];
    out[1][p] = -e.e3 * t - e.e1 * c.u_tn[p];
    out[2][p] = e.e1 * c.g_tb[p] - (variant == Formulas::Printed ? 0.0 : e.e2 * t);
  }
  return out;
}

ExtendedMatrices extended_frenet_matrices(const FrameDifferentials& d, const ScalarField& tau,
                                          std::size_t p, const Eps& e, Formulas variant) {
  const int e1 = e.e1, e2 = e.e2, e3 = e.e3;
  const double t = tau[p];
  const double nb = d.curl_dot(1, 2, p, e);  // Curl N . B
  const double bn = d.curl_dot(2, 1, p, e);  // Curl B . N
  const double bt = d.curl_dot(2, 0, p, e);  // Curl B . T
  const double psi_b = d.psi_b[p];
  const double psi_n = d.psi_n[p];
  const double div_b = d.div_b[p];
  ExtendedMatrices m{};
  if (variant == Formulas::Printed) {
    m.xi = {{{0.0, -e1 * e3 * nb, e1 * e3 * psi_b},
             {-nb, 0.0, -e3 * div_b},
             {-psi_b, -e2 * div_b, 0.0}}};
    m.eta = {{{0.0, -e1 * e3 * t - e1 * psi_n, -e1 * e3 * (e2 * t + bn)},
              {e3 * t + psi_n, 0.0, e2 * e3 * bt},
              {e2 * t + bn, -bt, 0.0}}};
  } else {
    const double gtb = e1 * (psi_b + e2 * t);
    m.xi = {{{0.0, e1 * e2 * nb, e3 * gtb},
             {-nb, 0.0, -e2 * e3 * div_b},
             {-e1 * gtb, div_b, 0.0}}};
    m.eta = {{{0.0, -e1 * e2 * (e3 * t + psi_n), -e1 * e3 * bn},
              {e3 * t + psi_n, 0.0, e2 * e3 * bt},
              {bn, -bt, 0.0}}};
  }
  return m;
}

std::array<ScalarField, 3> compatibility_residuals(const ScalarField& h, const CongruenceGrid& g,
                                                   const FrameDifferentials& d,
                                                   const DerivConfig& fd) {
  const auto hs = partial(h, g, Axis::S, fd);
  const auto hx = partial(h, g, Axis::Xi, fd);
  const auto he = partial(h, g, Axis::Eta, fd);
  const auto h_xs = partial(hs, g, Axis::Xi, fd);   // d/dxi (dh/ds)
  const auto h_sx = partial(hx, g, Axis::S, fd);    // d/ds (dh/dxi)
  const auto h_se = partial(he, g, Axis::S, fd);
  const auto h_es = partial(hs, g, Axis::Eta, fd);
  const auto h_ex = partial(hx, g, Axis::Eta, fd);
  const auto h_xe = partial(he, g, Axis::Xi, fd);
  const std::size_t n = h.size();
  std::array<ScalarField, 3> out{ScalarField(n), ScalarField(n), ScalarField(n)};
  const Eps e = g.eps;
  for (std::size_t p = 0; p < n; ++p) {
    const double k = g.frames[p].kappa;
    const double t = g.frames[p].tau;
    const double nb = d.curl_dot(1, 2, p, e);
    const double bb = d.curl_dot(2, 2, p, e);
    const double nn = d.curl_dot(1, 1, p, e);
    const double bn = d.curl_dot(2, 1, p, e);
    const double bt = d.curl_dot(2, 0, p, e);
    const double rhs_a = hs[p] * e.e2 * k + hx[p] * e.e1 * nb + he[p] * e.e1 * bb;
    const double rhs_b = hx[p] * nn + he[p] * bn;
    const double rhs_c = hs[p] * (e.e3 * bb + e.e2 * (e.e3 * t + e.e1 * nn)) -
                         e.e3 * hx[p] * d.div_b[p] + he[p] * bt;
    out[0][p] = (h_xs[p] - h_sx[p]) - rhs_a;
    out[1][p] = (h_se[p] - h_es[p]) - rhs_b;
    out[2][p] = (h_ex[p] - h_xe[p]) - rhs_c;
  }
  return out;
}

Stat stat_abs(const ScalarField& f, const GridShape& shape, std::size_t margin) {
  Stat st;
  std::size_t count = 0;
  double sum = 0.0;
  auto inside = [&](std::size_t i, std::size_t n) {
    return n <= 2 * margin || (i >= margin && i + margin < n);
  };
  for (std::size_t p = 0; p < f.size(); ++p) {
    const auto ijk = shape.unravel(p);
    if (!inside(ijk[0], shape.ns) || !inside(ijk[1], shape.nxi) || !inside(ijk[2], shape.neta)) continue;
    const double a = std::abs(f[p]);
    sum += a;
    ++count;
    if (a > st.max || count == 1) {
      st.max = a;
      st.argmax = ijk;
    }
  }
  st.mean = count ? sum / static_cast<double>(count) : 0.0;
  return st;
}

std::vector<IdentityCheck> identity_suite(const CongruenceGrid& g, const FrameCoefficients& c,
                                          const FrameDifferentials& a, const FrameDifferentials& b,
                                          double tol, std::size_t margin) {
  const std::size_t n = g.frames.size();
  const Eps e = g.eps;
  std::vector<IdentityCheck> out;
  auto add = [&](const std::string& name, auto&& fn) {
    ScalarField r(n);
    for (std::size_t p = 0; p < n; ++p) r[p] = fn(p);
    IdentityCheck chk{name, stat_abs(r, g.shape, margin), tol, false};
    chk.pass = chk.stat.max <= tol;
    out.push_back(chk);
  };
  add("gamma_nb_plus_div_b", [&](std::size_t p) { return c.g_nb[p] + a.div_b[p]; });
  add("gamma_nb_minus_eps1_kappa_minus_div_n",
      [&](std::size_t p) { return c.g_nb[p] - e.e1 * g.frames[p].kappa - a.div_n[p]; });
  add("div_b", [&](std::size_t p) { return a.div_b[p] - b.div_b[p]; });
  add("psi_b", [&](std::size_t p) { return a.psi_b[p] - b.psi_b[p]; });
  add("psi_n", [&](std::size_t p) { return a.psi_n[p] - b.psi_n[p]; });
  add("psi_t", [&](std::size_t p) { return a.psi_t[p] - b.psi_t[p]; });
  add("curl_n_dot_b", [&](std::size_t p) { return a.curl_dot(1, 2, p, e) - b.curl_dot(1, 2, p, e); });
  add("curl_n_dot_t", [&](std::size_t p) { return a.curl_dot(1, 0, p, e) - b.curl_dot(1, 0, p, e); });
  add("curl_b_dot_n", [&](std::size_t p) { return a.curl_dot(2, 1, p, e) - b.curl_dot(2, 1, p, e); });
  add("curl_b_dot_t", [&](std::size_t p) { return a.curl_dot(2, 0, p, e) - b.curl_dot(2, 0, p, e); });
  add("curl_t_dot_b", [&](std::size_t p) { return a.curl_dot(0, 2, p, e) - b.curl_dot(0, 2, p, e); });
  return out;
}

}  // namespace frameforge
