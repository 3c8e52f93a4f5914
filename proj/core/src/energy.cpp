#include "frameforge/energy.hpp"

#include "frameforge/errors.hpp"

namespace frameforge {

const char* to_string(FrameField f) {
  switch (f) {
    case FrameField::T: return "T";
    case FrameField::N: return "N";
    case FrameField::B: return "B";
  }
  return "?";
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double simpson(std::span<const double> f, double h) {
  if (f.size() < 3 || (f.size() - 1) % 2 != 0)
    throw ContractViolation("Simpson needs an even panel count of at least 2, got " +
                            std::to_string(f.size() == 0 ? 0 : f.size() - 1));
  std::vector<double> w(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double c = (i == 0 || i + 1 == f.size()) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    w[i] = c * f[i];
  }
  return pairwise_sum(w) * h / 3.0;
}

double energy_s(const std::vector<FrenetSample>& frames, double h, FrameField which,
                const SpaceForm& form) {
  std::vector<double> f(frames.size());
  const double c2 = static_cast<double>(form.c * form.c);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& fr = frames[i];
    const Eps e = fr.eps;
    const double k2 = fr.kappa * fr.kappa, t2 = fr.tau * fr.tau;
    switch (which) {
      case FrameField::T: f[i] = e.e1 + c2 * std::abs(inner(fr.gamma, fr.gamma)) + e.e2 * k2; break;
      case FrameField::N: f[i] = e.e2 + e.e1 * k2 + e.e3 * t2; break;
      case FrameField::B: f[i] = e.e3 + e.e2 * t2; break;
    }
  }
  return 0.5 * simpson(f, h);
}

namespace {
double sq(double x) { return x * x; }
}  // namespace

double energy_xi(std::span<const Mat3> m, const Eps& e, double h, FrameField which) {
  std::vector<double> f(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double cnb = sq(m[i][1][0]);  // Curl N . B
    const double cbb = sq(m[i][2][0]);  // Curl B . B with its tau share
    const double db = sq(m[i][2][1]);   // Div B
    switch (which) {
      case FrameField::T: f[i] = e.e1 + e.e2 * cnb + e.e3 * cbb; break;
      case FrameField::N: f[i] = e.e2 + e.e1 * cnb + e.e3 * db; break;
      case FrameField::B: f[i] = e.e3 + e.e1 * cbb + e.e2 * db; break;
    }
  }
  return 0.5 * simpson(f, h);
}

double energy_eta(std::span<const Mat3> m, const Eps& e, double h, FrameField which,
                  bool normalize_half) {
  std::vector<double> f(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double q = sq(m[i][1][0]);  // (e3 tau + Curl N . N)
    const double p = sq(m[i][2][0]);  // (e2 tau + Curl B . N)
    const double bt = sq(m[i][2][1]);  // Curl B . T
    switch (which) {
      case FrameField::T: f[i] = e.e1 + e.e2 * q + e.e3 * p; break;
      case FrameField::N: f[i] = e.e2 + e.e1 * q + e.e2 * bt; break;
      case FrameField::B: f[i] = e.e3 + e.e1 * p + e.e2 * bt; break;
    }
  }
  const double pre = (which == FrameField::N && !normalize_half) ? 1.0 : 0.5;
  return pre * simpson(f, h);
}

EnergyReport congruence_energies(const CongruenceGrid& g, const FrameDifferentials& d,
                                 std::array<std::size_t, 3> at, Formulas variant,
                                 bool normalize_half) {
  const auto& sh = g.shape;
  if (at[0] >= sh.ns || at[1] >= sh.nxi || at[2] >= sh.neta)
    throw PreconditionError("energy line anchor lies outside the grid");
  EnergyReport r;
  r.half_normalized = normalize_half;
  r.samples = {sh.ns, sh.nxi, sh.neta};
  for (int a = 0; a < 3; ++a)
    r.length[static_cast<std::size_t>(a)] =
        g.step[static_cast<std::size_t>(a)] * static_cast<double>(r.samples[static_cast<std::size_t>(a)] - 1);

  std::vector<FrenetSample> sline;
  for (std::size_t i = 0; i < sh.ns; ++i) sline.push_back(g.at(i, at[1], at[2]));
  const ScalarField tau = tau_field(g);
  std::vector<Mat3> xim, etam;
  for (std::size_t j = 0; j < sh.nxi; ++j)
    xim.push_back(extended_frenet_matrices(d, tau, sh.index(at[0], j, at[2]), g.eps, variant).xi);
  for (std::size_t k = 0; k < sh.neta; ++k)
    etam.push_back(extended_frenet_matrices(d, tau, sh.index(at[0], at[1], k), g.eps, variant).eta);

  r.t_s = energy_s(sline, g.step[0], FrameField::T, g.form);
  r.n_s = energy_s(sline, g.step[0], FrameField::N, g.form);
  r.b_s = energy_s(sline, g.step[0], FrameField::B, g.form);
  r.t_xi = energy_xi(xim, g.eps, g.step[1], FrameField::T);
  r.n_xi = energy_xi(xim, g.eps, g.step[1], FrameField::N);
  r.b_xi = energy_xi(xim, g.eps, g.step[1], FrameField::B);
  r.t_eta = energy_eta(etam, g.eps, g.step[2], FrameField::T, normalize_half);
  r.n_eta = energy_eta(etam, g.eps, g.step[2], FrameField::N, normalize_half);
  r.b_eta = energy_eta(etam, g.eps, g.step[2], FrameField::B, normalize_half);
  return r;
}

}  // namespace frameforge
