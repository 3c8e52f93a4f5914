#include "frameforge/electromagnetic.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "csv.hpp"
#include "frameforge/errors.hpp"

namespace frameforge {

const char* to_string(Direction d) {
  switch (d) {
    case Direction::S: return "s";
    case Direction::Xi: return "xi";
    case Direction::Eta: return "eta";
  }
  return "?";
}

void ElectricField::validate(std::size_t n) const {
  for (const auto* f : {&e1_s, &e3_s, &e1_xi, &e3_xi, &e1_eta, &e3_eta})
    if (f->size() != n) throw ValidationError("electric field size does not match the grid");
}

FieldContext make_context(const CongruenceGrid& g, const DerivConfig& fd, Formulas variant) {
  FieldContext ctx =
      make_context(coefficients(g, fd), kappa_field(g), tau_field(g), g.eps, g.form.c, variant);
  ctx.grid = &g;
  ctx.fd = fd;
  return ctx;
}

FieldContext make_context(FrameCoefficients c, ScalarField kappa, ScalarField tau, const Eps& e,
                          int cform, Formulas variant) {
  FieldContext ctx;
  ctx.eps = e;
  ctx.c = cform;
  ctx.variant = variant;
  ctx.diff = differentials_from_coefficients(c, kappa, tau, e, cform, variant);
  ctx.coeffs = std::move(c);
  ctx.kappa = std::move(kappa);
  ctx.tau = std::move(tau);
  return ctx;
}

namespace {

const CongruenceGrid& need_grid(const FieldContext& ctx) {
  if (!ctx.grid) throw ContractViolation("operation needs a grid-backed field context");
  return *ctx.grid;
}

struct Partials {
  ScalarField s, xi, eta;
};

Partials partials(const ScalarField& f, const FieldContext& ctx) {
  const auto& g = need_grid(ctx);
  return {partial(f, g, Axis::S, ctx.fd), partial(f, g, Axis::Xi, ctx.fd),
          partial(f, g, Axis::Eta, ctx.fd)};
}

// Curl projections the displayed expansions are written in.
struct Proj {
  double div_b, cbt, cbn, cnn;
};

Proj proj(const FieldContext& ctx, std::size_t p) {
  const auto& d = ctx.diff;
  return {d.div_b[p], d.curl_dot(2, 0, p, ctx.eps), d.curl_dot(2, 1, p, ctx.eps),
          d.curl_dot(1, 1, p, ctx.eps)};
}

[[noreturn]] void degenerate(const std::string& what, const std::vector<std::size_t>& bad,
                             const FieldContext& ctx) {
  std::vector<std::array<int, 3>> idx;
  for (std::size_t p : bad) {
    if (ctx.grid) {
      const auto ijk = ctx.grid->shape.unravel(p);
      idx.push_back({static_cast<int>(ijk[0]), static_cast<int>(ijk[1]), static_cast<int>(ijk[2])});
    } else {
      idx.push_back({static_cast<int>(p), 0, 0});
    }
  }
  throw DivisionDegenerate(what + " at " + std::to_string(bad.size()) + " grid points", std::move(idx));
}

}  // namespace

std::vector<FrameVector> electric_derivative(const ElectricField& E, Direction d,
                                             const FieldContext& ctx) {
  const std::size_t n = ctx.size();
  E.validate(n);
  const auto& c = ctx.coeffs;
  const Eps e = ctx.eps;
  std::vector<FrameVector> out(n);
  for (std::size_t p = 0; p < n; ++p) {
    switch (d) {
      case Direction::S: {
        const double k = ctx.kappa[p], t = ctx.tau[p];
        out[p] = {-e.e1 * k * E.e1_s[p], -e.e2 * E.e3_s[p] * t, e.e3 * E.e1_s[p] * t};
        break;
      }
      case Direction::Xi:
        out[p] = {-e.e1 * (E.e1_xi[p] * c.g_tn[p] + E.e3_xi[p] * c.g_tb[p]),
                  -e.e2 * E.e3_xi[p] * c.g_nb[p], e.e3 * E.e1_xi[p] * c.g_nb[p]};
        break;
      case Direction::Eta: {
        // The printed T-component repeats E1_eta in its second term.
        const double second = ctx.variant == Formulas::Printed ? E.e1_eta[p] : E.e3_eta[p];
        out[p] = {-e.e1 * (E.e1_eta[p] * c.u_tn[p] + second * c.u_tb[p]),
                  -e.e2 * E.e3_eta[p] * c.u_nb[p], e.e3 * E.e1_eta[p] * c.u_nb[p]};
        break;
      }
      default: throw ContractViolation("unknown direction");
    }
  }
  return out;
}

ScalarField electric_divergence(const ElectricField& E, const FieldContext& ctx) {
  const std::size_t n = ctx.size();
  E.validate(n);
  ScalarField out(n);
  for (std::size_t p = 0; p < n; ++p)
    out[p] = -ctx.kappa[p] * E.e1_s[p] + E.e1_eta[p] * ctx.coeffs.u_nb[p] -
             E.e3_xi[p] * ctx.coeffs.g_nb[p];
  return out;
}

ScalarField curvature_from_electric(const ElectricField& E, const FieldContext& ctx, double e_min) {
  const std::size_t n = ctx.size();
  E.validate(n);
  ScalarField out(n);
  std::vector<std::size_t> bad;
  const int e2 = ctx.eps.e2;
  for (std::size_t p = 0; p < n; ++p) {
    if (std::abs(E.e1_s[p]) < e_min) {
      bad.push_back(p);
      continue;
    }
    const Proj q = proj(ctx, p);
    const double div_term = ctx.variant == Formulas::Printed ? q.div_b : e2 * q.div_b;
    out[p] = (e2 * E.e1_eta[p] * q.cbt + E.e3_xi[p] * div_term) / E.e1_s[p];
  }
  if (!bad.empty()) degenerate("|E1_s| below e_min in curvature reconstruction", bad, ctx);
  return out;
}

Mat3 lorentz_matrix(Direction d, const FieldContext& ctx, std::size_t p) {
  const auto& c = ctx.coeffs;
  const int e1 = ctx.eps.e1, e2 = ctx.eps.e2, e3 = ctx.eps.e3;
  if (d == Direction::Xi) {
    const double div_b = ctx.diff.div_b[p];
    const double lower = ctx.variant == Formulas::Printed ? e2 * e3 * div_b : div_b;
    return {{{0.0, e2 * c.g_tn[p], e3 * c.g_tb[p]},
             {-e1 * c.g_tn[p], 0.0, -e2 * e3 * div_b},
             {-e1 * c.g_tb[p], lower, 0.0}}};
  }
  if (d == Direction::Eta) {
    return {{{0.0, e2 * c.u_tn[p], e3 * c.u_tb[p]},
             {-e1 * c.u_tn[p], 0.0, e3 * c.u_nb[p]},
             {-e1 * c.u_tb[p], -e2 * c.u_nb[p], 0.0}}};
  }
  throw ContractViolation("Lorentz matrices exist for the xi and eta directions only");
}

MagneticField magnetic_vector(Direction d, const FieldContext& ctx) {
  const std::size_t n = ctx.size();
  const int e1 = ctx.eps.e1, e2 = ctx.eps.e2, e3 = ctx.eps.e3;
  MagneticField M;
  M.dir = d;
  M.m1.resize(n);
  M.m2.resize(n);
  M.m3.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    const Proj q = proj(ctx, p);
    if (d == Direction::Xi) {
      M.m1[p] = -e2 * q.div_b;
      M.m2[p] = -ctx.coeffs.g_tb[p];
      M.m3[p] = ctx.coeffs.g_tn[p];
    } else if (d == Direction::Eta) {
      const double t = ctx.tau[p];
      M.m1[p] = e2 * q.cbt;
      M.m2[p] = ctx.variant == Formulas::Printed ? e1 * (e2 * t + q.cbn) : e1 * q.cbn;
      M.m3[p] = -e1 * (e3 * t + q.cnn);
    } else {
      throw ContractViolation("magnetic vectors exist for the xi and eta directions only");
    }
  }
  return M;
}

namespace {

// sum_X <X, dM/dX> without the -kappa m2 term, from FD derivatives of m.
ScalarField divergence_rest(const MagneticField& M, const FieldContext& ctx) {
  const auto d1 = partials(M.m1, ctx);
  const auto d2 = partials(M.m2, ctx);
  const auto d3 = partials(M.m3, ctx);
  const auto& c = ctx.coeffs;
  const Eps e = ctx.eps;
  ScalarField out(ctx.size());
  for (std::size_t p = 0; p < out.size(); ++p)
    out[p] = e.e1 * d1.s[p] + e.e2 * d2.xi[p] + e.e3 * d3.eta[p] + M.m1[p] * c.g_tn[p] -
             M.m3[p] * c.g_nb[p] + M.m1[p] * c.u_tb[p] + M.m2[p] * c.u_nb[p];
  return out;
}

// The displayed xi sum: rest terms (the bracket set to zero in the curvature
// formula) and the kappa coefficient -Gamma_TB.
ScalarField printed_xi_bracket(const FieldContext& ctx) {
  const auto& c = ctx.coeffs;
  const int e1 = ctx.eps.e1, e2 = ctx.eps.e2, e3 = ctx.eps.e3;
  const auto ddiv = partials(ctx.diff.div_b, ctx);
  const auto dgtb = partials(c.g_tb, ctx);
  ScalarField out(ctx.size());
  for (std::size_t p = 0; p < out.size(); ++p) {
    const double div_b = ctx.diff.div_b[p];
    out[p] = e2 * e1 * ddiv.s[p] + e3 * div_b * c.g_tn[p] + e2 * dgtb.xi[p] + c.g_nb[p] * c.g_tn[p] +
             e2 * div_b * c.u_tb[p] + c.g_tb[p] * c.u_nb[p] - e3 * dgtb.eta[p];
  }
  return out;
}

// The displayed eta sum without its kappa (eps2 tau + Curl B.N) term.
ScalarField printed_eta_bracket(const FieldContext& ctx) {
  const auto& c = ctx.coeffs;
  const int e1 = ctx.eps.e1, e2 = ctx.eps.e2, e3 = ctx.eps.e3;
  const std::size_t n = ctx.size();
  ScalarField cbt(n), P(n), Q(n);
  for (std::size_t p = 0; p < n; ++p) {
    const Proj q = proj(ctx, p);
    cbt[p] = q.cbt;
    P[p] = e2 * ctx.tau[p] + q.cbn;
    Q[p] = e3 * ctx.tau[p] + q.cnn;
  }
  const auto dcbt = partials(cbt, ctx);
  const auto dP = partials(P, ctx);
  const auto dQ = partials(Q, ctx);
  ScalarField out(n);
  for (std::size_t p = 0; p < n; ++p)
    out[p] = e1 * e2 * dcbt.s[p] + e2 * e1 * dP.xi[p] + e2 * cbt[p] * c.g_tn[p] -
             e3 * e1 * dQ.eta[p] + e1 * Q[p] * c.g_nb[p] + e2 * cbt[p] * c.u_tb[p] +
             e1 * P[p] * c.u_nb[p];
  return out;
}

ScalarField printed_eta_p(const FieldContext& ctx) {
  ScalarField P(ctx.size());
  for (std::size_t p = 0; p < P.size(); ++p) P[p] = ctx.eps.e2 * ctx.tau[p] + proj(ctx, p).cbn;
  return P;
}

}  // namespace

ScalarField magnetic_divergence(const MagneticField& M, const FieldContext& ctx) {
  const std::size_t n = ctx.size();
  ScalarField out(n);
  if (ctx.variant == Formulas::Printed) {
    if (M.dir == Direction::Xi) {
      const auto br = printed_xi_bracket(ctx);
      for (std::size_t p = 0; p < n; ++p) out[p] = -br[p] - ctx.kappa[p] * ctx.coeffs.g_tb[p];
    } else {
      const auto br = printed_eta_bracket(ctx);
      const auto P = printed_eta_p(ctx);
      for (std::size_t p = 0; p < n; ++p) out[p] = br[p] + ctx.kappa[p] * P[p];
    }
    return out;
  }
  const auto rest = divergence_rest(M, ctx);
  for (std::size_t p = 0; p < n; ++p) out[p] = rest[p] - ctx.kappa[p] * M.m2[p];
  return out;
}

ScalarField magnetic_divergence_direct(const MagneticField& M, const FieldContext& ctx) {
  const auto& g = need_grid(ctx);
  std::vector<FrameVector> F(ctx.size());
  for (std::size_t p = 0; p < F.size(); ++p) F[p] = M.at(p);
  return divergence(F, g, ctx.fd, Contraction::Metric);
}

ScalarField curvature_from_magnetic(const MagneticField& M, const FieldContext& ctx, double d_min) {
  const std::size_t n = ctx.size();
  ScalarField num(n), den(n);
  if (ctx.variant == Formulas::Printed) {
    if (M.dir == Direction::Xi) {
      const auto br = printed_xi_bracket(ctx);
      for (std::size_t p = 0; p < n; ++p) {
        num[p] = -br[p];
        den[p] = ctx.coeffs.g_tb[p];
      }
    } else {
      const auto br = printed_eta_bracket(ctx);
      const auto P = printed_eta_p(ctx);
      for (std::size_t p = 0; p < n; ++p) {
        num[p] = -br[p];
        den[p] = P[p];
      }
    }
  } else {
    num = divergence_rest(M, ctx);
    den = M.m2;
  }
  ScalarField out(n);
  std::vector<std::size_t> bad;
  for (std::size_t p = 0; p < n; ++p) {
    if (std::abs(den[p]) < d_min) {
      bad.push_back(p);
      continue;
    }
    out[p] = num[p] / den[p];
  }
  if (!bad.empty()) degenerate("magnetic curvature denominator below d_min", bad, ctx);
  return out;
}

std::vector<FrameVector> magnetic_curl(const MagneticField& M, const FieldContext& ctx) {
  const std::size_t n = ctx.size();
  const auto& c = ctx.coeffs;
  const int e1 = ctx.eps.e1, e2 = ctx.eps.e2, e3 = ctx.eps.e3;
  const double cf = ctx.c;
  std::vector<FrameVector> out(n);

  if (ctx.variant == Formulas::Printed && M.dir == Direction::Xi) {
    const auto ddiv = partials(ctx.diff.div_b, ctx);
    const auto dgtn = partials(c.g_tn, ctx);
    const auto dgtb = partials(c.g_tb, ctx);
    for (std::size_t p = 0; p < n; ++p) {
      const double div_b = ctx.diff.div_b[p], k = ctx.kappa[p], t = ctx.tau[p];
      const double gtn = c.g_tn[p], gtb = c.g_tb[p], gnb = c.g_nb[p];
      const double utn = c.u_tn[p], utb = c.u_tb[p], unb = c.u_nb[p];
      FrameVector r;
      r.tg = -e2 * e1 * cf * div_b;
      r.t = e1 * (dgtn.xi[p] - e2 * e3 * gtb * div_b + e2 * gtn * unb -
                  e3 * gtb * gnb * utn * div_b + dgtb.eta[p]);
      r.n = -e2 * e3 * t * gtb - e2 * dgtn.s[p] - ddiv.eta[p] + e1 * e2 * gtb * utn -
            e1 * e2 * gtn * utb;
      r.b = e3 * (-k * div_b - dgtb.s[p] - e2 * t * gtn + e2 * e3 * ddiv.xi[p]);
      out[p] = r;
    }
    return out;
  }

  if (ctx.variant == Formulas::Printed && M.dir == Direction::Eta) {
    ScalarField cbt(n), cbn_t(n), P(n), Q(n);
    for (std::size_t p = 0; p < n; ++p) {
      const Proj q = proj(ctx, p);
      cbt[p] = q.cbt;
      P[p] = e2 * ctx.tau[p] + q.cbn;
      Q[p] = e3 * ctx.tau[p] + q.cnn;
      cbn_t[p] = e3 * ctx.tau[p] + q.cbn;  // as displayed in the third component
    }
    const auto dcbt = partials(cbt, ctx);
    const auto dP = partials(P, ctx);
    const auto dQ = partials(Q, ctx);
    const auto dR = partials(cbn_t, ctx);
    for (std::size_t p = 0; p < n; ++p) {
      const double k = ctx.kappa[p], t = ctx.tau[p];
      FrameVector r;
      // The leading T x gamma term and the one inside Theta_1 are the same term.
      r.tg = -e2 * e1 * cf * cbt[p];
      // Theta_1
      r.n += e1 * e2 * (dQ.s[p] - e3 * t * P[p]);
      r.b += e1 * e3 * (e3 * k * cbt[p] + dP.s[p] + e2 * Q[p]);
      // Theta_2
      r.t += e1 * e2 * e3 * cbt[p] * c.g_tb[p] + e3 * P[p] * c.g_nb[p] - dQ.xi[p];
      r.b += -e3 * (e2 * dcbt.xi[p] + P[p] * c.g_tn[p] + Q[p] * c.g_tb[p]);
      // Theta_3
      r.t += -(e1 * cbt[p] * c.u_tn[p] + dR.eta[p] + e2 * Q[p] * c.g_nb[p]);
      r.n += e2 * Q[p] * c.u_tb[p] + e2 * dcbt.eta[p] - e2 * P[p] * c.u_tn[p];
      out[p] = r;
    }
    return out;
  }

  const auto d1 = partials(M.m1, ctx);
  const auto d2 = partials(M.m2, ctx);
  const auto d3 = partials(M.m3, ctx);
  for (std::size_t p = 0; p < n; ++p) {
    const double m1 = M.m1[p], m2 = M.m2[p], m3 = M.m3[p];
    const double k = ctx.kappa[p], t = ctx.tau[p];
    const FrameVector ds{d1.s[p] - e1 * k * m2, e2 * k * m1 + d2.s[p] - e2 * t * m3,
                         e3 * t * m2 + d3.s[p]};
    const FrameVector dx{d1.xi[p] - e1 * c.g_tn[p] * m2 - e1 * c.g_tb[p] * m3,
                         e2 * c.g_tn[p] * m1 + d2.xi[p] - e2 * c.g_nb[p] * m3,
                         e3 * c.g_tb[p] * m1 + e3 * c.g_nb[p] * m2 + d3.xi[p]};
    const FrameVector de{d1.eta[p] - e1 * c.u_tn[p] * m2 - e1 * c.u_tb[p] * m3,
                         e2 * c.u_tn[p] * m1 + d2.eta[p] - e2 * c.u_nb[p] * m3,
                         e3 * c.u_tb[p] * m1 + e3 * c.u_nb[p] * m2 + d3.eta[p]};
    FrameVector r = frame_cross(kT, ds, ctx.eps) + frame_cross(kN, dx, ctx.eps) +
                    frame_cross(kB, de, ctx.eps);
    r.tg = -e1 * cf * m1;
    out[p] = r;
  }
  return out;
}

std::vector<FrameVector> magnetic_curl_direct(const MagneticField& M, const FieldContext& ctx) {
  const auto& g = need_grid(ctx);
  std::vector<FrameVector> F(ctx.size());
  for (std::size_t p = 0; p < F.size(); ++p) F[p] = M.at(p);
  return curl(F, g, ctx.fd);
}

ElectricField synthesize_electric(const FieldContext& ctx, double kappa_min) {
  const auto& g = need_grid(ctx);
  const std::size_t n = ctx.size();
  ElectricField E;
  for (auto* f : {&E.e1_s, &E.e3_s, &E.e1_xi, &E.e3_xi, &E.e1_eta, &E.e3_eta}) f->assign(n, 0.0);
  std::vector<std::size_t> bad;
  for (std::size_t p = 0; p < n; ++p) {
    const auto ijk = g.shape.unravel(p);
    const double s = g.coord(Axis::S, ijk[0]);
    const double xi = g.coord(Axis::Xi, ijk[1]);
    const double eta = g.coord(Axis::Eta, ijk[2]);
    E.e1_eta[p] = 0.5 + 0.1 * std::sin(s + xi);
    E.e3_xi[p] = 0.3 + 0.1 * std::cos(eta);
    E.e3_s[p] = 0.2;
    E.e1_xi[p] = 0.4;
    E.e3_eta[p] = 0.25;
    if (ctx.kappa[p] < kappa_min) {
      bad.push_back(p);
      continue;
    }
    E.e1_s[p] = (E.e1_eta[p] * ctx.coeffs.u_nb[p] - E.e3_xi[p] * ctx.coeffs.g_nb[p]) / ctx.kappa[p];
  }
  if (!bad.empty()) degenerate("kappa below kappa_min while synthesizing the electric field", bad, ctx);
  return E;
}

MaxwellResiduals maxwell_residuals(const ElectricField& E, const FieldContext& ctx) {
  const std::size_t n = ctx.size();
  MaxwellResiduals r;
  r.div_e = electric_divergence(E, ctx);
  r.div_m_xi = magnetic_divergence(magnetic_vector(Direction::Xi, ctx), ctx);
  r.div_m_eta = magnetic_divergence(magnetic_vector(Direction::Eta, ctx), ctx);
  r.orthogonality.assign(n, 0.0);
  if (ctx.grid) {
    for (std::size_t p = 0; p < n; ++p) {
      const auto& f = ctx.grid->frames[p];
      double worst = 0.0;
      for (auto [a, b] : {std::pair{E.e1_s[p], E.e3_s[p]}, std::pair{E.e1_xi[p], E.e3_xi[p]},
                          std::pair{E.e1_eta[p], E.e3_eta[p]}})
        worst = std::max(worst, std::abs(inner(a * f.N + b * f.B, f.T)));
      r.orthogonality[p] = worst;
    }
  }
  return r;
}

namespace {
constexpr const char* kFieldHeader = "i,j,k,E1_s,E3_s,E1_xi,E3_xi,E1_eta,E3_eta";
}

ElectricField read_field_csv(const std::string& path, const GridShape& shape) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open field CSV '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != kFieldHeader)
    throw ValidationError(std::string("row 1: header must be '") + kFieldHeader + "'");
  ElectricField E;
  for (auto* f : {&E.e1_s, &E.e3_s, &E.e1_xi, &E.e3_xi, &E.e1_eta, &E.e3_eta})
    f->assign(shape.size(), 0.0);
  std::vector<char> seen(shape.size(), 0);
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto v = detail::parse_csv_numbers(line, 9, row);
    const std::size_t ext[3] = {shape.ns, shape.nxi, shape.neta};
    std::size_t ijk[3];
    for (int a = 0; a < 3; ++a) {
      const double x = v[static_cast<std::size_t>(a)];
      if (x < 0 || x != std::floor(x) || static_cast<std::size_t>(x) >= ext[a])
        throw ValidationError("row " + std::to_string(row) + ": grid index out of range");
      ijk[a] = static_cast<std::size_t>(x);
    }
    const std::size_t p = shape.index(ijk[0], ijk[1], ijk[2]);
    if (seen[p]) throw ValidationError("row " + std::to_string(row) + ": duplicate grid index");
    seen[p] = 1;
    E.e1_s[p] = v[3];
    E.e3_s[p] = v[4];
    E.e1_xi[p] = v[5];
    E.e3_xi[p] = v[6];
    E.e1_eta[p] = v[7];
    E.e3_eta[p] = v[8];
  }
  for (std::size_t p = 0; p < seen.size(); ++p)
    if (!seen[p]) {
      const auto ijk = shape.unravel(p);
      throw ValidationError("field CSV misses grid point (" + std::to_string(ijk[0]) + "," +
                            std::to_string(ijk[1]) + "," + std::to_string(ijk[2]) + ")");
    }
  return E;
}

void write_field_csv(const std::string& path, const ElectricField& E, const GridShape& shape) {
  E.validate(shape.size());
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write field CSV '" + path + "'");
  out << kFieldHeader << '\n' << std::setprecision(17);
  for (std::size_t p = 0; p < shape.size(); ++p) {
    const auto ijk = shape.unravel(p);
    out << ijk[0] << ',' << ijk[1] << ',' << ijk[2] << ',' << E.e1_s[p] << ',' << E.e3_s[p] << ','
        << E.e1_xi[p] << ',' << E.e3_xi[p] << ',' << E.e1_eta[p] << ',' << E.e3_eta[p] << '\n';
  }
}

}  // namespace frameforge
