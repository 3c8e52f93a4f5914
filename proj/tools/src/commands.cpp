#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include "frameforge/electromagnetic.hpp"
#include "frameforge/energy.hpp"
#include "frameforge/errors.hpp"

namespace frameforge::cli {

namespace fs = std::filesystem;

namespace {

json stat_json(const Stat& st, double tol, bool gating = true) {
  json j;
  j["max"] = st.max;
  j["mean"] = st.mean;
  j["argmax"] = {st.argmax[0], st.argmax[1], st.argmax[2]};
  j["tol"] = tol;
  j["pass"] = st.max <= tol;
  if (!gating) j["gating"] = false;
  return j;
}

// Gated on the interior, where every nested stencil is central; the whole-grid
// maximum is reported alongside.
json field_json(const ScalarField& f, const GridShape& shape, std::size_t margin, double tol,
                bool& pass) {
  const Stat in = stat_abs(f, shape, margin);
  const Stat all = stat_abs(f, shape, 0);
  json j = stat_json(in, tol);
  j["interior_margin"] = margin;
  j["max_full_grid"] = all.max;
  pass = pass && in.max <= tol;
  return j;
}

ScalarField diff(const ScalarField& a, const ScalarField& b) {
  ScalarField d(a.size());
  for (std::size_t p = 0; p < a.size(); ++p) d[p] = a[p] - b[p];
  return d;
}

json flag(const std::string& id, const std::string& detail) {
  json j;
  j["id"] = id;
  j["detail"] = detail;
  return j;
}

std::string eps_string(const Eps& e) {
  auto c = [](int x) { return x > 0 ? '+' : '-'; };
  return std::string{c(e.e1), c(e.e2), c(e.e3)};
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw ValidationError("cannot write '" + p.string() + "'");
  f << std::setprecision(17);
  return f;
}

CongruenceGrid load_grid(const RunConfig& cfg, const DerivConfig& fd) {
  if (!cfg.input.empty()) return read_congruence_csv(cfg.input, fd);
  return build_congruence(cfg.congruence());
}

// Single FD derivative: central stencils keep `order / 2` points from each end.
std::size_t margin1(const DerivConfig& fd) { return static_cast<std::size_t>(fd.order / 2); }
// Derivatives of FD-derived fields: two nested stencils.
std::size_t margin2(const DerivConfig& fd) { return static_cast<std::size_t>(fd.order); }

Formulas variant_of(const RunConfig& cfg) {
  return cfg.strict_paper ? Formulas::Printed : Formulas::Corrected;
}

}  // namespace

json config_json(const RunConfig& cfg) {
  json j;
  const SpaceForm f = cfg.form();
  j["space_form"] = {{"q", f.q}, {"c", f.c}, {"name", f.name()}};
  const auto [a, b] = cfg.interval();
  json curve;
  curve["family"] = to_string(cfg.curve.family);
  if (cfg.curve.family == CurveFamily::SmallCircle) curve["r"] = cfg.curve.r;
  if (cfg.curve.family == CurveFamily::HopfHelix) {
    curve["a"] = cfg.curve.a;
    curve["alpha"] = cfg.curve.alpha;
  }
  curve["s0"] = a;
  curve["s1"] = b;
  curve["samples"] = cfg.samples;
  curve["exact"] = cfg.exact;
  j["curve"] = curve;
  const RotationCongruence rc = cfg.congruence();
  j["congruence"] = {{"kind", cfg.kind == CongruenceKind::Rotate ? "rotate" : "const"},
                     {"generator_xi", rc.A.w},
                     {"generator_eta", rc.C.w},
                     {"ramp_xi", rc.ramp_xi},
                     {"ramp_eta", rc.ramp_eta},
                     {"origin", rc.origin},
                     {"extent", rc.extent},
                     {"shape", cfg.shape}};
  j["fd_order"] = cfg.fd_order;
  j["tolerances"] = {{"frame", cfg.tol.frame},
                     {"frenet", cfg.tol.frenet},
                     {"kappa", cfg.tol.kappa},
                     {"identity", cfg.tol.identity},
                     {"compatibility", cfg.tol.compatibility},
                     {"maxwell", cfg.tol.maxwell},
                     {"kappa_electric", cfg.tol.kappa_electric},
                     {"kappa_magnetic", cfg.tol.kappa_magnetic},
                     {"dual_divergence", cfg.tol.dual_divergence},
                     {"curl", cfg.tol.curl},
                     {"energy_refinement", cfg.tol.energy_refinement}};
  j["energy"] = {{"panels", cfg.panels}, {"normalize_half", cfg.normalize_half}};
  j["strict_paper"] = cfg.strict_paper;
  j["synthesize"] = cfg.synthesize;
  j["input"] = cfg.input.empty() ? json(nullptr) : json(fs::path(cfg.input).filename().string());
  return j;
}

Section cmd_frame(const RunConfig& cfg, const fs::path& out) {
  Section sec{"frame", {}, true, {}};
  const DerivConfig fd{cfg.fd_order};
  CurveSpec spec;
  if (!cfg.input.empty()) {
    if (!cfg.q || !cfg.c) throw ValidationError("curve CSV input needs space_form.q and space_form.c");
    spec = read_curve_csv(cfg.input, cfg.form());
  } else {
    const auto [a, b] = cfg.interval();
    spec = AnalyticSpec{cfg.curve, a, b, cfg.samples, cfg.exact};
  }
  const FrenetResult fr = frenet_frame(spec, fd);
  const auto& S = fr.samples;

  double orth = 0.0;
  for (const auto& f : S) orth = std::max(orth, orthonormality_defect(f, fr.form));
  const auto res = frenet_residuals(fr, fd);
  double rmax = 0.0;
  std::size_t rarg = 0;
  for (std::size_t i = 0; i < res.size(); ++i)
    for (double r : res[i])
      if (r > rmax) {
        rmax = r;
        rarg = i;
      }

  double kmin = S.front().kappa, kmax = kmin, tmin = S.front().tau, tmax = tmin;
  for (const auto& f : S) {
    kmin = std::min(kmin, f.kappa);
    kmax = std::max(kmax, f.kappa);
    tmin = std::min(tmin, f.tau);
    tmax = std::max(tmax, f.tau);
  }

  json& b = sec.body;
  b["source"] = cfg.input.empty() ? (cfg.exact ? "analytic" : "sampled-fd") : "csv";
  b["samples"] = S.size();
  b["h"] = fr.h;
  b["causal_characters"] = eps_string(S.front().eps);
  b["kappa"] = {{"min", kmin}, {"max", kmax}};
  b["tau"] = {{"min", tmin}, {"max", tmax}};
  b["orthonormality"] = {{"max", orth}, {"tol", cfg.tol.frame}, {"pass", orth <= cfg.tol.frame}};
  b["frenet_residual"] = {
      {"max", rmax}, {"argmax", rarg}, {"tol", cfg.tol.frenet}, {"pass", rmax <= cfg.tol.frenet}};
  sec.pass = orth <= cfg.tol.frame && rmax <= cfg.tol.frenet;

  if (cfg.input.empty()) {
    double k0 = -1.0;
    switch (cfg.curve.family) {
      case CurveFamily::SmallCircle: k0 = std::sqrt(1.0 - cfg.curve.r * cfg.curve.r) / cfg.curve.r; break;
      case CurveFamily::GreatCircle:
      case CurveFamily::DeSitterGeodesic:
      case CurveFamily::HyperbolicGeodesic: k0 = 0.0; break;
      case CurveFamily::HopfHelix: break;
    }
    if (k0 >= 0.0) {
      double dk = 0.0, dt = 0.0;
      for (const auto& f : S) {
        dk = std::max(dk, std::abs(f.kappa - k0));
        dt = std::max(dt, std::abs(f.tau));
      }
      const bool ok = dk <= cfg.tol.kappa && dt <= cfg.tol.kappa;
      b["known_curvature"] = {{"kappa_expected", k0}, {"kappa_error", dk}, {"tau_error", dt},
                              {"tol", cfg.tol.kappa}, {"pass", ok}};
      sec.pass = sec.pass && ok;
    }
  }

  json windows = json::array();
  for (const auto& w : fr.degenerate_windows) windows.push_back({w.first, w.last});
  b["degenerate_windows"] = windows;
  if (!fr.degenerate_windows.empty())
    sec.flags.push_back(flag("degenerate-frame",
                             "kappa below kappa_min on " + std::to_string(fr.degenerate_windows.size()) +
                                 " window(s); N and B parallel-transported there"));

  auto trace = open_out(out / "frame_trace.csv");
  trace << "s,kappa,tau,e1,e2,e3,degenerate\n";
  for (const auto& f : S)
    trace << f.s << ',' << f.kappa << ',' << f.tau << ',' << f.eps.e1 << ',' << f.eps.e2 << ','
          << f.eps.e3 << ',' << (f.degenerate ? 1 : 0) << '\n';
  b["trace"] = "frame_trace.csv";
  b["pass"] = sec.pass;
  return sec;
}

Section cmd_congruence(const RunConfig& cfg, const fs::path&) {
  Section sec{"congruence", {}, true, {}};
  const DerivConfig fd{cfg.fd_order};
  const Formulas variant = variant_of(cfg);
  const CongruenceGrid g = load_grid(cfg, fd);
  const FrameCoefficients c = coefficients(g, fd);
  const FrameDifferentials dfd = differentials(g, fd);
  const ScalarField kap = kappa_field(g), tau = tau_field(g);
  const FrameDifferentials dfo = differentials_from_coefficients(c, kap, tau, g.eps, g.form.c, variant);

  json& b = sec.body;
  b["shape"] = {g.shape.ns, g.shape.nxi, g.shape.neta};
  b["step"] = g.step;
  b["causal_characters"] = eps_string(g.eps);
  b["variant"] = variant == Formulas::Printed ? "printed" : "corrected";

  json coeffs;
  auto coeff_stat = [&](const char* name, const ScalarField& f) {
    const Stat st = stat_abs(f, g.shape);
    coeffs[name] = {{"max_abs", st.max}, {"mean_abs", st.mean}};
  };
  coeff_stat("gamma_tn", c.g_tn);
  coeff_stat("gamma_tb", c.g_tb);
  coeff_stat("gamma_nb", c.g_nb);
  coeff_stat("upsilon_tn", c.u_tn);
  coeff_stat("upsilon_tb", c.u_tb);
  coeff_stat("upsilon_nb", c.u_nb);
  coeff_stat("kappa", kap);
  coeff_stat("tau", tau);
  b["coefficients"] = coeffs;

  const std::size_t m = margin1(fd);
  const auto interior = identity_suite(g, c, dfd, dfo, cfg.tol.identity, m);
  const auto full = identity_suite(g, c, dfd, dfo, cfg.tol.identity, 0);
  json ids = json::array();
  for (std::size_t i = 0; i < interior.size(); ++i) {
    json j;
    j["name"] = interior[i].name;
    j.update(stat_json(interior[i].stat, interior[i].tol));
    j["interior_margin"] = m;
    j["max_full_grid"] = full[i].stat.max;
    sec.pass = sec.pass && interior[i].pass;
    ids.push_back(j);
  }
  b["identities"] = ids;

  // Offset of the printed Div B relation against the frame reading.
  {
    ScalarField off(c.g_nb.size());
    for (std::size_t p = 0; p < off.size(); ++p) off[p] = c.g_nb[p] + dfd.div_b[p];
    b["div_b_eps_offset"] = stat_abs(off, g.shape, m).max;
  }

  double a38 = 0, a39 = 0, ax = 0, ae = 0;
  for (std::size_t p = 0; p < g.frames.size(); ++p) {
    a38 = std::max(a38, eps_antisymmetry_defect(xi_matrix(c, p, g.eps), g.eps));
    a39 = std::max(a39, eps_antisymmetry_defect(eta_matrix(c, p, g.eps), g.eps));
    const auto em = extended_frenet_matrices(dfo, tau, p, g.eps, variant);
    ax = std::max(ax, eps_antisymmetry_defect(em.xi, g.eps));
    ae = std::max(ae, eps_antisymmetry_defect(em.eta, g.eps));
  }
  constexpr double kExact = 1e-12;
  const bool anti_ok = a38 <= kExact && a39 <= kExact && ax <= kExact && ae <= kExact;
  b["eps_antisymmetry"] = {{"xi", a38}, {"eta", a39}, {"xi_extended", ax}, {"eta_extended", ae},
                           {"tol", kExact}, {"pass", anti_ok}};
  sec.pass = sec.pass && anti_ok;

  ScalarField h(g.frames.size());
  for (std::size_t p = 0; p < h.size(); ++p) {
    const auto ijk = g.shape.unravel(p);
    h[p] = g.coord(Axis::S, ijk[0]) + g.coord(Axis::Xi, ijk[1]);
  }
  const auto cr = compatibility_residuals(h, g, dfd, fd);
  json comp;
  comp["test_function"] = "h = s + xi";
  comp["residuals"] = json::array();
  bool comp_ok = true;
  for (const auto& r : cr) {
    const Stat st = stat_abs(r, g.shape, margin2(fd));
    comp["residuals"].push_back(stat_json(st, cfg.tol.compatibility, false));
    comp_ok = comp_ok && st.max <= cfg.tol.compatibility;
  }
  comp["pass"] = comp_ok;
  comp["gating"] = false;
  b["compatibility"] = comp;
  if (!comp_ok)
    sec.flags.push_back(flag("compatibility-system",
                             "mixed partials of a grid function commute, so the compatibility "
                             "system reduces to its right-hand side; reported, not gating"));
  if (!g.degenerate_windows.empty())
    sec.flags.push_back(flag("degenerate-frame", "kappa below kappa_min on some s-lines"));
  b["pass"] = sec.pass;
  return sec;
}

Section cmd_maxwell(const RunConfig& cfg, const fs::path& out) {
  Section sec{"maxwell", {}, true, {}};
  const DerivConfig fd{cfg.fd_order};
  RunConfig gcfg = cfg;
  gcfg.input.clear();  // --input names the field CSV here
  const CongruenceGrid g = load_grid(gcfg, fd);
  const Formulas variant = variant_of(cfg);
  const FieldContext ctx = make_context(g, fd, variant);
  const FieldContext other = make_context(g, fd, variant == Formulas::Printed ? Formulas::Corrected
                                                                              : Formulas::Printed);
  const FieldContext& corr = variant == Formulas::Corrected ? ctx : other;
  const FieldContext& prnt = variant == Formulas::Corrected ? other : ctx;

  ElectricField E;
  std::string source;
  const std::string field_csv = !cfg.input.empty() ? cfg.input : cfg.field_csv;
  if (cfg.synthesize) {
    E = synthesize_electric(ctx);
    source = "synthesized";
    write_field_csv((out / "synthesized_field.csv").string(), E, g.shape);
  } else if (!field_csv.empty()) {
    E = read_field_csv(field_csv, g.shape);
    source = "csv";
  } else {
    throw ValidationError("maxwell needs --synthesize or a field CSV (--input or maxwell.field_csv)");
  }

  json& b = sec.body;
  b["field_source"] = source;
  b["variant"] = variant == Formulas::Printed ? "printed" : "corrected";
  b["causal_characters"] = eps_string(g.eps);
  const std::size_t m2 = margin2(fd);

  const MaxwellResiduals R = maxwell_residuals(E, ctx);
  bool res_ok = true;
  json res;
  res["div_e"] = field_json(R.div_e, g.shape, 0, cfg.tol.maxwell, res_ok);
  res["div_m_xi"] = field_json(R.div_m_xi, g.shape, m2, cfg.tol.maxwell, res_ok);
  res["div_m_eta"] = field_json(R.div_m_eta, g.shape, m2, cfg.tol.maxwell, res_ok);
  res["orthogonality"] = field_json(R.orthogonality, g.shape, 0, cfg.tol.maxwell, res_ok);
  res["maxwellian"] = res_ok;
  b["residuals"] = res;
  sec.pass = res_ok;

  const MagneticField Mx = magnetic_vector(Direction::Xi, ctx);
  const MagneticField Me = magnetic_vector(Direction::Eta, ctx);
  const ScalarField ke = curvature_from_electric(E, ctx);
  const ScalarField kx = curvature_from_magnetic(Mx, ctx);
  const ScalarField kh = curvature_from_magnetic(Me, ctx);
  bool k_ok = true;
  json kj;
  kj["electric"] = field_json(diff(ke, ctx.kappa), g.shape, 0, cfg.tol.kappa_electric, k_ok);
  kj["magnetic_xi"] = field_json(diff(kx, ctx.kappa), g.shape, m2, cfg.tol.kappa_magnetic, k_ok);
  kj["magnetic_eta"] = field_json(diff(kh, ctx.kappa), g.shape, m2, cfg.tol.kappa_magnetic, k_ok);
  b["kappa_reconstruction"] = kj;
  sec.pass = sec.pass && k_ok;

  bool dual_ok = true;
  json dj;
  for (const MagneticField* M : {&Mx, &Me}) {
    const std::string d = to_string(M->dir);
    dj["divergence_" + d] = field_json(diff(magnetic_divergence(*M, ctx), magnetic_divergence_direct(*M, ctx)),
                                       g.shape, m2, cfg.tol.dual_divergence, dual_ok);
    const auto ca = magnetic_curl(*M, ctx);
    const auto cb = magnetic_curl_direct(*M, ctx);
    ScalarField dc(ca.size()), dg(ca.size());
    for (std::size_t p = 0; p < ca.size(); ++p) {
      for (int i = 0; i < 3; ++i) dc[p] = std::max(dc[p], std::abs(ca[p][i] - cb[p][i]));
      dg[p] = ca[p].tg - cb[p].tg;
    }
    dj["curl_" + d] = field_json(dc, g.shape, m2, cfg.tol.curl, dual_ok);
    dj["curl_" + d]["t_cross_gamma_max"] = stat_abs(dg, g.shape, m2).max;
  }
  b["dual_path"] = dj;
  sec.pass = sec.pass && dual_ok;

  // Printed transcriptions against their corrected counterparts on this state.
  json disc;
  auto record = [&](const std::string& id, double v) {
    disc[id] = v;
    if (v > 1e-12)
      sec.flags.push_back(flag("printed-variant:" + id,
                               "printed and corrected forms differ by up to " + [&] {
                                 std::ostringstream s;
                                 s << std::setprecision(3) << v;
                                 return s.str();
                               }()));
  };
  {
    const auto a = electric_derivative(E, Direction::Eta, corr);
    const auto p = electric_derivative(E, Direction::Eta, prnt);
    double v = 0;
    for (std::size_t i = 0; i < a.size(); ++i) v = std::max(v, std::abs(a[i].t - p[i].t));
    record("electric_eta_derivative", v);
  }
  {
    double v = 0;
    bool degenerate = false;
    try {
      v = stat_abs(diff(curvature_from_electric(E, corr), curvature_from_electric(E, prnt)), g.shape).max;
    } catch (const DivisionDegenerate&) {
      degenerate = true;
    }
    if (!degenerate) record("kappa_electric", v);
  }
  {
    double v = 0;
    for (std::size_t p = 0; p < ctx.size(); ++p) {
      const Mat3 a = lorentz_matrix(Direction::Xi, corr, p), q = lorentz_matrix(Direction::Xi, prnt, p);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          v = std::max(v, std::abs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                                   q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    }
    record("lorentz_xi", v);
  }
  for (Direction d : {Direction::Xi, Direction::Eta}) {
    const MagneticField a = magnetic_vector(d, corr), p = magnetic_vector(d, prnt);
    double v = 0;
    for (std::size_t i = 0; i < a.m1.size(); ++i)
      v = std::max({v, std::abs(a.m1[i] - p.m1[i]), std::abs(a.m2[i] - p.m2[i]), std::abs(a.m3[i] - p.m3[i])});
    record(std::string("magnetic_vector_") + to_string(d), v);
    record(std::string("div_m_") + to_string(d),
           stat_abs(diff(magnetic_divergence(a, corr), magnetic_divergence(p, prnt)), g.shape, m2).max);
    const auto ca = magnetic_curl(a, corr), cp = magnetic_curl(p, prnt);
    double w = 0;
    for (std::size_t i = 0; i < ca.size(); ++i)
      for (int k = 0; k < 3; ++k) w = std::max(w, std::abs(ca[i][k] - cp[i][k]));
    record(std::string("curl_m_") + to_string(d), w);
  }
  b["variant_discrepancies"] = disc;

  auto trace = open_out(out / "kappa_trace.csv");
  trace << "i,j,k,kappa,kappa_electric,kappa_magnetic_xi,kappa_magnetic_eta\n";
  for (std::size_t p = 0; p < g.frames.size(); ++p) {
    const auto ijk = g.shape.unravel(p);
    trace << ijk[0] << ',' << ijk[1] << ',' << ijk[2] << ',' << ctx.kappa[p] << ',' << ke[p] << ','
          << kx[p] << ',' << kh[p] << '\n';
  }
  b["trace"] = "kappa_trace.csv";
  if (cfg.synthesize) b["field_csv"] = "synthesized_field.csv";
  b["pass"] = sec.pass;
  return sec;
}

Section cmd_energy(const RunConfig& cfg, const fs::path&) {
  Section sec{"energies", {}, true, {}};
  if (!cfg.input.empty()) throw ValidationError("energy takes builtin curves only; drop --input");
  if (cfg.shape[1] % 2 == 0 || cfg.shape[2] % 2 == 0)
    throw ValidationError("energy needs an odd number of xi and eta samples (even panel count)");
  const DerivConfig fd{cfg.fd_order};
  const auto [a, b] = cfg.interval();

  auto s_energies = [&](std::size_t panels) {
    const FrenetResult fr = frenet_frame(AnalyticSpec{cfg.curve, a, b, panels + 1, true}, fd);
    return std::array<double, 3>{energy_s(fr.samples, fr.h, FrameField::T, fr.form),
                                 energy_s(fr.samples, fr.h, FrameField::N, fr.form),
                                 energy_s(fr.samples, fr.h, FrameField::B, fr.form)};
  };
  const auto es = s_energies(cfg.panels);
  const auto es2 = s_energies(2 * cfg.panels);

  const CongruenceGrid g = build_congruence(cfg.congruence());
  const Formulas variant = variant_of(cfg);
  const FrameCoefficients c = coefficients(g, fd);
  const FrameDifferentials d =
      differentials_from_coefficients(c, kappa_field(g), tau_field(g), g.eps, g.form.c, variant);
  const EnergyReport r = congruence_energies(g, d, {g.shape.ns / 2, 0, 0}, variant, cfg.normalize_half);

  json& body = sec.body;
  const std::array<std::pair<const char*, double>, 9> named = {{{"energy_T_s", es[0]},
                                                                {"energy_N_s", es[1]},
                                                                {"energy_B_s", es[2]},
                                                                {"energy_T_xi", r.t_xi},
                                                                {"energy_N_xi", r.n_xi},
                                                                {"energy_B_xi", r.b_xi},
                                                                {"energy_T_eta", r.t_eta},
                                                                {"energy_N_eta", r.n_eta},
                                                                {"energy_B_eta", r.b_eta}}};
  json mag;
  for (const auto& [k, v] : named) {
    body[k] = v;
    mag[k] = std::abs(v);
  }
  body["magnitude"] = mag;
  body["interval"] = {{"s", {a, b}}, {"xi", r.length[1]}, {"eta", r.length[2]}};
  body["samples"] = {{"s", cfg.panels + 1}, {"xi", r.samples[1]}, {"eta", r.samples[2]}};
  body["half_normalized"] = cfg.normalize_half;
  double change = 0.0;
  for (int i = 0; i < 3; ++i)
    change = std::max(change, std::abs(es[static_cast<std::size_t>(i)] - es2[static_cast<std::size_t>(i)]));
  body["refinement"] = {{"panels", cfg.panels}, {"doubled_change", change},
                        {"tol", cfg.tol.energy_refinement}, {"pass", change <= cfg.tol.energy_refinement}};
  sec.pass = change <= cfg.tol.energy_refinement;
  if (!cfg.normalize_half)
    sec.flags.push_back(flag("energy-N-eta-prefactor",
                             "energy_N_eta carries no 1/2 prefactor, as printed; set "
                             "energy.normalize_half = true to apply it"));
  body["pass"] = sec.pass;
  return sec;
}

}  // namespace frameforge::cli
