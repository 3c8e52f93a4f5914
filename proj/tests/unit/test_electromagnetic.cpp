#include <filesystem>

#include "doctest.h"
#include "frameforge/electromagnetic.hpp"
#include "frameforge/errors.hpp"
#include "support.hpp"

using namespace ff_test;

namespace {

const DerivConfig kFd{4};

ElectricField constant_field(std::size_t n, std::array<double, 6> v) {
  ElectricField E;
  for (auto* f : {&E.e1_s, &E.e3_s, &E.e1_xi, &E.e3_xi, &E.e1_eta, &E.e3_eta}) f->assign(n, 0.0);
  E.e1_s.assign(n, v[0]);
  E.e3_s.assign(n, v[1]);
  E.e1_xi.assign(n, v[2]);
  E.e3_xi.assign(n, v[3]);
  E.e1_eta.assign(n, v[4]);
  E.e3_eta.assign(n, v[5]);
  return E;
}

// One-point context with arbitrary coefficients, curvature and torsion.
FieldContext random_context(Gen& g, Eps e, Formulas variant = Formulas::Corrected) {
  FrameCoefficients c;
  for (auto* f : {&c.g_tn, &c.g_tb, &c.g_nb, &c.u_tn, &c.u_tb, &c.u_nb}) *f = {g.uniform()};
  return make_context(c, {g.uniform(0.1, 2.0)}, {g.uniform()}, e, g.sign(), variant);
}

FieldContext scalar_context(double kappa, double tau, Eps e = {}) {
  FrameCoefficients c;
  for (auto* f : {&c.g_tn, &c.g_tb, &c.g_nb, &c.u_tn, &c.u_tb, &c.u_nb}) *f = {0.0};
  return make_context(c, {kappa}, {tau}, e, 1);
}

}  // namespace

TEST_CASE("frame cross product table") {
  Gen g(1);
  for (int t = 0; t < 64; ++t) {
    const Eps e = g.eps();
    auto same = [](FrameVector a, FrameVector b) { return a.t == b.t && a.n == b.n && a.b == b.b; };
    CHECK(same(frame_cross(kT, kN, e), double(e.e3) * kB));
    CHECK(same(frame_cross(kN, kB, e), double(e.e1) * kT));
    CHECK(same(frame_cross(kB, kT, e), double(e.e2) * kN));
    const FrameVector a{g.uniform(), g.uniform(), g.uniform()};
    const auto z = frame_cross(a, a, e);
    CHECK(z.t == 0.0);
    CHECK(z.n == 0.0);
    CHECK(z.b == 0.0);
    const FrameVector m{g.uniform(), g.uniform(), g.uniform()};
    const auto x = frame_cross(m, kT, e);
    CHECK(x.t == 0.0);
    CHECK(x.n == doctest::Approx(e.e2 * m.b));
    CHECK(x.b == doctest::Approx(-e.e3 * m.n));
  }
}

TEST_CASE("basis products are the only sign choice consistent with the Lorentz expansions") {
  // Brute force over the eight sign patterns for (TxN, NxB, BxT); only the
  // table (e3, e1, e2) makes M x X = phi(X) for every eps.
  Gen g(2);
  int matches = 0;
  for (int code = 0; code < 8; ++code) {
    const int s1 = code & 1 ? -1 : 1, s2 = code & 2 ? -1 : 1, s3 = code & 4 ? -1 : 1;
    bool ok = true;
    for (int t = 0; t < 16 && ok; ++t) {
      const Eps e = g.eps();
      auto ctx = random_context(g, e);
      const auto M = magnetic_vector(Direction::Xi, ctx).at(0);
      const Mat3 phi = lorentz_matrix(Direction::Xi, ctx, 0);
      // Cross product built from candidate basis signs.
      auto cross = [&](const FrameVector& a, const FrameVector& b) {
        return FrameVector{s2 * e.e1 * (a.n * b.b - a.b * b.n), s3 * e.e2 * (a.b * b.t - a.t * b.b),
                           s1 * e.e3 * (a.t * b.n - a.n * b.t)};
      };
      for (int i = 0; i < 3 && ok; ++i) {
        const FrameVector X = i == 0 ? kT : (i == 1 ? kN : kB);
        const auto lhs = cross(M, X);
        const auto rhs = row(phi, i);
        ok = std::abs(lhs.t - rhs.t) + std::abs(lhs.n - rhs.n) + std::abs(lhs.b - rhs.b) < 1e-12;
      }
    }
    if (ok) {
      ++matches;
      CHECK(s1 == 1);
      CHECK(s2 == 1);
      CHECK(s3 == 1);
    }
  }
  CHECK(matches == 1);
}

TEST_CASE("magnetic vectors reproduce their Lorentz matrices") {
  Gen g(4);
  for (int t = 0; t < 1000; ++t) {
    const Eps e = g.eps();
    const auto ctx = random_context(g, e);
    for (Direction d : {Direction::Xi, Direction::Eta}) {
      const auto M = magnetic_vector(d, ctx).at(0);
      const Mat3 phi = lorentz_matrix(d, ctx, 0);
      CHECK(eps_antisymmetry_defect(phi, e) <= 1e-15);
      for (int i = 0; i < 3; ++i) {
        const FrameVector X = i == 0 ? kT : (i == 1 ? kN : kB);
        const auto diff = frame_cross(M, X, e) - row(phi, i);
        CHECK(std::abs(diff.t) + std::abs(diff.n) + std::abs(diff.b) <= 1e-14);
      }
    }
  }
}

TEST_CASE("electric derivative examples") {
  {
    const auto ctx = scalar_context(0.0, 0.0);
    const auto d = electric_derivative(constant_field(1, {1, 0, 0, 0, 0, 0}), Direction::S, ctx)[0];
    CHECK(d.t == 0.0);
    CHECK(d.n == 0.0);
    CHECK(d.b == 0.0);
  }
  {
    const auto ctx = scalar_context(1.0, 2.0);
    const auto d = electric_derivative(constant_field(1, {1, 0, 0, 0, 0, 0}), Direction::S, ctx)[0];
    CHECK(d.t == -1.0);
    CHECK(d.n == 0.0);
    CHECK(d.b == 2.0);
  }
  Gen g(6);
  for (int t = 0; t < 50; ++t) {
    const Eps e = g.eps();
    const auto ctx = random_context(g, e);
    const auto d = electric_derivative(constant_field(1, {0, 0, 0, 1, 0, 0}), Direction::Xi, ctx)[0];
    CHECK(d.t == doctest::Approx(-e.e1 * ctx.coeffs.g_tb[0]));
    CHECK(d.n == doctest::Approx(-e.e2 * ctx.coeffs.g_nb[0]));
    CHECK(d.b == 0.0);
  }
}

TEST_CASE("electric derivatives preserve length and transversality") {
  // <E, E> constant needs <dE, E> = 0; <E, T> = 0 needs e1 c1 + <E, dT> = 0.
  Gen g(7);
  int printed_defects = 0;
  for (int t = 0; t < 300; ++t) {
    const Eps e = g.eps();
    const auto corr = random_context(g, e);
    auto prnt = corr;
    prnt.variant = Formulas::Printed;
    const auto E = constant_field(1, {g.uniform(), g.uniform(), g.uniform(), g.uniform(), g.uniform(), g.uniform()});
    const Mat3 xi = xi_matrix(corr.coeffs, 0, e), eta = eta_matrix(corr.coeffs, 0, e);
    for (Direction d : {Direction::S, Direction::Xi, Direction::Eta}) {
      const FrameVector v{0.0, d == Direction::S ? E.e1_s[0] : (d == Direction::Xi ? E.e1_xi[0] : E.e1_eta[0]),
                          d == Direction::S ? E.e3_s[0] : (d == Direction::Xi ? E.e3_xi[0] : E.e3_eta[0])};
      const FrameVector dT = d == Direction::S    ? FrameVector{0.0, e.e2 * corr.kappa[0], 0.0}
                             : d == Direction::Xi ? row(xi, 0)
                                                  : row(eta, 0);
      const auto dc = electric_derivative(E, d, corr)[0];
      CHECK(std::abs(frame_dot(dc, v, e)) <= 1e-14);
      CHECK(std::abs(e.e1 * dc.t + frame_dot(v, dT, e)) <= 1e-14);
      if (d == Direction::Eta) {
        const auto dp = electric_derivative(E, d, prnt)[0];
        if (std::abs(e.e1 * dp.t + frame_dot(v, dT, e)) > 1e-8) ++printed_defects;
      }
    }
  }
  // The printed eta expansion repeats E1_eta and breaks transversality.
  CHECK(printed_defects > 250);
}

TEST_CASE("electric derivatives match FD of the ambient field") {
  const auto& g = rot_grid();
  const auto ctx = make_context(g, kFd);
  const auto E = constant_field(g.frames.size(), {0.3, -0.7, 0.4, 0.9, -0.2, 0.5});
  const std::array<std::pair<Direction, Axis>, 3> dirs = {
      {{Direction::S, Axis::S}, {Direction::Xi, Axis::Xi}, {Direction::Eta, Axis::Eta}}};
  for (const auto& [d, a] : dirs) {
    const double e1 = d == Direction::S ? 0.3 : (d == Direction::Xi ? 0.4 : -0.2);
    const double e3 = d == Direction::S ? -0.7 : (d == Direction::Xi ? 0.9 : 0.5);
    std::vector<AmbientVector> amb;
    for (const auto& f : g.frames) amb.push_back(e1 * f.N + e3 * f.B);
    const auto fd = partial(amb, g, a, kFd);
    const auto formula = electric_derivative(E, d, ctx);
    double err = 0.0;
    for (std::size_t p = 0; p < fd.size(); ++p) {
      const auto diff = formula[p] - frame_components(fd[p], g.frames[p]);
      for (int k = 0; k < 3; ++k) err = std::max(err, std::abs(diff[k]));
    }
    INFO(to_string(d));
    CHECK(err <= 1e-4);
  }
}

TEST_CASE("electric divergence") {
  const auto ctx = scalar_context(1.0, 0.0);
  CHECK(electric_divergence(constant_field(1, {0, 0, 0, 0, 0, 0}), ctx)[0] == 0.0);
  CHECK(electric_divergence(constant_field(1, {1, 0, 0, 0, 0, 0}), ctx)[0] == -1.0);
}

TEST_CASE("synthesized field is Maxwellian and recovers curvature") {
  const auto& g = rot_grid();
  const auto ctx = make_context(g, kFd);
  auto E = synthesize_electric(ctx);
  CHECK(max_abs(electric_divergence(E, ctx)) <= 1e-10);
  const auto k = curvature_from_electric(E, ctx);
  for (std::size_t p = 0; p < k.size(); ++p) CHECK(std::abs(k[p] - ctx.kappa[p]) <= 1e-8);

  // Linearity in E1_s: a shift of 0.1 moves the divergence by -kappa * 0.1.
  for (auto& x : E.e1_s) x += 0.1;
  const auto div = electric_divergence(E, ctx);
  for (std::size_t p = 0; p < div.size(); ++p) CHECK(div[p] == doctest::Approx(-0.1 * ctx.kappa[p]).epsilon(1e-12));

  const auto R = maxwell_residuals(synthesize_electric(ctx), ctx);
  CHECK(max_abs(R.div_e) <= 1e-10);
  CHECK(max_abs(R.orthogonality) <= 1e-12);
  CHECK(stat_abs(R.div_m_xi, g.shape, 4).max <= 1e-8);
  CHECK(stat_abs(R.div_m_eta, g.shape, 4).max <= 1e-8);
}

TEST_CASE("guards raise DivisionDegenerate") {
  const auto ctx = scalar_context(1.0, 0.0);
  CHECK_THROWS_AS(curvature_from_electric(constant_field(1, {1e-9, 0, 0, 1, 1, 0}), ctx), DivisionDegenerate);
  const auto rigid = build_congruence(const_spec(AnalyticCurve::small_circle(0.6)));
  const auto rctx = make_context(rigid, kFd);
  // Gamma_TB vanishes on a rigid congruence.
  CHECK_THROWS_AS(curvature_from_magnetic(magnetic_vector(Direction::Xi, rctx), rctx), DivisionDegenerate);
  const auto gc = build_congruence(const_spec(AnalyticCurve::great_circle()));
  CHECK_THROWS_AS(synthesize_electric(make_context(gc, kFd)), DivisionDegenerate);
}

TEST_CASE("rigid congruence has zero magnetic data") {
  const auto g = build_congruence(const_spec(AnalyticCurve::small_circle(0.6)));
  const auto ctx = make_context(g, kFd);
  const auto M = magnetic_vector(Direction::Xi, ctx);
  CHECK(max_abs(M.m1) + max_abs(M.m2) + max_abs(M.m3) <= 1e-8);
  CHECK(max_abs(magnetic_divergence(M, ctx)) <= 1e-8);
  for (const auto& c : magnetic_curl(M, ctx)) CHECK(std::abs(c.t) + std::abs(c.n) + std::abs(c.b) <= 1e-8);
  for (std::size_t p = 0; p < g.frames.size(); p += 50) {
    const auto phi = lorentz_matrix(Direction::Xi, ctx, p);
    for (const auto& r : phi)
      for (double x : r) CHECK(std::abs(x) <= 1e-8);
  }
  const auto R = maxwell_residuals(constant_field(g.frames.size(), {0, 0, 0, 0, 0, 0}), ctx);
  CHECK(max_abs(R.div_e) == 0.0);
  CHECK(max_abs(R.div_m_xi) <= 1e-8);
}

TEST_CASE("magnetic divergence and curl agree along both paths") {
  const auto& g = rot_grid();
  const auto ctx = make_context(g, kFd);
  for (Direction d : {Direction::Xi, Direction::Eta}) {
    const auto M = magnetic_vector(d, ctx);
    ScalarField dd(M.m1.size()), dc(M.m1.size());
    const auto a = magnetic_divergence(M, ctx), b = magnetic_divergence_direct(M, ctx);
    const auto ca = magnetic_curl(M, ctx), cb = magnetic_curl_direct(M, ctx);
    for (std::size_t p = 0; p < dd.size(); ++p) {
      dd[p] = a[p] - b[p];
      for (int i = 0; i < 3; ++i) dc[p] = std::max(dc[p], std::abs(ca[p][i] - cb[p][i]));
    }
    INFO(to_string(d));
    CHECK(stat_abs(dd, g.shape, 4).max <= 1e-4);
    CHECK(stat_abs(dc, g.shape, 4).max <= 1e-3);
    const auto k = curvature_from_magnetic(M, ctx);
    ScalarField dk(k.size());
    for (std::size_t p = 0; p < k.size(); ++p) dk[p] = k[p] - ctx.kappa[p];
    CHECK(stat_abs(dk, g.shape, 4).max <= 1e-4);
  }
}

TEST_CASE("field CSV round trip") {
  const auto& g = rot_grid();
  const auto E = synthesize_electric(make_context(g, kFd));
  const auto path = (std::filesystem::temp_directory_path() / "ff_unit_field.csv").string();
  write_field_csv(path, E, g.shape);
  const auto F = read_field_csv(path, g.shape);
  for (std::size_t p = 0; p < E.e1_s.size(); ++p) CHECK(F.e1_s[p] == E.e1_s[p]);
  CHECK_THROWS_AS(read_field_csv(path, GridShape{3, 3, 3}), ValidationError);
}
