#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "frameforge/errors.hpp"
#include "frameforge/frame_algebra.hpp"
#include "support.hpp"

using namespace ff_test;

namespace {

FrenetResult analytic(const AnalyticCurve& c, std::size_t n = 2001, bool exact = true) {
  const auto [a, b] = c.default_interval();
  return frenet_frame(AnalyticSpec{c, a, b, n, exact}, DerivConfig{4});
}

double max_residual(const FrenetResult& fr) {
  double m = 0.0;
  for (const auto& r : frenet_residuals(fr, DerivConfig{4}))
    for (double x : r) m = std::max(m, x);
  return m;
}

std::vector<AnalyticCurve> fixtures() {
  return {AnalyticCurve::great_circle(), AnalyticCurve::small_circle(1.0 / std::sqrt(2.0)),
          AnalyticCurve::de_sitter_geodesic(), AnalyticCurve::hopf_helix(0.6, 1.1),
          AnalyticCurve::hyperbolic_geodesic()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / ("ff_unit_" + name);
  std::ofstream(p) << body;
  return p;
}

// Euclidean pieces for the q = 0 oracle below.
double dot4(const AmbientVector& a, const AmbientVector& b) {
  double s = 0;
  for (int i = 0; i < 4; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("frames are orthonormal on every builtin family") {
  for (const auto& c : fixtures()) {
    const auto fr = analytic(c);
    for (const auto& f : fr.samples) REQUIRE(orthonormality_defect(f, fr.form) <= 1e-6);
  }
}

TEST_CASE("geodesics have zero curvature") {
  for (const auto& c : {AnalyticCurve::great_circle(), AnalyticCurve::de_sitter_geodesic(),
                        AnalyticCurve::hyperbolic_geodesic()}) {
    const auto fr = analytic(c);
    for (const auto& f : fr.samples) {
      CHECK(f.kappa <= 1e-8);
      CHECK(f.tau == 0.0);
    }
    CHECK(max_residual(fr) <= 1e-6);
  }
}

TEST_CASE("de Sitter geodesic is timelike") {
  const auto fr = analytic(AnalyticCurve::de_sitter_geodesic());
  CHECK(fr.samples.front().eps.e1 == -1);
  CHECK(fr.form.q == 1);
}

TEST_CASE("small circle curvature matches the closed form for several radii") {
  for (double r : {0.3, 0.5, 1.0 / std::sqrt(2.0), 0.9}) {
    const auto c = AnalyticCurve::small_circle(r);
    const auto fr = analytic(c, 1001);
    // Oracle: kappa = |gamma'' + gamma| for the explicit parametrization.
    const double s = 0.37;
    const double ks = std::sqrt(std::pow(r * std::cos(s / r) - std::cos(s / r) / r, 2) +
                                std::pow(r * std::sin(s / r) - std::sin(s / r) / r, 2) + (1 - r * r));
    CHECK(ks == doctest::Approx(std::sqrt(1 - r * r) / r).epsilon(1e-12));
    for (const auto& f : fr.samples) {
      CHECK(f.kappa == doctest::Approx(ks).epsilon(1e-9));
      CHECK(std::abs(f.tau) <= 1e-9);
    }
  }
}

TEST_CASE("Hopf helix curvature and torsion against a Euclidean oracle") {
  const auto c = AnalyticCurve::hopf_helix(0.6, 1.1);
  const auto fr = analytic(c, 2001);
  CHECK(max_residual(fr) <= 1e-5);
  for (std::size_t i = 0; i < fr.samples.size(); i += 97) {
    const auto& f = fr.samples[i];
    const auto g0 = c.jet(f.s, 0), g1 = c.jet(f.s, 1), g2 = c.jet(f.s, 2), g3 = c.jet(f.s, 3);
    // On S3_0 the metric is Euclidean: grad_T T = g'' + g, N' = (g''' + g') / kappa.
    const auto a = g2 + g0;
    const double k = std::sqrt(dot4(a, a));
    const auto dn = (g3 + g1) / k + k * g1;
    CHECK(f.kappa == doctest::Approx(k).epsilon(1e-10));
    CHECK(std::abs(f.tau) == doctest::Approx(std::sqrt(dot4(dn, dn))).epsilon(1e-8));
  }
}

TEST_CASE("Frenet residuals on analytic fixtures") {
  for (const auto& c : fixtures()) CHECK(max_residual(analytic(c)) <= 1e-5);
}

TEST_CASE("FD path converges at fourth order") {
  const auto c = AnalyticCurve::hopf_helix(0.6, 1.1);
  // Third derivatives meet the rounding floor near 2000 samples, so the
  // convergence rate is measured one doubling earlier.
  const double e1 = max_residual(analytic(c, 501, false));
  const double e2 = max_residual(analytic(c, 1001, false));
  CHECK(max_residual(analytic(c, 2001, false)) <= 1e-4);
  CHECK(e1 / e2 >= 8.0);
}

TEST_CASE("sign structure follows the tangent signature") {
  for (const auto& c : fixtures()) {
    const auto fr = analytic(c, 201);
    const Eps e = fr.samples.front().eps;
    const int negatives = (e.e1 < 0) + (e.e2 < 0) + (e.e3 < 0);
    // Tangent space of S3_q or H3_q carries q timelike directions.
    CHECK(negatives == fr.form.q);
    for (const auto& f : fr.samples) CHECK(f.kappa >= 0.0);
  }
}

TEST_CASE("curvature and torsion are invariant under an ambient isometry") {
  const auto c = AnalyticCurve::hopf_helix(0.6, 1.1);
  const auto [a, b] = c.default_interval();
  SampledCurve sc = sample_curve(c, a, b, 401);
  SampledCurve rot = sc;
  const double th = 0.7;
  for (auto& p : rot.points) {
    const double x0 = p[0], x2 = p[2];
    p[0] = std::cos(th) * x0 - std::sin(th) * x2;
    p[2] = std::sin(th) * x0 + std::cos(th) * x2;
  }
  const auto f1 = frenet_frame(sc, DerivConfig{4});
  const auto f2 = frenet_frame(rot, DerivConfig{4});
  REQUIRE(f1.samples.size() == f2.samples.size());
  for (std::size_t i = 0; i < f1.samples.size(); ++i) {
    CHECK(std::abs(f1.samples[i].kappa - f2.samples[i].kappa) <= 1e-8);
    CHECK(std::abs(f1.samples[i].tau - f2.samples[i].tau) <= 1e-8);
  }
}

TEST_CASE("arc-length re-parametrization gives unit speed") {
  // Sample the small circle at a non-unit rate: s' = 1.7 s.
  const auto c = AnalyticCurve::small_circle(0.6);
  SampledCurve sc = sample_curve(c, 0.0, 2 * kPi * 0.6, 601);
  sc.h /= 1.7;
  const auto re = reparametrize_arclength(sc);
  CHECK(re.h == doctest::Approx(sc.h * 1.7).epsilon(1e-6));
  const auto fr = frenet_frame(re, DerivConfig{4});
  for (const auto& f : fr.samples) CHECK(f.kappa == doctest::Approx(std::sqrt(1 - 0.36) / 0.6).epsilon(1e-5));
}

TEST_CASE("parallel transport") {
  SUBCASE("geodesic tangent is parallel") {
    const auto fr = analytic(AnalyticCurve::great_circle(), 1001);
    const auto M = parallel_transport(fr, fr.samples.front().T);
    for (std::size_t i = 0; i < M.size(); ++i)
      for (int k = 0; k < 4; ++k) CHECK(std::abs(M[i][k] - fr.samples[i].T[k]) <= 1e-9);
  }
  SUBCASE("norm is preserved and holonomy matches the enclosed cap") {
    const double r = 1.0 / std::sqrt(2.0);
    const auto c = AnalyticCurve::small_circle(r);
    auto run = [&](std::size_t n) {
      const auto fr = frenet_frame(AnalyticSpec{c, 0.0, 2 * kPi * r, n, true}, DerivConfig{4});
      const auto M = parallel_transport(fr, fr.samples.front().N);
      for (const auto& m : M) CHECK(std::abs(inner(m, m) - 1.0) <= 1e-6);
      return std::pair{M.back(), fr.samples.back()};
    };
    const auto [m1, f1] = run(1001);
    const auto [m2, f2] = run(2001);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(m1[k] - m2[k]) <= 1e-8);
    // The circle bounds a cap of colatitude asin(r) on a great 2-sphere;
    // the holonomy angle equals the cap area 2 pi (1 - cos).
    const double angle = 2 * kPi * (1 - std::sqrt(1 - r * r));
    CHECK(inner(m2, f2.N) == doctest::Approx(std::cos(angle)).epsilon(1e-8));
    CHECK(std::abs(inner(m2, f2.T)) == doctest::Approx(std::sin(angle)).epsilon(1e-8));
  }
  SUBCASE("non-tangent seed is rejected") {
    const auto fr = analytic(AnalyticCurve::great_circle(), 101);
    CHECK_THROWS_AS(parallel_transport(fr, fr.samples.front().gamma), PreconditionError);
  }
}

TEST_CASE("degenerate window gets transported normals") {
  const auto fr = analytic(AnalyticCurve::great_circle(), 201);
  REQUIRE(fr.degenerate_windows.size() == 1);
  CHECK(fr.degenerate_windows.front().first == 0);
  for (const auto& f : fr.samples) {
    CHECK(f.degenerate);
    CHECK(orthonormality_defect(f, fr.form) <= 1e-9);
  }
}

TEST_CASE("lightlike tangent is rejected") {
  SampledCurve sc;
  sc.form = SpaceForm::make(1, 1);
  sc.h = 0.01;
  // A null line on S3_1: p(s) = (s, s, 1, 0).
  for (int i = 0; i < 20; ++i) {
    const double s = 0.01 * i;
    sc.points.push_back(AmbientVector({s, s, 1.0, 0.0}, MetricIndex{1}));
  }
  CHECK_THROWS_AS(frenet_frame(sc, DerivConfig{4}), NonNullViolation);
}

TEST_CASE("curve CSV ingestion") {
  const auto c = AnalyticCurve::small_circle(0.6);
  std::string body = "s,x0,x1,x2,x3\n";
  for (int i = 0; i < 50; ++i) {
    const double s = 0.02 * i;
    const auto p = c.jet(s, 0);
    body += std::to_string(s) + "," + std::to_string(p[0]) + "," + std::to_string(p[1]) + "," +
            std::to_string(p[2]) + "," + std::to_string(p[3]) + "\n";
  }
  const auto good = temp_file("curve.csv", body);
  const auto sc = read_curve_csv(good.string(), SpaceForm::make(0, 1));
  CHECK(sc.points.size() == 50);
  for (const auto& p : sc.points) CHECK(contains(p, sc.form));

  const auto bad = temp_file("bad.csv", "s,x0,x1,x2,x3\n0,1,0,0,0\n0.1,oops,0,0,0\n");
  try {
    read_curve_csv(bad.string(), SpaceForm::make(0, 1));
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
  const auto noheader = temp_file("nohdr.csv", "0,1,0,0,0\n");
  CHECK_THROWS_AS(read_curve_csv(noheader.string(), SpaceForm::make(0, 1)), ValidationError);
}
