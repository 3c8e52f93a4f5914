#include "doctest.h"
#include "frameforge/errors.hpp"
#include "frameforge/space_form.hpp"
#include "support.hpp"

using namespace ff_test;

namespace {
AmbientVector v4(double a, double b, double c, double d, int v) { return AmbientVector({a, b, c, d}, MetricIndex{v}); }

// Brute-force signed sum, written out independently of the library.
double oracle_inner(const AmbientVector& u, const AmbientVector& w) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += (i < u.idx.v ? -1.0 : 1.0) * u[i] * w[i];
  return s;
}
}  // namespace

TEST_CASE("inner product examples") {
  CHECK(inner(v4(1, 0, 0, 0, 0), v4(1, 0, 0, 0, 0)) == 1.0);
  CHECK(inner(v4(1, 0, 0, 0, 1), v4(1, 0, 0, 0, 1)) == -1.0);
  CHECK(inner(v4(1, 1, 0, 0, 1), v4(1, -1, 0, 0, 1)) == -2.0);
  CHECK(oracle_inner(v4(1, 1, 0, 0, 1), v4(1, -1, 0, 0, 1)) == -2.0);
  CHECK_THROWS_AS(inner(v4(1, 0, 0, 0, 0), v4(1, 0, 0, 0, 1)), ContractViolation);
}

TEST_CASE("norm and causal character") {
  CHECK(norm(v4(1, 0, 0, 0, 1)) == 1.0);
  CHECK(norm(v4(3, 4, 0, 0, 0)) == 5.0);
  CHECK(norm(v4(1, 1, 0, 0, 1)) == 0.0);
  CHECK(causal_character(v4(0, 1, 0, 0, 1), 1e-12) == CausalCharacter::Spacelike);
  CHECK(causal_character(v4(1, 0, 0, 0, 1), 1e-12) == CausalCharacter::Timelike);
  CHECK(causal_character(v4(1, 1, 0, 0, 1), 1e-12) == CausalCharacter::Lightlike);
  CHECK(causal_character(v4(0, 0, 0, 0, 2)) == CausalCharacter::Spacelike);
  CHECK(causal_character(v4(1, 1 + 1e-12, 0, 0, 1)) == CausalCharacter::Lightlike);
}

TEST_CASE("inner product is bilinear and symmetric for every index") {
  Gen g(11);
  for (int v = 0; v <= 2; ++v)
    for (int trial = 0; trial < 200; ++trial) {
      const auto u = g.vec(v), w = g.vec(v), z = g.vec(v);
      const double a = g.uniform(-3, 3), b = g.uniform(-3, 3);
      CHECK(inner(a * u + b * w, z) == doctest::Approx(a * inner(u, z) + b * inner(w, z)).epsilon(1e-12));
      CHECK(inner(u, w) == inner(w, u));
      CHECK(inner(u, w) == doctest::Approx(oracle_inner(u, w)).epsilon(1e-14));
    }
}

TEST_CASE("signature on basis vectors") {
  for (int v = 0; v <= 2; ++v)
    for (int i = 0; i < 4; ++i) {
      std::array<double, 4> x{};
      x[static_cast<std::size_t>(i)] = 1.0;
      const AmbientVector e(x, MetricIndex{v});
      CHECK(inner(e, e) == (i < v ? -1.0 : 1.0));
    }
}

TEST_CASE("generalized cross product is metric-orthogonal to its factors") {
  Gen g(5);
  for (int v = 0; v <= 2; ++v)
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = g.vec(v), b = g.vec(v), c = g.vec(v), w = g.vec(v);
      const auto x = generalized_cross(a, b, c);
      CHECK(std::abs(inner(x, a)) < 1e-12);
      CHECK(std::abs(inner(x, b)) < 1e-12);
      CHECK(std::abs(inner(x, c)) < 1e-12);
      CHECK(inner(x, w) == doctest::Approx(det4(w, a, b, c)).epsilon(1e-12));
    }
}

TEST_CASE("signature selection") {
  CHECK(signature_for(0, 1).v == 0);
  CHECK(signature_for(1, 1).v == 1);
  CHECK(signature_for(0, -1).v == 1);
  CHECK(signature_for(1, -1).v == 2);
  CHECK_THROWS_AS(signature_for(2, 1), ContractViolation);
  CHECK_THROWS_AS(signature_for(0, 0), ContractViolation);
}

TEST_CASE("membership") {
  const auto s3 = SpaceForm::make(0, 1), h3 = SpaceForm::make(0, -1);
  CHECK(contains(v4(1, 0, 0, 0, 0), s3, 1e-12));
  CHECK(contains(v4(std::cosh(1.0), std::sinh(1.0), 0, 0, 1), h3, 1e-10));
  CHECK_FALSE(contains(v4(2, 0, 0, 0, 0), s3, 1e-12));
}

TEST_CASE("principal normal geodesic") {
  const auto s3 = SpaceForm::make(0, 1), h3 = SpaceForm::make(0, -1);
  const FormPoint p{v4(1, 0, 0, 0, 0), s3};
  const auto n = v4(0, 1, 0, 0, 0);
  const auto at0 = principal_normal_geodesic(p, n, 0.0, 1);
  for (int i = 0; i < 4; ++i) CHECK(at0.p[i] == p.p[i]);
  const auto q = principal_normal_geodesic(p, n, kPi / 2, 1);
  CHECK(q.p[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(q.p[1] == doctest::Approx(1.0));

  const FormPoint h{v4(1, 0, 0, 0, 1), h3};
  const auto r = principal_normal_geodesic(h, v4(0, 1, 0, 0, 1), 1.0, 1);
  CHECK(r.p[0] == doctest::Approx(std::cosh(1.0)));
  CHECK(r.p[1] == doctest::Approx(std::sinh(1.0)));
  CHECK(contains(r.p, h3, 1e-10));

  CHECK_THROWS_AS(principal_normal_geodesic(p, v4(0, 2, 0, 0, 0), 1.0, 1), PreconditionError);
  CHECK_THROWS_AS(principal_normal_geodesic(p, v4(1, 1, 0, 0, 0), 1.0, 1), PreconditionError);
  CHECK_THROWS_AS(principal_normal_geodesic(p, n, 1.0, 0), PreconditionError);
}

TEST_CASE("geodesics stay on the form with constant speed") {
  struct Case {
    SpaceForm form;
    AmbientVector g, n;
    int e2;
  };
  const std::vector<Case> cases = {
      {SpaceForm::make(0, 1), v4(1, 0, 0, 0, 0), v4(0, 0, 1, 0, 0), 1},
      {SpaceForm::make(1, 1), v4(0, 1, 0, 0, 1), v4(1, 0, 0, 0, 1), -1},
      {SpaceForm::make(1, 1), v4(0, 1, 0, 0, 1), v4(0, 0, 1, 0, 1), 1},
      {SpaceForm::make(0, -1), v4(1, 0, 0, 0, 1), v4(0, 0, 0, 1, 1), 1},
      {SpaceForm::make(1, -1), v4(0, 1, 0, 0, 2), v4(1, 0, 0, 0, 2), -1},
  };
  for (const auto& c : cases) {
    const FormPoint p{c.g, c.form};
    double speed0 = -1.0;
    for (double t = -5.0; t <= 5.0; t += 0.25) {
      const auto x = principal_normal_geodesic(p, c.n, t, c.e2).p;
      CHECK(std::abs(inner(x, x) - c.form.c) <= 1e-8 * std::max(1.0, std::abs(x[0]) * std::abs(x[0])));
      const double h = 1e-4;
      const auto d = (principal_normal_geodesic(p, c.n, t + h, c.e2).p -
                      principal_normal_geodesic(p, c.n, t - h, c.e2).p) / (2 * h);
      const double speed = std::sqrt(std::abs(inner(d, d)));
      if (speed0 < 0) speed0 = speed;
      CHECK(speed == doctest::Approx(speed0).epsilon(1e-6));
    }
  }
}

TEST_CASE("re-projection onto the quadric") {
  const auto s3 = SpaceForm::make(0, 1), h3 = SpaceForm::make(0, -1);
  CHECK(contains(project_to_form(v4(1.01, 0.2, 0, 0, 0), s3), s3));
  CHECK(contains(project_to_form(v4(1.3, 0.2, 0.1, 0, 1), h3), h3));
  CHECK_THROWS_AS(project_to_form(v4(0.1, 1.3, 0, 0, 1), h3), PreconditionError);
}
