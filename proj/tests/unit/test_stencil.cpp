#include <cmath>

#include "doctest.h"
#include "frameforge/stencil.hpp"

using namespace frameforge;

TEST_CASE("classical central weights") {
  const std::vector<double> x5{-2, -1, 0, 1, 2};
  const auto w = fornberg_weights(0.0, x5, 1);
  const double expect[] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
  for (int i = 0; i < 5; ++i) CHECK(w[static_cast<std::size_t>(i)] == doctest::Approx(expect[i]).epsilon(1e-14));
  const std::vector<double> x3{-1, 0, 1};
  const auto w2 = fornberg_weights(0.0, x3, 2);
  CHECK(w2[0] == doctest::Approx(1.0));
  CHECK(w2[1] == doctest::Approx(-2.0));
  CHECK(w2[2] == doctest::Approx(1.0));
}

TEST_CASE("stencils are exact on low-degree polynomials at every position") {
  const std::size_t n = 11;
  const double h = 0.1;
  for (int order : {2, 4})
    for (int m = 1; m <= 3; ++m)
      for (std::size_t i = 0; i < n; ++i) {
        const auto& st = stencil_for(m, order, i, n);
        // Exactness degree is at least order + m - 1.
        for (int deg = 0; deg <= order + m - 1; ++deg) {
          double acc = 0.0;
          for (std::size_t k = 0; k < st.weights.size(); ++k) {
            const double x = (static_cast<double>(i) + st.first + static_cast<double>(k)) * h;
            acc += st.weights[k] * std::pow(x, deg);
          }
          acc /= std::pow(h, m);
          const double xi = static_cast<double>(i) * h;
          double exact = 0.0;
          if (deg >= m) {
            exact = std::pow(xi, deg - m);
            for (int j = 0; j < m; ++j) exact *= deg - j;
          }
          CHECK(acc == doctest::Approx(exact).epsilon(1e-8).scale(1.0));
        }
      }
}

TEST_CASE("fourth-order first derivative converges at order four") {
  auto err = [](std::size_t n) {
    const double h = 1.0 / static_cast<double>(n - 1);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = std::sin(3.0 * static_cast<double>(i) * h);
    const auto d = derivative<double>(f, h, 1, 4, 0.0);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      e = std::max(e, std::abs(d[i] - 3.0 * std::cos(3.0 * static_cast<double>(i) * h)));
    return e;
  };
  const double rate = std::log2(err(41) / err(81));
  CHECK(rate > 3.7);
}

TEST_CASE("bad derivative configuration") {
  CHECK_THROWS(DerivConfig{3}.validate());
  CHECK_NOTHROW(DerivConfig{2}.validate());
}
