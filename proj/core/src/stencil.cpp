#include "frameforge/stencil.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "frameforge/errors.hpp"

namespace frameforge {

void DerivConfig::validate() const {
  if (order != 2 && order != 4) throw ContractViolation("fd order must be 2 or 4");
}

std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int m) {
  const int n = static_cast<int>(nodes.size()) - 1;
  if (n < m) throw ContractViolation("fornberg_weights: too few nodes");
  // c[j][k]: weight of node j for derivative k.
  std::vector<std::vector<double>> c(nodes.size(), std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[static_cast<std::size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)];
      c2 *= c3;
      auto& ci = c[static_cast<std::size_t>(i)];
      auto& cj = c[static_cast<std::size_t>(j)];
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          ci[static_cast<std::size_t>(k)] =
              c1 * (k * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] -
                    c5 * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)]) /
              c2;
        ci[0] = -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        cj[static_cast<std::size_t>(k)] =
            (c4 * cj[static_cast<std::size_t>(k)] - k * cj[static_cast<std::size_t>(k - 1)]) / c3;
      cj[0] = c4 * cj[0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) w[j] = c[j][static_cast<std::size_t>(m)];
  return w;
}

const Stencil& stencil_for(int m, int order, std::size_t i, std::size_t n) {
  if (m < 1 || m > 3) throw ContractViolation("stencil_for: derivative order must be 1..3");
  if (order != 2 && order != 4) throw ContractViolation("stencil_for: fd order must be 2 or 4");
  const int central = 2 * ((m + order - 1) / 2) + 1;
  const int onesided = m + order;
  if (n < static_cast<std::size_t>(std::max(central, onesided)))
    throw PreconditionError("stencil_for: line shorter than the stencil");

  const long half = central / 2;
  const long li = static_cast<long>(i);
  const long ln = static_cast<long>(n);
  int width = central;
  long first = -half;
  if (li - half < 0 || li + half >= ln) {
    width = onesided;
    first = (li < ln / 2) ? -li : (ln - 1 - li) - (width - 1);
  }

  using Key = std::tuple<int, int, int, long>;
  static std::map<Key, Stencil> cache;
  static std::mutex mu;
  const Key key{m, order, width, first};
  std::lock_guard lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<double> nodes(static_cast<std::size_t>(width));
  for (int k = 0; k < width; ++k) nodes[static_cast<std::size_t>(k)] = static_cast<double>(first + k);
  Stencil st{static_cast<int>(first), fornberg_weights(0.0, nodes, m)};
  return cache.emplace(key, std::move(st)).first->second;
}

}  // namespace frameforge
