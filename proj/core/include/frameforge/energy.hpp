#pragma once

#include <span>
#include <vector>

#include "frameforge/congruence.hpp"

namespace frameforge {

enum class FrameField { T, N, B };
const char* to_string(FrameField f);

// Sum in a fixed pairwise order, independent of thread count.
double pairwise_sum(std::span<const double> v);

// Composite Simpson on uniformly spaced samples. The panel count
// (samples - 1) must be even and at least 2.
double simpson(std::span<const double> f, double h);

// Bending energies of the frame fields along s-lines, from kappa and tau.
// The T integrand uses |<gamma, gamma>| for the squared position norm.
double energy_s(const std::vector<FrenetSample>& frames, double h, FrameField which,
                const SpaceForm& form);

// Along a xi-line (eta-line): the integrands read the entries of the extended
// xi (eta) matrices at each sample. Squared entries are all that enter, so
// only the magnitudes of the matrix entries matter.
double energy_xi(std::span<const Mat3> xi_matrices, const Eps& e, double h, FrameField which);
// The N integrand carries no 1/2 unless normalize_half is set.
double energy_eta(std::span<const Mat3> eta_matrices, const Eps& e, double h, FrameField which,
                  bool normalize_half = false);

struct EnergyReport {
  double t_s = 0, n_s = 0, b_s = 0;
  double t_xi = 0, n_xi = 0, b_xi = 0;
  double t_eta = 0, n_eta = 0, b_eta = 0;
  std::array<double, 3> length{};       // interval lengths along s, xi, eta
  std::array<std::size_t, 3> samples{};  // samples per line
  bool half_normalized = false;
};

// All nine energies of a congruence: the s-line through (j, k) = (0, 0) and
// the xi- and eta-lines through the grid point `at`.
EnergyReport congruence_energies(const CongruenceGrid& g, const FrameDifferentials& d,
                                 std::array<std::size_t, 3> at, Formulas variant,
                                 bool normalize_half = false);

}  // namespace frameforge
