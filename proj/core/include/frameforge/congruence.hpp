#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "frameforge/frame_algebra.hpp"
#include "frameforge/frenet.hpp"

namespace frameforge {

enum class Axis { S = 0, Xi = 1, Eta = 2 };

struct GridShape {
  std::size_t ns = 0;
  std::size_t nxi = 0;
  std::size_t neta = 0;
  std::size_t size() const { return ns * nxi * neta; }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * nxi + j) * neta + k;
  }
  std::array<std::size_t, 3> unravel(std::size_t p) const {
    return {p / (nxi * neta), (p / neta) % nxi, p % neta};
  }
  std::size_t extent(Axis a) const { return a == Axis::S ? ns : (a == Axis::Xi ? nxi : neta); }
  std::size_t stride(Axis a) const { return a == Axis::S ? nxi * neta : (a == Axis::Xi ? neta : 1); }
};

using ScalarField = std::vector<double>;

// Sampled gamma(s, xi, eta) with the Frenet frame of each s-line at every point.
struct CongruenceGrid {
  GridShape shape;
  std::array<double, 3> origin{};  // s0, xi0, eta0
  std::array<double, 3> step{};    // hs, hxi, heta
  SpaceForm form;
  Eps eps;
  std::vector<FrenetSample> frames;  // indexed by shape.index
  std::vector<DegenerateWindow> degenerate_windows;  // union over s-lines, in s indices

  const FrenetSample& at(std::size_t i, std::size_t j, std::size_t k) const {
    return frames[shape.index(i, j, k)];
  }
  double coord(Axis a, std::size_t i) const {
    const auto ax = static_cast<std::size_t>(a);
    return origin[ax] + static_cast<double>(i) * step[ax];
  }
  void validate() const;
};

// so(4-v, v) generator in the six coordinate planes (01, 02, 03, 12, 13, 23).
struct Generator {
  std::array<double, 6> w{};
  std::array<std::array<double, 4>, 4> matrix(MetricIndex v) const;
};

// gamma(s, xi, eta) = exp(phi(xi) A) exp(psi(eta) C) gamma0(s) with
// phi(xi) = xi + ramp_xi sin(xi), psi(eta) = eta + ramp_eta sin(eta).
// A = C = 0 gives the rigid (constant-frame) congruence.
struct RotationCongruence {
  AnalyticCurve base;
  Generator A;
  Generator C;
  double ramp_xi = 0.0;
  double ramp_eta = 0.0;
  std::array<double, 3> origin{};
  std::array<double, 3> extent{1.0, 1.0, 1.0};  // lengths of the s, xi, eta ranges
  GridShape shape{41, 9, 9};

  double phi(double xi) const;
  double dphi(double xi) const;
  double psi(double eta) const;
  double dpsi(double eta) const;
  // exp(phi A) exp(psi C) as a 4x4 matrix.
  std::array<std::array<double, 4>, 4> isometry(double xi, double eta) const;
};

// Frames come from the closed-form base frame transported by the isometry.
CongruenceGrid build_congruence(const RotationCongruence& spec, const FrameOptions& opt = {});

// Frames from FD along each s-line of sampled points (no re-parametrization:
// the s step is taken from the data).
CongruenceGrid congruence_from_points(std::vector<AmbientVector> points, GridShape shape,
                                      std::array<double, 3> step, const SpaceForm& form,
                                      const DerivConfig& fd, const FrameOptions& opt = {});

// Rows `i,j,k,x0,x1,x2,x3` after a `# hs=.. hxi=.. heta=.. q=.. c=..` line and a header.
CongruenceGrid read_congruence_csv(const std::string& path, const DerivConfig& fd,
                                   const FrameOptions& opt = {});

// FD partial derivative of a grid field along one axis.
ScalarField partial(const ScalarField& f, const CongruenceGrid& g, Axis a, const DerivConfig& fd);
std::vector<AmbientVector> partial(const std::vector<AmbientVector>& f, const CongruenceGrid& g,
                                   Axis a, const DerivConfig& fd);

struct FrameCoefficients {
  ScalarField g_tn, g_tb, g_nb;  // Gamma^xi
  ScalarField u_tn, u_tb, u_nb;  // Upsilon^eta
};

// Gamma_XY = <dX/dxi, Y> and Upsilon_XY = <dX/deta, Y>, metric projections.
std::array<ScalarField, 3> xi_coefficients(const CongruenceGrid& g, const DerivConfig& fd);
std::array<ScalarField, 3> eta_coefficients(const CongruenceGrid& g, const DerivConfig& fd);
FrameCoefficients coefficients(const CongruenceGrid& g, const DerivConfig& fd);

// The d/dxi and d/deta matrices built from the six coefficients.
Mat3 xi_matrix(const FrameCoefficients& c, std::size_t p, const Eps& e);
Mat3 eta_matrix(const FrameCoefficients& c, std::size_t p, const Eps& e);

enum class Contraction {
  Frame,   // sum_X e_X <X, dF/dX>: frame components of each derivative
  Metric,  // sum_X <X, dF/dX>
};

std::vector<FrameVector> gradient(const ScalarField& h, const CongruenceGrid& g, const DerivConfig& fd);

ScalarField divergence(const std::vector<AmbientVector>& F, const CongruenceGrid& g,
                       const DerivConfig& fd, Contraction how = Contraction::Frame);
ScalarField divergence(const std::vector<FrameVector>& F, const CongruenceGrid& g,
                       const DerivConfig& fd, Contraction how = Contraction::Frame);

// T x dF/ds + N x dF/dxi + B x dF/deta. Derivatives along xi and eta are
// projected onto the frame; the gamma part of dF/ds goes to the tg slot.
std::vector<FrameVector> curl(const std::vector<AmbientVector>& F, const CongruenceGrid& g,
                              const DerivConfig& fd);
std::vector<FrameVector> curl(const std::vector<FrameVector>& F, const CongruenceGrid& g,
                              const DerivConfig& fd);

// Div, Curl and abnormality of the three frame fields.
struct FrameDifferentials {
  ScalarField div_t, div_n, div_b;
  std::vector<FrameVector> curl_t, curl_n, curl_b;
  ScalarField psi_t, psi_n, psi_b;

  // Metric projections Curl X . Y.
  double curl_dot(int x, int y, std::size_t p, const Eps& e) const;
};

// FD path: operators applied to the sampled frame fields.
FrameDifferentials differentials(const CongruenceGrid& g, const DerivConfig& fd);

// Formula path: closed forms in the coefficients, kappa and tau.
FrameDifferentials differentials_from_coefficients(const FrameCoefficients& c,
                                                   const ScalarField& kappa,
                                                   const ScalarField& tau, const Eps& e, int cform,
                                                   Formulas variant = Formulas::Corrected);

ScalarField kappa_field(const CongruenceGrid& g);
ScalarField tau_field(const CongruenceGrid& g);

// Abnormalities from the coefficient formulas (Psi_T, Psi_N, Psi_B).
std::array<ScalarField, 3> abnormalities(const CongruenceGrid& g, const FrameCoefficients& c,
                                         Formulas variant = Formulas::Corrected);

// Extended matrices in terms of div/curl data at one point.
struct ExtendedMatrices {
  Mat3 xi;
  Mat3 eta;
};
ExtendedMatrices extended_frenet_matrices(const FrameDifferentials& d, const ScalarField& tau,
                                          std::size_t p, const Eps& e,
                                          Formulas variant = Formulas::Corrected);

// Both sides of the curl-gradient compatibility system for a scalar h, per
// point: lhs - rhs for the three equations (xi-s, s-eta, eta-xi mixed partials).
std::array<ScalarField, 3> compatibility_residuals(const ScalarField& h, const CongruenceGrid& g,
                                                   const FrameDifferentials& d,
                                                   const DerivConfig& fd);

struct Stat {
  double max = 0.0;
  double mean = 0.0;
  std::array<std::size_t, 3> argmax{};
};
// Statistics of |f| over the grid, optionally skipping `margin` points at
// each end of every axis (one-sided stencil zone).
Stat stat_abs(const ScalarField& f, const GridShape& shape, std::size_t margin = 0);

struct IdentityCheck {
  std::string name;
  Stat stat;
  double tol = 0.0;
  bool pass = false;
};

// Div/curl identities compared along the FD and formula paths.
std::vector<IdentityCheck> identity_suite(const CongruenceGrid& g, const FrameCoefficients& c,
                                          const FrameDifferentials& fd_path,
                                          const FrameDifferentials& formula_path, double tol,
                                          std::size_t margin);

}  // namespace frameforge
