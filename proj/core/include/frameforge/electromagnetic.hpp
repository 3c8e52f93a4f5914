#pragma once

#include <string>
#include <vector>

#include "frameforge/congruence.hpp"

namespace frameforge {

enum class Direction { S, Xi, Eta };
const char* to_string(Direction d);

inline constexpr double kDenominatorMin = 1e-6;

// E_d = E1_d N + E3_d B for each direction d.
struct ElectricField {
  ScalarField e1_s, e3_s, e1_xi, e3_xi, e1_eta, e3_eta;
  std::size_t size() const { return e1_s.size(); }
  void validate(std::size_t n) const;
};

// Coefficient, curvature and differential fields the field formulas read.
// `grid` is needed only by operations that differentiate along the grid.
struct FieldContext {
  Eps eps;
  int c = 1;
  Formulas variant = Formulas::Corrected;
  FrameCoefficients coeffs;
  FrameDifferentials diff;  // formula path, in `variant`
  ScalarField kappa, tau;
  const CongruenceGrid* grid = nullptr;
  DerivConfig fd;

  std::size_t size() const { return kappa.size(); }
};

FieldContext make_context(const CongruenceGrid& g, const DerivConfig& fd,
                          Formulas variant = Formulas::Corrected);
FieldContext make_context(FrameCoefficients c, ScalarField kappa, ScalarField tau, const Eps& e,
                          int cform, Formulas variant = Formulas::Corrected);

// Frame components of dE_d/dd with the field components held fixed.
std::vector<FrameVector> electric_derivative(const ElectricField& E, Direction d,
                                             const FieldContext& ctx);

// -kappa E1_s + E1_eta Upsilon_NB - E3_xi Gamma_NB.
ScalarField electric_divergence(const ElectricField& E, const FieldContext& ctx);

// Curvature that makes the electric divergence vanish. Throws DivisionDegenerate
// where |E1_s| < e_min.
ScalarField curvature_from_electric(const ElectricField& E, const FieldContext& ctx,
                                    double e_min = kDenominatorMin);

// phi_d as a matrix acting on (T, N, B); d is Xi or Eta.
Mat3 lorentz_matrix(Direction d, const FieldContext& ctx, std::size_t p);

struct MagneticField {
  Direction dir = Direction::Xi;
  ScalarField m1, m2, m3;
  FrameVector at(std::size_t p) const { return {m1[p], m2[p], m3[p]}; }
};

MagneticField magnetic_vector(Direction d, const FieldContext& ctx);

// Divergence from the component expansion, FD derivatives of the component
// (or coefficient) fields. Needs ctx.grid.
ScalarField magnetic_divergence(const MagneticField& M, const FieldContext& ctx);
// Divergence of the assembled ambient field, sum_X <X, dM/dX>.
ScalarField magnetic_divergence_direct(const MagneticField& M, const FieldContext& ctx);

// Curvature that makes the magnetic divergence vanish. Throws
// DivisionDegenerate where the denominator drops below d_min.
ScalarField curvature_from_magnetic(const MagneticField& M, const FieldContext& ctx,
                                    double d_min = kDenominatorMin);

// Curl from the component expansion; tg holds the T x gamma coefficient.
std::vector<FrameVector> magnetic_curl(const MagneticField& M, const FieldContext& ctx);
std::vector<FrameVector> magnetic_curl_direct(const MagneticField& M, const FieldContext& ctx);

// Smooth E1_eta, E3_xi and constant remaining components, with E1_s solved
// from the vanishing electric divergence. Throws DivisionDegenerate where
// kappa < kappa_min.
ElectricField synthesize_electric(const FieldContext& ctx, double kappa_min = kKappaMin);

struct MaxwellResiduals {
  ScalarField div_e, div_m_xi, div_m_eta;
  ScalarField orthogonality;  // max over directions of |<E_d, T>|
};
MaxwellResiduals maxwell_residuals(const ElectricField& E, const FieldContext& ctx);

// Rows `i,j,k,E1_s,E3_s,E1_xi,E3_xi,E1_eta,E3_eta` after that header line.
ElectricField read_field_csv(const std::string& path, const GridShape& shape);
void write_field_csv(const std::string& path, const ElectricField& E, const GridShape& shape);

}  // namespace frameforge
