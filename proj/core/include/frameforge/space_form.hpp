#pragma once

#include "frameforge/metric.hpp"

namespace frameforge {

inline constexpr double kMembershipTol = 1e-9;

// S^3_q(1) when c = 1, H^3_q(-1) when c = -1.
struct SpaceForm {
  int q = 0;
  int c = 1;
  MetricIndex v{};

  static SpaceForm make(int q, int c);
  const char* name() const { return c == 1 ? "S3" : "H3"; }
  friend bool operator==(const SpaceForm&, const SpaceForm&) = default;
};

struct FormPoint {
  AmbientVector p;
  SpaceForm form;
};

MetricIndex signature_for(int q, int c);
bool contains(const AmbientVector& p, const SpaceForm& form, double tol = kMembershipTol);

// Radial re-projection onto the quadric <p,p> = c. Throws PreconditionError if
// <p,p> has the wrong sign to be rescaled.
AmbientVector project_to_form(const AmbientVector& p, const SpaceForm& form);

// f1(t) gamma + f2(t) n: (cos, sin) when eps2*c = 1, (cosh, sinh) when eps2*c = -1.
FormPoint principal_normal_geodesic(const FormPoint& gamma, const AmbientVector& n, double t,
                                    int eps2, double tol = 1e-8);

}  // namespace frameforge
