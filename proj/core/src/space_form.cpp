#include "frameforge/space_form.hpp"

#include <cmath>
#include <string>

#include "frameforge/errors.hpp"

namespace frameforge {

MetricIndex signature_for(int q, int c) {
  if (q != 0 && q != 1) throw ContractViolation("signature_for: q must be 0 or 1");
  if (c != 1 && c != -1) throw ContractViolation("signature_for: c must be +1 or -1");
  return MetricIndex{c == 1 ? q : q + 1};
}

SpaceForm SpaceForm::make(int q, int c) { return SpaceForm{q, c, signature_for(q, c)}; }

bool contains(const AmbientVector& p, const SpaceForm& form, double tol) {
  if (p.idx != form.v) throw ContractViolation("contains: metric index mismatch");
  return std::abs(inner(p, p) - form.c) <= tol;
}

AmbientVector project_to_form(const AmbientVector& p, const SpaceForm& form) {
  const double q = inner(p, p);
  if (q * form.c <= 0.0)
    throw PreconditionError("project_to_form: point cannot be rescaled onto the quadric");
  return p / std::sqrt(q * form.c);
}

FormPoint principal_normal_geodesic(const FormPoint& gamma, const AmbientVector& n, double t,
                                    int eps2, double tol) {
  if (eps2 != 1 && eps2 != -1)
    throw PreconditionError("principal_normal_geodesic: eps2 must be +1 or -1");
  if (!contains(gamma.p, gamma.form, tol))
    throw PreconditionError("principal_normal_geodesic: base point not on the form");
  if (std::abs(inner(gamma.p, n)) > tol)
    throw PreconditionError("principal_normal_geodesic: n not orthogonal to gamma");
  if (std::abs(inner(n, n) - eps2) > tol)
    throw PreconditionError("principal_normal_geodesic: <n,n> != eps2");
  double f1;
  double f2;
  if (eps2 * gamma.form.c == 1) {
    f1 = std::cos(t);
    f2 = std::sin(t);
  } else {
    f1 = std::cosh(t);
    f2 = std::sinh(t);
  }
  return FormPoint{f1 * gamma.p + f2 * n, gamma.form};
}

}  // namespace frameforge
