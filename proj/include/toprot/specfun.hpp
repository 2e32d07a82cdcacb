#pragma once

namespace toprot {

// Complete elliptic integral of the first kind K(m), with m the parameter
// (m = k^2).  Computed by the arithmetic-geometric mean iteration,
// K(m) = pi / (2 * agm(1, sqrt(1-m))), iterated until successive means
// agree to a few ulp.  Requires 0 <= m < 1; K diverges logarithmically
// as m -> 1.
double complete_elliptic_K(double m);

struct JacobiValues {
  double sn;
  double cn;
  double dn;
};

// Jacobi elliptic functions sn(u|m), cn(u|m), dn(u|m) for 0 <= m <= 1,
// via the descending Landen transformation on the AGM scale.  At m = 1
// exactly the hyperbolic forms (tanh u, sech u, sech u) are returned.
// Values of m within an ulp of 1 (but not equal) are rejected: the
// separatrix limit must be taken explicitly by the caller.
JacobiValues jacobi_elliptic(double u, double m);

}  // namespace toprot
