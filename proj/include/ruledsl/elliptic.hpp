#pragma once

#include <array>

namespace ruledsl {

// All functions here take the MODULUS k, not the parameter m = k^2.
// (Libraries disagree on this; sn(t, k) below is sn(t | m = k^2) elsewhere.)

struct EllipticTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
  double t = 0.0;
  double k = 0.0;
};

/// Jacobi elliptic functions sn, cn, dn of real argument t and modulus
/// k in [0, 1], by the descending Landen (AGM) transformation.
/// Throws Error{ModulusOutOfRange} outside [0, 1].
EllipticTriple jacobi(double t, double k);

/// (d/dt sn, d/dt cn, d/dt dn) = (cn dn, -sn dn, -k^2 sn cn).
std::array<double, 3> jacobi_derivatives(const EllipticTriple& trip);

/// Complete elliptic integral of the first kind K(k) = pi / (2 AGM(1, k')).
/// Throws Error{ModulusOutOfRange} unless 0 <= k < 1.
double complete_elliptic_k(double k);

/// Common period 4 K(k) of sn, cn, dn. Throws Error{ModulusOutOfRange} for k >= 1.
double jacobi_period(double k);

}  // namespace ruledsl
