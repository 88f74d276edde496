#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "dehncert/error.hpp"

namespace dehncert::hyp2 {

/// Complex length len + i*tau of a closed geodesic. Torsion is kept as a raw
/// representative, not reduced modulo 2*pi.
struct ComplexLength {
  double length;
  double torsion = 0.0;

  static ComplexLength make(double length, double torsion = 0.0) {
    ComplexLength c{length, torsion};
    c.validate();
    return c;
  }

  void validate() const {
    if (!(length > 0.0) || !std::isfinite(length))
      throw Error(ErrorKind::NonPositiveLength, "geodesic length must be positive and finite, got " + std::to_string(length));
    if (!std::isfinite(torsion)) throw Error(ErrorKind::InvalidArgument, "torsion must be finite");
  }

  friend bool operator==(const ComplexLength&, const ComplexLength&) = default;
};

/// Distance in the upper half-plane between i*a and i*b, i.e. between the
/// points (-tau, len). Uses d = 2 asinh(|z - w| / (2 sqrt(Im z Im w))), which
/// equals arccosh(1 + |z - w|^2 / (2 Im z Im w)) without cancellation near 0.
inline double dist_complex_lengths(const ComplexLength& a, const ComplexLength& b) {
  a.validate();
  b.validate();
  const double dx = b.torsion - a.torsion;
  const double dy = b.length - a.length;
  const double chord = std::hypot(dx, dy);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(a.length * b.length)));
}

/// What a bound d_hyp <= K says about the real and imaginary parts:
/// e^-K <= len'/len <= e^K and |tau' - tau| <= sinh(K) * len_ref.
struct LengthChangeBound {
  double dhyp_bound;
  double ratio_hi;
  double ratio_lo;
  double torsion_delta;
};

inline LengthChangeBound bound_from_dhyp(double K, double len_ref) {
  if (!(K >= 0.0) || !std::isfinite(K))
    throw Error(ErrorKind::InvalidArgument, "distance bound K must be finite and >= 0");
  if (!(len_ref > 0.0) || !std::isfinite(len_ref))
    throw Error(ErrorKind::NonPositiveLength, "reference length must be positive");
  return {K, std::exp(K), std::exp(-K), std::sinh(K) * len_ref};
}

}  // namespace dehncert::hyp2
