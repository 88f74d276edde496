#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dehncert/error.hpp"

namespace dehncert::tube {

inline constexpr double kHazeScale = 3.3957;

/// Critical point of z(1-z^2)/(1+z^2): the positive root of z^4 + 4z^2 - 1.
inline const double kZCrit = std::sqrt(std::sqrt(5.0) - 2.0);

inline constexpr double kFMaxLength = 0.5085;
inline constexpr double kFDenomConst = 10.667;
inline constexpr double kFDenomSlope = 20.977;

/// F's denominator below this makes downstream certificates numerically fragile.
inline constexpr double kNearSingularDenominator = 1e-2;

inline double haze_unchecked(double z) { return kHazeScale * z * (1.0 - z * z) / (1.0 + z * z); }

/// Largest visual area for which a tube certificate exists.
inline const double kHazeMax = haze_unchecked(kZCrit);

/// Decreasing branch of 3.3957 z(1-z^2)/(1+z^2), on [z_crit, 1].
inline double haze(double z) {
  if (!(z >= kZCrit && z <= 1.0))
    throw Error(ErrorKind::DomainError, "haze is defined on [z_crit, 1], got z = " + std::to_string(z));
  return haze_unchecked(z);
}

/// Inverse of haze by Cardano's formula. With u = x / 3.3957, haze(z) = x is
/// the cubic z^3 + u z^2 - z + u = 0, whose root on [z_crit, 1] is
///   (2 sqrt(u^2+3)/3) cos(pi/3 + atan(-3 sqrt(-3u^4 - 33u^2 + 3) / (u^3 + 18u)) / 3) - u/3.
/// For u > 0 the atan denominator is positive so the principal branch is the
/// right one; u = 0 is the limit value 1.
inline double haze_inv(double x) {
  if (!(x >= 0.0) || !(x <= kHazeMax))
    throw Error(ErrorKind::DomainError,
                "haze_inv is defined on [0, " + std::to_string(kHazeMax) + "], got x = " + std::to_string(x));
  if (x == 0.0) return 1.0;
  const double u = x / kHazeScale;
  const double u2 = u * u;
  // Can dip below zero by rounding right at the domain end.
  const double disc = std::max(0.0, -3.0 * u2 * u2 - 33.0 * u2 + 3.0);
  const double angle = std::atan(-3.0 * std::sqrt(disc) / (u2 * u + 18.0 * u));
  const double z =
      2.0 * std::sqrt(u2 + 3.0) / 3.0 * std::cos(std::numbers::pi / 3.0 + angle / 3.0) - u / 3.0;
  return std::clamp(z, kZCrit, 1.0);
}

/// Embedded tube guarantee around a cone-singular link: visual area
/// A = cone_angle * core_length bounds the radius below by arctanh(haze_inv(A)).
struct TubeEstimate {
  double visual_area;
  double cone_angle;
  double z_min;
  double radius_lower;  // +inf when unbounded
  bool unbounded;
};

inline TubeEstimate tube_radius_from_visual_area(double visual_area, double cone_angle = 2.0 * std::numbers::pi) {
  if (!(visual_area >= 0.0) || !std::isfinite(visual_area))
    throw Error(ErrorKind::InvalidArgument, "visual area must be finite and >= 0");
  if (visual_area >= kHazeMax)
    throw Error(ErrorKind::VisualAreaTooLarge, "visual area " + std::to_string(visual_area) +
                                                   " is not below " + std::to_string(kHazeMax));
  const double z = haze_inv(visual_area);
  if (z >= 1.0)
    return {visual_area, cone_angle, 1.0, std::numeric_limits<double>::infinity(), true};
  return {visual_area, cone_angle, z, std::atanh(z), false};
}

inline TubeEstimate tube_radius_lower(double cone_angle, double core_length) {
  if (!(cone_angle > 0.0) || !(cone_angle <= 2.0 * std::numbers::pi))
    throw Error(ErrorKind::DomainError, "cone angle must lie in (0, 2pi]");
  if (!(core_length > 0.0) || !std::isfinite(core_length))
    throw Error(ErrorKind::NonPositiveLength, "core length must be positive");
  return tube_radius_from_visual_area(cone_angle * core_length, cone_angle);
}

inline double f_denominator(double ell) { return kFDenomConst - kFDenomSlope * ell; }

/// Transfer function bounding d_hyp of a short geodesic's complex length
/// through a cone deformation; decreasing in z, increasing in ell.
inline double bound_F(double z, double ell) {
  if (!(z >= kZCrit && z <= 1.0))
    throw Error(ErrorKind::DomainError, "F needs z in [z_crit, 1], got " + std::to_string(z));
  if (!(ell > 0.0 && ell <= kFMaxLength))
    throw Error(ErrorKind::DomainError, "F needs ell in (0, 0.5085], got " + std::to_string(ell));
  const double z2 = z * z;
  return (1.0 + z2) / (z2 * z * (3.0 - z2)) * ell / f_denominator(ell);
}

}  // namespace dehncert::tube
