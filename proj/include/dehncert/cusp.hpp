#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dehncert/error.hpp"

namespace dehncert::cusp {

/// Meyerhoff's lower bound on the boundary area of a maximal-ish horocusp.
inline const double kMeyerhoffAreaFloor = std::sqrt(3.0) / 2.0;

/// Slopes on embedded disjoint horocusps longer than this can be filled.
inline constexpr double kSixTheoremLength = 6.0;

inline constexpr double kAreaOverrideRelTol = 1e-6;

/// Horospherical torus cross-section, given by the two translation vectors
/// generating its Euclidean lattice. Orientation of (mu, lambda) does not
/// matter: area is taken in absolute value.
struct CuspCrossSection {
  std::complex<double> mu;
  std::complex<double> lambda;
  std::optional<double> area_override;

  double lattice_area() const { return std::abs((std::conj(mu) * lambda).imag()); }

  void validate() const {
    if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag()) || !std::isfinite(lambda.real()) ||
        !std::isfinite(lambda.imag()))
      throw Error(ErrorKind::InvalidArgument, "cusp translations must be finite");
    const double lat = lattice_area();
    if (!(lat > 0.0)) throw Error(ErrorKind::DegenerateLattice, "translations mu and lambda are parallel");
    if (area_override) {
      const double a = *area_override;
      if (!(a > 0.0) || !std::isfinite(a))
        throw Error(ErrorKind::InvalidArgument, "area override must be positive");
      if (std::abs(a - lat) > kAreaOverrideRelTol * lat)
        throw Error(ErrorKind::InputInconsistency, "area override " + std::to_string(a) +
                                                       " disagrees with lattice area " + std::to_string(lat));
    }
  }

  double area() const {
    validate();
    return area_override.value_or(lattice_area());
  }
};

struct SlopeClass {
  std::int64_t p;
  std::int64_t q;

  void validate() const {
    if (p == 0 && q == 0) throw Error(ErrorKind::InvalidSlope, "slope (0,0) is not a slope");
    if (std::gcd(p, q) != 1)
      throw Error(ErrorKind::InvalidSlope,
                  "slope (" + std::to_string(p) + "," + std::to_string(q) + ") is not primitive");
  }

  friend bool operator==(const SlopeClass&, const SlopeClass&) = default;
};

/// Length of a slope divided by the square root of the cusp area; scale
/// invariant, hence independent of which horocusp was chosen.
class NormalizedLength {
 public:
  explicit NormalizedLength(double value) : value_(value), squared_(value * value) {
    if (!(value > 0.0) || !std::isfinite(value))
      throw Error(ErrorKind::InvalidArgument, "normalized length must be positive and finite");
  }

  // Keeps L^2 exactly as given, so strict thresholds on L^2 (e.g. 512) are
  // not blurred by a sqrt/square roundtrip.
  static NormalizedLength from_squared(double l_sq) {
    if (!(l_sq > 0.0) || !std::isfinite(l_sq))
      throw Error(ErrorKind::InvalidArgument, "squared normalized length must be positive");
    NormalizedLength l(std::sqrt(l_sq));
    l.squared_ = l_sq;
    return l;
  }

  double value() const { return value_; }
  double squared() const { return squared_; }

  friend bool operator==(const NormalizedLength&, const NormalizedLength&) = default;

 private:
  double value_;
  double squared_;
};

inline double slope_length(const CuspCrossSection& c, const SlopeClass& s) {
  c.validate();
  s.validate();
  return std::abs(static_cast<double>(s.p) * c.mu + static_cast<double>(s.q) * c.lambda);
}

inline NormalizedLength normalized_length(const CuspCrossSection& c, const SlopeClass& s) {
  return NormalizedLength(slope_length(c, s) / std::sqrt(c.area()));
}

/// Total normalized length: 1/L^2 = sum_j 1/L_j^2.
inline NormalizedLength total_normalized_length(std::span<const NormalizedLength> ls) {
  if (ls.empty()) throw Error(ErrorKind::EmptySlopeSet, "total normalized length needs at least one slope");
  if (ls.size() == 1) return ls.front();
  double inv_sq = 0.0;
  for (const auto& l : ls) inv_sq += 1.0 / l.squared();
  return NormalizedLength(1.0 / std::sqrt(inv_sq));
}

/// Double-doubling repeats every slope four times, so the total normalized
/// length halves.
inline NormalizedLength double_double_normalized(NormalizedLength l) {
  return NormalizedLength::from_squared(l.squared() / 4.0);
}

struct SlopeVerdict {
  double length;
  bool pass;
};

struct SixTheoremResult {
  std::vector<SlopeVerdict> slopes;
  bool all_pass;
};

struct CuspSlope {
  CuspCrossSection cusp;
  SlopeClass slope;
};

/// Per-slope test: Euclidean length strictly greater than 6. The caller is
/// responsible for the horocusps being embedded and pairwise disjoint.
inline SixTheoremResult six_theorem_slopes(std::span<const CuspSlope> cusps_with_slopes) {
  if (cusps_with_slopes.empty()) throw Error(ErrorKind::EmptySlopeSet, "6-theorem test needs at least one slope");
  SixTheoremResult out{{}, true};
  out.slopes.reserve(cusps_with_slopes.size());
  for (const auto& cs : cusps_with_slopes) {
    const double len = slope_length(cs.cusp, cs.slope);
    const bool pass = len > kSixTheoremLength;
    out.slopes.push_back({len, pass});
    out.all_pass = out.all_pass && pass;
  }
  return out;
}

/// Lower bound on each individual meridian length when the total normalized
/// length satisfies L^2 >= l_total_sq and every cusp area is at least
/// area_floor: len(s_i) >= sqrt(L^2 * area_floor).
inline double meridian_length_floor(double l_total_sq, double area_floor = kMeyerhoffAreaFloor) {
  if (!(l_total_sq > 0.0) || !std::isfinite(l_total_sq))
    throw Error(ErrorKind::InvalidArgument, "L^2 must be positive and finite");
  if (!(area_floor > 0.0) || !std::isfinite(area_floor))
    throw Error(ErrorKind::InvalidArgument, "area floor must be positive and finite");
  return std::sqrt(l_total_sq * area_floor);
}

}  // namespace dehncert::cusp
