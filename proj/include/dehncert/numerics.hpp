#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "dehncert/error.hpp"

namespace dehncert::numerics {

enum class Direction { increasing, decreasing };

/// Bracket on which the function to invert is strictly monotone.
/// The endpoints may be supplied in either order; `ordered()` puts them right.
struct MonotoneInterval {
  double lo;
  double hi;
  Direction direction;

  MonotoneInterval ordered() const {
    if (lo <= hi) return *this;
    return {hi, lo, direction};
  }
};

struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_iter = 200;

  void validate() const {
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol))
      throw Error(ErrorKind::InvalidArgument, "abs_tol must be positive and finite");
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
      throw Error(ErrorKind::InvalidArgument, "rel_tol must be positive and finite");
    if (max_iter < 1) throw Error(ErrorKind::InvalidArgument, "max_iter must be >= 1");
  }
};

/// Solves f(x) = target on a monotone bracket with Brent's method
/// (inverse quadratic / secant steps, falling back to bisection whenever a
/// step leaves the bracket or fails to halve it quickly enough).
///
/// Returns x in the bracket with |f(x) - target| <= abs_tol whose bracket
/// width has also shrunk below rel_tol (relative to max(|x|, bracket width)).
/// Throws NoBracket when the endpoint values do not straddle the target and
/// NoConvergence when max_iter is exhausted.
template <class Fn>
double invert_monotone(Fn&& f, double target, MonotoneInterval bracket, const Tolerance& tol = {}) {
  tol.validate();
  bracket = bracket.ordered();
  if (!std::isfinite(bracket.lo) || !std::isfinite(bracket.hi) || !std::isfinite(target))
    throw Error(ErrorKind::InvalidArgument, "bracket and target must be finite");

  const double f_lo = f(bracket.lo);
  const double f_hi = f(bracket.hi);
  if (bracket.lo == bracket.hi) {
    if (std::abs(f_lo - target) <= tol.abs_tol) return bracket.lo;
    throw Error(ErrorKind::NoBracket, "degenerate bracket does not contain target");
  }
  const bool increasing = bracket.direction == Direction::increasing;
  if (increasing ? !(f_lo < f_hi) : !(f_lo > f_hi))
    throw Error(ErrorKind::InvalidArgument, "endpoint values contradict the monotonicity direction");

  double a = bracket.lo, b = bracket.hi;
  double fa = f_lo - target, fb = f_hi - target;
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw Error(ErrorKind::NoBracket, "f(lo) - target and f(hi) - target have the same sign");

  const double scale_floor = bracket.hi - bracket.lo;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  double c = a, fc = fa;
  double d = b - a, e = d;
  // once the bracket reaches rel_tol resolution with the residual still above
  // abs_tol, keep refining down to rounding level
  bool fine = false;
  for (int iter = 0; iter < tol.max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double ulp_tol = 2.0 * eps * std::abs(b) + std::numeric_limits<double>::denorm_min();
    const double coarse_tol = ulp_tol + 0.5 * tol.rel_tol * std::max(std::abs(b), scale_floor);
    const double half = 0.5 * (c - b);
    if (fb == 0.0) return b;
    if (std::abs(half) <= coarse_tol) {
      if (std::abs(fb) <= tol.abs_tol) return b;
      fine = true;
      if (std::abs(half) <= ulp_tol || std::nextafter(b, c) == c)
        throw Error(ErrorKind::NoConvergence, "bracket collapsed with residual above abs_tol");
    }
    const double step_tol = fine ? ulp_tol : coarse_tol;

    if (std::abs(e) >= step_tol && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * half * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * half * q - std::abs(step_tol * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = half;
        e = d;
      }
    } else {
      d = half;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > step_tol) ? d : std::copysign(step_tol, half);
    fb = f(b) - target;
  }
  throw Error(ErrorKind::NoConvergence,
              "no convergence within " + std::to_string(tol.max_iter) + " iterations");
}

}  // namespace dehncert::numerics
