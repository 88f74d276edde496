#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dehncert/cusp.hpp"
#include "dehncert/error.hpp"
#include "dehncert/hyp2.hpp"
#include "dehncert/numerics.hpp"
#include "dehncert/tube.hpp"

namespace dehncert::certify {

// ---------------------------------------------------------------------------
// Constants of the effective theorems. Inequalities are applied with the
// strictness printed for each regime: tame hypotheses are strict, finite-volume
// hypotheses are not.
// ---------------------------------------------------------------------------
namespace constants {
inline const double kEpsilonMax = std::log(3.0);
inline constexpr double kGeometricCoef = 6771.0;
inline constexpr double kCoshSlope = 0.6;
inline constexpr double kCoshShift = 0.1475;
inline constexpr double kDerivativeCoef = 11.35;
inline constexpr double kFillShift = 11.7;
inline constexpr double kThickThinShrink = 1.2;
inline constexpr double kTameFactor = 4.0;

inline constexpr double kDrillTameMaxLink = 0.018375;
inline constexpr double kDrillFiniteMaxLink = 0.0735;
inline constexpr double kDrillGeodesicBudget = 0.0996;
inline constexpr double kDrillTameLinkCoef = 1.408;
inline constexpr double kDrillFiniteLinkCoef = 0.352;
inline constexpr double kVisualAreaPad = 1e-5;
inline constexpr double kDrillFiniteZFloor = 0.6288;

inline constexpr double kFillTameMinLsq = 512.0;
inline constexpr double kFillFiniteMinLsq = 128.0;
inline constexpr double kFillMaxGeodesic = 0.056;
inline constexpr double kFillLsqCorrection = 14.7;
inline constexpr double kFillGeodesicCoef = 1.656;
inline constexpr double kFillFiniteZFloor = 0.624;

inline constexpr double kHkMinNormalized = 7.584;
inline constexpr double kHkCoreLengthBound = 0.16;

inline const double kMargulisInfiniteVolume = std::log(3.0);
inline constexpr double kMargulisMeyerhoff = 0.104;
inline constexpr double kMargulisWeeksUpper = 0.776;

inline constexpr double kCrossCheckTol = 1e-9;
}  // namespace constants

enum class Theorem { drill_bilip, fill_bilip, short_drill, short_fill, hk_fillable, six_theorem, obstruction_area };
enum class Regime { tame, finite_volume };
enum class VolumeRegime { infinite, finite };
enum class Verdict { certified, hypothesis_failed };
enum class Relation { lt, le, gt, ge };
enum class SurfaceKind { sphere, disk, torus, annulus };

constexpr std::string_view to_string(Theorem t) {
  switch (t) {
    case Theorem::drill_bilip: return "drill_bilip";
    case Theorem::fill_bilip: return "fill_bilip";
    case Theorem::short_drill: return "short_drill";
    case Theorem::short_fill: return "short_fill";
    case Theorem::hk_fillable: return "hk_fillable";
    case Theorem::six_theorem: return "six_theorem";
    case Theorem::obstruction_area: return "obstruction_area";
  }
  return "?";
}
constexpr std::string_view to_string(Regime r) { return r == Regime::tame ? "tame" : "finite_volume"; }
constexpr std::string_view to_string(VolumeRegime v) { return v == VolumeRegime::infinite ? "infinite" : "finite"; }
constexpr std::string_view to_string(Verdict v) {
  return v == Verdict::certified ? "certified" : "hypothesis_failed";
}
constexpr std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::lt: return "<";
    case Relation::le: return "<=";
    case Relation::gt: return ">";
    case Relation::ge: return ">=";
  }
  return "?";
}
constexpr std::string_view to_string(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::sphere: return "sphere";
    case SurfaceKind::disk: return "disk";
    case SurfaceKind::torus: return "torus";
    case SurfaceKind::annulus: return "annulus";
  }
  return "?";
}

inline bool holds(double actual, Relation rel, double required) {
  switch (rel) {
    case Relation::lt: return actual < required;
    case Relation::le: return actual <= required;
    case Relation::gt: return actual > required;
    case Relation::ge: return actual >= required;
  }
  return false;
}

/// One hypothesis in the trace: `actual relation required`.
struct Check {
  std::string name;
  Relation relation;
  double required;
  double actual;
  bool pass;

  static Check make(std::string name, double actual, Relation rel, double required) {
    return {std::move(name), rel, required, actual, holds(actual, rel, required)};
  }

  /// Signed slack relative to the requirement; negative means violated.
  double margin() const {
    const double scale = std::max(std::abs(required), std::numeric_limits<double>::min());
    const bool upper = relation == Relation::lt || relation == Relation::le;
    return (upper ? required - actual : actual - required) / scale;
  }

  friend bool operator==(const Check&, const Check&) = default;
};

struct CertificateReport {
  std::string query_id;
  Theorem theorem = Theorem::drill_bilip;
  Regime regime = Regime::tame;
  Verdict verdict = Verdict::hypothesis_failed;
  std::string theorem_name;
  std::string binding_constraint;
  std::vector<Check> checks;
  std::map<std::string, double> bounds;
  std::vector<std::string> assumptions;

  bool certified() const { return verdict == Verdict::certified; }
  const Check* find_check(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  friend bool operator==(const CertificateReport&, const CertificateReport&) = default;
};

struct ObstructionInput {
  SurfaceKind surface_kind;
  std::vector<double> horocycle_lengths;  // one per puncture

  std::int64_t punctures() const { return static_cast<std::int64_t>(horocycle_lengths.size()); }
};

struct CertificateQuery {
  std::string id;
  Theorem theorem = Theorem::drill_bilip;
  Regime regime = Regime::tame;
  std::optional<double> epsilon;
  std::optional<double> J;
  std::optional<double> link_length;
  std::optional<hyp2::ComplexLength> geodesic;
  std::optional<cusp::NormalizedLength> L_total;
  std::vector<cusp::CuspSlope> slopes;
  bool double_double = false;
  std::optional<VolumeRegime> volume;
  std::optional<ObstructionInput> obstruction;
};

struct Options {
  numerics::Tolerance tolerance{};
  bool assume_meyerhoff = false;
  bool cross_check = true;
};

// ---------------------------------------------------------------------------
// Closed-form thresholds
// ---------------------------------------------------------------------------

inline double regime_factor(Regime r) { return r == Regime::tame ? constants::kTameFactor : 1.0; }

/// eps^5 / (6771 cosh^5(0.6 eps + 0.1475)): the link-length bound that keeps
/// the thick part geometrically controlled.
inline double geometric_link_threshold(double eps) {
  using namespace constants;
  return std::pow(eps, 5) / (kGeometricCoef * std::pow(std::cosh(kCoshSlope * eps + kCoshShift), 5));
}

/// eps^(5/2) log(J) / 11.35: the link-length bound that yields J-bilipschitz control.
inline double derivative_link_threshold(double eps, double J) {
  return std::pow(eps, 2.5) * std::log(J) / constants::kDerivativeCoef;
}

inline double geometric_fill_lsq(double eps) {
  using namespace constants;
  return 2.0 * std::numbers::pi * kGeometricCoef * std::pow(std::cosh(kCoshSlope * eps + kCoshShift), 5) /
             std::pow(eps, 5) +
         kFillShift;
}

inline double derivative_fill_lsq(double eps, double J) {
  using namespace constants;
  return 2.0 * std::numbers::pi * kDerivativeCoef / (std::pow(eps, 2.5) * std::log(J)) + kFillShift;
}

/// Largest total link length admitted by the drilling theorem for (eps, J).
inline double max_link_length(Regime r, double eps, double J) {
  return std::min(geometric_link_threshold(eps), derivative_link_threshold(eps, J)) / regime_factor(r);
}

/// Smallest L^2 admitted by the filling theorem for (eps, J).
inline double required_fill_lsq(Regime r, double eps, double J) {
  return regime_factor(r) * std::max(geometric_fill_lsq(eps), derivative_fill_lsq(eps, J));
}

inline double margulis_floor(VolumeRegime v) {
  return v == VolumeRegime::infinite ? constants::kMargulisInfiniteVolume : constants::kMargulisMeyerhoff;
}

// ---------------------------------------------------------------------------
// Report assembly helpers
// ---------------------------------------------------------------------------
namespace detail {

inline CertificateReport start(const CertificateQuery& q, std::string name) {
  CertificateReport r;
  r.query_id = q.id;
  r.theorem = q.theorem;
  r.regime = q.regime;
  r.theorem_name = std::move(name);
  return r;
}

inline void finalize(CertificateReport& r) {
  const bool all = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
  r.verdict = (all && !r.checks.empty()) ? Verdict::certified : Verdict::hypothesis_failed;
  const Check* tightest = nullptr;
  for (const auto& c : r.checks)
    if (!tightest || c.margin() < tightest->margin()) tightest = &c;
  r.binding_constraint = tightest ? tightest->name : "none";
}

template <class T>
const T& require(const std::optional<T>& v, std::string_view field, Theorem t) {
  if (!v)
    throw Error(ErrorKind::MissingField,
                "theorem " + std::string(to_string(t)) + " requires field '" + std::string(field) + "'");
  return *v;
}

inline double require_epsilon(const CertificateQuery& q) {
  const double eps = require(q.epsilon, "epsilon", q.theorem);
  if (!(eps > 0.0) || !(eps <= constants::kEpsilonMax))
    throw Error(ErrorKind::EpsilonOutOfRange, "epsilon must lie in (0, log 3], got " + std::to_string(eps));
  return eps;
}

inline std::optional<double> optional_J(const CertificateQuery& q) {
  if (q.J && !(*q.J > 1.0 && std::isfinite(*q.J)))
    throw Error(ErrorKind::InvalidArgument, "J must be finite and > 1");
  return q.J;
}

inline void note_margulis(const CertificateQuery& q, double eps, CertificateReport& r) {
  if (q.volume && eps > margulis_floor(*q.volume))
    r.assumptions.push_back("epsilon " + std::to_string(eps) + " exceeds the universal Margulis floor " +
                            std::to_string(margulis_floor(*q.volume)) +
                            "; it must be a Margulis number of the manifold");
}

/// Resolves the total normalized length from either an explicit value or the
/// query's slope list, then applies double-doubling if requested.
inline cusp::NormalizedLength resolve_L(const CertificateQuery& q, CertificateReport& r) {
  std::optional<cusp::NormalizedLength> L = q.L_total;
  if (!L && !q.slopes.empty()) {
    std::vector<cusp::NormalizedLength> ls;
    ls.reserve(q.slopes.size());
    for (const auto& cs : q.slopes) ls.push_back(cusp::normalized_length(cs.cusp, cs.slope));
    L = cusp::total_normalized_length(ls);
    r.assumptions.push_back("total normalized length computed from " + std::to_string(ls.size()) + " slope(s)");
  }
  const auto& base = require(L, "L_total", q.theorem);
  if (q.double_double) {
    r.assumptions.push_back("double-double applied: L halved");
    r.bounds["L_total_before_double_double"] = base.value();
    return cusp::double_double_normalized(base);
  }
  return base;
}

/// Haze inversion through the closed form, optionally cross-checked against
/// the bracketing solver. Appends a failing domain check instead of throwing
/// when the visual area has no tube certificate.
inline std::optional<double> tube_parameter(double visual_area, const Options& opt, CertificateReport& r) {
  r.bounds["visual_area"] = visual_area;
  if (!(visual_area <= tube::kHazeMax)) {
    r.checks.push_back(Check::make("visual_area", visual_area, Relation::le, tube::kHazeMax));
    return std::nullopt;
  }
  const double z = tube::haze_inv(visual_area);
  if (opt.cross_check) {
    const double z_oracle = numerics::invert_monotone(
        [](double t) { return tube::haze_unchecked(t); }, visual_area,
        {tube::kZCrit, 1.0, numerics::Direction::decreasing}, opt.tolerance);
    r.checks.push_back(
        Check::make("z_min_oracle_agreement", std::abs(z - z_oracle), Relation::le, constants::kCrossCheckTol));
  }
  r.bounds["z_min"] = z;
  return z;
}

inline void emit_length_change(double z, double f_length, double m, CertificateReport& r) {
  if (!(f_length > 0.0 && f_length <= tube::kFMaxLength)) {
    r.checks.push_back(Check::make("F_length_domain", f_length, Relation::le, tube::kFMaxLength));
    return;
  }
  r.bounds["F_length"] = f_length;
  if (tube::f_denominator(f_length) < tube::kNearSingularDenominator)
    r.assumptions.push_back("near-singular: F denominator below 1e-2");
  const double K = 4.0 * std::numbers::pi * std::numbers::pi * tube::bound_F(z, f_length);
  const auto b = hyp2::bound_from_dhyp(K, m);
  r.bounds["dhyp_bound"] = b.dhyp_bound;
  r.bounds["ratio_hi"] = b.ratio_hi;
  r.bounds["ratio_lo"] = b.ratio_lo;
  r.bounds["torsion_delta"] = b.torsion_delta;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Theorems
// ---------------------------------------------------------------------------

/// Drilling a short geodesic link: ell below min(T1, T2), divided by 4 in the
/// tame case. Without J the derivative branch is solved for the minimal J.
inline CertificateReport certify_drill_bilip(const CertificateQuery& q, const Options& = {}) {
  using namespace constants;
  const bool tame = q.regime == Regime::tame;
  auto r = detail::start(q, tame ? "Effective drilling, tame manifolds" : "Effective drilling, finite volume");
  const double eps = detail::require_epsilon(q);
  const double ell = detail::require(q.link_length, "link_length", q.theorem);
  if (!(ell > 0.0) || !std::isfinite(ell)) throw Error(ErrorKind::NonPositiveLength, "link_length must be positive");
  const auto J = detail::optional_J(q);
  const double c = regime_factor(q.regime);
  const Relation rel = tame ? Relation::lt : Relation::le;

  const double t_geo = geometric_link_threshold(eps) / c;
  r.checks.push_back(Check::make("geometric_threshold", ell, rel, t_geo));
  r.bounds["geometric_threshold"] = t_geo;
  double threshold = t_geo;
  if (J) {
    const double t_der = derivative_link_threshold(eps, *J) / c;
    r.checks.push_back(Check::make("derivative_threshold", ell, rel, t_der));
    r.bounds["derivative_threshold"] = t_der;
    threshold = std::min(threshold, t_der);
  } else {
    r.assumptions.push_back("J not supplied: solving for the minimal J");
  }
  r.bounds["max_link_length"] = threshold;
  r.bounds["thick_thin_eps_out"] = eps / kThickThinShrink;
  if (r.checks.front().pass) {
    const double k_needed = kDerivativeCoef * c * ell / std::pow(eps, 2.5);
    r.bounds["min_J"] = std::exp(k_needed);
  }
  detail::note_margulis(q, eps, r);
  detail::finalize(r);
  return r;
}

/// Filling along slopes of large total normalized length: L^2 at least
/// max(geometric, derivative), times 4 in the tame case.
inline CertificateReport certify_fill_bilip(const CertificateQuery& q, const Options& = {}) {
  using namespace constants;
  const bool tame = q.regime == Regime::tame;
  auto r = detail::start(q, tame ? "Effective filling, tame manifolds" : "Effective filling, finite volume");
  const double eps = detail::require_epsilon(q);
  const auto J = detail::optional_J(q);
  const double l_sq = detail::resolve_L(q, r).squared();
  const double c = regime_factor(q.regime);

  const double geo = c * geometric_fill_lsq(eps);
  r.checks.push_back(Check::make("geometric_L_sq", l_sq, Relation::ge, geo));
  r.bounds["geometric_L_sq"] = geo;
  double required = geo;
  if (J) {
    const double der = c * derivative_fill_lsq(eps, *J);
    r.checks.push_back(Check::make("derivative_L_sq", l_sq, Relation::ge, der));
    r.bounds["derivative_L_sq"] = der;
    required = std::max(required, der);
  } else {
    r.assumptions.push_back("J not supplied: solving for the minimal J");
  }
  r.bounds["required_L_sq"] = required;
  r.bounds["L_sq"] = l_sq;
  r.bounds["thick_thin_eps_out"] = eps / kThickThinShrink;
  if (r.checks.front().pass) {
    const double log_j = 2.0 * std::numbers::pi * kDerivativeCoef / (std::pow(eps, 2.5) * (l_sq / c - kFillShift));
    r.bounds["min_J"] = std::exp(log_j);
  }
  detail::note_margulis(q, eps, r);
  detail::finalize(r);
  return r;
}

/// Complex-length change of a short geodesic gamma (length m) when a link of
/// length ell is drilled. Bounds are emitted whenever they are computable,
/// including at the boundary of the hypotheses, so extreme cases can be read off.
inline CertificateReport certify_short_drill(const CertificateQuery& q, const Options& opt = {}) {
  using namespace constants;
  const bool tame = q.regime == Regime::tame;
  auto r = detail::start(q, tame ? "Short geodesics under drilling, tame manifolds"
                                 : "Short geodesics under drilling, finite volume");
  const double ell = detail::require(q.link_length, "link_length", q.theorem);
  if (!(ell > 0.0) || !std::isfinite(ell)) throw Error(ErrorKind::NonPositiveLength, "link_length must be positive");
  const auto& gamma = detail::require(q.geodesic, "geodesic", q.theorem);
  gamma.validate();
  const double m = gamma.length;

  double f_length;
  if (tame) {
    r.checks.push_back(Check::make("link_length", ell, Relation::lt, kDrillTameMaxLink));
    r.checks.push_back(
        Check::make("geodesic_length", m, Relation::lt, kDrillGeodesicBudget - kDrillTameLinkCoef * ell));
    f_length = 4.0 * ell;
  } else {
    r.checks.push_back(Check::make("link_length", ell, Relation::le, kDrillFiniteMaxLink));
    r.checks.push_back(
        Check::make("geodesic_length", m, Relation::le, kDrillGeodesicBudget - kDrillFiniteLinkCoef * ell));
    f_length = ell;
  }
  const double visual_area = 2.0 * std::numbers::pi * (f_length + m + kVisualAreaPad);
  if (const auto z = detail::tube_parameter(visual_area, opt, r)) {
    if (!tame) r.checks.push_back(Check::make("z_min", *z, Relation::gt, kDrillFiniteZFloor));
    detail::emit_length_change(*z, f_length, m, r);
  }
  detail::finalize(r);
  return r;
}

/// Complex-length change of a short geodesic gamma (length m) under filling
/// slopes of total normalized length L.
inline CertificateReport certify_short_fill(const CertificateQuery& q, const Options& opt = {}) {
  using namespace constants;
  const bool tame = q.regime == Regime::tame;
  auto r = detail::start(q, tame ? "Short geodesics under filling, tame manifolds"
                                 : "Short geodesics under filling, finite volume");
  const auto L = detail::resolve_L(q, r);
  const auto& gamma = detail::require(q.geodesic, "geodesic", q.theorem);
  gamma.validate();
  const double m = gamma.length;
  const double l_sq = L.squared();
  r.bounds["L_sq"] = l_sq;

  double effective_sq;
  if (tame) {
    r.checks.push_back(Check::make("L_sq", l_sq, Relation::gt, kFillTameMinLsq));
    r.checks.push_back(Check::make("geodesic_length", m, Relation::lt, kFillMaxGeodesic));
    effective_sq = l_sq / 4.0;  // (L/2)^2
  } else {
    r.checks.push_back(Check::make("L_sq", l_sq, Relation::ge, kFillFiniteMinLsq));
    r.checks.push_back(Check::make("geodesic_length", m, Relation::le, kFillMaxGeodesic));
    effective_sq = l_sq;
  }
  const double D = effective_sq - kFillLsqCorrection;
  if (!(D > 0.0)) {
    r.checks.push_back(Check::make("corrected_L_sq", D, Relation::gt, 0.0));
    detail::finalize(r);
    return r;
  }
  r.bounds["corrected_L_sq"] = D;
  const double two_pi = 2.0 * std::numbers::pi;
  const double visual_area = two_pi * two_pi / D + two_pi * kFillGeodesicCoef * m;
  if (const auto z = detail::tube_parameter(visual_area, opt, r)) {
    if (!tame) r.checks.push_back(Check::make("z_min", *z, Relation::gt, kFillFiniteZFloor));
    detail::emit_length_change(*z, two_pi / D, m, r);
  }
  detail::finalize(r);
  return r;
}

/// Hodgson-Kerckhoff fillability: total normalized length above 7.584 fills,
/// with the cores forming a geodesic link of total length below 0.16.
inline CertificateReport hk_fillable(cusp::NormalizedLength L) {
  CertificateQuery q;
  q.theorem = Theorem::hk_fillable;
  auto r = detail::start(q, "Hodgson-Kerckhoff fillability");
  r.checks.push_back(Check::make("normalized_length", L.value(), Relation::gt, constants::kHkMinNormalized));
  r.bounds["normalized_length"] = L.value();
  if (r.checks.back().pass) r.bounds["core_length_bound"] = constants::kHkCoreLengthBound;
  detail::finalize(r);
  return r;
}

inline CertificateReport certify_hk_fillable(const CertificateQuery& q, const Options& = {}) {
  CertificateReport scratch;
  const auto L = detail::resolve_L(q, scratch);
  auto r = hk_fillable(L);
  r.query_id = q.id;
  r.regime = q.regime;
  for (auto& [k, v] : scratch.bounds) r.bounds.emplace(k, v);
  r.assumptions = std::move(scratch.assumptions);
  return r;
}

/// 6-theorem: every slope longer than 6 on embedded disjoint horocusps. With
/// only a total normalized length, the Meyerhoff area floor converts it into
/// a per-meridian length floor (opt-in via Options::assume_meyerhoff).
inline CertificateReport certify_six_theorem(const CertificateQuery& q, const Options& opt = {}) {
  auto r = detail::start(q, "6-theorem slope test");
  if (!q.slopes.empty()) {
    const auto res = cusp::six_theorem_slopes(q.slopes);
    for (std::size_t i = 0; i < res.slopes.size(); ++i) {
      r.checks.push_back(
          Check::make("slope_length[" + std::to_string(i) + "]", res.slopes[i].length, Relation::gt,
                      cusp::kSixTheoremLength));
    }
    r.assumptions.push_back("horocusps are embedded and pairwise disjoint (caller-asserted)");
  } else if (q.L_total) {
    if (!opt.assume_meyerhoff)
      throw Error(ErrorKind::MissingField,
                  "six_theorem without slopes needs the Meyerhoff area floor (--assume-meyerhoff)");
    CertificateReport scratch;
    const auto L = detail::resolve_L(q, scratch);
    const double floor = cusp::meridian_length_floor(L.squared());
    r.checks.push_back(Check::make("meridian_length_floor", floor, Relation::gt, cusp::kSixTheoremLength));
    r.bounds["meridian_length_floor"] = floor;
    r.bounds["L_sq"] = L.squared();
    r.assumptions.push_back("Meyerhoff area floor used: area >= sqrt(3)/2 on every cusp");
    for (auto& a : scratch.assumptions) r.assumptions.push_back(std::move(a));
  } else {
    throw Error(ErrorKind::MissingField, "six_theorem requires 'slopes' or 'L_total'");
  }
  detail::finalize(r);
  return r;
}

/// Gauss-Bonnet area of a hyperbolic surface with m punctures, by type.
inline double gauss_bonnet_area(SurfaceKind kind, std::int64_t m) {
  const double two_pi = 2.0 * std::numbers::pi;
  switch (kind) {
    case SurfaceKind::sphere: return two_pi * static_cast<double>(m - 2);
    case SurfaceKind::disk: return two_pi * static_cast<double>(m - 1);
    case SurfaceKind::torus:
    case SurfaceKind::annulus: return two_pi * static_cast<double>(m);
  }
  return 0.0;
}

/// Cusp-density contradiction: a surface whose cusp area (sum of horocycle
/// lengths) is large cannot have the area Gauss-Bonnet allows, since its area
/// is at least pi/3 times the cusp area.
inline CertificateReport obstruction_area_test(const ObstructionInput& o) {
  CertificateQuery q;
  q.theorem = Theorem::obstruction_area;
  auto r = detail::start(q, "Cusp-area obstruction to essential surfaces");
  for (double h : o.horocycle_lengths)
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::NonPositiveLength, "horocycle lengths must be positive");
  const double area_gb = gauss_bonnet_area(o.surface_kind, o.punctures());
  double cusp_sum = 0.0;
  for (double h : o.horocycle_lengths) cusp_sum += h;
  const double cusp_lower = std::numbers::pi / 3.0 * cusp_sum;
  r.bounds["gauss_bonnet_area"] = area_gb;
  r.bounds["cusp_area_lower"] = cusp_lower;
  r.bounds["punctures"] = static_cast<double>(o.punctures());
  // a hyperbolic surface has positive area: negative area_gb, or zero area
  // with no cusp to compare against (unpunctured torus/annulus), rules it out
  if (area_gb < 0.0 || (area_gb == 0.0 && o.punctures() == 0)) {
    r.assumptions.push_back("surface already impossible: non-positive Gauss-Bonnet area for " +
                            std::string(to_string(o.surface_kind)) + " with " + std::to_string(o.punctures()) +
                            " puncture(s)");
    r.checks.push_back(Check::make("gauss_bonnet_area", area_gb, Relation::le, 0.0));
  } else {
    r.checks.push_back(Check::make("cusp_area_lower", cusp_lower, Relation::gt, area_gb));
  }
  detail::finalize(r);
  return r;
}

inline CertificateReport certify_obstruction(const CertificateQuery& q, const Options& = {}) {
  auto r = obstruction_area_test(detail::require(q.obstruction, "obstruction", q.theorem));
  r.query_id = q.id;
  r.regime = q.regime;
  return r;
}

inline CertificateReport certify(const CertificateQuery& q, const Options& opt = {}) {
  switch (q.theorem) {
    case Theorem::drill_bilip: return certify_drill_bilip(q, opt);
    case Theorem::fill_bilip: return certify_fill_bilip(q, opt);
    case Theorem::short_drill: return certify_short_drill(q, opt);
    case Theorem::short_fill: return certify_short_fill(q, opt);
    case Theorem::hk_fillable: return certify_hk_fillable(q, opt);
    case Theorem::six_theorem: return certify_six_theorem(q, opt);
    case Theorem::obstruction_area: return certify_obstruction(q, opt);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown theorem");
}

}  // namespace dehncert::certify
