#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "dehncert/certify.hpp"
#include "oracles.hpp"

using namespace dehncert::certify;
using dehncert::Error;
using dehncert::ErrorKind;
using dehncert::cusp::CuspCrossSection;
using dehncert::cusp::NormalizedLength;
using dehncert::hyp2::ComplexLength;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::InvalidArgument;
}

CertificateQuery drill(Regime r, double eps, std::optional<double> J, double ell) {
  CertificateQuery q;
  q.theorem = Theorem::drill_bilip;
  q.regime = r;
  q.epsilon = eps;
  q.J = J;
  q.link_length = ell;
  return q;
}

CertificateQuery fill(Regime r, double eps, std::optional<double> J, double l_sq) {
  CertificateQuery q;
  q.theorem = Theorem::fill_bilip;
  q.regime = r;
  q.epsilon = eps;
  q.J = J;
  q.L_total = NormalizedLength::from_squared(l_sq);
  return q;
}

CertificateQuery short_drill(Regime r, double ell, double m) {
  CertificateQuery q;
  q.theorem = Theorem::short_drill;
  q.regime = r;
  q.link_length = ell;
  q.geodesic = ComplexLength{m, 0.0};
  return q;
}

CertificateQuery short_fill(Regime r, double l_sq, double m) {
  CertificateQuery q;
  q.theorem = Theorem::short_fill;
  q.regime = r;
  q.L_total = NormalizedLength::from_squared(l_sq);
  q.geodesic = ComplexLength{m, 0.0};
  return q;
}

/// Independent recompute of the geometric threshold, in long double.
long double t1_oracle(long double eps) {
  return std::pow(eps, 5) / (6771.0L * std::pow(std::cosh(0.6L * eps + 0.1475L), 5));
}

const double kLog3 = std::log(3.0);

}  // namespace

// ----------------------------------------------------------------------------
// Drilling, bilipschitz
// ----------------------------------------------------------------------------

TEST(DrillBilip, TameThresholdIsQuarterOfFinite) {
  for (double eps : {0.05, 0.2, 0.5, 1.0, kLog3}) {
    for (double J : {1.01, 1.5, 2.0, 10.0}) {
      EXPECT_EQ(max_link_length(Regime::tame, eps, J) * 4.0, max_link_length(Regime::finite_volume, eps, J));
    }
  }
}

TEST(DrillBilip, SolveForJ) {
  const auto r = certify_drill_bilip(drill(Regime::tame, 0.5, std::nullopt, 1e-7));
  EXPECT_TRUE(r.certified());
  EXPECT_NEAR(r.bounds.at("min_J"), 1.00002568244808112, 1e-14);
  EXPECT_NEAR(r.bounds.at("max_link_length"), static_cast<double>(t1_oracle(0.5L) / 4), 1e-20);
  EXPECT_NEAR(r.bounds.at("max_link_length"), 7.106e-7, 1e-10);
  EXPECT_NEAR(r.bounds.at("thick_thin_eps_out"), 0.5 / 1.2, 1e-15);
  EXPECT_FALSE(r.assumptions.empty());
}

TEST(DrillBilip, StrictBoundaryInTameRegime) {
  const double t = max_link_length(Regime::tame, 0.5, 2.0);
  EXPECT_FALSE(certify_drill_bilip(drill(Regime::tame, 0.5, 2.0, t)).certified());
  EXPECT_TRUE(certify_drill_bilip(drill(Regime::tame, 0.5, 2.0, std::nextafter(t, 0.0))).certified());
  const double tf = max_link_length(Regime::finite_volume, 0.5, 2.0);
  EXPECT_TRUE(certify_drill_bilip(drill(Regime::finite_volume, 0.5, 2.0, tf)).certified());
  EXPECT_FALSE(certify_drill_bilip(drill(Regime::finite_volume, 0.5, 2.0, std::nextafter(tf, 1.0))).certified());
}

TEST(DrillBilip, BindingConstraintNamesSmallerBranch) {
  // J barely above 1 makes the derivative branch tiny.
  const auto r = certify_drill_bilip(drill(Regime::tame, 0.5, 1.000001, 1e-7));
  EXPECT_EQ(r.binding_constraint, "derivative_threshold");
  EXPECT_FALSE(r.certified());
  const auto g = certify_drill_bilip(drill(Regime::tame, 0.5, 1e6, 1e-9));
  EXPECT_EQ(g.binding_constraint, "geometric_threshold");
  EXPECT_TRUE(g.certified());
}

TEST(DrillBilip, Errors) {
  EXPECT_EQ(kind_of([] { certify_drill_bilip(drill(Regime::tame, 1.2, 2.0, 1e-9)); }),
            ErrorKind::EpsilonOutOfRange);
  EXPECT_EQ(kind_of([] { certify_drill_bilip(drill(Regime::tame, 0.0, 2.0, 1e-9)); }),
            ErrorKind::EpsilonOutOfRange);
  CertificateQuery q = drill(Regime::tame, 0.5, 2.0, 1e-9);
  q.link_length.reset();
  EXPECT_EQ(kind_of([&] { certify_drill_bilip(q); }), ErrorKind::MissingField);
  q = drill(Regime::tame, 0.5, 2.0, 1e-9);
  q.epsilon.reset();
  EXPECT_EQ(kind_of([&] { certify_drill_bilip(q); }), ErrorKind::MissingField);
  EXPECT_EQ(kind_of([] { certify_drill_bilip(drill(Regime::tame, 0.5, 1.0, 1e-9)); }), ErrorKind::InvalidArgument);
}

TEST(DrillBilip, MonotoneInEpsilonAndJ) {
  double prev = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double eps = kLog3 * i / 200;
    const double t = max_link_length(Regime::tame, eps, 2.0);
    ASSERT_GE(t, prev);
    prev = t;
  }
  prev = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double t = max_link_length(Regime::tame, 0.7, 1.0 + 0.05 * i);
    ASSERT_GE(t, prev);
    prev = t;
  }
}

TEST(DrillBilip, MargulisNote) {
  auto q = drill(Regime::finite_volume, 0.5, 2.0, 1e-9);
  q.volume = VolumeRegime::finite;
  EXPECT_EQ(certify_drill_bilip(q).assumptions.size(), 1u);
  q.volume = VolumeRegime::infinite;
  EXPECT_TRUE(certify_drill_bilip(q).assumptions.empty());
}

// ----------------------------------------------------------------------------
// Filling, bilipschitz
// ----------------------------------------------------------------------------

TEST(FillBilip, LogThreeJTwo) {
  const auto r = certify_fill_bilip(fill(Regime::tame, kLog3, 2.0, 5e5));
  // high-precision recompute: 2 pi 6771 cosh^5(0.6 log 3 + 0.1475) / log(3)^5 + 11.7
  EXPECT_NEAR(r.bounds.at("geometric_L_sq"), 4.0 * 116321.040306330670, 1e-7);
  EXPECT_NEAR(r.bounds.at("derivative_L_sq"), 4.0 * 93.0278211739233664, 1e-10);
  EXPECT_NEAR(r.bounds.at("required_L_sq"), 465284.161225322681, 1e-7);
  EXPECT_EQ(r.binding_constraint, "geometric_L_sq");
  EXPECT_TRUE(r.certified());
  EXPECT_FALSE(certify_fill_bilip(fill(Regime::tame, kLog3, 2.0, 465284.0)).certified());
}

TEST(FillBilip, LargeJLimit) {
  const double geo = geometric_fill_lsq(0.8);
  const double req = required_fill_lsq(Regime::tame, 0.8, 1e300);
  EXPECT_EQ(req, 4.0 * geo);
  EXPECT_NEAR(derivative_fill_lsq(0.8, 1e300), 11.7, 0.2);
  EXPECT_GT(derivative_fill_lsq(0.8, 1e300), 11.7);
}

TEST(FillBilip, FiniteIsQuarterOfTame) {
  for (double eps : {0.1, 0.4, kLog3})
    for (double J : {1.1, 3.0})
      EXPECT_EQ(required_fill_lsq(Regime::finite_volume, eps, J) * 4.0, required_fill_lsq(Regime::tame, eps, J));
}

TEST(FillBilip, NonStrictBoundary) {
  const double req = required_fill_lsq(Regime::finite_volume, 1.0, 1.5);
  // build L with L^2 >= req despite sqrt rounding
  double l = std::sqrt(req);
  while (l * l < req) l = std::nextafter(l, 1e300);
  auto q = fill(Regime::finite_volume, 1.0, 1.5, 1.0);
  q.L_total = NormalizedLength(l);
  EXPECT_TRUE(certify_fill_bilip(q).certified());
  q.L_total = NormalizedLength(std::nextafter(std::sqrt(req), 0.0) * (1 - 1e-12));
  EXPECT_FALSE(certify_fill_bilip(q).certified());
}

TEST(FillBilip, SolveForJAndSlopeInput) {
  auto q = fill(Regime::finite_volume, 0.5, std::nullopt, 1.0);
  q.L_total.reset();
  // one slope of normalized length 200 on a square cusp
  q.slopes.push_back({CuspCrossSection{{1.0, 0.0}, {0.0, 1.0}, std::nullopt}, {200, 1}});
  const auto r = certify_fill_bilip(q);
  const double l_sq = 200.0 * 200.0 + 1.0;
  EXPECT_NEAR(r.bounds.at("L_sq"), l_sq, 1e-9);
  EXPECT_FALSE(r.certified());  // geometric branch needs ~ 1.6e5 at eps = 0.5
  EXPECT_EQ(r.bounds.count("min_J"), 0u);
  q.slopes[0].slope = {2000, 1};
  const auto ok = certify_fill_bilip(q);
  EXPECT_TRUE(ok.certified());
  const double lsq2 = 2000.0 * 2000.0 + 1.0;
  EXPECT_NEAR(ok.bounds.at("min_J"),
              std::exp(2 * std::numbers::pi * 11.35 / (std::pow(0.5, 2.5) * (lsq2 - 11.7))), 1e-12);
}

// ----------------------------------------------------------------------------
// Short geodesics under drilling
// ----------------------------------------------------------------------------

TEST(ShortDrill, TameCornerReproducesPrintedConstants) {
  const auto r = certify_short_drill(short_drill(Regime::tame, 0.0735 / 4, 0.0735));
  EXPECT_GE(r.bounds.at("z_min"), 0.6299);
  EXPECT_NEAR(r.bounds.at("z_min"), 0.629946076429079093, 1e-12);
  EXPECT_LE(r.bounds.at("dhyp_bound"), 0.6827);
  EXPECT_NEAR(r.bounds.at("dhyp_bound"), 0.682554001768748778, 1e-12);
  EXPECT_LE(r.bounds.at("ratio_hi"), 1.9793);
  EXPECT_NEAR(r.bounds.at("ratio_hi"), 1.97892546266225318, 1e-12);
  EXPECT_LE(r.bounds.at("torsion_delta"), 0.05417);
  EXPECT_NEAR(r.bounds.at("torsion_delta"), 0.0541548264631121355, 1e-13);
  // ell = 0.018375 sits exactly on the strict boundary
  EXPECT_FALSE(r.certified());
  EXPECT_EQ(r.binding_constraint, "link_length");
}

TEST(ShortDrill, TameStrictBoundary) {
  EXPECT_FALSE(certify_short_drill(short_drill(Regime::tame, 0.018375, 0.01)).certified());
  EXPECT_TRUE(certify_short_drill(short_drill(Regime::tame, 0.018374, 0.01)).certified());
}

TEST(ShortDrill, TameInterior) {
  const auto r = certify_short_drill(short_drill(Regime::tame, 0.01, 0.05));
  EXPECT_TRUE(r.certified());
  // bisection oracle on z^3 + u z^2 - z + u = 0, then direct F
  const double z = oracle::haze_inv_bisect(2.0 * std::numbers::pi * (0.04 + 0.05 + 1e-5));
  EXPECT_NEAR(r.bounds.at("z_min"), z, 1e-12);
  EXPECT_NEAR(z, 0.812200989927356718, 1e-12);
  const double K = oracle::four_pi_sq() * oracle::bound_F(z, 0.04);
  EXPECT_NEAR(r.bounds.at("dhyp_bound"), K, 1e-12);
  EXPECT_NEAR(K, 0.212673028923576125, 1e-12);
  EXPECT_NEAR(r.bounds.at("ratio_hi"), 1.23698012838947371, 1e-12);
  EXPECT_NEAR(r.bounds.at("torsion_delta"), std::sinh(K) * 0.05, 1e-14);
}

TEST(ShortDrill, FiniteVolume) {
  const auto r = certify_short_drill(short_drill(Regime::finite_volume, 0.01, 0.05));
  EXPECT_TRUE(r.certified());
  EXPECT_NEAR(r.bounds.at("z_min"), 0.880986638632091447, 1e-12);
  EXPECT_NEAR(r.bounds.at("dhyp_bound"), 0.0440964618561700628, 1e-12);
  // corner of the finite hypotheses still clears z > 0.6288
  const double ell = 0.0735, m = 0.0996 - 0.352 * 0.0735;
  const auto c = certify_short_drill(short_drill(Regime::finite_volume, ell, m));
  EXPECT_NEAR(c.bounds.at("z_min"), 0.628837019594153040, 1e-9);
  const auto* zc = c.find_check("z_min");
  ASSERT_NE(zc, nullptr);
  EXPECT_TRUE(zc->pass);
}

TEST(ShortDrill, FailsOutsideDomainWithoutThrowing) {
  const auto r = certify_short_drill(short_drill(Regime::finite_volume, 0.3, 0.2));
  EXPECT_FALSE(r.certified());
  EXPECT_NE(r.find_check("visual_area"), nullptr);
  EXPECT_EQ(r.bounds.count("dhyp_bound"), 0u);
}

TEST(ShortDrill, KMonotoneInLinkLengthAndVanishes) {
  double prev = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double ell = 0.018 * i / 200;
    const double K = certify_short_drill(short_drill(Regime::tame, ell, 0.01)).bounds.at("dhyp_bound");
    ASSERT_GE(K, prev);
    prev = K;
  }
  const double tiny = certify_short_drill(short_drill(Regime::tame, 1e-9, 0.01)).bounds.at("dhyp_bound");
  EXPECT_LT(tiny, 1e-6);
  EXPECT_NEAR(tiny, 1.50966108544979419e-8, 1e-15);
}

TEST(ShortDrill, MissingFields) {
  auto q = short_drill(Regime::tame, 0.01, 0.05);
  q.geodesic.reset();
  EXPECT_EQ(kind_of([&] { certify_short_drill(q); }), ErrorKind::MissingField);
}

TEST(ShortDrill, CrossCheckIsRecorded) {
  const auto r = certify_short_drill(short_drill(Regime::tame, 0.01, 0.05));
  const auto* c = r.find_check("z_min_oracle_agreement");
  ASSERT_NE(c, nullptr);
  EXPECT_LT(c->actual, 1e-10);
  Options no_check;
  no_check.cross_check = false;
  EXPECT_EQ(certify_short_drill(short_drill(Regime::tame, 0.01, 0.05), no_check).find_check("z_min_oracle_agreement"),
            nullptr);
}

// ----------------------------------------------------------------------------
// Short geodesics under filling
// ----------------------------------------------------------------------------

TEST(ShortFill, TameCornerReproducesPrintedConstants) {
  const auto r = certify_short_fill(short_fill(Regime::tame, 512.0 + 1e-9, 0.056));
  EXPECT_GE(r.bounds.at("z_min"), 0.624);
  EXPECT_NEAR(r.bounds.at("z_min"), 0.624107947055023389, 1e-10);
  EXPECT_LE(r.bounds.at("dhyp_bound"), 0.5045);
  EXPECT_NEAR(r.bounds.at("dhyp_bound"), 0.504403425830592011, 1e-10);
  EXPECT_LE(r.bounds.at("ratio_hi"), 1.657);
  EXPECT_NEAR(r.bounds.at("ratio_hi"), 1.65599730050282011, 1e-10);
  EXPECT_LE(r.bounds.at("torsion_delta"), 0.0295);
  EXPECT_NEAR(r.bounds.at("torsion_delta"), 0.0294596842910436203, 1e-11);
  // m = 0.056 is on the strict boundary of the tame hypothesis
  EXPECT_FALSE(r.certified());
  EXPECT_EQ(r.binding_constraint, "geodesic_length");
  EXPECT_TRUE(certify_short_fill(short_fill(Regime::tame, 512.0 + 1e-9, 0.0559)).certified());
}

TEST(ShortFill, TameStrictLsq) {
  auto q = short_fill(Regime::tame, 512.0, 0.01);
  q.L_total = NormalizedLength::from_squared(512.0);
  EXPECT_EQ(q.L_total->squared(), 512.0);
  EXPECT_FALSE(certify_short_fill(q).certified());
  EXPECT_TRUE(certify_short_fill(short_fill(Regime::tame, 512.0001, 0.01)).certified());
}

TEST(ShortFill, FiniteCorner) {
  const auto r = certify_short_fill(short_fill(Regime::finite_volume, 128.0, 0.056));
  EXPECT_TRUE(r.certified());
  EXPECT_NEAR(r.bounds.at("corrected_L_sq"), 113.3, 1e-12);
  EXPECT_GT(r.bounds.at("z_min"), 0.624);
  EXPECT_NEAR(r.bounds.at("dhyp_bound"), 0.504403425830592008, 1e-10);
}

TEST(ShortFill, KDecreasesWithLsqAndVanishes) {
  double prev = 1e300;
  for (int i = 0; i <= 200; ++i) {
    const double l_sq = 513.0 * std::pow(1e6 / 513.0, i / 200.0);
    const double K = certify_short_fill(short_fill(Regime::tame, l_sq, 0.01)).bounds.at("dhyp_bound");
    ASSERT_LE(K, prev);
    prev = K;
  }
  EXPECT_NEAR(prev, 9.62080073194416616e-5, 1e-12);
  EXPECT_LT(prev, 1e-4);
}

TEST(ShortFill, TinyLHasNoBounds) {
  const auto r = certify_short_fill(short_fill(Regime::tame, 40.0, 0.01));
  EXPECT_FALSE(r.certified());
  EXPECT_NE(r.find_check("corrected_L_sq"), nullptr);
}

TEST(ShortFill, DoubleDoubleHalvesL) {
  auto q = short_fill(Regime::finite_volume, 4.0 * 130.0, 0.01);
  q.double_double = true;
  const auto r = certify_short_fill(q);
  EXPECT_NEAR(r.bounds.at("L_sq"), 130.0, 1e-10);
  EXPECT_TRUE(r.certified());
}

// ----------------------------------------------------------------------------
// Hodgson-Kerckhoff, 6-theorem, obstruction, Margulis
// ----------------------------------------------------------------------------

TEST(HkFillable, Threshold) {
  const auto dd = dehncert::cusp::double_double_normalized(NormalizedLength::from_squared(230.08));
  EXPECT_NEAR(dd.value(), std::sqrt(57.52), 1e-14);
  const auto r = hk_fillable(dd);
  EXPECT_TRUE(r.certified());
  EXPECT_EQ(r.bounds.at("core_length_bound"), 0.16);
  EXPECT_TRUE(hk_fillable(NormalizedLength(7.5842)).certified());
  EXPECT_FALSE(hk_fillable(NormalizedLength(7.584)).certified());
  EXPECT_EQ(hk_fillable(NormalizedLength(7.584)).bounds.count("core_length_bound"), 0u);
  EXPECT_TRUE(hk_fillable(NormalizedLength(20.0)).certified());
}

TEST(SixTheorem, SlopesAndMeyerhoffFloor) {
  CertificateQuery q;
  q.theorem = Theorem::six_theorem;
  const CuspCrossSection sq{{1.0, 0.0}, {0.0, 1.0}, std::nullopt};
  q.slopes.push_back({sq, {7, 1}});
  EXPECT_TRUE(certify_six_theorem(q).certified());
  q.slopes[0] = {CuspCrossSection{{6.0, 0.0}, {0.0, 1.0}, std::nullopt}, {1, 0}};
  EXPECT_FALSE(certify_six_theorem(q).certified());
  q.slopes[0] = {CuspCrossSection{{6.0 + 1e-9, 0.0}, {0.0, 1.0}, std::nullopt}, {1, 0}};
  EXPECT_TRUE(certify_six_theorem(q).certified());

  CertificateQuery m;
  m.theorem = Theorem::six_theorem;
  m.L_total = NormalizedLength::from_squared(230.1);
  EXPECT_EQ(kind_of([&] { certify_six_theorem(m); }), ErrorKind::MissingField);
  Options opt;
  opt.assume_meyerhoff = true;
  const auto r = certify_six_theorem(m, opt);
  EXPECT_TRUE(r.certified());
  EXPECT_GT(r.bounds.at("meridian_length_floor"), 14.0);
  ASSERT_FALSE(r.assumptions.empty());
  EXPECT_NE(r.assumptions.front().find("Meyerhoff"), std::string::npos);
}

TEST(Obstruction, CaseTable) {
  EXPECT_NEAR(gauss_bonnet_area(SurfaceKind::sphere, 3), 2 * std::numbers::pi, 1e-15);
  EXPECT_EQ(gauss_bonnet_area(SurfaceKind::disk, 1), 0.0);
  EXPECT_NEAR(gauss_bonnet_area(SurfaceKind::torus, 2), 4 * std::numbers::pi, 1e-15);
  EXPECT_NEAR(gauss_bonnet_area(SurfaceKind::annulus, 1), 2 * std::numbers::pi, 1e-15);

  const auto s = obstruction_area_test({SurfaceKind::sphere, {6.1, 6.1, 6.1}});
  EXPECT_TRUE(s.certified());
  EXPECT_NEAR(s.bounds.at("cusp_area_lower"), 6.1 * std::numbers::pi, 1e-13);
  EXPECT_TRUE(obstruction_area_test({SurfaceKind::disk, {6.1}}).certified());
  EXPECT_FALSE(obstruction_area_test({SurfaceKind::torus, {5.9}}).certified());
  EXPECT_TRUE(obstruction_area_test({SurfaceKind::torus, {}}).certified());
  EXPECT_FALSE(obstruction_area_test({SurfaceKind::torus, {6.0}}).certified());
  const auto impossible = obstruction_area_test({SurfaceKind::sphere, {1.0}});
  EXPECT_TRUE(impossible.certified());
  EXPECT_FALSE(impossible.assumptions.empty());
}

TEST(Obstruction, AllHorocyclesAboveSixContradict) {
  for (auto kind : {SurfaceKind::sphere, SurfaceKind::disk, SurfaceKind::torus, SurfaceKind::annulus})
    for (int m = 0; m <= 20; ++m)
      ASSERT_TRUE(obstruction_area_test({kind, std::vector<double>(m, 6.0 + 1e-6)}).certified())
          << to_string(kind) << " m=" << m;
}

TEST(Margulis, Floors) {
  EXPECT_NEAR(margulis_floor(VolumeRegime::infinite), 1.0986122886681098, 1e-15);
  EXPECT_EQ(margulis_floor(VolumeRegime::finite), 0.104);
  EXPECT_LT(margulis_floor(VolumeRegime::finite), constants::kMargulisWeeksUpper);
  EXPECT_GT(margulis_floor(VolumeRegime::infinite), constants::kMargulisWeeksUpper);
}

TEST(Report, VerdictMatchesChecks) {
  const auto r = certify_short_drill(short_drill(Regime::tame, 0.01, 0.05));
  bool all = true;
  for (const auto& c : r.checks) {
    EXPECT_EQ(c.pass, holds(c.actual, c.relation, c.required));
    all = all && c.pass;
  }
  EXPECT_EQ(all, r.certified());
  for (const auto& [k, v] : r.bounds) EXPECT_TRUE(std::isfinite(v)) << k;
}
