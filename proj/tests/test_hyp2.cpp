#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dehncert/hyp2.hpp"
#include "oracles.hpp"

using namespace dehncert::hyp2;
using dehncert::Error;
using dehncert::ErrorKind;

TEST(DistComplexLengths, IdenticalPointsAreAtDistanceZero) {
  const auto a = ComplexLength::make(0.05, 0.3);
  EXPECT_EQ(dist_complex_lengths(a, a), 0.0);
}

TEST(DistComplexLengths, VerticalGeodesicIsLogRatio) {
  EXPECT_NEAR(dist_complex_lengths({0.1, 0.0}, {0.2, 0.0}), std::log(2.0), 1e-15);
}

TEST(DistComplexLengths, HandEvaluatedArccosh) {
  // 1 + (0.02^2 + 0.01^2) / (2 * 0.05 * 0.06) = 13/12, and arccosh(13/12) = ln(3/2).
  const double d = dist_complex_lengths({0.05, 0.10}, {0.06, 0.12});
  EXPECT_NEAR(d, std::log(1.5), 1e-12);
  EXPECT_NEAR(d, oracle::dist_acosh(0.05, 0.10, 0.06, 0.12), 1e-12);
}

TEST(DistComplexLengths, RejectsNonPositiveLength) {
  try {
    dist_complex_lengths({0.0, 0.0}, {1.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPositiveLength);
  }
  EXPECT_THROW(ComplexLength::make(-1.0), Error);
}

TEST(DistComplexLengths, AgreesWithArccoshOracle) {
  auto gen = oracle::rng(11);
  std::uniform_real_distribution<double> len(1e-3, 2.0), tau(-3.0, 3.0);
  for (int i = 0; i < 5000; ++i) {
    const ComplexLength a{len(gen), tau(gen)}, b{len(gen), tau(gen)};
    const double ref = oracle::dist_acosh(a.length, a.torsion, b.length, b.torsion);
    ASSERT_NEAR(dist_complex_lengths(a, b), ref, 1e-12 * std::max(1.0, ref));
  }
}

TEST(DistComplexLengths, SymmetryAndTriangleInequality) {
  auto gen = oracle::rng(12);
  std::uniform_real_distribution<double> len(1e-3, 1.0), tau(-1.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const ComplexLength a{len(gen), tau(gen)}, b{len(gen), tau(gen)}, c{len(gen), tau(gen)};
    ASSERT_NEAR(dist_complex_lengths(a, b), dist_complex_lengths(b, a), 1e-12);
    ASSERT_LE(dist_complex_lengths(a, c), dist_complex_lengths(a, b) + dist_complex_lengths(b, c) + 1e-10);
  }
}

TEST(DistComplexLengths, PureScalingIsLogOfFactor) {
  auto gen = oracle::rng(13);
  std::uniform_real_distribution<double> len(1e-3, 1.0), logc(-5.0, 5.0);
  for (int i = 0; i < 2000; ++i) {
    const double l = len(gen), c = std::exp(logc(gen));
    ASSERT_NEAR(dist_complex_lengths({l, 0.0}, {c * l, 0.0}), std::abs(std::log(c)), 1e-12);
  }
}

TEST(BoundFromDhyp, ZeroDistance) {
  const auto b = bound_from_dhyp(0.0, 0.1);
  EXPECT_EQ(b.ratio_hi, 1.0);
  EXPECT_EQ(b.ratio_lo, 1.0);
  EXPECT_EQ(b.torsion_delta, 0.0);
}

TEST(BoundFromDhyp, PrintedDrillingConstants) {
  const auto b = bound_from_dhyp(0.6827, 0.0735);
  EXPECT_LE(b.ratio_hi, 1.9793);
  EXPECT_LE(b.torsion_delta, 0.05417);
  EXPECT_NEAR(b.ratio_hi, 1.9793, 5e-4);
  EXPECT_NEAR(b.torsion_delta, 0.05417, 5e-4);
}

TEST(BoundFromDhyp, LogTwoIsExact) {
  // sinh(ln 2) = 3/4
  const auto b = bound_from_dhyp(std::log(2.0), 0.05);
  EXPECT_NEAR(b.ratio_hi, 2.0, 1e-15);
  EXPECT_NEAR(b.ratio_lo, 0.5, 1e-15);
  EXPECT_NEAR(b.torsion_delta, 0.0375, 1e-15);
}

TEST(BoundFromDhyp, MonotoneInK) {
  double prev_ratio = 0.0, prev_tors = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const auto b = bound_from_dhyp(i * 0.003, 0.07);
    ASSERT_GE(b.ratio_hi, prev_ratio);
    ASSERT_GE(b.torsion_delta, prev_tors);
    prev_ratio = b.ratio_hi;
    prev_tors = b.torsion_delta;
  }
}

TEST(BoundFromDhyp, RejectsBadInputs) {
  EXPECT_THROW(bound_from_dhyp(-0.1, 0.1), Error);
  EXPECT_THROW(bound_from_dhyp(0.1, 0.0), Error);
}
