#include <gtest/gtest.h>

#include <cmath>

#include "ehsched/curve.hpp"
#include "ehsched/error.hpp"

namespace ehsched {
namespace {

TEST(Curve, PolynomialAndJumps) {
  const CumulativeCurve c({Segment{0.0, 2.0, Polynomial{{0.0, 0.0, 100.0}}}},
                          {Jump{1.0, 5.0}}, 3.0);
  EXPECT_DOUBLE_EQ(c(0.5), 25.0);
  EXPECT_DOUBLE_EQ(c.left_limit(1.0), 100.0);
  EXPECT_DOUBLE_EQ(c(1.0), 105.0);
  // Holds its end value after the segment.
  EXPECT_DOUBLE_EQ(c(2.5), 405.0);
  EXPECT_DOUBLE_EQ(c.left_limit(0.0), 0.0);
}

TEST(Curve, ExpPower) {
  const auto c = CumulativeCurve::parse("expc:(1,1,3)@[0,2)", 2.0);
  EXPECT_DOUBLE_EQ(c(0.0), 1.0);
  EXPECT_NEAR(c(1.0), std::exp(1.0), 1e-15);
}

TEST(Curve, JumpAtZeroIsIncluded) {
  const auto c = CumulativeCurve::parse("jump:(0,3)", 4.0);
  EXPECT_DOUBLE_EQ(c(0.0), 3.0);
  EXPECT_DOUBLE_EQ(c(4.0), 3.0);
}

TEST(Curve, SameTimeJumpsMerge) {
  const auto c = CumulativeCurve::parse("jump:(1,2) jump:(1,3)", 2.0);
  ASSERT_EQ(c.jumps().size(), 1U);
  EXPECT_DOUBLE_EQ(c(1.0), 5.0);
}

TEST(Curve, RejectsDecreasingCurves) {
  try {
    CumulativeCurve::parse("poly:(5,-1)@[0,2)", 2.0);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.invariant(), "monotonicity");
  }
  EXPECT_THROW(CumulativeCurve::parse("jump:(1,-1)", 2.0), ValidationError);
  // Drop at a segment boundary.
  EXPECT_THROW(CumulativeCurve::parse("poly:(0,1)@[0,1) poly:(0.5)@[1,2)", 2.0),
               ValidationError);
  EXPECT_THROW(CumulativeCurve::parse("poly:(0,1)@[1,0.5)", 2.0),
               ValidationError);
}

TEST(Curve, DomainOutsideHorizon) {
  const auto c = CumulativeCurve::constant(1.0, 2.0);
  EXPECT_THROW(c(-0.1), DomainError);
  EXPECT_THROW(c(2.1), DomainError);
}

TEST(Curve, Breakpoints) {
  const auto c =
      CumulativeCurve::parse("poly:(0,1)@[0,1) poly:(1)@[1,3) jump:(2,1)", 4.0);
  EXPECT_EQ(c.breakpoints(), (std::vector<double>{0.0, 1.0, 2.0, 3.0, 4.0}));
}

TEST(Curve, DiscretizeStaysBelowAndAgreesAtSamples) {
  const auto c = CumulativeCurve::parse("expc:(1,1,3)@[0,2)", 2.0);
  const auto d = c.discretize(0.25);
  for (int k = 0; k <= 8; ++k) {
    const double t = 0.25 * k;
    EXPECT_NEAR(d(t), c(t), 1e-12 * c(t));
  }
  for (double t = 0.0; t <= 2.0; t += 0.01) EXPECT_LE(d(t), c(t) + 1e-12);
  EXPECT_DOUBLE_EQ(d(0.3), c(0.25));
  EXPECT_THROW(c.discretize(0.0), DomainError);
}

TEST(Curve, ScaledAndStringRoundTrip) {
  const auto c = CumulativeCurve::parse(
      "poly:(0,0.5,2)@[0,1) expc:(2.5,0.25,1.5)@[1,3) jump:(0.5,1.25)", 3.0);
  EXPECT_EQ(CumulativeCurve::parse(c.to_string(), 3.0), c);
  const auto s = c.scaled(2.0);
  for (double t = 0.0; t <= 3.0; t += 0.1) EXPECT_NEAR(s(t), 2.0 * c(t), 1e-12);
}

TEST(Curve, ParseErrors) {
  EXPECT_THROW(CumulativeCurve::parse("", 1.0), ParseError);
  EXPECT_THROW(CumulativeCurve::parse("poly:(1,2@[0,1)", 1.0), ParseError);
  EXPECT_THROW(CumulativeCurve::parse("spline:(1)@[0,1)", 1.0), ParseError);
  EXPECT_THROW(CumulativeCurve::parse("expc:(1,2)@[0,1)", 1.0), ParseError);
  EXPECT_THROW(CumulativeCurve::parse("jump:(x,1)", 1.0), ParseError);
}

}  // namespace
}  // namespace ehsched
