#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "ehsched/error.hpp"
#include "ehsched/rate_function.hpp"
#include "reference.hpp"

namespace ehsched {
namespace {

std::vector<RateFunction> families() {
  return {RateFunction::log2_1p(), RateFunction::scaled_log(0.5, 2.0),
          RateFunction::scaled_log(2.0, 0.5), RateFunction::sqrt(),
          RateFunction::tabulated({1.0, 3.0, 7.0}, {1.0, 2.0, 3.0})};
}

std::vector<double> sample_powers() {
  std::vector<double> out;
  for (double p = 1e-3; p < 200.0; p *= 1.37) out.push_back(p);
  return out;
}

TEST(RateFunction, TrivialValues) {
  const auto r = RateFunction::log2_1p();
  EXPECT_DOUBLE_EQ(r.rate(1.0), 1.0);
  EXPECT_DOUBLE_EQ(r.rate(3.0), 2.0);
  for (const auto& f : families()) EXPECT_EQ(f.rate(0.0), 0.0);
}

TEST(RateFunction, NegativePowerIsDomainError) {
  for (const auto& f : families()) {
    EXPECT_THROW(f.rate(-1e-9), DomainError);
    EXPECT_THROW(f.rate(std::numeric_limits<double>::quiet_NaN()), DomainError);
  }
}

TEST(RateFunction, StrictlyIncreasingAndConcave) {
  const auto ps = sample_powers();
  for (const auto& f : families()) {
    SCOPED_TRACE(f.to_string());
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
      EXPECT_LT(f.rate(ps[i]), f.rate(ps[i + 1]));
      // Tabulated rates are linear up to the first knot.
      if (f.kind() == RateFunction::Kind::kTabulated && ps[i] < 1.0) continue;
      EXPECT_GT(f.rate_per_power(ps[i]), f.rate_per_power(ps[i + 1]));
    }
    if (f.kind() == RateFunction::Kind::kTabulated) continue;
    for (std::size_t i = 0; i + 2 < ps.size(); ++i) {
      const double a = ps[i];
      const double b = ps[i + 2];
      EXPECT_GT(f.rate(0.5 * (a + b)), 0.5 * (f.rate(a) + f.rate(b)));
    }
  }
}

TEST(RateFunction, TabulatedConcaveAcrossKnots) {
  const auto f = RateFunction::tabulated({1.0, 3.0, 7.0}, {1.0, 2.0, 3.0});
  EXPECT_GT(f.rate(2.0), 0.5 * (f.rate(1.0) + f.rate(3.0)) - 1e-15);
  EXPECT_GT(f.rate(3.0), 0.5 * (f.rate(1.0) + f.rate(5.0)));
  EXPECT_THROW(RateFunction::tabulated({1.0, 2.0}, {1.0, 3.0}), DomainError);
  EXPECT_THROW(RateFunction::tabulated({2.0, 1.0}, {1.0, 2.0}), DomainError);
}

TEST(RateFunction, DerivativeMatchesFiniteDifference) {
  for (const auto& f : families()) {
    if (f.kind() == RateFunction::Kind::kTabulated) continue;
    SCOPED_TRACE(f.to_string());
    for (const double p : sample_powers()) {
      const double fd = oracle::central_difference(
          [&](double x) { return f.rate(x); }, p, 1e-5 * p);
      EXPECT_NEAR(f.derivative(p), fd, 1e-6 * std::abs(fd));
    }
  }
}

TEST(RateFunction, SlopeAtOrigin) {
  EXPECT_NEAR(RateFunction::log2_1p().slope_at_origin(), oracle::kInvLn2, 1e-15);
  EXPECT_NEAR(RateFunction::scaled_log(0.5, 2.0).slope_at_origin(),
              oracle::kInvLn2, 1e-15);
  EXPECT_TRUE(std::isinf(RateFunction::sqrt().slope_at_origin()));
  EXPECT_DOUBLE_EQ(
      RateFunction::tabulated({1.0, 3.0}, {1.0, 2.0}).slope_at_origin(), 1.0);
  // The limit of r(p)/p from the right.
  const auto r = RateFunction::log2_1p();
  EXPECT_NEAR(r.rate_per_power(1e-9), r.slope_at_origin(), 1e-8);
}

TEST(RateFunction, SolveRatePerPower) {
  const auto r = RateFunction::log2_1p();
  EXPECT_NEAR(r.solve_rate_per_power(2.0 / 3.0), 3.0, 1e-12);
  EXPECT_NEAR(r.solve_rate_per_power(1.0), 1.0, 1e-12);
  EXPECT_NEAR(r.solve_rate_per_power(0.5), oracle::kPerPowerHalf, 1e-11);
  EXPECT_NEAR(r.solve_rate_per_power(0.5), oracle::log2_per_power(0.5), 1e-9);
  EXPECT_THROW(r.solve_rate_per_power(oracle::kInvLn2), InfeasibleError);
  EXPECT_THROW(r.solve_rate_per_power(0.0), DomainError);
  EXPECT_THROW(r.solve_rate_per_power(-1.0), DomainError);
}

TEST(RateFunction, SolveRatePerPowerRoundTrip) {
  for (const auto& f : families()) {
    SCOPED_TRACE(f.to_string());
    for (const double p : sample_powers()) {
      const double c = f.rate_per_power(p);
      if (f.kind() == RateFunction::Kind::kTabulated && p <= 1.0) continue;
      EXPECT_NEAR(f.solve_rate_per_power(c), p, 1e-9 * std::max(1.0, p));
    }
  }
}

TEST(RateFunction, PowerForRateInvertsRate) {
  for (const auto& f : families()) {
    for (const double p : sample_powers()) {
      EXPECT_NEAR(f.power_for_rate(f.rate(p)), p, 1e-9 * std::max(1.0, p));
    }
  }
}

TEST(RateFunction, ConstantPowerCompletion) {
  const auto r = RateFunction::log2_1p();
  EXPECT_NEAR(r.constant_power_completion(3.0, 2.0), 1.0, 1e-12);
  EXPECT_NEAR(r.constant_power_completion(3.0, 1.0), oracle::kCompletionE3B1,
              1e-12);
  EXPECT_NEAR(r.constant_power_completion(3.0, 1.0),
              oracle::log2_completion(3.0, 1.0), 1e-9);
  // B must stay below E r'(0) = 3/ln 2.
  EXPECT_THROW(r.constant_power_completion(3.0, oracle::kThreeOverLn2),
               InfeasibleError);
  EXPECT_THROW(r.constant_power_completion(0.0, 1.0), DomainError);
  // sqrt has no upper limit: T sqrt(E/T) = sqrt(E T).
  EXPECT_NEAR(RateFunction::sqrt().constant_power_completion(4.0, 6.0), 9.0,
              1e-9);
}

TEST(RateFunction, ParseRoundTrip) {
  for (const auto& f : families()) {
    EXPECT_EQ(RateFunction::parse(f.to_string()), f);
  }
  EXPECT_THROW(RateFunction::parse("cubic"), DomainError);
  EXPECT_THROW(RateFunction::parse("scaled_log:1"), DomainError);
}

}  // namespace
}  // namespace ehsched
