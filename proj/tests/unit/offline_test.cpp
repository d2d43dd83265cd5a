#include <gtest/gtest.h>

#include <cmath>

#include "ehsched/analysis.hpp"
#include "ehsched/error.hpp"
#include "ehsched/offline.hpp"
#include "reference.hpp"

namespace ehsched {
namespace {

TEST(Offline, TightInstance) {
  const auto sol = offline_completion_time(tight_instance());
  EXPECT_NEAR(sol.completion_time, 1.0, 1e-5);
  EXPECT_LE(sol.feasibility_gap, 1e-6);
}

TEST(Offline, SingleEnergyJumpMatchesClosedForm) {
  // All energy and data at t = 0: constant power E/T is optimal.
  const auto s = Scenario::make(50.0, CumulativeCurve::parse("jump:(0,3)", 4.0),
                                CumulativeCurve::parse("jump:(0,50)", 4.0));
  for (const double t : {0.25, 0.5, 1.0, 3.0}) {
    EXPECT_NEAR(max_throughput_by(t, s), t * oracle::log2_rate(3.0 / t), 1e-9);
  }
}

TEST(Offline, Fig1IsDataLimited) {
  const auto s = Scenario::make(
      2.5, CumulativeCurve::parse("poly:(0,0,100)@[0,2)", 2.0),
      CumulativeCurve::parse("expc:(1,1,3)@[0,2)", 2.0));
  const auto sol = offline_completion_time(s);
  EXPECT_NEAR(sol.completion_time, oracle::kFig1DataTime, 1e-4);
  EXPECT_GE(sol.completion_time, oracle::kFig1DataTime - 1e-6);
}

TEST(Offline, TwoJumpsWaterFilling) {
  // 2 J at 0, 6 J at 1, data ample. Deadline 2: the direct solution keeps
  // power 2 W on [0,1) and 6 W on [1,2).
  const auto s = Scenario::make(
      100.0, CumulativeCurve::parse("jump:(0,2) jump:(1,6)", 2.0),
      CumulativeCurve::parse("jump:(0,100)", 2.0));
  const auto plan = plan_max_throughput(2.0, s);
  EXPECT_NEAR(plan.bits, std::log2(3.0) + std::log2(7.0), 1e-9);
  // Energy 4 at 0 and 4 at 1: constant 4 W is feasible and optimal.
  const auto s2 = Scenario::make(
      100.0, CumulativeCurve::parse("jump:(0,4) jump:(1,4)", 2.0),
      CumulativeCurve::parse("jump:(0,100)", 2.0));
  EXPECT_NEAR(max_throughput_by(2.0, s2), 2.0 * std::log2(5.0), 1e-9);
}

TEST(Offline, PlanIsCausalAndNondecreasing) {
  const auto s = Scenario::make(
      6.0, CumulativeCurve::parse("jump:(0,1) jump:(0.7,5) poly:(0,2)@[1,3)", 3.0),
      CumulativeCurve::parse("jump:(0,2) jump:(1.5,4)", 3.0));
  const auto plan = plan_max_throughput(3.0, s);
  double prev = 0.0;
  for (const auto& x : plan.trajectory.samples) {
    EXPECT_LE(x.energy_used, s.energy_at(x.time) + 1e-9);
    EXPECT_LE(x.data_sent, s.data_at(x.time) + 1e-9);
    if (x.phase == Phase::kTx) {
      EXPECT_GE(x.power, prev - 1e-9);
      prev = x.power;
    }
  }
}

TEST(Offline, AgreesWithBruteForce) {
  const auto s = Scenario::make(
      5.0, CumulativeCurve::parse("jump:(0,1) jump:(1,4) jump:(2,2)", 3.0),
      CumulativeCurve::parse("jump:(0,1.5) jump:(1,1) jump:(2,3)", 3.0));
  const double exact = max_throughput_by(3.0, s);
  const double brute = brute_force_throughput(3.0, s, 3, 60);
  EXPECT_LE(brute, exact + 1e-9);
  EXPECT_GE(brute, exact * 0.99);
}

TEST(Offline, Errors) {
  auto s = tight_instance();
  s.bits = 2.0;
  s.horizon = 0.5;  // 3 J cannot deliver 2 bits within 0.5 s
  EXPECT_THROW(offline_completion_time(s), InfeasibleError);
  EXPECT_THROW(max_throughput_by(0.0, tight_instance()), DomainError);
  EXPECT_THROW(max_throughput_by(5.0, tight_instance()), DomainError);
  EXPECT_THROW(brute_force_throughput(1.0, tight_instance(), 5, 10),
               DomainError);
  const auto smooth = Scenario::make(
      1.0, CumulativeCurve::parse("poly:(0,1)@[0,1)", 1.0),
      CumulativeCurve::parse("jump:(0,1)", 1.0));
  EXPECT_THROW(brute_force_throughput(1.0, smooth, 2, 10), DomainError);
}

}  // namespace
}  // namespace ehsched
