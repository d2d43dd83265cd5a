#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "ehsched/analysis.hpp"
#include "ehsched/error.hpp"
#include "ehsched/scenario_io.hpp"

namespace ehsched {
namespace {

const std::string kFig1 =
    "# comment line\n"
    "version = 1\n"
    "B0 = 2.5\n"
    "horizon = 2\n"
    "energy = poly:(0,0,100)@[0,2)\n"
    "data = expc:(1,1,3)@[0,2)   # trailing comment\n"
    "rate = log2_1p\n";

TEST(ScenarioIo, ParsesDefaults) {
  const auto s = parse_scenario(kFig1);
  EXPECT_DOUBLE_EQ(s.bits, 2.5);
  EXPECT_DOUBLE_EQ(s.horizon, 2.0);
  EXPECT_DOUBLE_EQ(s.step, 2.0 * Scenario::kDefaultStepFraction);
  EXPECT_DOUBLE_EQ(s.tol_bits, 1e-9);
  EXPECT_DOUBLE_EQ(s.energy_at(1.0), 100.0);
  EXPECT_EQ(s.rate, RateFunction::log2_1p());
}

TEST(ScenarioIo, RoundTrip) {
  auto s = parse_scenario(kFig1);
  s.step = 1e-3;
  s.tol_bits = 1e-7;
  s.rate = RateFunction::tabulated({1.0, 2.0}, {0.75, 1.25});
  EXPECT_EQ(parse_scenario(serialize_scenario(s)), s);
  const auto tight = tight_instance();
  EXPECT_EQ(parse_scenario(serialize_scenario(tight)), tight);
}

TEST(ScenarioIo, UnknownFieldCarriesLineNumber) {
  try {
    parse_scenario("version = 1\nB0 = 1\nfoo = 3\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("foo"), std::string::npos);
  }
}

TEST(ScenarioIo, MissingFieldIsNamed) {
  try {
    parse_scenario("version = 1\nB0 = 1\nhorizon = 1\nenergy = jump:(0,1)\n"
                   "rate = sqrt\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("data"), std::string::npos);
  }
}

TEST(ScenarioIo, Errors) {
  EXPECT_THROW(parse_scenario(kFig1 + "B0 = 3\n"), ParseError);
  EXPECT_THROW(parse_scenario("version = 2\n"), ParseError);
  EXPECT_THROW(parse_scenario("B0 2.5\n"), ParseError);
  std::string bad = kFig1;
  bad.replace(bad.find("2.5"), 3, "abc");
  EXPECT_THROW(parse_scenario(bad), ParseError);
  // Curve errors are reported on the line that holds the curve.
  try {
    std::string dec = kFig1;
    dec.replace(dec.find("poly:(0,0,100)"), 14, "poly:(5,-1)");
    parse_scenario(dec);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.invariant(), "monotonicity");
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos);
  }
  EXPECT_THROW(load_scenario("/nonexistent/x.scn"), Error);
}

TEST(Scenario, DataCappedAtB0) {
  const auto s = parse_scenario(kFig1);
  EXPECT_DOUBLE_EQ(s.data_at(1.5), 2.5);
  EXPECT_NEAR(s.data_at(0.5), std::exp(0.125), 1e-15);
}

TEST(Scenario, ValidateReachability) {
  auto s = tight_instance();
  s.bits = 3.0;
  try {
    s.validate();
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.invariant(), "reachability");
  }
  s = tight_instance();
  s.step = 0.0;
  EXPECT_THROW(s.validate(), ValidationError);
  s = tight_instance();
  s.tol_bits = 0.0;
  EXPECT_THROW(s.validate(), ValidationError);
}

}  // namespace
}  // namespace ehsched
