#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ehsched/offline.hpp"
#include "ehsched/online.hpp"
#include "ehsched/scenario.hpp"

namespace ehsched {

/// One checked claim. `slack` is the margin by which it holds (negative when
/// violated), in the claim's own unit.
struct InvariantVerdict {
  std::string name;
  bool passed = false;
  double slack = 0.0;
};

/// Completion times of the offline optimum and both online policies.
/// Online times are NaN when the policy did not finish by the horizon.
struct CompetitiveReport {
  double t_off = 0.0;
  double t_on1 = 0.0;
  double t_on2 = 0.0;
  double ratio1 = 0.0;
  double ratio2 = 0.0;
  double t_s1 = 0.0;
  double t_s2 = 0.0;
  /// Time slack granted to discretization: online step + offline grid step.
  double time_tolerance = 0.0;
  double dominance_max_violation = 0.0;  // max_t B_on2(t) - B_on1(t), bits
  std::vector<InvariantVerdict> verdicts;

  bool passed() const;
  const InvariantVerdict* find(const std::string& name) const;
};

/// Everything a comparison produces, for callers that also want the curves.
struct Comparison {
  OfflineSolution offline;
  PolicyTrajectory alg1;
  PolicyTrajectory alg2;
  CompetitiveReport report;
};

/// Runs the offline solver and both online policies and checks: the ratio-2
/// bound, Alg-2 power monotonicity, waiting-time ordering, dominance of
/// Alg 1 over Alg 2 in delivered data, and causality of all three
/// trajectories.
Comparison compare(const Scenario& scenario, const OfflineOptions& options = {});

CompetitiveReport competitive_report(const Scenario& scenario,
                                     const OfflineOptions& options = {});

/// 3 J and 2 bits available at t = 0 under log2(1 + p): the offline optimum
/// finishes at 1 s and Algorithm 2 at 2 s.
Scenario tight_instance();

/// Randomized scenario generator parameters.
struct ScenarioFamily {
  std::uint64_t seed = 42;
  int count = 200;
  double horizon = 4.0;
  int max_poly_degree = 3;
  int max_jumps = 5;
  double energy_scale = 20.0;  // joules
  double data_scale = 10.0;    // bits
  /// Both curves are a single jump each (the structure of the tight
  /// instance, shifted and scaled at random).
  bool single_jump_only = false;
  /// Appends the hard-coded tight instance (when count > 0).
  bool include_tight_instance = true;
  std::vector<RateFunction> rates = {RateFunction::log2_1p(),
                                     RateFunction::sqrt(),
                                     RateFunction::scaled_log(2.0, 0.5)};
};

struct GeneratedScenario {
  std::string label;  // decimal seed, or "tight"
  Scenario scenario;
};

/// Deterministic in the family; rejects (never repairs) invalid draws.
std::vector<GeneratedScenario> generate_scenarios(const ScenarioFamily& family);

struct SweepEntry {
  std::string label;
  std::optional<CompetitiveReport> report;
  std::string error;  // set when a solver threw
  bool passed = false;
};

struct SweepSummary {
  std::vector<SweepEntry> entries;  // in generation order
  int pass_count = 0;
  int fail_count = 0;
  double worst_ratio2 = 0.0;
  double worst_dominance_violation = 0.0;
  double worst_slack = 0.0;  // smallest slack over all verdicts
  std::string worst_verdict;
  std::vector<std::string> failing;  // labels

  bool passed() const { return fail_count == 0; }
};

/// Evaluates every generated scenario; failures are collected, not thrown.
/// `threads` = 0 uses the hardware concurrency.
SweepSummary property_sweep(const ScenarioFamily& family,
                            const OfflineOptions& options = {},
                            unsigned threads = 0);

/// `seed,T_off,T_on1,T_on2,ratio1,ratio2,verdicts`
void write_sweep_csv(std::ostream& out, const SweepSummary& summary);
/// `PASS ...` or `FAIL ...` with the worst slack.
std::string verdict_line(const SweepSummary& summary);

struct DiscretizationRow {
  double period = 0.0;  // 0 for the undiscretized scenario
  std::optional<double> t_off;
  std::optional<double> t_on2;
  std::string error;
};

/// Replaces both curves by their staircase at each period and recomputes
/// the offline optimum and Algorithm 2. The first row is the original.
std::vector<DiscretizationRow> discretization_study(
    const Scenario& scenario, std::span<const double> periods,
    const OfflineOptions& options = {});

/// `period,T_off,T_on2,error`
void write_discretization_csv(std::ostream& out,
                              const std::vector<DiscretizationRow>& rows);

}  // namespace ehsched
