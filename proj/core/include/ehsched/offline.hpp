#pragma once

#include <cstddef>

#include "ehsched/scenario.hpp"
#include "ehsched/trajectory.hpp"

namespace ehsched {

inline constexpr std::size_t kDefaultOfflineGrid = 2000;

/// Best schedule under full knowledge of both arrival curves up to a
/// deadline, on a grid of n_grid uniform slots plus every curve breakpoint.
struct ThroughputPlan {
  double deadline = 0.0;
  double bits = 0.0;  // total data delivered by the deadline
  PolicyTrajectory trajectory;
};

/// Maximum data deliverable by T subject to energy and data causality
/// checked at every grid point.
///
/// The optimum has nondecreasing power, and it is the lowest path from the
/// origin that touches one of the two cumulative constraints at each power
/// increase: from the current grid point, take the largest constant power
/// allowed by every later energy constraint and every later data constraint,
/// hold it until the most restrictive constraint becomes tight, and repeat.
ThroughputPlan plan_max_throughput(double deadline, const Scenario& scenario,
                                   std::size_t n_grid = kDefaultOfflineGrid);

double max_throughput_by(double deadline, const Scenario& scenario,
                         std::size_t n_grid = kDefaultOfflineGrid);

struct OfflineSolution {
  double completion_time = 0.0;
  PolicyTrajectory trajectory;
  double grid_step = 0.0;
  double feasibility_gap = 0.0;  // B0 minus data delivered at completion
};

struct OfflineOptions {
  std::size_t grid = kDefaultOfflineGrid;
  /// Bisection stops when the bracket is narrower than this times the
  /// horizon.
  double time_tolerance = 1e-6;
};

/// Minimum completion time: bisection on the deadline between the first
/// instant both curves are positive and the horizon. Throws InfeasibleError
/// when B0 cannot be delivered within the horizon.
OfflineSolution offline_completion_time(const Scenario& scenario,
                                        const OfflineOptions& options = {});

/// Exhaustive search over one constant power per epoch, for scenarios whose
/// curves are piecewise constant with at most `epochs` (<= 4) pieces on
/// [0, deadline]. Each epoch tries 0 plus `levels` geometric power levels;
/// three zoom passes then refine the grid around the best point. The result
/// is always feasible, so it never exceeds the true optimum.
double brute_force_throughput(double deadline, const Scenario& scenario,
                              int epochs, int levels);

}  // namespace ehsched
