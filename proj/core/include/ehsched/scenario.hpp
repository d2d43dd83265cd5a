#pragma once

#include <string>

#include "ehsched/curve.hpp"
#include "ehsched/rate_function.hpp"

namespace ehsched {

/// One transmission problem: deliver `bits` under the given arrival curves.
///
/// The data curve is read through `data_at`, which caps it at `bits`: the
/// transmitter never sees more than B0 bits, so arrivals past T_B0 are
/// ignored.
struct Scenario {
  double bits = 0.0;  // B0
  CumulativeCurve energy;
  CumulativeCurve data;
  RateFunction rate;
  double horizon = 0.0;
  double step = 0.0;        // integration step of the online policies
  double tol_bits = 1e-9;
  double tol_energy = 1e-9;

  static constexpr double kDefaultStepFraction = 1e-4;

  /// Builds a scenario with the default step (1e-4 of the horizon) and
  /// validates it.
  static Scenario make(double bits, CumulativeCurve energy,
                       CumulativeCurve data, RateFunction rate = {});

  double energy_at(double t) const { return energy(t); }
  double energy_before(double t) const { return energy.left_limit(t); }
  double data_at(double t) const;
  double data_before(double t) const;

  /// Earliest time at which B0 bits have arrived (bisection to 1e-12 of the
  /// horizon; jump times are returned exactly).
  double data_complete_time() const;

  /// Merged breakpoints of both curves.
  std::vector<double> breakpoints() const;

  /// Throws ValidationError naming the violated invariant.
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

}  // namespace ehsched
