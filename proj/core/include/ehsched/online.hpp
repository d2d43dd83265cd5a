#pragma once

#include "ehsched/rate_function.hpp"
#include "ehsched/scenario.hpp"
#include "ehsched/trajectory.hpp"

namespace ehsched {

/// End of the waiting phase of the data-aware policy (Algorithm 1).
struct WaitingEnd {
  double time = 0.0;
  /// B0 == E_s(time) * r'(0) up to 1e-6 relative: the start power is ~0 and
  /// completion relies on future energy.
  bool at_energy_boundary = false;
};

/// Smallest t with B0 <= E_s(t) * r'(0) and B_s(t) > 0.
/// Throws WaitingNeverEndsError when no such t <= horizon exists.
WaitingEnd waiting_time_alg1(const Scenario& scenario);

/// Smallest t with t * r(E_s(t) / t) >= B0 and B_s(t) >= B0 - tol_bits.
/// Throws WaitingNeverEndsError when no such t <= horizon exists.
double waiting_time_alg2(const Scenario& scenario);

enum class PowerStatus {
  kTransmit,
  kComplete,    // remaining data <= tolerance
  kInfeasible,  // B_rem / E_rem >= r'(0): no finite power drains both
};

struct PowerDecision {
  double power = 0.0;
  PowerStatus status = PowerStatus::kTransmit;
};

/// Constant power that would finish the remaining data exactly when the
/// buffered energy runs out: (E_rem / p) * r(p) = B_rem. Capped at
/// RateFunction::kMaxPower.
PowerDecision instantaneous_power(double energy_remaining, double bits_remaining,
                                  const RateFunction& rate,
                                  double tol_bits = 0.0);

/// Algorithm 1: start at waiting_time_alg1, follow the remaining-energy /
/// remaining-data power law and go silent whenever the arrived data has
/// all been sent.
PolicyTrajectory simulate_alg1(const Scenario& scenario);

/// Algorithm 2: wait until every bit has arrived and the buffered energy
/// could carry them, then follow the same power law without silences.
PolicyTrajectory simulate_alg2(const Scenario& scenario);

}  // namespace ehsched
