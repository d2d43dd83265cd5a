#include "ehsched/online.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "ehsched/error.hpp"
#include "format_util.hpp"

namespace ehsched {
namespace {

constexpr double kWaitResolution = 1e-9;  // seconds
constexpr int kExhaustionProbes = 8;

// Search times for the waiting phase: the step grid plus every breakpoint.
std::vector<double> search_times(const Scenario& s) {
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor(s.horizon / s.step));
  out.reserve(static_cast<std::size_t>(n) + 2);
  for (long k = 0; k <= n; ++k) out.push_back(static_cast<double>(k) * s.step);
  out.push_back(s.horizon);
  const auto bps = s.breakpoints();
  out.insert(out.end(), bps.begin(), bps.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase_if(out, [&](double t) { return t > s.horizon; });
  return out;
}

// First instant at which a monotone start condition holds.
template <typename Pred>
double first_time(const Scenario& s, Pred holds, const char* what) {
  const auto times = search_times(s);
  double prev = 0.0;
  bool have_prev = false;
  for (const double t : times) {
    if (holds(t)) {
      if (!have_prev) return t;
      double lo = prev;
      double hi = t;
      while (hi - lo > kWaitResolution) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (holds(mid) ? hi : lo) = mid;
      }
      return hi;
    }
    prev = t;
    have_prev = true;
  }
  throw WaitingNeverEndsError(std::string(what) +
                              ": start condition never holds before t=" +
                              format_double(s.horizon));
}

// Length of the prefix of [0, span] over which the arrived-but-unsent data
// stays positive when transmitting at `rate` from `t`, or nullopt when it
// never runs out. Data arriving at t + span itself is not available.
std::optional<double> data_exhaustion(const Scenario& s, double t, double sent,
                                      double rate, double span) {
  const auto backlog = [&](double tau) {
    return s.data_before(std::min(t + tau, s.horizon)) - sent - rate * tau;
  };
  const double threshold = -0.5 * s.tol_bits;
  double prev = 0.0;
  for (int j = 1; j <= kExhaustionProbes; ++j) {
    const double tau = span * j / kExhaustionProbes;
    if (backlog(tau) >= threshold) {
      prev = tau;
      continue;
    }
    double lo = prev;
    double hi = tau;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (backlog(mid) > 0.0 ? lo : hi) = mid;
    }
    return lo;
  }
  return std::nullopt;
}

// Transmission phase shared by both policies. `data_aware` enables the
// silence rule and the data-exhaustion cut of Algorithm 1.
PolicyTrajectory transmit(const Scenario& s, double start, bool data_aware) {
  PolicyTrajectory traj;
  traj.waiting_end = start;
  auto& out = traj.samples;
  if (start > 0.0) out.push_back({0.0, 0.0, 0.0, 0.0, Phase::kWait});

  const auto bps = s.breakpoints();
  auto next_bp = bps.begin();
  double t = start;
  double sent = 0.0;
  double used = 0.0;
  std::optional<double> silent_since;
  const auto end_silence = [&](double at) {
    if (silent_since) {
      traj.silent_intervals.push_back({*silent_since, at});
      silent_since.reset();
    }
  };

  while (true) {
    const double remaining = s.bits - sent;
    if (remaining <= s.tol_bits) {
      end_silence(t);
      out.push_back({t, 0.0, sent, used, Phase::kSilent});
      traj.completion_time = t;
      break;
    }
    if (t >= s.horizon) {
      end_silence(t);
      out.push_back({t, 0.0, sent, used, Phase::kSilent});
      break;
    }
    while (next_bp != bps.end() && *next_bp <= t) ++next_bp;
    double t_next = std::min(t + s.step, s.horizon);
    if (next_bp != bps.end()) t_next = std::min(t_next, *next_bp);
    const double dt = t_next - t;

    const auto stay_silent = [&](Phase phase) {
      if (phase == Phase::kSilent && !silent_since) silent_since = t;
      if (phase == Phase::kStall) {
        end_silence(t);
        traj.stalled = true;
      }
      out.push_back({t, 0.0, sent, used, phase});
      t = t_next;
    };

    if (data_aware && s.data_at(t) - sent <= s.tol_bits) {
      stay_silent(Phase::kSilent);
      continue;
    }
    const auto decision =
        instantaneous_power(s.energy_at(t) - used, remaining, s.rate, s.tol_bits);
    if (decision.status == PowerStatus::kInfeasible) {
      stay_silent(Phase::kStall);
      continue;
    }

    const double p = decision.power;
    const double r = s.rate.rate(p);
    double tau = dt;
    bool finishes = false;
    if (remaining / r <= dt) {
      tau = remaining / r;
      finishes = true;
    }
    if (data_aware) {
      if (const auto cut = data_exhaustion(s, t, sent, r, tau)) {
        if (!(t + *cut > t)) {
          stay_silent(Phase::kSilent);
          continue;
        }
        tau = *cut;
        finishes = false;
      }
    }

    end_silence(t);
    out.push_back({t, p, sent, used, Phase::kTx});
    used += p * tau;
    if (finishes) {
      sent = s.bits;
      t += tau;
    } else {
      sent += r * tau;
      t = (tau == dt) ? t_next : t + tau;
    }
  }
  return traj;
}

}  // namespace

WaitingEnd waiting_time_alg1(const Scenario& s) {
  const double slope = s.rate.slope_at_origin();
  const auto holds = [&](double t) {
    return s.bits <= s.energy_at(t) * slope && s.data_at(t) > 0.0;
  };
  WaitingEnd end{first_time(s, holds, "algorithm 1 waiting phase")};
  if (std::isfinite(slope)) {
    const double reach = s.energy_at(end.time) * slope;
    end.at_energy_boundary = reach - s.bits <= 1e-6 * s.bits;
  }
  return end;
}

double waiting_time_alg2(const Scenario& s) {
  const auto holds = [&](double t) {
    if (t <= 0.0) return false;
    const double e = s.energy_at(t);
    return t * s.rate.rate(e / t) >= s.bits &&
           s.data_at(t) >= s.bits - s.tol_bits;
  };
  return first_time(s, holds, "algorithm 2 waiting phase");
}

PowerDecision instantaneous_power(double energy_remaining,
                                  double bits_remaining,
                                  const RateFunction& rate, double tol_bits) {
  if (std::isnan(energy_remaining) || std::isnan(bits_remaining)) {
    throw DomainError("remaining energy and data must be numbers");
  }
  if (bits_remaining <= tol_bits) return {0.0, PowerStatus::kComplete};
  if (!(energy_remaining > 0.0)) return {0.0, PowerStatus::kInfeasible};
  const double c = bits_remaining / energy_remaining;
  if (c >= rate.slope_at_origin()) return {0.0, PowerStatus::kInfeasible};
  if (c <= rate.rate_per_power(RateFunction::kMaxPower)) {
    return {RateFunction::kMaxPower, PowerStatus::kTransmit};
  }
  return {rate.solve_rate_per_power(c), PowerStatus::kTransmit};
}

PolicyTrajectory simulate_alg1(const Scenario& scenario) {
  return transmit(scenario, waiting_time_alg1(scenario).time, true);
}

PolicyTrajectory simulate_alg2(const Scenario& scenario) {
  return transmit(scenario, waiting_time_alg2(scenario), false);
}

}  // namespace ehsched
