#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace ehsched {

enum class Phase { kWait, kTx, kSilent, kStall };

std::string_view to_string(Phase phase);

/// State at `time`; `power` is held until the next sample.
struct TrajectorySample {
  double time = 0.0;
  double power = 0.0;
  double data_sent = 0.0;
  double energy_used = 0.0;
  Phase phase = Phase::kWait;
};

struct Interval {
  double start = 0.0;
  double end = 0.0;
};

/// Sampled power / cumulative data / cumulative energy of one policy.
///
/// Power is piecewise constant between samples, so data_sent and
/// energy_used are exactly linear between samples. The last sample sits at
/// the completion time (or the horizon when the policy did not finish).
struct PolicyTrajectory {
  std::vector<TrajectorySample> samples;
  double waiting_end = 0.0;
  std::optional<double> completion_time;
  std::vector<Interval> silent_intervals;
  bool stalled = false;  // no finite power drained both buffers at some step

  bool completed() const noexcept { return completion_time.has_value(); }

  /// Linear interpolation; 0 before the first sample, last value after it.
  double data_sent_at(double t) const;
  double energy_used_at(double t) const;
};

/// CSV with header `t,p,B_sent,E_used,phase`, one row per sample.
void write_csv(std::ostream& out, const PolicyTrajectory& trajectory);

}  // namespace ehsched
