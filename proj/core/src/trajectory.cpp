#include "ehsched/trajectory.hpp"

#include <algorithm>
#include <ostream>

#include "format_util.hpp"

namespace ehsched {
namespace {

template <typename Field>
double interpolate(const std::vector<TrajectorySample>& samples, double t,
                   Field field) {
  if (samples.empty() || t < samples.front().time) return 0.0;
  if (t >= samples.back().time) return field(samples.back());
  const auto it = std::upper_bound(
      samples.begin(), samples.end(), t,
      [](double v, const TrajectorySample& s) { return v < s.time; });
  const auto& b = *it;
  const auto& a = *(it - 1);
  const double w = (t - a.time) / (b.time - a.time);
  return field(a) + w * (field(b) - field(a));
}

}  // namespace

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kWait:
      return "wait";
    case Phase::kTx:
      return "tx";
    case Phase::kSilent:
      return "silent";
    case Phase::kStall:
      return "stall";
  }
  return "?";
}

double PolicyTrajectory::data_sent_at(double t) const {
  return interpolate(samples, t,
                     [](const TrajectorySample& s) { return s.data_sent; });
}

double PolicyTrajectory::energy_used_at(double t) const {
  return interpolate(samples, t,
                     [](const TrajectorySample& s) { return s.energy_used; });
}

void write_csv(std::ostream& out, const PolicyTrajectory& trajectory) {
  out << "t,p,B_sent,E_used,phase\n";
  for (const auto& s : trajectory.samples) {
    out << format_double(s.time) << ',' << format_double(s.power) << ','
        << format_double(s.data_sent) << ',' << format_double(s.energy_used)
        << ',' << to_string(s.phase) << '\n';
  }
}

}  // namespace ehsched
