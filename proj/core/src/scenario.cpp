#include "ehsched/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "ehsched/error.hpp"
#include "format_util.hpp"

namespace ehsched {

Scenario Scenario::make(double bits, CumulativeCurve energy,
                        CumulativeCurve data, RateFunction rate) {
  const double horizon = std::min(energy.horizon(), data.horizon());
  Scenario s{bits,
             std::move(energy),
             std::move(data),
             std::move(rate),
             horizon,
             kDefaultStepFraction * horizon};
  s.validate();
  return s;
}

double Scenario::data_at(double t) const { return std::min(data(t), bits); }

double Scenario::data_before(double t) const {
  return std::min(data.left_limit(t), bits);
}

double Scenario::data_complete_time() const {
  if (data(0.0) >= bits) return 0.0;
  for (const double bp : data.breakpoints()) {
    if (bp > 0.0 && data.left_limit(bp) < bits && data(bp) >= bits) return bp;
  }
  double lo = 0.0;
  double hi = horizon;
  while (hi - lo > 1e-12 * horizon) {
    const double mid = 0.5 * (lo + hi);
    (data(mid) >= bits ? hi : lo) = mid;
  }
  return hi;
}

std::vector<double> Scenario::breakpoints() const {
  const auto a = energy.breakpoints();
  const auto b = data.breakpoints();
  std::vector<double> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  std::erase_if(out, [this](double t) { return t > horizon; });
  return out;
}

void Scenario::validate() const {
  if (!(bits > 0.0) || !std::isfinite(bits)) {
    throw ValidationError("B0", "must be positive, got " + format_double(bits));
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ValidationError("horizon", "must be positive");
  }
  if (energy.horizon() < horizon || data.horizon() < horizon) {
    throw ValidationError("horizon", "curves must cover the scenario horizon");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ValidationError("step", "must be positive");
  }
  if (!(tol_bits > 0.0) || !(tol_energy > 0.0)) {
    throw ValidationError("tolerance", "tolerances must be positive");
  }
  if (data(horizon) < bits) {
    throw ValidationError("reachability",
                          "data curve reaches only " +
                              format_double(data(horizon)) + " of " +
                              format_double(bits) + " bits by the horizon");
  }
}

}  // namespace ehsched
