#include "ehsched/rate_function.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "ehsched/error.hpp"
#include "format_util.hpp"

namespace ehsched {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Bisects a predicate that is true on [lo, root) and false on [root, hi]
// down to adjacent doubles.
template <typename Pred>
double bisect_to_precision(double lo, double hi, Pred below_root) {
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (below_root(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void require_power(double power) {
  if (!(power >= 0.0) || !std::isfinite(power)) {
    throw DomainError("power must be finite and non-negative, got " +
                      format_double(power));
  }
}

}  // namespace

RateFunction::RateFunction() : kind_(Kind::kLog2OnePlus) {}

RateFunction RateFunction::log2_1p() { return RateFunction(); }

RateFunction RateFunction::scaled_log(double bandwidth, double gain) {
  if (!(bandwidth > 0.0) || !(gain > 0.0) || !std::isfinite(bandwidth) ||
      !std::isfinite(gain)) {
    throw DomainError("scaled_log needs positive finite W and g");
  }
  RateFunction r;
  r.kind_ = Kind::kScaledLog;
  r.bandwidth_ = bandwidth;
  r.gain_ = gain;
  return r;
}

RateFunction RateFunction::sqrt() {
  RateFunction r;
  r.kind_ = Kind::kSqrt;
  return r;
}

RateFunction RateFunction::tabulated(std::vector<double> powers,
                                     std::vector<double> rates) {
  if (powers.empty() || powers.size() != rates.size()) {
    throw DomainError("tabulated rate needs matching, non-empty knot lists");
  }
  double prev_p = 0.0;
  double prev_r = 0.0;
  double prev_slope = kInf;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (!(powers[i] > prev_p) || !(rates[i] > prev_r) ||
        !std::isfinite(powers[i]) || !std::isfinite(rates[i])) {
      throw DomainError("tabulated knots must be strictly increasing");
    }
    const double slope = (rates[i] - prev_r) / (powers[i] - prev_p);
    if (!(slope < prev_slope)) {
      throw DomainError("tabulated rate must have strictly decreasing slopes");
    }
    prev_p = powers[i];
    prev_r = rates[i];
    prev_slope = slope;
  }
  RateFunction r;
  r.kind_ = Kind::kTabulated;
  r.knot_powers_ = std::move(powers);
  r.knot_rates_ = std::move(rates);
  return r;
}

RateFunction RateFunction::parse(std::string_view text) {
  if (text == "log2_1p") return log2_1p();
  if (text == "sqrt") return sqrt();
  constexpr std::string_view kScaled = "scaled_log:";
  if (text.starts_with(kScaled)) {
    text.remove_prefix(kScaled.size());
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
      throw DomainError("scaled_log expects `scaled_log:W,g`");
    }
    const auto w = parse_double(text.substr(0, comma));
    const auto g = parse_double(text.substr(comma + 1));
    if (!w || !g) throw DomainError("scaled_log expects numeric W and g");
    return scaled_log(*w, *g);
  }
  constexpr std::string_view kTab = "tabulated:";
  if (text.starts_with(kTab)) {
    text.remove_prefix(kTab.size());
    std::vector<double> ps;
    std::vector<double> rs;
    while (!text.empty()) {
      const auto comma = text.find(',');
      const auto item = text.substr(0, comma);
      const auto colon = item.find(':');
      if (colon == std::string_view::npos) {
        throw DomainError("tabulated knots are written p:r");
      }
      const auto p = parse_double(item.substr(0, colon));
      const auto r = parse_double(item.substr(colon + 1));
      if (!p || !r) throw DomainError("tabulated knot is not numeric");
      ps.push_back(*p);
      rs.push_back(*r);
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    return tabulated(std::move(ps), std::move(rs));
  }
  throw DomainError("unknown rate function `" + std::string(text) + "`");
}

std::string RateFunction::to_string() const {
  switch (kind_) {
    case Kind::kLog2OnePlus:
      return "log2_1p";
    case Kind::kSqrt:
      return "sqrt";
    case Kind::kScaledLog:
      return "scaled_log:" + format_double(bandwidth_) + "," +
             format_double(gain_);
    case Kind::kTabulated: {
      std::string out = "tabulated:";
      for (std::size_t i = 0; i < knot_powers_.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(knot_powers_[i]) + ":" +
               format_double(knot_rates_[i]);
      }
      return out;
    }
  }
  return {};
}

double RateFunction::rate(double power) const {
  require_power(power);
  switch (kind_) {
    case Kind::kLog2OnePlus:
      return std::log1p(power) / std::numbers::ln2;
    case Kind::kScaledLog:
      return bandwidth_ * std::log1p(gain_ * power) / std::numbers::ln2;
    case Kind::kSqrt:
      return std::sqrt(power);
    case Kind::kTabulated: {
      const auto it = std::upper_bound(knot_powers_.begin(),
                                       knot_powers_.end(), power);
      const std::size_t i = static_cast<std::size_t>(it - knot_powers_.begin());
      if (i == 0 || knot_powers_.size() == 1) {
        return power * knot_rates_[0] / knot_powers_[0];
      }
      const std::size_t a = (i == knot_powers_.size()) ? i - 2 : i - 1;
      const double slope = (knot_rates_[a + 1] - knot_rates_[a]) /
                           (knot_powers_[a + 1] - knot_powers_[a]);
      return knot_rates_[a] + slope * (power - knot_powers_[a]);
    }
  }
  return 0.0;
}

double RateFunction::derivative(double power) const {
  require_power(power);
  switch (kind_) {
    case Kind::kLog2OnePlus:
      return 1.0 / ((1.0 + power) * std::numbers::ln2);
    case Kind::kScaledLog:
      return bandwidth_ * gain_ / ((1.0 + gain_ * power) * std::numbers::ln2);
    case Kind::kSqrt:
      return power > 0.0 ? 0.5 / std::sqrt(power) : kInf;
    case Kind::kTabulated: {
      const auto it = std::upper_bound(knot_powers_.begin(),
                                       knot_powers_.end(), power);
      const std::size_t i = static_cast<std::size_t>(it - knot_powers_.begin());
      if (i == 0 || knot_powers_.size() == 1) {
        return knot_rates_[0] / knot_powers_[0];
      }
      const std::size_t a = (i == knot_powers_.size()) ? i - 2 : i - 1;
      return (knot_rates_[a + 1] - knot_rates_[a]) /
             (knot_powers_[a + 1] - knot_powers_[a]);
    }
  }
  return 0.0;
}

double RateFunction::slope_at_origin() const noexcept {
  switch (kind_) {
    case Kind::kLog2OnePlus:
      return 1.0 / std::numbers::ln2;
    case Kind::kScaledLog:
      return bandwidth_ * gain_ / std::numbers::ln2;
    case Kind::kSqrt:
      return kInf;
    case Kind::kTabulated:
      return knot_rates_[0] / knot_powers_[0];
  }
  return 0.0;
}

double RateFunction::rate_per_power(double power) const {
  require_power(power);
  if (power == 0.0) return slope_at_origin();
  switch (kind_) {
    case Kind::kLog2OnePlus:
      return std::log1p(power) / (power * std::numbers::ln2);
    case Kind::kScaledLog:
      return bandwidth_ * std::log1p(gain_ * power) /
             (power * std::numbers::ln2);
    case Kind::kSqrt:
      return 1.0 / std::sqrt(power);
    case Kind::kTabulated:
      return rate(power) / power;
  }
  return 0.0;
}

double RateFunction::power_for_rate(double r) const {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError("rate must be finite and non-negative, got " +
                      format_double(r));
  }
  switch (kind_) {
    case Kind::kLog2OnePlus:
      return std::expm1(r * std::numbers::ln2);
    case Kind::kScaledLog:
      return std::expm1(r / bandwidth_ * std::numbers::ln2) / gain_;
    case Kind::kSqrt:
      return r * r;
    case Kind::kTabulated: {
      const auto it =
          std::upper_bound(knot_rates_.begin(), knot_rates_.end(), r);
      const std::size_t i = static_cast<std::size_t>(it - knot_rates_.begin());
      if (i == 0 || knot_rates_.size() == 1) {
        return r * knot_powers_[0] / knot_rates_[0];
      }
      const std::size_t a = (i == knot_rates_.size()) ? i - 2 : i - 1;
      const double slope = (knot_rates_[a + 1] - knot_rates_[a]) /
                           (knot_powers_[a + 1] - knot_powers_[a]);
      return knot_powers_[a] + (r - knot_rates_[a]) / slope;
    }
  }
  return 0.0;
}

double RateFunction::solve_rate_per_power(double c) const {
  if (!(c > 0.0) || std::isnan(c)) {
    throw DomainError("rate-per-power target must be positive, got " +
                      format_double(c));
  }
  if (c >= slope_at_origin()) {
    throw InfeasibleError("no positive power has r(p)/p = " +
                          format_double(c) + " (slope at origin is " +
                          format_double(slope_at_origin()) + ")");
  }
  // r(p)/p is strictly decreasing past the first tabulated knot and on all
  // analytic families, so the root is unique.
  double hi = 1.0;
  while (rate_per_power(hi) >= c) {
    hi *= 2.0;
    if (hi > kMaxPower) {
      throw InfeasibleError("power for r(p)/p = " + format_double(c) +
                            " exceeds the power cap");
    }
  }
  return bisect_to_precision(0.0, hi, [&](double p) {
    return rate_per_power(p) > c;
  });
}

double RateFunction::constant_power_completion(double energy,
                                               double bits) const {
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw DomainError("energy must be positive");
  }
  if (!(bits >= 0.0) || !std::isfinite(bits)) {
    throw DomainError("bit count must be non-negative");
  }
  if (bits == 0.0) return 0.0;
  if (bits >= energy * slope_at_origin()) {
    throw InfeasibleError("delivering " + format_double(bits) + " bits from " +
                          format_double(energy) +
                          " J needs unbounded time at constant power");
  }
  // T * r(E/T) increases towards E * r'(0) as T grows.
  const auto delivered = [&](double t) {
    const double p = energy / t;
    return std::isfinite(p) ? t * rate(p) : 0.0;
  };
  double hi = 1.0;
  while (delivered(hi) < bits) {
    hi *= 2.0;
    if (hi > 1e300) throw InfeasibleError("completion time diverges");
  }
  return bisect_to_precision(0.0, hi,
                             [&](double t) { return delivered(t) < bits; });
}

}  // namespace ehsched
