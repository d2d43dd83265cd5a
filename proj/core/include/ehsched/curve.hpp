#pragma once

#include <string>
#include <variant>
#include <vector>

namespace ehsched {

/// c0 + c1 t + ... + ck t^k in absolute time t.
struct Polynomial {
  std::vector<double> coeffs;

  double operator()(double t) const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// a * exp(b * t^k).
struct ExpPower {
  double scale = 1.0;
  double rate = 0.0;
  double exponent = 1.0;

  double operator()(double t) const;
  friend bool operator==(const ExpPower&, const ExpPower&) = default;
};

using Piece = std::variant<Polynomial, ExpPower>;

/// Analytic piece active on [start, end).
struct Segment {
  double start = 0.0;
  double end = 0.0;
  Piece piece;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Instantaneous arrival of `amount` at `time`.
struct Jump {
  double time = 0.0;
  double amount = 0.0;

  friend bool operator==(const Jump&, const Jump&) = default;
};

/// Cumulative arrival curve (harvested joules or arrived bits) on
/// [0, horizon].
///
/// The value at t is the analytic part plus every jump at or before t, so
/// the curve is right-continuous at jumps. The analytic part is the piece of
/// the segment containing t; between segments, and after the last one, it
/// holds the value the previous segment reached at its end; before the first
/// segment it is zero.
///
/// Construction validates ordering, finiteness and monotonicity (sampled on
/// 10,000 points plus every breakpoint) and throws ValidationError.
class CumulativeCurve {
 public:
  CumulativeCurve(std::vector<Segment> segments, std::vector<Jump> jumps,
                  double horizon);

  /// Curve that is `value` everywhere on [0, horizon].
  static CumulativeCurve constant(double value, double horizon);

  /// Value at t (jumps at t included). DomainError outside [0, horizon].
  double operator()(double t) const;
  double eval(double t) const { return (*this)(t); }
  /// lim_{s -> t-} of the curve; 0 at t = 0.
  double left_limit(double t) const;

  /// Segment boundaries and jump times in [0, horizon], sorted and
  /// deduplicated, always containing 0 and the horizon.
  std::vector<double> breakpoints() const;

  /// Sample-and-hold staircase with jumps only at multiples of `period`;
  /// its value on [k*period, (k+1)*period) is this curve's value at
  /// k*period. Never exceeds the original.
  CumulativeCurve discretize(double period) const;

  /// Same shape with every value multiplied by `factor` >= 0.
  CumulativeCurve scaled(double factor) const;

  double horizon() const noexcept { return horizon_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  const std::vector<Jump>& jumps() const noexcept { return jumps_; }

  /// Scenario-file spelling: whitespace-separated `poly:(...)@[s,e)`,
  /// `expc:(a,b,k)@[s,e)` and `jump:(t,v)` terms.
  std::string to_string() const;
  /// Inverse of `to_string`; the horizon is supplied by the scenario.
  static CumulativeCurve parse(const std::string& text, double horizon);

  friend bool operator==(const CumulativeCurve&,
                         const CumulativeCurve&) = default;

 private:
  double analytic(double t) const;
  double analytic_left(double t) const;
  double jumps_through(double t, bool inclusive) const;
  void validate() const;

  std::vector<Segment> segments_;
  std::vector<Jump> jumps_;
  std::vector<double> jump_prefix_;  // jump_prefix_[i] = sum of jumps_[0..i]
  double horizon_ = 0.0;
};

}  // namespace ehsched
