#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ehsched {

/// Channel capacity map r(p): bits per second delivered at transmit power p.
///
/// Every family satisfies r(0) = 0, is increasing, concave and unbounded.
/// The analytic families are strictly concave and differentiable; the
/// tabulated family is the piecewise-linear concave interpolant of user
/// points, so it is only strictly concave across knots and `derivative`
/// returns the right derivative there.
///
/// Instances are immutable and may be shared between threads.
class RateFunction {
 public:
  enum class Kind {
    kLog2OnePlus,  // log2(1 + p)
    kScaledLog,    // W * log2(1 + g * p)
    kSqrt,         // sqrt(p)
    kTabulated,    // concave piecewise-linear through (0,0) and user knots
  };

  /// Upper limit used when bracketing power solves.
  static constexpr double kMaxPower = 1e12;

  RateFunction();  // log2(1 + p)

  static RateFunction log2_1p();
  static RateFunction scaled_log(double bandwidth, double gain);
  static RateFunction sqrt();
  /// Knots must have strictly increasing positive powers, strictly increasing
  /// rates and strictly decreasing segment slopes (starting from the origin).
  /// The last segment is extended linearly beyond the final knot.
  static RateFunction tabulated(std::vector<double> powers,
                                std::vector<double> rates);

  /// Parses the scenario-file spelling: `log2_1p`, `sqrt` or `scaled_log:W,g`.
  static RateFunction parse(std::string_view text);
  /// Inverse of `parse`. Tabulated functions spell as `tabulated:p1:r1,...`.
  std::string to_string() const;

  Kind kind() const noexcept { return kind_; }

  /// r(p). Throws DomainError for negative or non-finite p.
  double rate(double power) const;
  /// r'(p) (right derivative for the tabulated family).
  double derivative(double power) const;
  /// r'(0) = lim_{p->0+} r(p)/p; +infinity for the square-root family.
  double slope_at_origin() const noexcept;
  /// r(p)/p with the p -> 0 limit filled in.
  double rate_per_power(double power) const;
  /// Power needed to sustain `rate`, i.e. r^{-1}.
  double power_for_rate(double rate) const;

  /// Unique p > 0 with r(p)/p = c. Throws DomainError for c <= 0 and
  /// InfeasibleError when c >= r'(0) or the root lies beyond kMaxPower.
  double solve_rate_per_power(double c) const;

  /// Unique T with T * r(E / T) = B: how long it takes to deliver B bits
  /// from E joules at constant power. Throws InfeasibleError when
  /// B >= E * r'(0).
  double constant_power_completion(double energy, double bits) const;

  friend bool operator==(const RateFunction&, const RateFunction&) = default;

 private:
  Kind kind_;
  double bandwidth_ = 1.0;
  double gain_ = 1.0;
  std::vector<double> knot_powers_;
  std::vector<double> knot_rates_;
};

}  // namespace ehsched
