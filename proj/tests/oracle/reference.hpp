#pragma once

// Test-only reference computations. Deliberately independent of the library:
// plain bisection on closed forms, no shared helpers.

#include <cmath>
#include <functional>

namespace ehsched::oracle {

// Frozen high-precision values (50-digit mpmath evaluation).
inline constexpr double kInvLn2 = 1.4426950408889634;        // r'(0), log2(1+p)
inline constexpr double kPerPowerHalf = 5.319722355838365;    // log2(1+p)/p = 0.5
inline constexpr double kCompletionE3B1 = 0.2826719216805028; // T log2(1+3/T) = 1
inline constexpr double kPowerE10B2 = 22.892399106025485;     // 10 log2(1+p)/p = 2
inline constexpr double kThreeOverLn2 = 4.328085122666890;    // lim T log2(1+3/T)
inline constexpr double kFig1DataTime = 0.9712799667979258;   // cbrt(ln 2.5)

// Root of a monotone f on [lo, hi] with f(lo), f(hi) of opposite sign.
inline double bisect(const std::function<double(double)>& f, double lo,
                     double hi, int iterations = 200) {
  const bool rising = f(hi) > f(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0.0) == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double log2_rate(double p) { return std::log2(1.0 + p); }

// p with log2(1+p)/p = c, for 0 < c < 1/ln 2.
inline double log2_per_power(double c) {
  return bisect([c](double p) { return log2_rate(p) / p - c; }, 1e-12, 1e9);
}

// T with T log2(1 + E/T) = B.
inline double log2_completion(double energy, double bits) {
  return bisect(
      [=](double t) { return t * log2_rate(energy / t) - bits; }, 1e-9, 1e9);
}

// Central difference of f at x.
inline double central_difference(const std::function<double(double)>& f,
                                 double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace ehsched::oracle
