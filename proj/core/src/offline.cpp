#include "ehsched/offline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "ehsched/error.hpp"
#include "format_util.hpp"

namespace ehsched {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Uniform grid on [0, deadline] with every breakpoint inside it either
// replacing the uniform point it nearly coincides with or inserted.
std::vector<double> build_grid(double deadline, const Scenario& s,
                               std::size_t n) {
  std::vector<double> grid(n + 1);
  const double dt = deadline / static_cast<double>(n);
  for (std::size_t k = 0; k <= n; ++k) grid[k] = static_cast<double>(k) * dt;
  grid[n] = deadline;
  for (const double bp : s.breakpoints()) {
    if (!(bp > 0.0 && bp < deadline)) continue;
    const auto k = static_cast<std::size_t>(std::llround(bp / dt));
    if (k > 0 && k < n && std::abs(grid[k] - bp) < 1e-9 * deadline) {
      grid[k] = bp;
    } else {
      grid.push_back(bp);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// First instant at which both curves are positive (search lower bound).
double first_resource_time(const Scenario& s) {
  const auto positive = [&](double t) {
    return s.energy_at(t) > 0.0 && s.data_at(t) > 0.0;
  };
  if (positive(0.0)) return 0.0;
  std::vector<double> probes;
  constexpr int kProbes = 10000;
  for (int i = 1; i <= kProbes; ++i) probes.push_back(s.horizon * i / kProbes);
  const auto bps = s.breakpoints();
  probes.insert(probes.end(), bps.begin(), bps.end());
  std::sort(probes.begin(), probes.end());
  double prev = 0.0;
  for (const double t : probes) {
    if (t > s.horizon) break;
    if (positive(t)) {
      double lo = prev;
      double hi = t;
      while (hi - lo > 1e-12 * s.horizon) {
        const double mid = 0.5 * (lo + hi);
        (positive(mid) ? hi : lo) = mid;
      }
      return lo;
    }
    prev = t;
  }
  return s.horizon;
}

}  // namespace

ThroughputPlan plan_max_throughput(double deadline, const Scenario& s,
                                   std::size_t n_grid) {
  if (!(deadline > 0.0) || deadline > s.horizon) {
    throw DomainError("deadline must lie in (0, horizon], got " +
                      format_double(deadline));
  }
  if (n_grid < 2) throw DomainError("offline grid needs at least 2 slots");

  const auto grid = build_grid(deadline, s, n_grid);
  const std::size_t last = grid.size() - 1;
  // Energy and data spent by grid[k] may not exceed what arrived strictly
  // before grid[k].
  std::vector<double> energy_cap(grid.size());
  std::vector<double> data_cap(grid.size());
  for (std::size_t k = 0; k <= last; ++k) {
    energy_cap[k] = s.energy_before(grid[k]);
    data_cap[k] = s.data_before(grid[k]);
  }

  std::vector<double> power(last, 0.0);
  std::vector<double> rate(last, 0.0);
  std::size_t cur = 0;
  double used = 0.0;
  double sent = 0.0;
  while (cur < last) {
    double min_power = kInf;
    double min_rate = kInf;
    std::size_t energy_knot = last;
    std::size_t data_knot = last;
    for (std::size_t k = cur + 1; k <= last; ++k) {
      const double span = grid[k] - grid[cur];
      const double e = (energy_cap[k] - used) / span;
      const double d = (data_cap[k] - sent) / span;
      // Ties resolve to the farthest knot.
      if (e <= min_power + 1e-12 * std::abs(min_power)) {
        min_power = std::min(min_power, e);
        energy_knot = k;
      }
      if (d <= min_rate + 1e-12 * std::abs(min_rate)) {
        min_rate = std::min(min_rate, d);
        data_knot = k;
      }
    }
    min_power = std::max(0.0, min_power);
    min_rate = std::max(0.0, min_rate);
    double p = 0.0;
    double r = 0.0;
    std::size_t next = 0;
    const double energy_rate = s.rate.rate(min_power);
    if (energy_rate <= min_rate) {
      p = min_power;
      r = energy_rate;
      next = energy_knot;
    } else {
      r = min_rate;
      p = s.rate.power_for_rate(min_rate);
      next = data_knot;
    }
    for (std::size_t k = cur; k < next; ++k) {
      power[k] = p;
      rate[k] = r;
    }
    const double span = grid[next] - grid[cur];
    used = std::min(used + p * span, energy_cap[next]);
    sent = std::min(sent + r * span, data_cap[next]);
    cur = next;
  }

  ThroughputPlan plan;
  plan.deadline = deadline;
  auto& traj = plan.trajectory;
  traj.samples.reserve(grid.size());
  double d = 0.0;
  double u = 0.0;
  bool started = false;
  for (std::size_t k = 0; k < last; ++k) {
    Phase phase = Phase::kTx;
    if (power[k] <= 0.0) phase = started ? Phase::kSilent : Phase::kWait;
    if (power[k] > 0.0 && !started) {
      started = true;
      traj.waiting_end = grid[k];
    }
    traj.samples.push_back({grid[k], power[k], d, u, phase});
    const double span = grid[k + 1] - grid[k];
    d = std::min(d + rate[k] * span, data_cap[k + 1]);
    u = std::min(u + power[k] * span, energy_cap[k + 1]);
  }
  traj.samples.push_back({grid[last], 0.0, d, u, Phase::kSilent});
  plan.bits = d;
  if (d >= s.bits - s.tol_bits) traj.completion_time = deadline;
  return plan;
}

double max_throughput_by(double deadline, const Scenario& s,
                         std::size_t n_grid) {
  return plan_max_throughput(deadline, s, n_grid).bits;
}

OfflineSolution offline_completion_time(const Scenario& s,
                                        const OfflineOptions& options) {
  const auto feasible = [&](double t) {
    return t > 0.0 &&
           max_throughput_by(t, s, options.grid) >= s.bits - s.tol_bits;
  };
  if (!feasible(s.horizon)) {
    throw InfeasibleError("B0 not deliverable within horizon " +
                          format_double(s.horizon));
  }
  double lo = first_resource_time(s);
  double hi = s.horizon;
  if (feasible(lo)) hi = lo;
  const double tol = options.time_tolerance * s.horizon;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }

  auto plan = plan_max_throughput(hi, s, options.grid);
  OfflineSolution sol;
  sol.completion_time = hi;
  sol.grid_step = hi / static_cast<double>(options.grid);
  sol.feasibility_gap = std::max(0.0, s.bits - plan.bits);
  sol.trajectory = std::move(plan.trajectory);
  sol.trajectory.completion_time = hi;
  return sol;
}

double brute_force_throughput(double deadline, const Scenario& s, int epochs,
                              int levels) {
  if (epochs < 1 || epochs > 4) throw DomainError("epochs must be in [1, 4]");
  if (levels < 2) throw DomainError("levels must be at least 2");
  if (!(deadline > 0.0) || deadline > s.horizon) {
    throw DomainError("deadline must lie in (0, horizon]");
  }
  for (const auto* curve : {&s.energy, &s.data}) {
    for (const auto& seg : curve->segments()) {
      const auto* poly = std::get_if<Polynomial>(&seg.piece);
      const bool flat =
          poly && std::all_of(poly->coeffs.begin() + 1, poly->coeffs.end(),
                              [](double c) { return c == 0.0; });
      if (!flat) {
        throw DomainError("brute force needs piecewise-constant curves");
      }
    }
  }

  std::vector<double> bounds{0.0};
  for (const double bp : s.breakpoints()) {
    if (bp > 0.0 && bp < deadline) bounds.push_back(bp);
  }
  bounds.push_back(deadline);
  const std::size_t m = bounds.size() - 1;
  if (m > static_cast<std::size_t>(epochs)) {
    throw DomainError("scenario has " + std::to_string(m) +
                      " epochs before the deadline, more than " +
                      std::to_string(epochs));
  }
  std::vector<double> length(m);
  std::vector<double> energy(m);
  std::vector<double> data(m);
  for (std::size_t j = 0; j < m; ++j) {
    length[j] = bounds[j + 1] - bounds[j];
    energy[j] = s.energy_at(bounds[j]);
    data[j] = s.data_at(bounds[j]);
  }
  const double p_hi =
      energy.back() / *std::min_element(length.begin(), length.end());
  if (!(p_hi > 0.0)) return 0.0;
  const double p_lo = p_hi * 1e-6;

  const auto geometric = [levels](double lo, double hi) {
    std::vector<double> out{0.0};
    const double q = std::pow(hi / lo, 1.0 / (levels - 1));
    for (int i = 0; i < levels; ++i) out.push_back(lo * std::pow(q, i));
    return out;
  };

  std::vector<std::vector<double>> grids(m, geometric(p_lo, p_hi));
  double ratio = std::pow(p_hi / p_lo, 1.0 / (levels - 1));
  double best = 0.0;
  std::vector<double> best_powers(m, 0.0);
  std::vector<double> current(m, 0.0);

  // Depth-first over epochs; grids are ascending, so the first level that
  // breaks a cumulative constraint ends the loop.
  std::function<void(std::size_t, double, double)> search =
      [&](std::size_t j, double used, double sent) {
        if (j == m) {
          if (sent > best) {
            best = sent;
            best_powers = current;
          }
          return;
        }
        const double slack = 1e-12 * std::max(1.0, energy[j]);
        for (const double p : grids[j]) {
          const double u = used + p * length[j];
          if (u > energy[j] + slack) break;
          const double d = sent + s.rate.rate(p) * length[j];
          if (d > data[j] + 1e-12 * std::max(1.0, data[j])) break;
          current[j] = p;
          search(j + 1, u, d);
        }
      };

  search(0, 0.0, 0.0);
  for (int pass = 0; pass < 3; ++pass) {
    const double outer = ratio;
    ratio = std::pow(outer, 2.0 / (levels - 1));
    for (std::size_t j = 0; j < m; ++j) {
      const double c = best_powers[j];
      grids[j] = c > 0.0 ? geometric(c / outer, c * outer)
                         : geometric(p_lo * 1e-3, p_lo);
    }
    search(0, 0.0, 0.0);
  }
  return best;
}

}  // namespace ehsched
