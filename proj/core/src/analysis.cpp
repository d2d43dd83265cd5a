#include "ehsched/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "ehsched/error.hpp"
#include "format_util.hpp"

namespace ehsched {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPowerSlack = 1e-9;  // watts

double completion_or_nan(const PolicyTrajectory& t) {
  return t.completion_time.value_or(kNaN);
}

// Largest B2(t) - B1(t) over the sample times of both trajectories.
double dominance_violation(const PolicyTrajectory& alg1,
                           const PolicyTrajectory& alg2) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& s : alg2.samples) {
    worst = std::max(worst, s.data_sent - alg1.data_sent_at(s.time));
  }
  for (const auto& s : alg1.samples) {
    worst = std::max(worst, alg2.data_sent_at(s.time) - s.data_sent);
  }
  return worst;
}

struct CausalitySlack {
  double energy = std::numeric_limits<double>::infinity();
  double data = std::numeric_limits<double>::infinity();
};

void accumulate_causality(const Scenario& s, const PolicyTrajectory& traj,
                          CausalitySlack& slack) {
  for (const auto& sample : traj.samples) {
    const double t = std::min(sample.time, s.horizon);
    slack.energy = std::min(
        slack.energy, s.energy_at(t) + s.tol_energy - sample.energy_used);
    slack.data =
        std::min(slack.data, s.data_at(t) + s.tol_bits - sample.data_sent);
  }
}

double min_power_increment(const PolicyTrajectory& traj) {
  double worst = std::numeric_limits<double>::infinity();
  const TrajectorySample* prev = nullptr;
  for (const auto& s : traj.samples) {
    if (s.phase != Phase::kTx) continue;
    if (prev) worst = std::min(worst, s.power - prev->power);
    prev = &s;
  }
  return worst;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Portable generator: identical draws on every platform for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  double uniform(double lo, double hi) {
    state_ = splitmix64(state_);
    const double u = static_cast<double>(state_ >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(std::floor(uniform(0.0, 1.0) * (hi - lo + 1)));
  }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }

 private:
  std::uint64_t state_;
};

CumulativeCurve random_curve(Rng& rng, const ScenarioFamily& f, double scale,
                             bool single_jump) {
  const double h = f.horizon;
  if (single_jump) {
    return CumulativeCurve({}, {{rng.uniform(0.0, 0.2 * h),
                                 rng.uniform(0.2, 1.0) * scale}},
                           h);
  }
  std::vector<Segment> segs;
  std::vector<Jump> jumps;
  const bool jumps_only = rng.chance(0.2);
  if (!jumps_only) {
    const double start = rng.chance(0.5) ? 0.0 : rng.uniform(0.0, 0.2 * h);
    if (rng.chance(0.6)) {
      const int degree = rng.integer(1, std::max(1, f.max_poly_degree));
      std::vector<double> c{rng.uniform(0.0, 0.3) * scale};
      for (int i = 1; i <= degree; ++i) {
        c.push_back(rng.uniform(-0.3, 1.0) * scale / std::pow(h, i));
      }
      segs.push_back({start, h, Polynomial{std::move(c)}});
    } else {
      const double k = static_cast<double>(rng.integer(1, 3));
      segs.push_back({start, h,
                      ExpPower{rng.uniform(0.05, 0.5) * scale,
                               rng.uniform(0.1, 1.5) / std::pow(h, k), k}});
    }
  }
  const int n_jumps = rng.integer(jumps_only ? 1 : 0, std::max(1, f.max_jumps));
  for (int i = 0; i < n_jumps; ++i) {
    jumps.push_back({rng.uniform(0.0, 0.8 * h), rng.uniform(0.0, 0.5) * scale});
  }
  return CumulativeCurve(std::move(segs), std::move(jumps), h);
}

std::optional<Scenario> draw_scenario(Rng& rng, const ScenarioFamily& f) {
  try {
    auto energy = random_curve(rng, f, f.energy_scale, f.single_jump_only);
    auto data = random_curve(rng, f, f.data_scale, f.single_jump_only);
    const auto& rate =
        f.rates[static_cast<std::size_t>(rng.integer(0, static_cast<int>(f.rates.size()) - 1))];
    const double early = f.single_jump_only ? f.horizon : 0.4 * f.horizon;
    const double reach = std::min(data(early), data(f.horizon));
    if (!(reach > 0.0)) return std::nullopt;
    const double bits = rng.uniform(0.3, 0.9) * reach;
    auto s = Scenario::make(bits, std::move(energy), std::move(data), rate);
    // Online policies need up to twice the offline time.
    if (max_throughput_by(0.45 * f.horizon, s) < s.bits - s.tol_bits) {
      return std::nullopt;
    }
    return s;
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

std::string join_failures(const CompetitiveReport& r) {
  std::string out;
  for (const auto& v : r.verdicts) {
    if (v.passed) continue;
    if (!out.empty()) out += ';';
    out += v.name;
  }
  return out.empty() ? "PASS" : out;
}

}  // namespace

bool CompetitiveReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const InvariantVerdict& v) { return v.passed; });
}

const InvariantVerdict* CompetitiveReport::find(const std::string& name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

Comparison compare(const Scenario& s, const OfflineOptions& options) {
  Comparison c{offline_completion_time(s, options), simulate_alg1(s),
               simulate_alg2(s), {}};
  auto& r = c.report;
  r.t_off = c.offline.completion_time;
  r.t_on1 = completion_or_nan(c.alg1);
  r.t_on2 = completion_or_nan(c.alg2);
  r.ratio1 = r.t_on1 / r.t_off;
  r.ratio2 = r.t_on2 / r.t_off;
  r.t_s1 = c.alg1.waiting_end;
  r.t_s2 = c.alg2.waiting_end;
  r.time_tolerance = s.step + c.offline.grid_step;
  const double tol_t = r.time_tolerance;

  const auto add = [&r](std::string name, double slack) {
    r.verdicts.push_back({std::move(name), slack >= 0.0, slack});
  };
  add("alg1_completed", c.alg1.completed() ? 0.0 : -1.0);
  add("alg2_completed", c.alg2.completed() ? 0.0 : -1.0);
  add("ratio2_le_2", std::isnan(r.t_on2)
                         ? -1.0
                         : 2.0 * r.t_off + 2.0 * tol_t - r.t_on2);
  add("alg2_power_nondecreasing",
      std::min(min_power_increment(c.alg2), 0.0) + kPowerSlack);
  add("waiting_order", std::min(r.t_s2 - r.t_s1, r.t_off + tol_t - r.t_s2));
  r.dominance_max_violation = dominance_violation(c.alg1, c.alg2);
  add("dominance", s.tol_bits - r.dominance_max_violation);

  CausalitySlack slack;
  accumulate_causality(s, c.alg1, slack);
  accumulate_causality(s, c.alg2, slack);
  accumulate_causality(s, c.offline.trajectory, slack);
  add("energy_causality", slack.energy);
  add("data_causality", slack.data);
  return c;
}

CompetitiveReport competitive_report(const Scenario& s,
                                     const OfflineOptions& options) {
  return compare(s, options).report;
}

Scenario tight_instance() {
  constexpr double kHorizon = 4.0;
  return Scenario::make(2.0, CumulativeCurve({}, {{0.0, 3.0}}, kHorizon),
                        CumulativeCurve({}, {{0.0, 2.0}}, kHorizon),
                        RateFunction::log2_1p());
}

std::vector<GeneratedScenario> generate_scenarios(const ScenarioFamily& f) {
  std::vector<GeneratedScenario> out;
  if (f.count <= 0) return out;
  if (f.rates.empty()) throw DomainError("scenario family needs a rate family");
  constexpr int kMaxAttempts = 1000;
  for (int i = 0; i < f.count; ++i) {
    const std::uint64_t seed = splitmix64(f.seed ^ splitmix64(static_cast<std::uint64_t>(i)));
    Rng rng(seed);
    std::optional<Scenario> s;
    for (int attempt = 0; attempt < kMaxAttempts && !s; ++attempt) {
      s = draw_scenario(rng, f);
    }
    if (!s) throw Error("scenario generator rejected every draw for seed " +
                        std::to_string(seed));
    out.push_back({std::to_string(seed), std::move(*s)});
  }
  if (f.include_tight_instance) out.push_back({"tight", tight_instance()});
  return out;
}

SweepSummary property_sweep(const ScenarioFamily& family,
                            const OfflineOptions& options, unsigned threads) {
  const auto scenarios = generate_scenarios(family);
  SweepSummary summary;
  summary.entries.resize(scenarios.size());
  if (scenarios.empty()) return summary;

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      auto& e = summary.entries[i];
      e.label = scenarios[i].label;
      try {
        e.report = competitive_report(scenarios[i].scenario, options);
        e.passed = e.report->passed();
      } catch (const Error& err) {
        e.error = err.what();
        e.passed = false;
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(scenarios.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  summary.worst_slack = std::numeric_limits<double>::infinity();
  for (const auto& e : summary.entries) {
    if (e.passed) {
      ++summary.pass_count;
    } else {
      ++summary.fail_count;
      summary.failing.push_back(e.label);
    }
    if (!e.report) continue;
    summary.worst_ratio2 = std::max(summary.worst_ratio2, e.report->ratio2);
    summary.worst_dominance_violation = std::max(
        summary.worst_dominance_violation, e.report->dominance_max_violation);
    for (const auto& v : e.report->verdicts) {
      if (v.slack < summary.worst_slack) {
        summary.worst_slack = v.slack;
        summary.worst_verdict = v.name + "@" + e.label;
      }
    }
  }
  return summary;
}

void write_sweep_csv(std::ostream& out, const SweepSummary& summary) {
  out << "seed,T_off,T_on1,T_on2,ratio1,ratio2,verdicts\n";
  for (const auto& e : summary.entries) {
    out << e.label << ',';
    if (!e.report) {
      out << ",,,,,error\n";
      continue;
    }
    const auto& r = *e.report;
    out << format_double(r.t_off) << ',' << format_double(r.t_on1) << ','
        << format_double(r.t_on2) << ',' << format_double(r.ratio1) << ','
        << format_double(r.ratio2) << ',' << join_failures(r) << '\n';
  }
}

std::string verdict_line(const SweepSummary& s) {
  std::string line = s.passed() ? "PASS" : "FAIL";
  line += " scenarios=" + std::to_string(s.entries.size()) +
          " failures=" + std::to_string(s.fail_count) +
          " worst_ratio2=" + format_double(s.worst_ratio2) +
          " worst_dominance_violation=" +
          format_double(s.worst_dominance_violation);
  if (!s.worst_verdict.empty()) {
    line += " worst_slack=" + format_double(s.worst_slack) + " (" +
            s.worst_verdict + ")";
  }
  return line;
}

std::vector<DiscretizationRow> discretization_study(
    const Scenario& s, std::span<const double> periods,
    const OfflineOptions& options) {
  std::vector<DiscretizationRow> rows;
  const auto evaluate = [&](double period, const Scenario& sc) {
    DiscretizationRow row;
    row.period = period;
    try {
      sc.validate();
      row.t_off = offline_completion_time(sc, options).completion_time;
      const auto alg2 = simulate_alg2(sc);
      if (alg2.completion_time) {
        row.t_on2 = *alg2.completion_time;
      } else {
        row.error = "algorithm 2 did not complete by the horizon";
      }
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  };
  evaluate(0.0, s);
  for (const double period : periods) {
    if (!(period > 0.0)) throw DomainError("discretization period must be > 0");
    Scenario d = s;
    d.energy = s.energy.discretize(period);
    d.data = s.data.discretize(period);
    evaluate(period, d);
  }
  return rows;
}

void write_discretization_csv(std::ostream& out,
                              const std::vector<DiscretizationRow>& rows) {
  out << "period,T_off,T_on2,error\n";
  for (const auto& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out << format_double(r.period) << ','
        << (r.t_off ? format_double(*r.t_off) : "") << ','
        << (r.t_on2 ? format_double(*r.t_on2) : "") << ',' << err << '\n';
  }
}

}  // namespace ehsched
