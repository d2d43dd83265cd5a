#include "cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include "ehsched/analysis.hpp"
#include "ehsched/error.hpp"
#include "ehsched/offline.hpp"
#include "ehsched/online.hpp"
#include "ehsched/scenario_io.hpp"

namespace ehsched::cli {
namespace {

constexpr std::array<const char*, 5> kCommands = {
    "solve-offline", "run-online", "compare", "sweep", "discretize"};

constexpr const char* kUsage =
    "usage: ehsched <command> [options]\n"
    "\n"
    "commands:\n"
    "  solve-offline <scenario.scn>        offline minimum completion time\n"
    "  run-online <scenario.scn> --alg N   simulate online algorithm 1 or 2\n"
    "  compare <scenario.scn>              offline vs both online algorithms\n"
    "  sweep                               randomized invariant sweep\n"
    "  discretize <scenario.scn>           staircase discretization study\n"
    "\n"
    "common options: --step --grid --tol-bits --tol-energy --seed --out <dir>\n"
    "run `ehsched <command> --help` for details\n";

// Four significant digits, trailing zeros kept ("2.000").
std::string sig4(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%#.4g", v);
  std::string s(buf);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

struct Overrides {
  std::optional<double> step;
  std::optional<double> tol_bits;
  std::optional<double> tol_energy;
  std::size_t grid = kDefaultOfflineGrid;
  std::string out_dir;
};

void add_scenario_options(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--step", o.step, "online integration step [s]")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--tol-bits", o.tol_bits, "data tolerance [bits]")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--tol-energy", o.tol_energy, "energy tolerance [J]")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--grid", o.grid, "offline grid slots")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
  cmd.add_option("--out", o.out_dir, "directory for CSV output");
}

Scenario load(const std::string& path, const Overrides& o) {
  Scenario s = load_scenario(path);
  if (o.step) s.step = *o.step;
  if (o.tol_bits) s.tol_bits = *o.tol_bits;
  if (o.tol_energy) s.tol_energy = *o.tol_energy;
  s.validate();
  return s;
}

template <typename Writer>
void write_file(const Overrides& o, const std::string& name, Writer&& write,
                std::ostream& out) {
  if (o.out_dir.empty()) return;
  std::filesystem::create_directories(o.out_dir);
  const auto path = std::filesystem::path(o.out_dir) / name;
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  write(f);
  out << "wrote " << path.string() << "\n";
}

std::string verdict_summary(const CompetitiveReport& r) {
  std::string failing;
  for (const auto& v : r.verdicts) {
    if (v.passed) continue;
    if (!failing.empty()) failing += ",";
    failing += v.name;
  }
  return failing.empty() ? "invariants: PASS" : "invariants: FAIL " + failing;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  if (args.empty()) {
    err << kUsage;
    return 2;
  }
  const std::string& command = args.front();
  if (command == "-h" || command == "--help" || command == "help") {
    out << kUsage;
    return 0;
  }
  if (std::find(kCommands.begin(), kCommands.end(), command) ==
      kCommands.end()) {
    err << "ehsched: unknown command `" << command << "`\n\n" << kUsage;
    return 2;
  }

  CLI::App app{"Energy-harvesting transmission scheduling", "ehsched"};
  app.require_subcommand(1);
  Overrides o;
  std::string scenario_path;
  int alg = 2;
  std::uint64_t seed = 42;
  int count = 200;
  unsigned threads = 0;
  std::vector<double> periods = {0.5, 0.25, 0.1};

  auto* offline_cmd = app.add_subcommand("solve-offline", "offline optimum");
  offline_cmd->add_option("scenario", scenario_path)->required();
  add_scenario_options(*offline_cmd, o);

  auto* online_cmd = app.add_subcommand("run-online", "online algorithm");
  online_cmd->add_option("scenario", scenario_path)->required();
  online_cmd->add_option("--alg", alg, "algorithm (1 or 2)")
      ->check(CLI::IsMember({1, 2}));
  add_scenario_options(*online_cmd, o);

  auto* compare_cmd = app.add_subcommand("compare", "competitive report");
  compare_cmd->add_option("scenario", scenario_path)->required();
  add_scenario_options(*compare_cmd, o);

  auto* sweep_cmd = app.add_subcommand("sweep", "randomized property sweep");
  sweep_cmd->add_option("--seed", seed, "generator seed");
  sweep_cmd->add_option("--count", count, "number of random scenarios")
      ->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--threads", threads, "worker threads (0 = all)");
  sweep_cmd->add_option("--grid", o.grid, "offline grid slots")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
  sweep_cmd->add_option("--out", o.out_dir, "directory for CSV output");

  auto* disc_cmd = app.add_subcommand("discretize", "discretization study");
  disc_cmd->add_option("scenario", scenario_path)->required();
  disc_cmd->add_option("--periods", periods, "staircase periods [s]")
      ->delimiter(',');
  add_scenario_options(*disc_cmd, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help()
                                          : app.get_subcommands().front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "ehsched: " << e.what() << "\n\n" << kUsage;
    return 2;
  }

  const OfflineOptions offline_options{o.grid};
  try {
    if (offline_cmd->parsed()) {
      const auto s = load(scenario_path, o);
      const auto sol = offline_completion_time(s, offline_options);
      out << "T_off=" << sig4(sol.completion_time)
          << " feasibility_gap=" << sig4(sol.feasibility_gap) << "\n";
      write_file(o, "offline.csv",
                 [&](std::ostream& f) { write_csv(f, sol.trajectory); }, out);
    } else if (online_cmd->parsed()) {
      const auto s = load(scenario_path, o);
      const auto traj = alg == 1 ? simulate_alg1(s) : simulate_alg2(s);
      out << "alg" << alg << ": T_s=" << sig4(traj.waiting_end)
          << " completion=";
      if (traj.completion_time) {
        out << sig4(*traj.completion_time);
      } else {
        out << "not completed";
      }
      out << " silent_intervals=" << traj.silent_intervals.size()
          << (traj.stalled ? " stalled" : "") << "\n";
      write_file(o, "alg" + std::to_string(alg) + ".csv",
                 [&](std::ostream& f) { write_csv(f, traj); }, out);
    } else if (compare_cmd->parsed()) {
      const auto s = load(scenario_path, o);
      const auto c = compare(s, offline_options);
      const auto& r = c.report;
      out << "T_off=" << sig4(r.t_off) << " T_on1=" << sig4(r.t_on1)
          << " T_on2=" << sig4(r.t_on2) << " ratio1=" << sig4(r.ratio1)
          << " ratio2=" << sig4(r.ratio2) << "\n";
      out << "T_s1=" << sig4(r.t_s1) << " T_s2=" << sig4(r.t_s2) << "\n";
      out << verdict_summary(r) << "\n";
      write_file(o, "offline.csv",
                 [&](std::ostream& f) { write_csv(f, c.offline.trajectory); },
                 out);
      write_file(o, "alg1.csv", [&](std::ostream& f) { write_csv(f, c.alg1); },
                 out);
      write_file(o, "alg2.csv", [&](std::ostream& f) { write_csv(f, c.alg2); },
                 out);
    } else if (sweep_cmd->parsed()) {
      ScenarioFamily family;
      family.seed = seed;
      family.count = count;
      const auto summary = property_sweep(family, offline_options, threads);
      out << verdict_line(summary) << "\n";
      write_file(o, "sweep.csv",
                 [&](std::ostream& f) { write_sweep_csv(f, summary); }, out);
      return summary.passed() ? 0 : 1;
    } else if (disc_cmd->parsed()) {
      const auto s = load(scenario_path, o);
      const auto rows = discretization_study(s, periods, offline_options);
      for (const auto& row : rows) {
        out << "period=" << sig4(row.period)
            << " T_off=" << (row.t_off ? sig4(*row.t_off) : "-")
            << " T_on2=" << (row.t_on2 ? sig4(*row.t_on2) : "-");
        if (!row.error.empty()) out << " error=" << row.error;
        out << "\n";
      }
      write_file(o, "discretization.csv",
                 [&](std::ostream& f) { write_discretization_csv(f, rows); },
                 out);
    }
  } catch (const Error& e) {
    err << "ehsched: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "ehsched: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ehsched::cli
