#include "ehsched/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "ehsched/error.hpp"
#include "format_util.hpp"

namespace ehsched {
namespace {

struct Field {
  std::string value;
  int line = 0;
};

const char* const kKnownKeys[] = {"version", "B0",   "horizon",
                                  "energy",  "data", "rate",
                                  "step",    "tol_bits", "tol_energy"};

double number(const std::map<std::string, Field>& fields,
              const std::string& key) {
  const auto& f = fields.at(key);
  const auto v = parse_double(f.value);
  if (!v) throw ParseError(f.line, key + ": `" + f.value + "` is not a number");
  return *v;
}

const Field& required(const std::map<std::string, Field>& fields,
                      const std::string& key) {
  const auto it = fields.find(key);
  if (it == fields.end()) {
    throw ParseError(0, "missing required field `" + key + "`");
  }
  return it->second;
}

template <typename Fn>
auto with_line(const Field& f, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(f.line, e.what());
  } catch (const DomainError& e) {
    throw ParseError(f.line, e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(e.invariant(),
                          "line " + std::to_string(f.line) + ": " + e.what());
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  std::map<std::string, Field> fields;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "expected `key = value`");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) ==
        std::end(kKnownKeys)) {
      throw ParseError(line_no, "unknown field `" + key + "`");
    }
    if (fields.contains(key)) {
      throw ParseError(line_no, "duplicate field `" + key + "`");
    }
    fields[key] = {value, line_no};
  }

  if (fields.contains("version")) {
    const auto v = number(fields, "version");
    if (v != kScenarioFormatVersion) {
      throw ParseError(fields["version"].line,
                       "unsupported format version " + fields["version"].value);
    }
  }
  required(fields, "B0");
  required(fields, "horizon");
  const double bits = number(fields, "B0");
  const double horizon = number(fields, "horizon");
  if (!(horizon > 0.0)) {
    throw ParseError(fields["horizon"].line, "horizon must be positive");
  }
  const auto& ef = required(fields, "energy");
  auto energy = with_line(ef, [&] { return CumulativeCurve::parse(ef.value, horizon); });
  const auto& df = required(fields, "data");
  auto data = with_line(df, [&] { return CumulativeCurve::parse(df.value, horizon); });
  RateFunction rate;
  if (const auto it = fields.find("rate"); it != fields.end()) {
    rate = with_line(it->second, [&] { return RateFunction::parse(it->second.value); });
  }

  Scenario s{bits, std::move(energy), std::move(data), std::move(rate), horizon,
             Scenario::kDefaultStepFraction * horizon};
  if (fields.contains("step")) s.step = number(fields, "step");
  if (fields.contains("tol_bits")) s.tol_bits = number(fields, "tol_bits");
  if (fields.contains("tol_energy")) s.tol_energy = number(fields, "tol_energy");
  s.validate();
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  std::string out;
  out += "version = " + std::to_string(kScenarioFormatVersion) + "\n";
  out += "B0 = " + format_double(s.bits) + "\n";
  out += "horizon = " + format_double(s.horizon) + "\n";
  out += "energy = " + s.energy.to_string() + "\n";
  out += "data = " + s.data.to_string() + "\n";
  out += "rate = " + s.rate.to_string() + "\n";
  out += "step = " + format_double(s.step) + "\n";
  out += "tol_bits = " + format_double(s.tol_bits) + "\n";
  out += "tol_energy = " + format_double(s.tol_energy) + "\n";
  return out;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace ehsched
