#pragma once

#include <filesystem>
#include <string>

#include "ehsched/scenario.hpp"

namespace ehsched {

/// Current `version` written by `serialize_scenario`.
inline constexpr int kScenarioFormatVersion = 1;

/// Parses `.scn` text: one `key = value` per line, `#` starts a comment.
///
///   version    = 1                    (optional)
///   B0         = 2.5                  (required, bits)
///   horizon    = 2                    (required, seconds)
///   energy     = poly:(0,0,100)@[0,2) (required, joules)
///   data       = expc:(1,1,3)@[0,2)   (required, bits)
///   rate       = log2_1p              (optional; sqrt, scaled_log:W,g)
///   step       = 0.0002               (optional; default 1e-4 * horizon)
///   tol_bits   = 1e-9                 (optional)
///   tol_energy = 1e-9                 (optional)
///
/// Errors carry the 1-based line number; the parsed scenario is validated.
Scenario parse_scenario(const std::string& text);

/// Writes every field so that parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

Scenario load_scenario(const std::filesystem::path& path);

}  // namespace ehsched
