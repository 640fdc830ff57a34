/**
 * JSON scenario configuration: strict parsing with per-field diagnostics,
 * the built-in preset library, preset+override merging (last writer wins)
 * and the resolved-configuration echo.
 *
 * Units are fixed per field and documented in the README: degrees for
 * angles, km for altitudes, m for telescope diameters, nm for wavelengths,
 * ps for the coincidence window, cps for count rates, dB for attenuations.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "entlink/scenario.hpp"

namespace entlink {

/// Configuration problem; message carries the path to the offending field,
/// e.g. "gates.beta_min_deg: must be in [0, 90)".
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parse a configuration document. A "preset" key pulls in a named built-in
/// configuration; all other keys override it field by field. Unknown keys
/// are rejected. `base_dir` resolves relative ephemeris paths ("" = cwd).
Scenario parse_config(const std::string& json_text, const std::string& base_dir = "");
Scenario parse_config_file(const std::string& path);

/// Fully resolved configuration document for the scenario; parsing it again
/// reproduces an identical scenario.
nlohmann::ordered_json scenario_to_json(const Scenario& scenario);

std::vector<std::string> preset_names();
bool is_preset_name(const std::string& name);
Scenario preset_scenario(const std::string& name);

}  // namespace entlink
