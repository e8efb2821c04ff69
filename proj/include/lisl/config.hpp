#pragma once

// Scenario configuration file: JSON with `//` and `/* */` comments allowed.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "lisl/scenario.hpp"

namespace lisl {

// Throws ConfigError with the offending key or file name.
ScenarioConfig config_from_json(const nlohmann::json& doc);
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Canonical form: every field written, stable key order.
nlohmann::json config_to_json(const ScenarioConfig& config);

// sha256 of the canonical JSON dump.
std::string config_hash(const ScenarioConfig& config);

// Default experiment: Starlink phase I shell, four stations, three pairs,
// four ranges, four setup delays, 3600 one-second slots.
ScenarioConfig default_config();

} // namespace lisl
