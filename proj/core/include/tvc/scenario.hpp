#pragma once

#include <json.hpp>

#include "tvc/common.hpp"

namespace tvc {

struct ScenarioResult {
  int exit_code = 0;  // 0 ok, 2 validation error, 3 numeric task failure
  std::string message;
  std::vector<std::string> artifacts;
};

/// Parses and statically validates a scenario file; throws Error with the
/// offending field path on schema violations.
nlohmann::ordered_json validate_scenario_text(const std::string& text);

ScenarioResult run_scenario(const std::string& path,
                            const std::string& out_dir_override = "",
                            std::uint64_t seed_override = 0,
                            bool has_seed_override = false, int threads = 1,
                            const std::string& log_level = "info");

std::string list_models();

}  // namespace tvc
