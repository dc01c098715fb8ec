#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "swan/harness.hpp"
#include "swan/model.hpp"

namespace swan {

/// Built-in scenario parameters: 28 GHz carrier, n_eff 1.4, half-wavelength
/// spacing, 3 m deployment height, lossless guide, -90 dBm noise.
SystemConfig default_system_config();

struct Scenario {
  SystemConfig config;
  WaveguideLayout layout;
  std::vector<User> users;
};

/// Parsers throw std::runtime_error with a diagnostic on malformed input.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

ExperimentSpec parse_experiment_spec(const nlohmann::json& j);
ExperimentSpec load_experiment_spec(const std::string& path);

/// Placement file: {"type":"ss","segment":<1-based>,"position_m":x},
/// {"type":"sa","positions_m":[...]} or {"type":"pass","position_m":x}.
struct PlacementFile {
  std::optional<Placement> placement;   // ss or sa
  std::optional<double> pass_position;  // pass
};
PlacementFile parse_placement(const nlohmann::json& j);

Scheme parse_scheme(const std::string& name);
Protocol parse_protocol(const std::string& name);

nlohmann::json report_to_json(const RateReport& report);
nlohmann::json sweep_to_json(const SweepResult& result);

}  // namespace swan
