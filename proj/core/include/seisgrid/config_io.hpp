#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "seisgrid/model.hpp"

namespace seisgrid {

// File loaders. Each throws ParseError for unreadable or malformed files and
// ValidationError for well-formed files that break a model invariant.

PowerNetworkModel load_network(const std::filesystem::path& path);
HazardConfig load_hazard(const std::filesystem::path& path);
FragilityTable load_fragility(const std::filesystem::path& path);
CostTable load_costs(const std::filesystem::path& path);

// The same, from in-memory JSON text.
PowerNetworkModel parse_network(std::string_view json_text);
HazardConfig parse_hazard(std::string_view json_text);
FragilityTable parse_fragility(std::string_view json_text);
CostTable parse_costs(std::string_view json_text);

// Serializers producing text the parsers accept (pretty-printed JSON, trailing newline).
std::string network_to_json(const PowerNetworkModel& model);
std::string hazard_to_json(const HazardConfig& config);
std::string fragility_to_json(const FragilityTable& table);
std::string costs_to_json(const CostTable& costs);

/// Writes `text` to `path`, creating parent directories. Throws std::runtime_error on I/O failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

/// Paths of the four input files of one analysis.
struct InputPaths {
  std::filesystem::path network;
  std::filesystem::path hazard;
  std::filesystem::path fragility;
  std::filesystem::path costs;

  /// network.json, hazard.json, fragility.json, costs.json inside `dir`.
  static InputPaths in_directory(const std::filesystem::path& dir);
};

ModelInputs load_inputs(const InputPaths& paths);

}  // namespace seisgrid
