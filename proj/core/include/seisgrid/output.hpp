#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "seisgrid/retrofit.hpp"
#include "seisgrid/simulation.hpp"

namespace seisgrid {

// Serializers for analysis results. Text is deterministic for identical
// inputs: no timestamps, thread counts or host details. CSV files start with
// a "# seed=N" line; JSON documents carry a "seed" field.

std::string risk_json(const RiskResult& risk);
/// Columns M, mean_norm_func, ci_lo, ci_hi, n_samples.
std::string functionality_csv(const RiskResult& risk);
/// Every Monte Carlo sample: M, sample, served_mw, norm_func.
std::string samples_csv(const RiskResult& risk);

std::string sensitivity_csv(const SensitivityReport& report, std::uint64_t seed);
std::string category_csv(const CategoryReport& report, std::uint64_t seed);

std::string plan_json(const GaResult& result, const Grid& grid, double baseline_eafl,
                      std::uint64_t seed);
std::string ga_history_csv(const GaResult& result, std::uint64_t seed);
std::string tradeoff_csv(const std::vector<TradeoffRow>& rows, const Grid& grid,
                         std::uint64_t seed);

std::string scenario_json(const ScenarioDetail& detail, const Grid& grid, double baseline_mw,
                          std::uint64_t seed);
/// Intact-network dispatch: served load, generator outputs and line flows.
std::string baseline_json(const ScenarioDetail& detail, const Grid& grid);
std::string baseline_text(const ScenarioDetail& detail, const Grid& grid);

struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> inputs;     // role -> path
  std::uint64_t seed = 0;
  std::string output_dir;
  std::map<std::string, std::string> overrides;  // option -> value
  std::vector<std::string> outputs;              // file names written
};

std::string manifest_json(const RunManifest& manifest);

/// risk.json, functionality_by_magnitude.csv and mc_samples.csv. Throws
/// ValidationError for an empty magnitude grid before writing anything.
std::vector<std::string> write_risk_outputs(const std::filesystem::path& dir,
                                            const RiskResult& risk);

}  // namespace seisgrid
