#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "seisgrid/dcopf.hpp"
#include "seisgrid/fragility.hpp"
#include "seisgrid/grid.hpp"
#include "seisgrid/hazard.hpp"
#include "seisgrid/model.hpp"
#include "seisgrid/network.hpp"

namespace seisgrid {

struct ConvergenceConfig {
  double tau = 0.01;    // relative change of the running mean
  double delta = 0.05;  // full 95% CI width, normalized units
  double z = 1.96;
  std::size_t min_samples = 100;
  std::size_t max_samples = 2000;
  std::size_t check_interval = 25;
};

/// tau in (0, 1], delta > 0, z > 0, 2 <= min_samples <= max_samples, interval >= 1.
void validate(const ConvergenceConfig& config);

enum class StopReason { Converged, MaxSamples };

const char* stop_reason_name(StopReason r);

struct MagnitudeStats {
  double magnitude = 0.0;
  std::vector<double> samples_mw;  // F_k in sample-index order
  double mean_norm = 0.0;          // mean of F_k / F_o
  double std_norm = 0.0;           // sample standard deviation of F_k / F_o
  double ci_halfwidth = 0.0;       // z * std / sqrt(n)
  StopReason stop = StopReason::MaxSamples;

  std::size_t n_samples() const { return samples_mw.size(); }
};

struct RiskResult {
  std::uint64_t seed = 0;
  double baseline_mw = 0.0;
  std::vector<double> magnitudes;
  std::vector<double> rates;          // annual bin weights
  std::vector<double> contributions;  // rate * (1 - mean_norm)
  std::vector<MagnitudeStats> stats;
  double eafl = 0.0;
  double eafl_std_error = 0.0;  // sqrt(sum rate^2 * var_i / n_i)
};

/// EAFL = sum_i rate_i * (1 - mean_norm_i). Throws ValidationError when the
/// stats and the grid disagree in length or magnitude.
RiskResult compute_eafl(std::span<const double> magnitudes, std::span<const double> rates,
                        std::vector<MagnitudeStats> stats);

/// Everything computed for one sampled scenario, for reporting.
struct ScenarioDetail {
  double magnitude = 0.0;
  std::size_t sample_index = 0;
  std::vector<double> ln_mean;
  std::vector<double> sigma;
  std::vector<double> pga_g;
  DamageRealization damage;
  TopologyState topology;
  IslandPartition partition;
  std::vector<bool> viable;
  std::vector<IslandCase> cases;          // empty case for a non-viable island
  std::vector<DispatchResult> dispatch;   // per island
  double served_mw = 0.0;
};

/// Islanding, viability, slack designation and per-island dispatch with
/// shedding for one damage realization (no hazard fields filled in).
ScenarioDetail evaluate_network(const Grid& grid, const DamageRealization& damage);

/// EAFL estimate from a fixed number of samples per magnitude.
struct FixedEstimate {
  double eafl = 0.0;
  double std_error = 0.0;
  std::vector<double> mean_norm;
};

/// Monte Carlo risk engine. The hazard field and damage uniforms of sample k
/// at magnitude M depend only on (master seed, M, k), so every fragility
/// configuration sees the same random numbers. Served load is memoized per
/// damage-state vector. All public methods are thread-safe.
class RiskEngine {
 public:
  RiskEngine(ModelInputs inputs, std::uint64_t master_seed, unsigned threads = 1);

  const Grid& grid() const { return grid_; }
  const ModelInputs& inputs() const { return inputs_; }
  std::uint64_t seed() const { return seed_; }
  unsigned threads() const { return threads_; }
  /// Served MW of the undamaged network (F_o).
  double baseline_mw() const { return baseline_mw_; }
  const ComponentFragility& baseline_fragility() const { return baseline_fragility_; }
  std::vector<double> grid_magnitudes() const { return inputs_.hazard.magnitudes.points(); }

  /// Served MW for one damage realization (islanding, dispatch, shedding).
  double evaluate_damage(const DamageRealization& damage) const;
  ScenarioDetail evaluate_detail(const DamageRealization& damage) const;

  /// PGA and uniforms of sample k at magnitude M.
  void draw(double magnitude, std::size_t k, std::span<double> pga_g, std::span<double> u) const;

  /// F_k in MW.
  double simulate_sample(double magnitude, std::size_t k, const ComponentFragility& fragility) const;
  ScenarioDetail simulate_detail(double magnitude, std::size_t k,
                                 const ComponentFragility& fragility) const;

  /// Samples until both convergence criteria hold at a check point or max_samples.
  MagnitudeStats run_mc(double magnitude, const ConvergenceConfig& config,
                        const ComponentFragility& fragility) const;

  /// run_mc on every magnitude of `grid`, then compute_eafl.
  RiskResult assess(const ConvergenceConfig& config, const ComponentFragility& fragility,
                    const MagnitudeGrid& grid) const;
  RiskResult assess(const ConvergenceConfig& config, const ComponentFragility& fragility) const {
    return assess(config, fragility, inputs_.hazard.magnitudes);
  }

  /// EAFL over the configured grid using the first n[i] samples at magnitude i.
  /// Runs on the calling thread.
  FixedEstimate eafl_fixed(const ComponentFragility& fragility,
                           std::span<const std::size_t> samples_per_magnitude) const;
  FixedEstimate eafl_fixed(const ComponentFragility& fragility, std::size_t samples) const;

  std::size_t memo_size() const;

 private:
  std::shared_ptr<const CorrelatedFieldSampler> sampler(double magnitude) const;
  std::vector<double> sample_batch(double magnitude, std::size_t begin, std::size_t end,
                                   const ComponentFragility& fragility) const;

  ModelInputs inputs_;
  Grid grid_;
  std::uint64_t seed_;
  unsigned threads_;
  FunctionalityMapping mapping_ = FunctionalityMapping::standard();
  ComponentFragility baseline_fragility_;
  std::vector<double> rates_;
  double baseline_mw_ = 0.0;

  mutable std::mutex sampler_mutex_;
  mutable std::map<std::uint64_t, std::shared_ptr<const CorrelatedFieldSampler>> samplers_;
  mutable std::shared_mutex memo_mutex_;
  mutable std::unordered_map<std::string, double> memo_;
};

}  // namespace seisgrid
