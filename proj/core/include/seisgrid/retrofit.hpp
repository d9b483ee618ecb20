#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seisgrid/simulation.hpp"

namespace seisgrid {

/// Retrofit cost of every candidate (the grid's component catalog), M USD.
std::vector<double> candidate_costs(const Grid& grid, const CostTable& costs);

/// Sum of c_i x_i. Throws ValidationError on a length mismatch.
double plan_cost(std::span<const std::uint8_t> x, std::span<const double> costs);

/// eafl + gamma * max(0, cost - budget).
double penalized_fitness(double eafl, double cost_musd, double budget_musd, double gamma);

/// Plans differing by at most this much over budget count as feasible
/// (absorbs summation round-off in costs like 0.1 + 0.2).
inline constexpr double kBudgetTolerance = 1e-9;

struct RetrofitPlan {
  std::vector<std::uint8_t> x;
  double cost_musd = 0.0;
  std::optional<double> eafl;

  std::vector<ComponentKey> selected(const Grid& grid) const;
};

struct SensitivityRecord {
  ComponentKey component;
  double s_up = 0.0;    // EAFL change with the component's medians scaled by (1 + factor)
  double s_down = 0.0;  // ... by (1 - factor)
};

struct SensitivityReport {
  double factor = 0.0;
  double baseline_eafl = 0.0;
  std::vector<std::size_t> samples_per_magnitude;
  std::vector<SensitivityRecord> records;  // catalog order
};

/// Per-component fragility with the four medians of `component` scaled.
ComponentFragility perturb_component(const ComponentFragility& base, std::size_t component,
                                     double scale);

/// One-at-a-time sensitivity of every component. Baseline and perturbed EAFL
/// use the same first n[i] samples at each magnitude. factor must lie in [0, 1).
SensitivityReport oat_sensitivity(const RiskEngine& engine, double factor,
                                  std::span<const std::size_t> samples_per_magnitude);

/// max(|S_up|, |S_down|) per component.
std::vector<double> sensitivity_scores(const SensitivityReport& report);

struct CategoryRecord {
  std::string label;  // class key, or "all"
  double eafl = 0.0;
};

struct CategoryReport {
  double baseline_eafl = 0.0;
  std::vector<std::size_t> samples_per_magnitude;
  std::vector<CategoryRecord> records;  // bus, generator, load, substation, all
};

/// EAFL with a whole class moved to the retrofitted curves, plus every class at once.
CategoryReport category_sensitivity(const RiskEngine& engine,
                                    std::span<const std::size_t> samples_per_magnitude);

struct GaParams {
  std::size_t population_size = 40;
  std::size_t generations = 80;
  double crossover_fraction = 0.8;
  double mutation_rate = 0.1;
  std::size_t elite_count = 4;
  std::size_t tournament_size = 2;
  double penalty_gamma = 10.0;
  double seeded_fraction = 0.25;
  double seeded_keep_prob = 0.8;
  std::size_t stagnation_generations = 15;
  std::uint64_t seed = 7;
};

void validate(const GaParams& params);

struct GaGeneration {
  std::size_t generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  double best_feasible_eafl = 0.0;
  double best_feasible_cost = 0.0;
};

struct GaResult {
  double budget_musd = 0.0;
  RetrofitPlan best;         // best budget-feasible plan found
  double best_fitness = 0.0;  // reduced-sample EAFL of `best`
  double best_std_error = 0.0;
  std::optional<RiskResult> final_assessment;  // full convergence re-evaluation
  std::vector<GaGeneration> history;
  std::size_t evaluations = 0;  // distinct plans simulated
};

/// Genetic-algorithm search for budget-feasible plans. Fitness uses a fixed
/// number of samples per magnitude with common random numbers and is cached
/// by plan bit pattern.
class RetrofitOptimizer {
 public:
  explicit RetrofitOptimizer(const RiskEngine& engine, std::size_t fitness_samples = 100);

  std::size_t candidate_count() const { return costs_.size(); }
  const std::vector<double>& costs() const { return costs_; }
  /// Overrides the per-candidate costs (e.g. to rescale them).
  void set_costs(std::vector<double> costs);
  std::size_t fitness_samples() const { return fitness_samples_; }

  /// Reduced-sample EAFL estimate of a plan (cached).
  FixedEstimate evaluate(std::span<const std::uint8_t> x) const;
  double fitness(std::span<const std::uint8_t> x, double budget_musd, double gamma) const;

  /// scores rank candidates for the seeded part of the initial population;
  /// empty scores compute one-at-a-time sensitivity at the fitness sample count.
  /// final_config, when set, re-evaluates the best plan with run_mc.
  GaResult optimize(double budget_musd, const GaParams& params, std::span<const double> scores,
                    const std::optional<ConvergenceConfig>& final_config) const;

  std::vector<double> default_scores(double factor = 0.5) const;
  std::size_t cache_size() const;

 private:
  const RiskEngine& engine_;
  std::size_t fitness_samples_;
  std::vector<double> costs_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, FixedEstimate> cache_;
};

struct TradeoffRow {
  double budget_musd = 0.0;
  GaResult result;
};

/// Independent optimize() per budget with the same parameters and seed.
std::vector<TradeoffRow> budget_sweep(const RetrofitOptimizer& optimizer,
                                      std::span<const double> budgets, const GaParams& params,
                                      std::span<const double> scores,
                                      const std::optional<ConvergenceConfig>& final_config);

}  // namespace seisgrid
