#include "seisgrid/retrofit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seisgrid/parallel.hpp"

namespace seisgrid {

std::vector<double> candidate_costs(const Grid& grid, const CostTable& costs) {
  std::vector<double> c(grid.component_count());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = costs.cost_of(grid.component(i));
  return c;
}

double plan_cost(std::span<const std::uint8_t> x, std::span<const double> costs) {
  if (x.size() != costs.size()) {
    throw ValidationError("plan has " + std::to_string(x.size()) + " genes for " +
                          std::to_string(costs.size()) + " candidates");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) total += costs[i];
  }
  return total;
}

double penalized_fitness(double eafl, double cost_musd, double budget_musd, double gamma) {
  return eafl + gamma * std::max(0.0, cost_musd - budget_musd);
}

std::vector<ComponentKey> RetrofitPlan::selected(const Grid& grid) const {
  std::vector<ComponentKey> keys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) keys.push_back(grid.component(i));
  }
  return keys;
}

ComponentFragility perturb_component(const ComponentFragility& base, std::size_t component,
                                     double scale) {
  ComponentFragility f = base;
  f.curves.at(component) = f.curves[component].scaled_medians(scale);
  return f;
}

SensitivityReport oat_sensitivity(const RiskEngine& engine, double factor,
                                  std::span<const std::size_t> samples_per_magnitude) {
  if (!(factor >= 0.0 && factor < 1.0)) {
    throw ValidationError("perturbation factor must lie in [0, 1)");
  }
  SensitivityReport report;
  report.factor = factor;
  report.samples_per_magnitude.assign(samples_per_magnitude.begin(), samples_per_magnitude.end());
  const auto& base = engine.baseline_fragility();
  report.baseline_eafl = engine.eafl_fixed(base, samples_per_magnitude).eafl;

  const auto& grid = engine.grid();
  const auto n = grid.component_count();
  report.records.resize(n);
  // Task 2i perturbs up, 2i + 1 down.
  std::vector<double> eafl(2 * n);
  parallel_for(2 * n, engine.threads(), [&](std::size_t task) {
    const auto component = task / 2;
    const double scale = task % 2 == 0 ? 1.0 + factor : 1.0 - factor;
    eafl[task] =
        engine.eafl_fixed(perturb_component(base, component, scale), samples_per_magnitude).eafl;
  });
  for (std::size_t i = 0; i < n; ++i) {
    report.records[i] = {grid.component(i), eafl[2 * i] - report.baseline_eafl,
                         eafl[2 * i + 1] - report.baseline_eafl};
  }
  return report;
}

std::vector<double> sensitivity_scores(const SensitivityReport& report) {
  std::vector<double> s;
  s.reserve(report.records.size());
  for (const auto& r : report.records) s.push_back(std::max(std::abs(r.s_up), std::abs(r.s_down)));
  return s;
}

CategoryReport category_sensitivity(const RiskEngine& engine,
                                    std::span<const std::size_t> samples_per_magnitude) {
  CategoryReport report;
  report.samples_per_magnitude.assign(samples_per_magnitude.begin(), samples_per_magnitude.end());
  const auto& grid = engine.grid();
  const auto& table = engine.inputs().fragility;
  report.baseline_eafl = engine.eafl_fixed(engine.baseline_fragility(), samples_per_magnitude).eafl;

  std::vector<ComponentFragility> configs;
  for (auto cls : kComponentClasses) {
    configs.push_back(retrofit_class(table, grid, cls));
    report.records.push_back({std::string(class_key(cls)), 0.0});
  }
  const std::vector<std::uint8_t> all(grid.component_count(), 1);
  configs.push_back(apply_retrofit(table, grid, std::span<const std::uint8_t>(all)));
  report.records.push_back({"all", 0.0});

  parallel_for(configs.size(), engine.threads(), [&](std::size_t i) {
    report.records[i].eafl = engine.eafl_fixed(configs[i], samples_per_magnitude).eafl;
  });
  return report;
}

void validate(const GaParams& p) {
  if (p.population_size < 2) throw ValidationError("GA population must have at least 2 members");
  if (p.elite_count >= p.population_size) {
    throw ValidationError("elite count must be smaller than the population");
  }
  if (p.tournament_size < 1) throw ValidationError("tournament size must be positive");
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(p.crossover_fraction) || !unit(p.mutation_rate) || !unit(p.seeded_fraction) ||
      !unit(p.seeded_keep_prob)) {
    throw ValidationError("GA rates and fractions must lie in [0, 1]");
  }
  if (!(p.penalty_gamma >= 0.0)) throw ValidationError("penalty gamma must be non-negative");
}

RetrofitOptimizer::RetrofitOptimizer(const RiskEngine& engine, std::size_t fitness_samples)
    : engine_(engine),
      fitness_samples_(fitness_samples),
      costs_(candidate_costs(engine.grid(), engine.inputs().costs)) {
  if (fitness_samples_ == 0) throw ValidationError("fitness sample count must be positive");
}

void RetrofitOptimizer::set_costs(std::vector<double> costs) {
  if (costs.size() != costs_.size()) throw ValidationError("cost vector has the wrong length");
  for (double c : costs) {
    if (!(c > 0.0)) throw ValidationError("candidate costs must be positive");
  }
  costs_ = std::move(costs);
}

FixedEstimate RetrofitOptimizer::evaluate(std::span<const std::uint8_t> x) const {
  if (x.size() != costs_.size()) throw ValidationError("plan length does not match candidates");
  std::string key(x.begin(), x.end());
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const auto fragility = apply_retrofit(engine_.inputs().fragility, engine_.grid(), x);
  auto est = engine_.eafl_fixed(fragility, fitness_samples_);
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(std::move(key), est);
  return est;
}

double RetrofitOptimizer::fitness(std::span<const std::uint8_t> x, double budget_musd,
                                  double gamma) const {
  return penalized_fitness(evaluate(x).eafl, plan_cost(x, costs_), budget_musd, gamma);
}

std::size_t RetrofitOptimizer::cache_size() const {
  std::lock_guard lock(cache_mutex_);
  return cache_.size();
}

std::vector<double> RetrofitOptimizer::default_scores(double factor) const {
  std::vector<std::size_t> n(engine_.grid_magnitudes().size(), fitness_samples_);
  return sensitivity_scores(oat_sensitivity(engine_, factor, n));
}

namespace {

using Genome = std::vector<std::uint8_t>;

struct Member {
  Genome x;
  double cost = 0.0;
  double eafl = 0.0;
  double fitness = 0.0;
};

bool feasible(double cost, double budget) { return cost <= budget + kBudgetTolerance; }

}  // namespace

GaResult RetrofitOptimizer::optimize(double budget, const GaParams& params,
                                     std::span<const double> scores,
                                     const std::optional<ConvergenceConfig>& final_config) const {
  validate(params);
  if (costs_.empty()) throw ValidationError("no candidate components to retrofit");
  if (!(budget >= 0.0)) throw ValidationError("budget must be non-negative");
  const auto genes = costs_.size();
  const auto pop = params.population_size;

  std::vector<double> own_scores;
  if (scores.empty()) {
    own_scores = default_scores();
    scores = own_scores;
  }
  if (scores.size() != genes) throw ValidationError("sensitivity scores do not match candidates");

  GaResult result;
  result.budget_musd = budget;

  auto evaluate_all = [&](std::vector<Member>& members) {
    parallel_for(members.size(), engine_.threads(), [&](std::size_t i) {
      auto& m = members[i];
      m.cost = plan_cost(m.x, costs_);
      m.eafl = evaluate(m.x).eafl;
      m.fitness = penalized_fitness(m.eafl, m.cost, budget, params.penalty_gamma);
    });
  };

  // --- initial population ---
  std::vector<std::size_t> ranking(genes);
  std::iota(ranking.begin(), ranking.end(), std::size_t{0});
  std::stable_sort(ranking.begin(), ranking.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  const double total_cost = std::accumulate(costs_.begin(), costs_.end(), 0.0);
  const double random_p = std::min(0.5, budget / total_cost);
  const auto seeded = std::min<std::size_t>(
      pop, static_cast<std::size_t>(std::llround(params.seeded_fraction * static_cast<double>(pop))));

  std::vector<Member> population(pop);
  for (std::size_t slot = 0; slot < pop; ++slot) {
    Rng rng(mix_seed({params.seed, 0, slot, 0x1417}));
    Genome x(genes, 0);
    if (slot < std::max<std::size_t>(seeded, 1)) {
      // Greedy fill in ranking order; later seeded members skip candidates at random.
      double spent = 0.0;
      for (auto g : ranking) {
        if (slot > 0 && uniform01(rng) >= params.seeded_keep_prob) continue;
        if (feasible(spent + costs_[g], budget)) {
          x[g] = 1;
          spent += costs_[g];
        }
      }
    } else {
      for (auto& gene : x) gene = uniform01(rng) < random_p ? 1 : 0;
    }
    population[slot].x = std::move(x);
  }
  evaluate_all(population);

  std::optional<Member> best_feasible;
  auto consider = [&](const std::vector<Member>& members) {
    for (const auto& m : members) {
      if (!feasible(m.cost, budget)) continue;
      if (!best_feasible || m.eafl < best_feasible->eafl ||
          (m.eafl == best_feasible->eafl &&
           (m.cost < best_feasible->cost ||
            (m.cost == best_feasible->cost && m.x < best_feasible->x)))) {
        best_feasible = m;
      }
    }
  };

  auto ranked = [](const std::vector<Member>& members) {
    std::vector<std::size_t> order(members.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return members[a].fitness < members[b].fitness;
    });
    return order;
  };

  auto record = [&](std::size_t generation, const std::vector<Member>& members) {
    GaGeneration g;
    g.generation = generation;
    g.best_fitness = members[ranked(members).front()].fitness;
    double sum = 0.0;
    for (const auto& m : members) sum += m.fitness;
    g.mean_fitness = sum / static_cast<double>(members.size());
    g.best_feasible_eafl = best_feasible ? best_feasible->eafl : 0.0;
    g.best_feasible_cost = best_feasible ? best_feasible->cost : 0.0;
    result.history.push_back(g);
  };

  consider(population);
  record(0, population);
  double best_so_far = result.history.back().best_fitness;
  std::size_t stagnant = 0;

  const auto elites = params.elite_count;
  const auto offspring = pop - elites;
  const auto crossovers = static_cast<std::size_t>(
      std::llround(params.crossover_fraction * static_cast<double>(offspring)));

  for (std::size_t gen = 1; gen <= params.generations; ++gen) {
    if (stagnant >= params.stagnation_generations) break;
    const auto order = ranked(population);
    std::vector<Member> next;
    next.reserve(pop);
    for (std::size_t e = 0; e < elites; ++e) next.push_back(population[order[e]]);

    auto tournament = [&](Rng& rng) -> const Member& {
      std::size_t pick = pop;
      for (std::size_t t = 0; t < params.tournament_size; ++t) {
        const auto c = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(pop));
        if (pick == pop || population[c].fitness < population[pick].fitness ||
            (population[c].fitness == population[pick].fitness && c < pick)) {
          pick = c;
        }
      }
      return population[pick];
    };

    for (std::size_t child = 0; child < offspring; ++child) {
      Rng rng(mix_seed({params.seed, gen, elites + child, 0x6A}));
      Member m;
      if (child < crossovers) {
        const auto& a = tournament(rng);
        const auto& b = tournament(rng);
        m.x.resize(genes);
        for (std::size_t g = 0; g < genes; ++g) m.x[g] = uniform01(rng) < 0.5 ? a.x[g] : b.x[g];
      } else {
        m.x = tournament(rng).x;
        for (auto& gene : m.x) {
          if (uniform01(rng) < params.mutation_rate) gene ^= 1;
        }
      }
      next.push_back(std::move(m));
    }
    std::vector<Member> fresh(next.begin() + static_cast<std::ptrdiff_t>(elites), next.end());
    evaluate_all(fresh);
    std::move(fresh.begin(), fresh.end(), next.begin() + static_cast<std::ptrdiff_t>(elites));
    population = std::move(next);

    consider(population);
    record(gen, population);
    const double best = result.history.back().best_fitness;
    if (best < best_so_far - 1e-15) {
      best_so_far = best;
      stagnant = 0;
    } else {
      ++stagnant;
    }
  }

  // The greedy seed is always feasible, so best_feasible is set.
  const Member& chosen = *best_feasible;
  result.best.x = chosen.x;
  result.best.cost_musd = chosen.cost;
  result.best_fitness = chosen.eafl;
  result.best_std_error = evaluate(chosen.x).std_error;
  result.best.eafl = chosen.eafl;
  if (final_config) {
    const auto fragility = apply_retrofit(engine_.inputs().fragility, engine_.grid(),
                                          std::span<const std::uint8_t>(chosen.x));
    result.final_assessment = engine_.assess(*final_config, fragility);
    result.best.eafl = result.final_assessment->eafl;
  }
  result.evaluations = cache_size();
  return result;
}

std::vector<TradeoffRow> budget_sweep(const RetrofitOptimizer& optimizer,
                                      std::span<const double> budgets, const GaParams& params,
                                      std::span<const double> scores,
                                      const std::optional<ConvergenceConfig>& final_config) {
  if (!std::is_sorted(budgets.begin(), budgets.end())) {
    throw ValidationError("budgets must be sorted ascending");
  }
  std::vector<double> own_scores;
  if (scores.empty()) {
    own_scores = optimizer.default_scores();
    scores = own_scores;
  }
  std::vector<TradeoffRow> rows;
  for (double b : budgets) rows.push_back({b, optimizer.optimize(b, params, scores, final_config)});
  return rows;
}

}  // namespace seisgrid
