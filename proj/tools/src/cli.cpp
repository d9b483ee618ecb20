#include "seisgrid_cli/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <optional>

#include "seisgrid/config_io.hpp"
#include "seisgrid/output.hpp"
#include "seisgrid/parallel.hpp"
#include "seisgrid/retrofit.hpp"
#include "seisgrid/simulation.hpp"

namespace seisgrid::cli {

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::string network = SEISGRID_DEFAULT_DATA_DIR "/network.json";
  std::string hazard = SEISGRID_DEFAULT_DATA_DIR "/hazard.json";
  std::string fragility = SEISGRID_DEFAULT_DATA_DIR "/fragility.json";
  std::string costs = SEISGRID_DEFAULT_DATA_DIR "/costs.json";
  std::string out = "out";
  std::uint64_t seed = 7;
  unsigned threads = default_thread_count();
  bool json = false;
};

struct SamplingOptions {
  ConvergenceConfig convergence;
};

struct GaOptions {
  GaParams params;
  std::size_t fitness_samples = 100;
  bool final_reevaluation = true;
};

void add_sampling(CLI::App* cmd, SamplingOptions& s) {
  cmd->add_option("--min-samples", s.convergence.min_samples, "Samples before the first check");
  cmd->add_option("--max-samples", s.convergence.max_samples, "Sample cap per magnitude");
  cmd->add_option("--check-interval", s.convergence.check_interval, "Samples between checks");
  cmd->add_option("--tau", s.convergence.tau, "Relative mean-change threshold");
  cmd->add_option("--delta", s.convergence.delta, "95% CI width threshold");
}

void add_ga(CLI::App* cmd, GaOptions& g) {
  cmd->add_option("--population", g.params.population_size, "GA population size");
  cmd->add_option("--generations", g.params.generations, "GA generation cap");
  cmd->add_option("--elite", g.params.elite_count, "Elite individuals per generation");
  cmd->add_option("--mutation-rate", g.params.mutation_rate, "Per-gene flip probability");
  cmd->add_option("--crossover-fraction", g.params.crossover_fraction,
                  "Share of non-elite children made by crossover");
  cmd->add_option("--gamma", g.params.penalty_gamma, "Budget penalty factor");
  cmd->add_option("--stagnation", g.params.stagnation_generations,
                  "Stop after this many generations without improvement");
  cmd->add_option("--fitness-samples", g.fitness_samples, "Samples per magnitude per fitness");
  cmd->add_flag("!--no-final-eval", g.final_reevaluation,
                "Skip the full-convergence re-evaluation of the best plan");
}

ModelInputs load_all(const GlobalOptions& g) {
  return load_inputs({g.network, g.hazard, g.fragility, g.costs});
}

RunManifest manifest_for(const std::string& sub, const GlobalOptions& g) {
  RunManifest m;
  m.subcommand = sub;
  m.inputs = {{"network", g.network},
              {"hazard", g.hazard},
              {"fragility", g.fragility},
              {"costs", g.costs}};
  m.seed = g.seed;
  m.output_dir = g.out;
  return m;
}

void put_convergence(RunManifest& m, const ConvergenceConfig& c) {
  m.overrides["min_samples"] = std::to_string(c.min_samples);
  m.overrides["max_samples"] = std::to_string(c.max_samples);
  m.overrides["check_interval"] = std::to_string(c.check_interval);
  m.overrides["tau"] = fmt::format("{}", c.tau);
  m.overrides["delta"] = fmt::format("{}", c.delta);
}

void put_ga(RunManifest& m, const GaOptions& o) {
  const auto& p = o.params;
  m.overrides["population"] = std::to_string(p.population_size);
  m.overrides["generations"] = std::to_string(p.generations);
  m.overrides["elite"] = std::to_string(p.elite_count);
  m.overrides["mutation_rate"] = fmt::format("{}", p.mutation_rate);
  m.overrides["crossover_fraction"] = fmt::format("{}", p.crossover_fraction);
  m.overrides["gamma"] = fmt::format("{}", p.penalty_gamma);
  m.overrides["stagnation"] = std::to_string(p.stagnation_generations);
  m.overrides["fitness_samples"] = std::to_string(o.fitness_samples);
  m.overrides["final_eval"] = o.final_reevaluation ? "true" : "false";
}

void finish(RunManifest& m, const fs::path& dir) {
  m.outputs.push_back("manifest.json");
  write_text_file(dir / "manifest.json", manifest_json(m));
}

int cmd_baseline(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const Grid grid(load_network(g.network));
  const auto detail = evaluate_network(grid, intact_damage(grid));
  out << (g.json ? baseline_json(detail, grid) : baseline_text(detail, grid));

  const double demand = grid.model().total_demand_mw();
  bool full = std::abs(detail.served_mw - demand) <= 1e-6 * std::max(1.0, demand);
  for (const auto& r : detail.dispatch) full = full && r.shed_load_ids.empty();
  if (!full) {
    err << fmt::format(
        "error: intact network dispatch is infeasible: served {:.3f} of {:.3f} MW demand "
        "(capacity {:.3f} MW)\n",
        detail.served_mw, demand, grid.model().total_capacity_mw());
    return 1;
  }
  return 0;
}

int cmd_scenario(const GlobalOptions& g, double magnitude, std::size_t sample, std::ostream& out) {
  if (!(magnitude > 0.0)) throw ValidationError("magnitude must be positive");
  RiskEngine engine(load_all(g), g.seed, g.threads);
  const auto detail = engine.simulate_detail(magnitude, sample, engine.baseline_fragility());
  const fs::path dir = g.out;
  const auto name = fmt::format("scenario_{}.json", g.seed);
  write_text_file(dir / name, scenario_json(detail, engine.grid(), engine.baseline_mw(), g.seed));
  auto m = manifest_for("scenario", g);
  m.overrides["magnitude"] = fmt::format("{}", magnitude);
  m.overrides["sample"] = std::to_string(sample);
  m.outputs.push_back(name);
  finish(m, dir);
  out << fmt::format("M={} sample={} islands={} served={:.2f} MW ({:.4f} of baseline)\n",
                     magnitude, sample, detail.partition.islands.size(), detail.served_mw,
                     detail.served_mw / engine.baseline_mw());
  return 0;
}

int cmd_assess(const GlobalOptions& g, const SamplingOptions& s, std::ostream& out) {
  RiskEngine engine(load_all(g), g.seed, g.threads);
  const auto risk = engine.assess(s.convergence, engine.baseline_fragility());
  const fs::path dir = g.out;
  auto m = manifest_for("assess", g);
  put_convergence(m, s.convergence);
  m.outputs = write_risk_outputs(dir, risk);
  finish(m, dir);
  if (g.json) {
    out << risk_json(risk);
  } else {
    out << fmt::format("EAFL = {:.6f} (std error {:.6f})\n", risk.eafl, risk.eafl_std_error);
    for (const auto& st : risk.stats) {
      out << fmt::format("  M={:<5} mean functionality {:.4f} +/- {:.4f}  n={} ({})\n",
                         st.magnitude, st.mean_norm, st.ci_halfwidth, st.n_samples(),
                         stop_reason_name(st.stop));
    }
  }
  return 0;
}

std::vector<std::size_t> sample_counts(const RiskResult& risk) {
  std::vector<std::size_t> n;
  for (const auto& st : risk.stats) n.push_back(st.n_samples());
  return n;
}

int cmd_sensitivity(const GlobalOptions& g, const SamplingOptions& s, double perturb,
                    std::ostream& out) {
  RiskEngine engine(load_all(g), g.seed, g.threads);
  const auto risk = engine.assess(s.convergence, engine.baseline_fragility());
  const auto counts = sample_counts(risk);
  const auto oat = oat_sensitivity(engine, perturb, counts);
  const auto category = category_sensitivity(engine, counts);

  const fs::path dir = g.out;
  write_text_file(dir / "sensitivity.csv", sensitivity_csv(oat, g.seed));
  write_text_file(dir / "category_sensitivity.csv", category_csv(category, g.seed));
  auto m = manifest_for("sensitivity", g);
  put_convergence(m, s.convergence);
  m.overrides["perturb"] = fmt::format("{}", perturb);
  m.outputs = {"sensitivity.csv", "category_sensitivity.csv"};
  finish(m, dir);

  auto order = oat.records;
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return std::max(std::abs(a.s_up), std::abs(a.s_down)) >
           std::max(std::abs(b.s_up), std::abs(b.s_down));
  });
  out << fmt::format("baseline EAFL = {:.6f}\n", oat.baseline_eafl);
  out << "top components by |delta EAFL|:\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(10, order.size()); ++i) {
    out << fmt::format("  {:<8} up {:+.6f}  down {:+.6f}\n", order[i].component.name(),
                       order[i].s_up, order[i].s_down);
  }
  out << "category retrofit:\n";
  for (const auto& r : category.records) {
    out << fmt::format("  {:<10} EAFL {:.6f}\n", r.label, r.eafl);
  }
  return 0;
}

int cmd_optimize(const GlobalOptions& g, const SamplingOptions& s, const GaOptions& o,
                 double budget, std::ostream& out) {
  RiskEngine engine(load_all(g), g.seed, g.threads);
  RetrofitOptimizer optimizer(engine, o.fitness_samples);
  auto params = o.params;
  params.seed = g.seed;
  std::optional<ConvergenceConfig> final_config;
  if (o.final_reevaluation) final_config = s.convergence;
  const auto result = optimizer.optimize(budget, params, {}, final_config);
  const auto baseline =
      o.final_reevaluation ? engine.assess(s.convergence, engine.baseline_fragility()).eafl
                           : optimizer.evaluate(std::vector<std::uint8_t>(optimizer.candidate_count(), 0)).eafl;

  const fs::path dir = g.out;
  write_text_file(dir / "plan.json", plan_json(result, engine.grid(), baseline, g.seed));
  write_text_file(dir / "ga_history.csv", ga_history_csv(result, g.seed));
  auto m = manifest_for("optimize", g);
  put_convergence(m, s.convergence);
  put_ga(m, o);
  m.overrides["budget"] = fmt::format("{}", budget);
  m.outputs = {"plan.json", "ga_history.csv"};
  finish(m, dir);
  if (g.json) {
    out << plan_json(result, engine.grid(), baseline, g.seed);
  } else {
    out << fmt::format("budget {} M USD: cost {} M USD, EAFL {:.6f} -> {:.6f}\n", budget,
                       result.best.cost_musd, baseline, result.best.eafl.value_or(0.0));
    out << "selected:";
    for (const auto& k : result.best.selected(engine.grid())) out << ' ' << k.name();
    out << '\n';
  }
  return 0;
}

int cmd_tradeoff(const GlobalOptions& g, const SamplingOptions& s, const GaOptions& o,
                 std::vector<double> budgets, std::ostream& out) {
  if (budgets.empty()) throw ValidationError("--budgets needs at least one value");
  std::sort(budgets.begin(), budgets.end());
  RiskEngine engine(load_all(g), g.seed, g.threads);
  RetrofitOptimizer optimizer(engine, o.fitness_samples);
  auto params = o.params;
  params.seed = g.seed;
  std::optional<ConvergenceConfig> final_config;
  if (o.final_reevaluation) final_config = s.convergence;
  const auto rows = budget_sweep(optimizer, budgets, params, {}, final_config);

  const fs::path dir = g.out;
  write_text_file(dir / "tradeoff.csv", tradeoff_csv(rows, engine.grid(), g.seed));
  auto m = manifest_for("tradeoff", g);
  put_convergence(m, s.convergence);
  put_ga(m, o);
  std::string list;
  for (double b : budgets) list += (list.empty() ? "" : ",") + fmt::format("{}", b);
  m.overrides["budgets"] = list;
  m.outputs = {"tradeoff.csv"};
  finish(m, dir);
  for (const auto& row : rows) {
    out << fmt::format("budget {:>6}: cost {:>5} EAFL {:.6f}  n={}\n", row.budget_musd,
                       row.result.best.cost_musd, row.result.best.eafl.value_or(0.0),
                       row.result.best.selected(engine.grid()).size());
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Seismic risk assessment and retrofit planning for power networks", "seisgrid"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--network", g.network, "Network JSON");
  app.add_option("--hazard", g.hazard, "Hazard JSON");
  app.add_option("--fragility", g.fragility, "Fragility JSON");
  app.add_option("--costs", g.costs, "Retrofit cost JSON");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--seed", g.seed, "Master random seed");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "Machine-readable stdout");

  SamplingOptions sampling;
  GaOptions ga;

  auto* baseline = app.add_subcommand("baseline", "Dispatch the undamaged network");

  double magnitude = 0.0;
  std::size_t sample = 0;
  auto* scenario = app.add_subcommand("scenario", "Sample and report one damage scenario");
  scenario->add_option("--magnitude", magnitude, "Moment magnitude")->required();
  scenario->add_option("--sample", sample, "Sample index within the seed's stream");

  auto* assess = app.add_subcommand("assess", "Monte Carlo risk assessment (EAFL)");
  add_sampling(assess, sampling);

  double perturb = 0.5;
  auto* sensitivity = app.add_subcommand("sensitivity", "One-at-a-time and category sensitivity");
  sensitivity->add_option("--perturb", perturb, "Relative median perturbation");
  add_sampling(sensitivity, sampling);

  double budget = 0.0;
  auto* optimize = app.add_subcommand("optimize", "GA retrofit plan under a budget");
  optimize->add_option("--budget", budget, "Budget, million USD")->required();
  add_sampling(optimize, sampling);
  add_ga(optimize, ga);

  std::vector<double> budgets;
  auto* tradeoff = app.add_subcommand("tradeoff", "Optimize over several budgets");
  tradeoff->add_option("--budgets", budgets, "Budgets, million USD")
      ->required()
      ->delimiter(',');
  add_sampling(tradeoff, sampling);
  add_ga(tradeoff, ga);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and version exit 0; every other parse failure is a usage error
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*baseline) return cmd_baseline(g, out, err);
    if (*scenario) return cmd_scenario(g, magnitude, sample, out);
    if (*assess) return cmd_assess(g, sampling, out);
    if (*sensitivity) return cmd_sensitivity(g, sampling, perturb, out);
    if (*optimize) return cmd_optimize(g, sampling, ga, budget, out);
    if (*tradeoff) return cmd_tradeoff(g, sampling, ga, budgets, out);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"seisgrid"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace seisgrid::cli
