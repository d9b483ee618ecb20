#include "seisgrid/output.hpp"

#include <fmt/format.h>

#include <nlohmann/json.hpp>

#include "seisgrid/config_io.hpp"

namespace seisgrid {

namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string seed_line(std::uint64_t seed) { return fmt::format("# seed={}\n", seed); }

Json ids_of(const std::vector<ComponentKey>& keys) {
  Json a = Json::array();
  for (const auto& k : keys) a.push_back(k.name());
  return a;
}

}  // namespace

std::string risk_json(const RiskResult& risk) {
  Json j;
  j["seed"] = risk.seed;
  j["baseline_mw"] = risk.baseline_mw;
  j["eafl"] = risk.eafl;
  j["eafl_std_error"] = risk.eafl_std_error;
  Json rows = Json::array();
  for (std::size_t i = 0; i < risk.magnitudes.size(); ++i) {
    const auto& s = risk.stats[i];
    Json r;
    r["magnitude"] = risk.magnitudes[i];
    r["annual_rate"] = risk.rates[i];
    r["mean_norm_func"] = s.mean_norm;
    r["std_norm_func"] = s.std_norm;
    r["ci_halfwidth"] = s.ci_halfwidth;
    r["n_samples"] = s.n_samples();
    r["stop"] = stop_reason_name(s.stop);
    r["contribution"] = risk.contributions[i];
    rows.push_back(std::move(r));
  }
  j["magnitudes"] = std::move(rows);
  return dump(j);
}

std::string functionality_csv(const RiskResult& risk) {
  std::string out = seed_line(risk.seed);
  out += "M,mean_norm_func,ci_lo,ci_hi,n_samples\n";
  for (const auto& s : risk.stats) {
    out += fmt::format("{},{},{},{},{}\n", s.magnitude, s.mean_norm, s.mean_norm - s.ci_halfwidth,
                       s.mean_norm + s.ci_halfwidth, s.n_samples());
  }
  return out;
}

std::string samples_csv(const RiskResult& risk) {
  std::string out = seed_line(risk.seed);
  out += "M,sample,served_mw,norm_func\n";
  for (const auto& s : risk.stats) {
    for (std::size_t k = 0; k < s.samples_mw.size(); ++k) {
      out += fmt::format("{},{},{},{}\n", s.magnitude, k, s.samples_mw[k],
                         s.samples_mw[k] / risk.baseline_mw);
    }
  }
  return out;
}

std::string sensitivity_csv(const SensitivityReport& report, std::uint64_t seed) {
  std::string out = seed_line(seed);
  out += "component,S_i_up,S_i_down\n";
  for (const auto& r : report.records) {
    out += fmt::format("{},{},{}\n", r.component.name(), r.s_up, r.s_down);
  }
  return out;
}

std::string category_csv(const CategoryReport& report, std::uint64_t seed) {
  std::string out = seed_line(seed);
  out += "category,eafl,delta_eafl\n";
  out += fmt::format("baseline,{},0\n", report.baseline_eafl);
  for (const auto& r : report.records) {
    out += fmt::format("{},{},{}\n", r.label, r.eafl, r.eafl - report.baseline_eafl);
  }
  return out;
}

std::string plan_json(const GaResult& result, const Grid& grid, double baseline_eafl,
                      std::uint64_t seed) {
  Json j;
  j["seed"] = seed;
  j["budget_musd"] = result.budget_musd;
  j["cost_musd"] = result.best.cost_musd;
  j["selected"] = ids_of(result.best.selected(grid));
  j["n_selected"] = result.best.selected(grid).size();
  j["baseline_eafl"] = baseline_eafl;
  j["eafl"] = result.best.eafl.value_or(result.best_fitness);
  if (result.final_assessment) j["eafl_std_error"] = result.final_assessment->eafl_std_error;
  j["eafl_reduced_sampling"] = result.best_fitness;
  j["eafl_reduced_std_error"] = result.best_std_error;
  j["generations"] = result.history.empty() ? 0 : result.history.back().generation;
  j["distinct_plans_evaluated"] = result.evaluations;
  return dump(j);
}

std::string ga_history_csv(const GaResult& result, std::uint64_t seed) {
  std::string out = seed_line(seed);
  out += "generation,best_fitness,mean_fitness,best_feasible_eafl,best_feasible_cost_musd\n";
  for (const auto& g : result.history) {
    out += fmt::format("{},{},{},{},{}\n", g.generation, g.best_fitness, g.mean_fitness,
                       g.best_feasible_eafl, g.best_feasible_cost);
  }
  return out;
}

std::string tradeoff_csv(const std::vector<TradeoffRow>& rows, const Grid& grid,
                         std::uint64_t seed) {
  std::string out = seed_line(seed);
  out += "budget,eafl,eafl_std_error,cost_musd,n_selected,selected\n";
  for (const auto& row : rows) {
    const auto& r = row.result;
    const auto keys = r.best.selected(grid);
    std::string names;
    for (const auto& k : keys) {
      if (!names.empty()) names += ';';
      names += k.name();
    }
    const double se = r.final_assessment ? r.final_assessment->eafl_std_error : r.best_std_error;
    out += fmt::format("{},{},{},{},{},\"{}\"\n", row.budget_musd,
                       r.best.eafl.value_or(r.best_fitness), se, r.best.cost_musd, keys.size(),
                       names);
  }
  return out;
}

namespace {

Json islands_json(const ScenarioDetail& d, const Grid& grid) {
  const auto& model = grid.model();
  Json islands = Json::array();
  for (std::size_t i = 0; i < d.partition.islands.size(); ++i) {
    const auto& isl = d.partition.islands[i];
    Json j;
    j["index"] = i + 1;
    Json buses = Json::array();
    for (auto b : isl.buses) buses.push_back(model.buses[b].id);
    j["buses"] = std::move(buses);
    Json lines = Json::array();
    for (auto l : isl.lines) lines.push_back(model.lines[l].id);
    j["lines"] = std::move(lines);
    j["viable"] = static_cast<bool>(d.viable[i]);
    if (!d.viable[i]) {
      j["served_mw"] = 0.0;
      islands.push_back(std::move(j));
      continue;
    }
    const auto& c = d.cases[i];
    const auto& r = d.dispatch[i];
    double capacity = 0.0;
    for (const auto& u : c.units) capacity += u.pmax_mw;
    j["slack_bus"] = c.slack_bus;
    j["demand_mw"] = c.total_demand_mw();
    j["capacity_mw"] = capacity;
    j["converged"] = r.converged;
    j["served_mw"] = r.total_served_mw();
    j["shed_loads"] = r.shed_load_ids;
    j["cost_per_hour"] = r.objective_cost;
    Json gens = Json::array();
    for (std::size_t g = 0; g < c.units.size(); ++g) {
      gens.push_back({{"id", c.units[g].id},
                      {"bus", c.units[g].bus},
                      {"pg_mw", r.converged ? r.pg_mw[g] : 0.0}});
    }
    j["generators"] = std::move(gens);
    Json flows = Json::array();
    for (std::size_t l = 0; l < c.branches.size(); ++l) {
      flows.push_back({{"line", c.branches[l].id},
                       {"flow_mw", r.converged ? r.flows_mw[l] : 0.0},
                       {"limit_mw", c.branches[l].limit_mw}});
    }
    j["flows"] = std::move(flows);
    islands.push_back(std::move(j));
  }
  return islands;
}

}  // namespace

std::string scenario_json(const ScenarioDetail& d, const Grid& grid, double baseline_mw,
                          std::uint64_t seed) {
  Json j;
  j["seed"] = seed;
  j["magnitude"] = d.magnitude;
  j["sample_index"] = d.sample_index;
  j["served_mw"] = d.served_mw;
  j["baseline_mw"] = baseline_mw;
  j["norm_func"] = d.served_mw / baseline_mw;
  Json comps = Json::array();
  const auto& sites = grid.site_locations();
  for (std::size_t i = 0; i < grid.component_count(); ++i) {
    const auto key = grid.component(i);
    Json c;
    c["component"] = key.name();
    c["class"] = std::string(class_key(key.cls));
    c["id"] = key.id;
    c["x_km"] = sites[i].x_km;
    c["y_km"] = sites[i].y_km;
    if (!d.pga_g.empty()) {
      c["ln_mean"] = d.ln_mean[i];
      c["sigma"] = d.sigma[i];
      c["pga_g"] = d.pga_g[i];
    }
    c["ds"] = d.damage.ds[i];
    c["alpha"] = d.damage.alpha[i];
    comps.push_back(std::move(c));
  }
  j["components"] = std::move(comps);
  j["islands"] = islands_json(d, grid);
  return dump(j);
}

std::string baseline_json(const ScenarioDetail& d, const Grid& grid) {
  Json j;
  j["served_mw"] = d.served_mw;
  j["demand_mw"] = grid.model().total_demand_mw();
  j["capacity_mw"] = grid.model().total_capacity_mw();
  j["islands"] = islands_json(d, grid);
  return dump(j);
}

std::string baseline_text(const ScenarioDetail& d, const Grid& grid) {
  std::string out = fmt::format("served = {:.1f} MW (demand {:.1f} MW, capacity {:.1f} MW)\n",
                                d.served_mw, grid.model().total_demand_mw(),
                                grid.model().total_capacity_mw());
  for (std::size_t i = 0; i < d.partition.islands.size(); ++i) {
    if (!d.viable[i]) continue;
    const auto& c = d.cases[i];
    const auto& r = d.dispatch[i];
    if (!r.converged) continue;
    out += fmt::format("island {}: slack bus {}, cost {:.2f} per hour\n", i + 1, c.slack_bus,
                       r.objective_cost);
    out += "  generator  bus      pg_mw\n";
    for (std::size_t g = 0; g < c.units.size(); ++g) {
      out += fmt::format("  {:>9}  {:>3}  {:>9.2f}\n", c.units[g].id, c.units[g].bus, r.pg_mw[g]);
    }
    out += "  line  from  to    flow_mw   limit_mw\n";
    for (std::size_t l = 0; l < c.branches.size(); ++l) {
      const auto& br = c.branches[l];
      out += fmt::format("  {:>4}  {:>4}  {:>2}  {:>9.2f}  {:>9.2f}\n", br.id, br.from_bus,
                         br.to_bus, r.flows_mw[l], br.limit_mw);
    }
  }
  return out;
}

std::string manifest_json(const RunManifest& m) {
  Json j;
  j["subcommand"] = m.subcommand;
  j["seed"] = m.seed;
  Json inputs = Json::object();
  for (const auto& [k, v] : m.inputs) inputs[k] = v;
  j["inputs"] = std::move(inputs);
  j["output_dir"] = m.output_dir;
  Json overrides = Json::object();
  for (const auto& [k, v] : m.overrides) overrides[k] = v;
  j["overrides"] = std::move(overrides);
  j["outputs"] = m.outputs;
  return dump(j);
}

std::vector<std::string> write_risk_outputs(const std::filesystem::path& dir,
                                            const RiskResult& risk) {
  if (risk.magnitudes.empty() || risk.stats.empty()) {
    throw ValidationError("risk result has an empty magnitude grid; nothing written");
  }
  write_text_file(dir / "risk.json", risk_json(risk));
  write_text_file(dir / "functionality_by_magnitude.csv", functionality_csv(risk));
  write_text_file(dir / "mc_samples.csv", samples_csv(risk));
  return {"risk.json", "functionality_by_magnitude.csv", "mc_samples.csv"};
}

}  // namespace seisgrid
