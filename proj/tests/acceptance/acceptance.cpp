// Acceptance suite: one line per criterion, "[PASS] name: detail" or
// "[FAIL] name: detail". `--only name` (repeatable) restricts the run.
// Exit status is 0 only when every selected criterion passes.

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "seisgrid/config_io.hpp"
#include "seisgrid/hazard.hpp"
#include "seisgrid/retrofit.hpp"
#include "seisgrid/simulation.hpp"
#include "seisgrid_cli/cli.hpp"

namespace sg = seisgrid;
namespace fs = std::filesystem;
using sg::ComponentClass;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

struct Criterion {
  const char* name;
  double time_limit_s;
  std::function<Outcome()> run;
};

sg::ComponentFragility scaled(const sg::ComponentFragility& f, double factor) {
  auto out = f;
  for (auto& c : out.curves) c = c.scaled_medians(factor);
  return out;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// --- baseline dispatch ------------------------------------------------------

Outcome baseline_dispatch() {
  Outcome o;
  const sg::Grid grid(sg::load_network(sg::testing::rts_dir() / "network.json"));
  const auto detail = sg::evaluate_network(grid, sg::intact_damage(grid));
  const double err = std::abs(detail.served_mw - 2850.0) / 2850.0;
  o.require(err <= 1e-6, fmt::format("served {} MW", detail.served_mw));
  o.require(detail.partition.islands.size() == 1, "intact network split into islands");
  o.detail = fmt::format("served {:.6f} MW, relative error {:.2e}", detail.served_mw, err) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// --- GMPE oracle ------------------------------------------------------------

Outcome gmpe_oracle() {
  Outcome o;
  const sg::GmpeCoefficients k;
  const auto ss = sg::Mechanism::StrikeSlip;
  double worst = 0.0;
  auto check = [&](double got, double want, const std::string& what) {
    const double d = std::abs(got - want);
    worst = std::max(worst, d);
    o.require(d <= 1e-10, fmt::format("{}: {} vs {}", what, got, want));
  };

  // Hand-evaluated reference scalars.
  check(sg::gmpe_ln_mean(8.0, 10.0, 760.0, ss, k), -1.0909272951545446, "lnPGA(M8, R10, 760)");
  const auto t = sg::gmpe_terms(8.0, 10.0, 760.0, ss, k);
  check(t.magnitude, 0.0701, "F_M(M8)");
  check(t.distance, -1.1610272951545446, "F_D(M8, R10)");
  check(t.site, 0.0, "F_S at 760");
  for (double m : {5.0, 6.5, 8.5}) {
    for (double r : {0.0, 25.0, 250.0}) {
      check(sg::gmpe_terms(m, r, 760.0, ss, k).site, 0.0, "F_S at 760");
    }
  }
  check(sg::gmpe_sigma(8.0, 10.0, 760.0, k), 0.6050859443087403, "sigma(M8, R10)");
  check(sg::gmpe_sigma(8.0, 300.0, 760.0, k), 0.526430432251024, "sigma(M8, R300)");

  // Term-by-term rewrite over a grid of inputs and every mechanism.
  std::size_t cases = 0;
  for (auto mech : {sg::Mechanism::Unspecified, sg::Mechanism::StrikeSlip, sg::Mechanism::Normal,
                    sg::Mechanism::Reverse}) {
    for (double m = 4.0; m <= 8.5 + 1e-9; m += 0.25) {
      for (double r : {0.0, 1.0, 10.0, 50.0, 110.0, 200.0, 270.0, 300.0}) {
        for (double v : {150.0, 225.0, 260.0, 300.0, 500.0, 760.0, 925.0, 1500.0}) {
          check(sg::gmpe_ln_mean(m, r, v, mech, k), sg::testing::oracle_ln_pga(m, r, v, mech, k),
                fmt::format("lnPGA({}, {}, {})", m, r, v));
          check(sg::gmpe_sigma(m, r, v, k), sg::testing::oracle_sigma(m, r, v, k),
                fmt::format("sigma({}, {}, {})", m, r, v));
          ++cases;
        }
      }
    }
  }
  if (o.pass) o.detail = fmt::format("{} oracle cases, max abs diff {:.2e}", cases, worst);
  return o;
}

// --- correlation field ------------------------------------------------------

Outcome correlation_field() {
  Outcome o;
  const sg::GmpeCoefficients k;
  const sg::Point p1{0.0, 50.0}, p2{40.0, 60.0};
  const int n = 100000;
  double worst_rho = 0.0, worst_std = 0.0;
  for (double m : {6.0, 7.0, 8.0}) {
    for (double d : {1.0, 5.0, 10.0, 25.0, 50.0}) {
      const std::vector<sg::Point> sites{{20.0, 20.0}, {20.0 + d, 20.0}};
      const sg::CorrelatedFieldSampler s(m, sites, p1, p2, 760.0, sg::Mechanism::StrikeSlip, k,
                                         40.0);
      sg::Rng rng(sg::mix_seed({7, sg::magnitude_key(m), static_cast<std::uint64_t>(d)}));
      std::array<double, 2> eps{};
      double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
      for (int i = 0; i < n; ++i) {
        s.sample_residuals(rng, eps);
        sx += eps[0];
        sy += eps[1];
        sxx += eps[0] * eps[0];
        syy += eps[1] * eps[1];
        sxy += eps[0] * eps[1];
      }
      const double mx = sx / n, my = sy / n;
      const double vx = sxx / n - mx * mx, vy = syy / n - my * my;
      const double rho = (sxy / n - mx * my) / std::sqrt(vx * vy);
      const double want = std::exp(-3.0 * d / std::min(5.4 + 4.7 * m, 40.0));
      worst_rho = std::max(worst_rho, std::abs(rho - want));
      o.require(std::abs(rho - want) <= 0.05,
                fmt::format("M={} d={}: rho {:.4f} vs {:.4f}", m, d, rho, want));
      const std::array<double, 2> sd{std::sqrt(vx), std::sqrt(vy)};
      for (std::size_t j = 0; j < 2; ++j) {
        const double rjb = sg::joyner_boore_distance(sites[j], p1, p2);
        const double sigma = sg::gmpe_sigma(m, rjb, 760.0, k);
        const double rel = std::abs(sd[j] / sigma - 1.0);
        worst_std = std::max(worst_std, rel);
        o.require(rel <= 0.02, fmt::format("M={} d={} site {}: std {:.4f} vs sigma {:.4f}", m, d,
                                           j, sd[j], sigma));
      }
    }
  }
  if (o.pass) {
    o.detail = fmt::format("15 site pairs x 1e5 draws, max |rho error| {:.4f}, max std error {:.2f}%",
                           worst_rho, 100.0 * worst_std);
  }
  return o;
}

// --- fragility sampling -----------------------------------------------------

Outcome fragility_sampling() {
  Outcome o;
  const auto table = sg::default_fragility_table();
  const int n = 100000;
  double worst_freq = 0.0;
  sg::Rng rng(sg::mix_seed({7, 0xF7}));
  for (auto cls : {ComponentClass::Bus, ComponentClass::Substation}) {
    const auto& curves = table.base(cls);
    for (double pga : {0.05, 0.13, 0.26, 0.4, 0.74, 1.5}) {
      const auto p = sg::exceedance_probs(pga, curves);
      std::array<int, sg::kDamageStates> counts{};
      for (int i = 0; i < n; ++i) ++counts[sg::sample_damage_state(pga, curves, sg::uniform01(rng))];
      for (int s = 0; s < sg::kDamageStates; ++s) {
        const double hi = s == 0 ? 1.0 : p[s - 1];
        const double lo = s == sg::kLimitStates ? 0.0 : p[s];
        const double diff = std::abs(static_cast<double>(counts[s]) / n - (hi - lo));
        worst_freq = std::max(worst_freq, diff);
        o.require(diff <= 0.01, fmt::format("{} pga {} ds {}: off by {:.4f}", sg::class_key(cls),
                                            pga, s, diff));
      }
    }
  }

  // Retrofitted exceedance must not exceed baseline exceedance on [0.01, 3] g.
  const std::array<const char*, 4> state_names{"slight", "moderate", "extensive", "complete"};
  std::vector<std::string> violations;
  for (auto cls : sg::kComponentClasses) {
    for (int s = 0; s < sg::kLimitStates; ++s) {
      double worst = 0.0, worst_pga = 0.0, last_pga = 0.0;
      for (int i = 0; i <= 2990; ++i) {
        const double pga = 0.01 + 0.001 * i;
        const double b = sg::exceedance_probs(pga, table.base(cls))[s];
        const double r = sg::exceedance_probs(pga, table.upgraded(cls))[s];
        if (r > b) {
          last_pga = pga;
          if (r - b > worst) {
            worst = r - b;
            worst_pga = pga;
          }
        }
      }
      if (worst > 0.0) {
        violations.push_back(fmt::format("{} {} by {:.1e} at {:.3f} g (up to {:.3f} g)",
                                         sg::class_key(cls), state_names[s], worst, worst_pga,
                                         last_pga));
      }
    }
  }
  std::string sweep;
  for (const auto& v : violations) sweep += (sweep.empty() ? "" : ", ") + v;
  o.require(violations.empty(), "retrofitted exceedance above baseline: " + sweep);
  if (o.pass) {
    o.detail = fmt::format("max frequency error {:.4f}; retrofitted curves dominate on [0.01, 3] g",
                           worst_freq);
  } else {
    o.detail = fmt::format("max frequency error {:.4f}; ", worst_freq) + o.detail;
  }
  return o;
}

// --- islanding --------------------------------------------------------------

Outcome islanding_oracle() {
  Outcome o;
  sg::Rng rng(sg::mix_seed({7, 0x15}));
  std::size_t islands = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(sg::uniform01(rng) * 12);
    const sg::Grid grid(sg::testing::random_network(rng, n));
    auto d = sg::intact_damage(grid);
    for (std::size_t i = 0; i < grid.component_count(); ++i) {
      if (sg::uniform01(rng) < 0.3) {
        const int ds = static_cast<int>(sg::uniform01(rng) * sg::kDamageStates);
        d.ds[i] = static_cast<std::uint8_t>(ds);
        d.alpha[i] = sg::functionality_ratio(grid.component(i).cls, ds);
      }
    }
    const auto topo = sg::build_topology(grid, d);
    const auto part = sg::find_islands(grid, topo);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t l = 0; l < grid.line_count(); ++l) {
      if (topo.line_alive(l)) {
        edges.emplace_back(static_cast<int>(grid.line_from(l)), static_cast<int>(grid.line_to(l)));
      }
    }
    auto want = sg::testing::closure_components(n, topo.bus_alive, edges);
    std::vector<std::vector<int>> got;
    for (const auto& isl : part.islands) {
      std::vector<int> c(isl.buses.begin(), isl.buses.end());
      std::sort(c.begin(), c.end());
      got.push_back(std::move(c));
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    islands += got.size();
    if (got != want) {
      o.require(false, fmt::format("graph {} ({} nodes) differs from the closure partition", trial, n));
      break;
    }
  }
  if (o.pass) o.detail = fmt::format("1000 random graphs, {} islands, all equal", islands);
  return o;
}

// --- DCOPF ------------------------------------------------------------------

struct InvariantStats {
  double balance = 0.0;
  double flow = 0.0;
  double bounds = 0.0;
  double definition = 0.0;
  bool served_binary = true;
};

void check_dispatch(const sg::IslandCase& c, const sg::DispatchResult& r, InvariantStats& st) {
  std::map<int, double> net;
  for (std::size_t g = 0; g < c.units.size(); ++g) {
    net[c.units[g].bus] += r.pg_mw[g];
    st.bounds = std::max({st.bounds, c.units[g].pmin_mw - r.pg_mw[g], r.pg_mw[g] - c.units[g].pmax_mw});
  }
  for (std::size_t d = 0; d < c.demands.size(); ++d) {
    net[c.demands[d].bus] -= r.served_mw[d];
    const bool binary = std::abs(r.served_mw[d]) <= 1e-9 ||
                        std::abs(r.served_mw[d] - c.demands[d].demand_mw) <= 1e-9;
    st.served_binary = st.served_binary && binary;
  }
  std::map<int, double> angle;
  for (std::size_t b = 0; b < c.bus_ids.size(); ++b) angle[c.bus_ids[b]] = r.angles_rad[b];
  for (std::size_t l = 0; l < c.branches.size(); ++l) {
    const auto& br = c.branches[l];
    net[br.from_bus] -= r.flows_mw[l];
    net[br.to_bus] += r.flows_mw[l];
    st.flow = std::max(st.flow, std::abs(r.flows_mw[l]) - br.limit_mw);
    const double implied =
        c.base_mva * br.susceptance_pu * (angle[br.from_bus] - angle[br.to_bus]);
    st.definition = std::max(st.definition, std::abs(implied - r.flows_mw[l]));
  }
  for (const auto& [bus, v] : net) st.balance = std::max(st.balance, std::abs(v));
}

bool slack_invariant(const sg::IslandCase& c, double& worst) {
  const auto ref = sg::solve_island(c);
  if (!ref.converged) return true;
  for (int bus : c.bus_ids) {
    auto alt = c;
    alt.slack_bus = bus;
    const auto r = sg::solve_island(alt);
    if (!r.converged) return false;
    const double d = std::abs(r.objective_cost - ref.objective_cost) /
                     std::max(1.0, std::abs(ref.objective_cost));
    worst = std::max(worst, d);
    if (d > 1e-8) return false;
  }
  return true;
}

Outcome dcopf_feasibility() {
  Outcome o;
  const sg::RiskEngine engine(sg::testing::rts_inputs(), 7);
  const auto mags = engine.grid_magnitudes();
  const double base = engine.grid().base_mva();
  InvariantStats st;
  std::size_t samples = 0, dispatches = 0, slack_cases = 0;
  double slack_worst = 0.0;
  bool totals_ok = true;
  for (std::size_t k = 0; samples < 1000; ++k) {
    for (double m : mags) {
      if (samples == 1000) break;
      const auto d = engine.simulate_detail(m, k, engine.baseline_fragility());
      ++samples;
      double total = 0.0;
      for (std::size_t i = 0; i < d.partition.islands.size(); ++i) {
        if (!d.viable[i]) continue;
        const auto& r = d.dispatch[i];
        if (!r.converged) {
          for (double s : r.served_mw) totals_ok = totals_ok && s == 0.0;
          continue;
        }
        check_dispatch(d.cases[i], r, st);
        total += r.total_served_mw();
        ++dispatches;
        if (slack_cases < 60 && r.shed_load_ids.empty() && d.cases[i].bus_ids.size() > 1) {
          ++slack_cases;
          if (!slack_invariant(d.cases[i], slack_worst)) {
            o.require(false, fmt::format("slack choice changes the optimum (M={}, k={})", m, k));
          }
        }
      }
      totals_ok = totals_ok && std::abs(total - d.served_mw) <= 1e-9 * std::max(1.0, total);
    }
  }
  o.require(st.balance <= 1e-6 * base, fmt::format("balance violation {:.2e} MW", st.balance));
  o.require(st.flow <= 1e-6, fmt::format("flow limit violation {:.2e} MW", st.flow));
  o.require(st.bounds <= 1e-6, fmt::format("generator bound violation {:.2e} MW", st.bounds));
  o.require(st.definition <= 1e-6, fmt::format("flow definition violation {:.2e} MW", st.definition));
  o.require(st.served_binary, "a load was partially served");
  o.require(totals_ok, "system functionality differs from the island sum");

  using sg::testing::toy_three_bus;
  const std::vector<std::pair<std::string, sg::IslandCase>> toys{
      {"3-bus", toy_three_bus()},
      {"3-bus limit 60", toy_three_bus(60.0, 100.0)},
      {"3-bus limits 30/95", toy_three_bus(30.0, 95.0)},
      {"4-bus", sg::testing::toy_four_bus()},
      {"parallel", sg::testing::toy_parallel()},
      {"2-bus two loads", sg::testing::toy_shedding(80.0, 30.0, 40.0)}};
  double oracle_worst = 0.0;
  for (const auto& [name, c] : toys) {
    const auto r = sg::solve_island(c);
    const auto v = sg::testing::vertex_enumeration_dcopf(c);
    if (!v || !r.converged) {
      o.require(false, name + ": no optimum");
      continue;
    }
    const double rel = std::abs(r.objective_cost - v->cost) / std::abs(v->cost);
    oracle_worst = std::max(oracle_worst, rel);
    o.require(rel <= 1e-6, fmt::format("{}: cost {} vs oracle {}", name, r.objective_cost, v->cost));
    ++slack_cases;
    if (!slack_invariant(c, slack_worst)) o.require(false, name + ": slack choice changes the optimum");
  }

  const std::string summary = fmt::format(
      "{} samples, {} dispatches: balance {:.1e}, flow {:.1e}, bounds {:.1e} MW; toys vs vertex "
      "oracle {:.1e}; slack invariance over {} cases {:.1e}",
      samples, dispatches, st.balance, std::max(0.0, st.flow), std::max(0.0, st.bounds),
      oracle_worst, slack_cases, slack_worst);
  o.detail = o.pass ? summary : summary + "; " + o.detail;
  return o;
}

// --- risk pipeline ----------------------------------------------------------

Outcome risk_pipeline() {
  Outcome o;
  const sg::RiskEngine engine(sg::testing::rts_inputs(), 7);
  const sg::ConvergenceConfig cfg;
  const auto& frag = engine.baseline_fragility();
  const auto risk = engine.assess(cfg, frag);

  std::string means;
  for (std::size_t i = 0; i < risk.stats.size(); ++i) {
    const auto& s = risk.stats[i];
    o.require(s.stop == sg::StopReason::Converged,
              fmt::format("M={} hit max_samples", s.magnitude));
    o.require(s.mean_norm > 0.0 && s.mean_norm < 1.0, fmt::format("M={} mean {}", s.magnitude, s.mean_norm));
    if (i > 0) {
      o.require(s.mean_norm <= risk.stats[i - 1].mean_norm + 0.03,
                fmt::format("mean rises from M={} to M={}", risk.stats[i - 1].magnitude, s.magnitude));
    }
    means += fmt::format("{}{}:{:.3f}(n={})", means.empty() ? "" : " ", s.magnitude, s.mean_norm,
                         s.n_samples());
  }
  // The same check on a fixed 500-sample common-random-number estimate.
  const auto fixed = engine.eafl_fixed(frag, 500);
  for (std::size_t i = 1; i < fixed.mean_norm.size(); ++i) {
    o.require(fixed.mean_norm[i] <= fixed.mean_norm[i - 1] + 0.03,
              fmt::format("500-sample mean rises at index {}", i));
  }
  o.require(risk.eafl > 0.0, "EAFL is not positive");

  const auto refined = engine.assess(cfg, frag, engine.inputs().hazard.magnitudes.refined());
  const double change = std::abs(refined.eafl - risk.eafl) / risk.eafl;
  o.require(change < 0.10, fmt::format("refined grid changes EAFL by {:.1f}%", 100.0 * change));

  const std::string summary = fmt::format(
      "EAFL {:.6f} (se {:.6f}); refined grid EAFL {:.6f} ({:+.2f}%); means {}", risk.eafl,
      risk.eafl_std_error, refined.eafl, 100.0 * (refined.eafl - risk.eafl) / risk.eafl, means);
  o.detail = o.pass ? summary : summary + "; " + o.detail;
  return o;
}

// --- degenerate fragility ---------------------------------------------------

Outcome degenerate_fragility() {
  Outcome o;
  const sg::RiskEngine engine(sg::testing::rts_inputs(), 7);
  const sg::ConvergenceConfig cfg;
  const auto strong = engine.assess(cfg, scaled(engine.baseline_fragility(), 1e300));
  for (const auto& s : strong.stats) {
    o.require(s.mean_norm == 1.0, fmt::format("unbreakable: M={} mean {}", s.magnitude, s.mean_norm));
  }
  o.require(strong.eafl == 0.0, fmt::format("unbreakable: EAFL {}", strong.eafl));

  const auto weak = engine.assess(cfg, scaled(engine.baseline_fragility(), 1e-300));
  for (const auto& s : weak.stats) {
    o.require(s.mean_norm == 0.0, fmt::format("fragile: M={} mean {}", s.magnitude, s.mean_norm));
  }
  const double total = std::accumulate(weak.rates.begin(), weak.rates.end(), 0.0);
  const auto& hz = engine.inputs().hazard;
  const double closed = sg::gr_exceedance_prob(hz.magnitudes.m_min, hz.gr_a, hz.gr_b);
  o.require(std::abs(weak.eafl - total) <= 1e-12, fmt::format("fragile: EAFL {} vs {}", weak.eafl, total));
  o.require(std::abs(weak.eafl - closed) <= 1e-12,
            fmt::format("fragile: EAFL {} vs P(M >= m_min) {}", weak.eafl, closed));
  if (o.pass) {
    o.detail = fmt::format("medians x1e300: EAFL {}; medians x1e-300: EAFL {:.15f} = sum of rates {:.15f}",
                           strong.eafl, weak.eafl, total);
  }
  return o;
}

// --- optimizer --------------------------------------------------------------

void check_run(Outcome& o, const sg::GaResult& r, const std::vector<double>& costs) {
  for (std::size_t g = 1; g < r.history.size(); ++g) {
    o.require(r.history[g].best_fitness <= r.history[g - 1].best_fitness,
              fmt::format("budget {}: best fitness rises at generation {}", r.budget_musd,
                          r.history[g].generation));
  }
  const double cost = sg::plan_cost(r.best.x, costs);
  o.require(cost <= r.budget_musd + sg::kBudgetTolerance,
            fmt::format("budget {}: plan costs {}", r.budget_musd, cost));
}

Outcome optimizer_properties() {
  Outcome o;
  const sg::RiskEngine engine(sg::testing::rts_inputs(), 7);
  const sg::RetrofitOptimizer opt(engine, 100);
  const sg::GaParams params;
  const sg::ConvergenceConfig cfg;
  const auto scores = opt.default_scores();

  const auto zero = opt.optimize(0.0, params, scores, cfg);
  check_run(o, zero, opt.costs());
  const bool empty = std::all_of(zero.best.x.begin(), zero.best.x.end(), [](auto v) { return v == 0; });
  o.require(empty, "budget 0 did not return the empty plan");
  const auto baseline_fixed = engine.eafl_fixed(engine.baseline_fragility(), 100);
  const auto baseline_full = engine.assess(cfg, engine.baseline_fragility());
  o.require(zero.best_fitness == baseline_fixed.eafl,
            fmt::format("budget 0 fitness {} vs baseline {}", zero.best_fitness, baseline_fixed.eafl));
  o.require(zero.final_assessment && zero.final_assessment->eafl == baseline_full.eafl,
            "budget 0 re-evaluation differs from the baseline assessment");

  const std::vector<double> budgets{2.5, 5.0, 7.5, 10.0};
  const auto rows = sg::budget_sweep(opt, budgets, params, scores, cfg);
  std::string table;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i].result;
    check_run(o, r, opt.costs());
    const auto& fa = *r.final_assessment;
    table += fmt::format("{}{}: {:.6f}+/-{:.6f} ({} items, {:.2f} M USD)", table.empty() ? "" : ", ",
                         rows[i].budget_musd, fa.eafl, fa.eafl_std_error,
                         r.best.selected(engine.grid()).size(), r.best.cost_musd);
    if (i > 0) {
      const auto& prev = *rows[i - 1].result.final_assessment;
      const double pooled = std::hypot(prev.eafl_std_error, fa.eafl_std_error);
      o.require(fa.eafl <= prev.eafl + 2.0 * pooled,
                fmt::format("EAFL rises from budget {} to {}", rows[i - 1].budget_musd,
                            rows[i].budget_musd));
    }
  }
  const std::string summary =
      fmt::format("baseline EAFL {:.6f}; budget 0 -> empty plan; tradeoff {}", baseline_full.eafl, table);
  o.detail = o.pass ? summary : summary + "; " + o.detail;
  return o;
}

// --- determinism ------------------------------------------------------------

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    files[e.path().filename().string()] = sg::read_text_file(e.path());
  }
  return files;
}

Outcome determinism() {
  Outcome o;
  const auto dir = fs::temp_directory_path() / "seisgrid_acceptance_determinism";
  const auto rts = sg::testing::rts_dir();
  auto run = [&](const std::string& threads) {
    fs::remove_all(dir);
    std::ostringstream out, err;
    const int code = sg::cli::run(
        {"--network", (rts / "network.json").string(), "--hazard", (rts / "hazard.json").string(),
         "--fragility", (rts / "fragility.json").string(), "--costs", (rts / "costs.json").string(),
         "--out", dir.string(), "--seed", "7", "--threads", threads, "assess"},
        out, err);
    o.require(code == 0, "assess --threads " + threads + " failed: " + err.str());
    return std::make_pair(snapshot(dir), out.str());
  };
  const auto [a_files, a_out] = run("1");
  const auto [b_files, b_out] = run("1");
  const auto [c_files, c_out] = run("4");
  fs::remove_all(dir);
  o.require(a_files.size() >= 4, fmt::format("only {} files written", a_files.size()));
  o.require(a_files == b_files, "two single-thread runs differ");
  o.require(a_files == c_files, "--threads 4 output differs from --threads 1");
  o.require(a_out == b_out && a_out == c_out, "stdout differs between runs");
  std::size_t bytes = 0;
  for (const auto& [name, text] : a_files) bytes += text.size();
  if (o.pass) {
    o.detail = fmt::format("{} files ({} bytes) identical across threads 1, 1 and 4", a_files.size(),
                           bytes);
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"baseline_dispatch", 1.0, baseline_dispatch},
      {"gmpe_oracle", 1.0, gmpe_oracle},
      {"correlation_field", 30.0, correlation_field},
      {"fragility_sampling", 10.0, fragility_sampling},
      {"islanding_oracle", 5.0, islanding_oracle},
      {"dcopf_feasibility", 120.0, dcopf_feasibility},
      {"risk_pipeline", 600.0, risk_pipeline},
      {"degenerate_fragility", 600.0, degenerate_fragility},
      {"optimizer_properties", 2700.0, optimizer_properties},
      {"determinism", 600.0, determinism},
  };

  std::vector<std::string> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only.emplace_back(argv[++i]);
    } else if (std::strcmp(argv[i], "--list") == 0) {
      for (const auto& c : criteria) std::cout << c.name << '\n';
      return 0;
    } else {
      std::cerr << "usage: seisgrid_acceptance [--only NAME]... [--list]\n";
      return 2;
    }
  }
  for (const auto& name : only) {
    const bool known = std::any_of(criteria.begin(), criteria.end(),
                                   [&](const auto& c) { return name == c.name; });
    if (!known) {
      std::cerr << "unknown criterion '" << name << "'\n";
      return 2;
    }
  }

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.time_limit_s) {
      o.pass = false;
      o.detail += fmt::format("; took {:.2f} s, limit {} s", secs, c.time_limit_s);
    }
    std::cout << fmt::format("[{}] {}: {} ({:.2f} s)\n", o.pass ? "PASS" : "FAIL", c.name, o.detail,
                             secs)
              << std::flush;
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
