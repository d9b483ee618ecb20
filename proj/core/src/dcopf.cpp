#include "seisgrid/dcopf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

namespace seisgrid {

double IslandCase::total_demand_mw() const {
  double total = 0.0;
  for (const auto& d : demands) total += d.demand_mw;
  return total;
}

double DispatchResult::total_served_mw() const {
  return std::accumulate(served_mw.begin(), served_mw.end(), 0.0);
}

IslandCase assemble_case(const Island& island, const Grid& grid, const DamageRealization& damage,
                         const TopologyState& topology, int slack_bus_id) {
  const auto& model = grid.model();
  IslandCase c;
  c.base_mva = model.base_mva;
  c.slack_bus = slack_bus_id;
  for (auto b : island.buses) c.bus_ids.push_back(model.buses[b].id);
  for (auto l : island.lines) {
    const auto& line = model.lines[l];
    c.branches.push_back({line.id, line.from_bus, line.to_bus, 1.0 / line.reactance_pu,
                          topology.line_alpha[l] * line.rate_mw});
  }
  for (auto g : island.generators) {
    const auto& gen = model.generators[g];
    const double alpha = damage.alpha[grid.generator_component(g)];
    c.units.push_back({gen.id, gen.bus_id, alpha * gen.pmin_mw, alpha * gen.pmax_mw,
                       gen.cost_per_mwh});
  }
  for (auto d : island.loads) {
    const auto& load = model.loads[d];
    c.demands.push_back({load.id, load.bus_id, damage.alpha[grid.load_component(d)] * load.demand_mw});
  }
  return c;
}

namespace {

bool branches_connect_all(const IslandCase& c, const std::unordered_map<int, std::size_t>& index) {
  const auto n = c.bus_ids.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = n;
  for (const auto& br : c.branches) {
    const auto a = find(index.at(br.from_bus));
    const auto b = find(index.at(br.to_bus));
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components <= 1;
}

}  // namespace

DispatchResult solve_island(const IslandCase& c, const lp::Options& options) {
  DispatchResult result;
  const auto nb = c.bus_ids.size();
  const auto nu = c.units.size();
  const auto nl = c.branches.size();
  result.served_mw.assign(c.demands.size(), 0.0);
  if (nb == 0) return result;

  std::unordered_map<int, std::size_t> index;
  for (std::size_t i = 0; i < nb; ++i) index.emplace(c.bus_ids[i], i);
  auto local = [&](int bus) {
    auto it = index.find(bus);
    if (it == index.end()) {
      throw ValidationError("island case references bus " + std::to_string(bus) +
                            " outside the island");
    }
    return it->second;
  };
  if (!index.contains(c.slack_bus)) {
    throw ValidationError("slack bus " + std::to_string(c.slack_bus) + " is not in the island");
  }
  for (const auto& br : c.branches) {
    local(br.from_bus);
    local(br.to_bus);
    if (!(br.susceptance_pu > 0.0)) {
      throw ValidationError("branch " + std::to_string(br.id) + " has non-positive susceptance");
    }
  }
  if (!branches_connect_all(c, index)) {
    throw NumericalError("susceptance matrix of the island is singular: buses are not connected");
  }

  // Cheap infeasibility screens before building the LP.
  const double demand = c.total_demand_mw();
  double pmin = 0.0;
  double pmax = 0.0;
  for (const auto& u : c.units) {
    pmin += u.pmin_mw;
    pmax += u.pmax_mw;
  }
  const double slack_mw = 1e-7 * c.base_mva;
  if (pmax < demand - slack_mw || pmin > demand + slack_mw) return result;

  const double base = c.base_mva;
  // Columns: unit outputs, bus angles, branch flows (per unit).
  const std::size_t col_theta = nu;
  const std::size_t col_flow = nu + nb;
  lp::Problem p(nb + nl, nu + nb + nl);
  for (std::size_t g = 0; g < nu; ++g) {
    p.lower[g] = c.units[g].pmin_mw / base;
    p.upper[g] = c.units[g].pmax_mw / base;
    p.c[g] = c.units[g].cost_per_mwh;
    p.at(local(c.units[g].bus), g) = 1.0;
  }
  for (std::size_t i = 0; i < nb; ++i) {
    const bool slack = c.bus_ids[i] == c.slack_bus;
    p.lower[col_theta + i] = slack ? 0.0 : -lp::kInf;
    p.upper[col_theta + i] = slack ? 0.0 : lp::kInf;
  }
  for (const auto& d : c.demands) p.b[local(d.bus)] += d.demand_mw / base;
  for (std::size_t l = 0; l < nl; ++l) {
    const auto& br = c.branches[l];
    const auto from = local(br.from_bus);
    const auto to = local(br.to_bus);
    const auto col = col_flow + l;
    p.lower[col] = -br.limit_mw / base;
    p.upper[col] = br.limit_mw / base;
    p.at(from, col) -= 1.0;
    p.at(to, col) += 1.0;
    const auto row = nb + l;
    p.at(row, col) = 1.0;
    p.at(row, col_theta + from) -= br.susceptance_pu;
    p.at(row, col_theta + to) += br.susceptance_pu;
  }

  const auto sol = lp::solve(p, options);
  if (sol.status != lp::Status::Optimal) return result;

  result.converged = true;
  result.pg_mw.resize(nu);
  for (std::size_t g = 0; g < nu; ++g) result.pg_mw[g] = sol.x[g] * base;
  result.angles_rad.assign(sol.x.begin() + static_cast<std::ptrdiff_t>(col_theta),
                           sol.x.begin() + static_cast<std::ptrdiff_t>(col_flow));
  result.flows_mw.resize(nl);
  for (std::size_t l = 0; l < nl; ++l) result.flows_mw[l] = sol.x[col_flow + l] * base;
  for (std::size_t d = 0; d < c.demands.size(); ++d) result.served_mw[d] = c.demands[d].demand_mw;
  result.objective_cost = sol.objective * base;
  return result;
}

DispatchResult solve_with_shedding(const IslandCase& island, int retry_limit,
                                   const lp::Options& options) {
  IslandCase current = island;
  const int limit = retry_limit < 0 ? static_cast<int>(island.demands.size()) : retry_limit;
  std::vector<int> shed;
  for (int attempt = 0;; ++attempt) {
    auto result = solve_island(current, options);
    if (result.converged) {
      result.shed_load_ids = std::move(shed);
      return result;
    }
    if (attempt >= limit) break;
    auto victim = current.demands.end();
    for (auto it = current.demands.begin(); it != current.demands.end(); ++it) {
      if (!(it->demand_mw > 0.0)) continue;
      if (victim == current.demands.end() || it->demand_mw < victim->demand_mw ||
          (it->demand_mw == victim->demand_mw && it->id < victim->id)) {
        victim = it;
      }
    }
    if (victim == current.demands.end()) break;
    shed.push_back(victim->id);
    victim->demand_mw = 0.0;
  }
  DispatchResult failed;
  failed.served_mw.assign(island.demands.size(), 0.0);
  failed.shed_load_ids = std::move(shed);
  return failed;
}

double system_functionality(const std::vector<DispatchResult>& results) {
  double total = 0.0;
  for (const auto& r : results) {
    if (r.converged) total += r.total_served_mw();
  }
  return total;
}

double max_invariant_violation(const IslandCase& c, const DispatchResult& r) {
  if (!r.converged) return 0.0;
  std::unordered_map<int, std::size_t> index;
  for (std::size_t i = 0; i < c.bus_ids.size(); ++i) index.emplace(c.bus_ids[i], i);
  std::vector<double> residual(c.bus_ids.size(), 0.0);
  double worst = 0.0;
  for (std::size_t g = 0; g < c.units.size(); ++g) {
    residual[index.at(c.units[g].bus)] += r.pg_mw[g];
    worst = std::max({worst, c.units[g].pmin_mw - r.pg_mw[g], r.pg_mw[g] - c.units[g].pmax_mw});
  }
  for (std::size_t d = 0; d < c.demands.size(); ++d) {
    residual[index.at(c.demands[d].bus)] -= r.served_mw[d];
  }
  for (std::size_t l = 0; l < c.branches.size(); ++l) {
    const auto& br = c.branches[l];
    const auto from = index.at(br.from_bus);
    const auto to = index.at(br.to_bus);
    const double flow =
        br.susceptance_pu * (r.angles_rad[from] - r.angles_rad[to]) * c.base_mva;
    residual[from] -= flow;
    residual[to] += flow;
    worst = std::max({worst, std::abs(flow - r.flows_mw[l]), std::abs(flow) - br.limit_mw});
  }
  if (auto it = index.find(c.slack_bus); it != index.end()) {
    worst = std::max(worst, std::abs(r.angles_rad[it->second]));
  }
  for (double v : residual) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace seisgrid
