#pragma once

#include <cstddef>
#include <vector>

#include "seisgrid/fragility.hpp"
#include "seisgrid/grid.hpp"
#include "seisgrid/lp.hpp"
#include "seisgrid/network.hpp"

namespace seisgrid {

/// Self-contained dispatch problem for one island, deratings already applied.
/// Quantities are MW; the solver converts to per-unit on base_mva.
struct IslandCase {
  struct Branch {
    int id = 0;
    int from_bus = 0;
    int to_bus = 0;
    double susceptance_pu = 0.0;  // 1 / x
    double limit_mw = 0.0;
  };
  struct Unit {
    int id = 0;
    int bus = 0;
    double pmin_mw = 0.0;
    double pmax_mw = 0.0;
    double cost_per_mwh = 0.0;
  };
  struct Demand {
    int id = 0;
    int bus = 0;
    double demand_mw = 0.0;
  };

  double base_mva = 100.0;
  std::vector<int> bus_ids;
  int slack_bus = 0;
  std::vector<Branch> branches;
  std::vector<Unit> units;
  std::vector<Demand> demands;

  double total_demand_mw() const;
};

struct DispatchResult {
  bool converged = false;
  std::vector<double> pg_mw;       // per unit, case order
  std::vector<double> angles_rad;  // per bus, case order
  std::vector<double> flows_mw;    // per branch, case order
  std::vector<double> served_mw;   // per demand, case order
  std::vector<int> shed_load_ids;  // in shedding order
  double objective_cost = 0.0;     // currency per hour

  double total_served_mw() const;
};

/// Every generator and load on the island, bounds and demand scaled by their
/// ratios; branches are the surviving lines with derated limits.
IslandCase assemble_case(const Island& island, const Grid& grid, const DamageRealization& damage,
                         const TopologyState& topology, int slack_bus_id);

/// Least-cost dispatch with fixed demand. converged == false when the LP is
/// infeasible or hits its iteration cap. Throws NumericalError when the case
/// branches do not connect all its buses (singular susceptance system).
DispatchResult solve_island(const IslandCase& island, const lp::Options& options = {});

/// Retries solve_island after dropping the smallest positive demand (ties:
/// smallest load id) up to retry_limit times; retry_limit < 0 means the
/// number of demands. A case that never converges serves 0.
DispatchResult solve_with_shedding(const IslandCase& island, int retry_limit = -1,
                                   const lp::Options& options = {});

/// Sum of served MW over converged results.
double system_functionality(const std::vector<DispatchResult>& results);

/// Largest violation of the balance, flow-limit and generator-bound
/// invariants, in MW. Zero for a non-converged result.
double max_invariant_violation(const IslandCase& island, const DispatchResult& result);

}  // namespace seisgrid
