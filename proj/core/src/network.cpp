#include "seisgrid/network.hpp"

#include <algorithm>
#include <deque>

namespace seisgrid {

bool TopologyState::adjacent(std::size_t a, std::size_t b) const {
  if (a >= adjacency.size()) return false;
  return std::any_of(adjacency[a].begin(), adjacency[a].end(),
                     [b](const auto& edge) { return edge.first == b; });
}

std::size_t TopologyState::surviving_bus_count() const {
  return static_cast<std::size_t>(std::count(bus_alive.begin(), bus_alive.end(), true));
}

TopologyState build_topology(const Grid& grid, const DamageRealization& damage) {
  TopologyState t;
  t.bus_alive.resize(grid.bus_count());
  for (std::size_t b = 0; b < grid.bus_count(); ++b) {
    t.bus_alive[b] = damage.alpha[grid.bus_component(b)] == 1.0;
  }
  t.line_alpha.assign(grid.line_count(), 0.0);
  t.adjacency.resize(grid.bus_count());
  for (std::size_t l = 0; l < grid.line_count(); ++l) {
    const auto from = grid.line_from(l);
    const auto to = grid.line_to(l);
    if (!t.bus_alive[from] || !t.bus_alive[to]) continue;
    double alpha = 1.0;
    if (auto sub = grid.line_substation(l)) alpha = damage.alpha[grid.substation_component(*sub)];
    if (!(alpha > 0.0)) continue;
    t.line_alpha[l] = alpha;
    t.adjacency[from].emplace_back(to, l);
    t.adjacency[to].emplace_back(from, l);
  }
  return t;
}

IslandPartition find_islands(const Grid& grid, const TopologyState& topology) {
  IslandPartition partition;
  std::vector<bool> visited(grid.bus_count(), false);
  std::deque<std::size_t> frontier;
  for (std::size_t start : grid.buses_by_id()) {
    if (!topology.bus_alive[start] || visited[start]) continue;
    Island island;
    visited[start] = true;
    frontier.push_back(start);
    while (!frontier.empty()) {
      const auto bus = frontier.front();
      frontier.pop_front();
      island.buses.push_back(bus);
      for (const auto& [next, line] : topology.adjacency[bus]) {
        if (!visited[next]) {
          visited[next] = true;
          frontier.push_back(next);
        }
      }
    }
    const auto& buses = grid.model().buses;
    std::sort(island.buses.begin(), island.buses.end(),
              [&](std::size_t a, std::size_t b) { return buses[a].id < buses[b].id; });
    for (std::size_t bus : island.buses) {
      for (auto g : grid.generators_at(bus)) island.generators.push_back(g);
      for (auto d : grid.loads_at(bus)) island.loads.push_back(d);
      for (const auto& [next, line] : topology.adjacency[bus]) {
        if (grid.line_from(line) == bus) island.lines.push_back(line);
      }
    }
    std::sort(island.generators.begin(), island.generators.end());
    std::sort(island.loads.begin(), island.loads.end());
    std::sort(island.lines.begin(), island.lines.end());
    partition.islands.push_back(std::move(island));
  }
  return partition;
}

bool island_viability(const Island& island, const Grid& grid, const DamageRealization& damage) {
  const auto& model = grid.model();
  const bool has_generation = std::any_of(
      island.generators.begin(), island.generators.end(), [&](std::size_t g) {
        return damage.alpha[grid.generator_component(g)] > 0.0 && model.generators[g].pmax_mw > 0.0;
      });
  const bool has_demand =
      std::any_of(island.loads.begin(), island.loads.end(), [&](std::size_t d) {
        return damage.alpha[grid.load_component(d)] * model.loads[d].demand_mw > 0.0;
      });
  return has_generation && has_demand;
}

std::size_t designate_slack(const Island& island, const Grid& grid,
                            const DamageRealization& damage) {
  const auto& model = grid.model();
  std::optional<std::size_t> best;
  double best_capacity = 0.0;
  for (std::size_t bus : island.buses) {  // ascending id, so '>' keeps the smallest on ties
    double capacity = 0.0;
    bool operational = false;
    for (auto g : grid.generators_at(bus)) {
      const double alpha = damage.alpha[grid.generator_component(g)];
      if (alpha > 0.0) {
        operational = true;
        capacity += alpha * model.generators[g].pmax_mw;
      }
    }
    if (operational && (!best || capacity > best_capacity)) {
      best = bus;
      best_capacity = capacity;
    }
  }
  if (!best) throw ValidationError("island has no operational generator for a slack bus");
  return *best;
}

}  // namespace seisgrid
