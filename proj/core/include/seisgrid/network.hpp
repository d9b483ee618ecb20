#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "seisgrid/fragility.hpp"
#include "seisgrid/grid.hpp"

namespace seisgrid {

/// Post-damage connectivity. Buses and lines are grid indices.
struct TopologyState {
  std::vector<bool> bus_alive;
  /// Residual capacity ratio per line; 0 for a line that did not survive.
  std::vector<double> line_alpha;
  /// Per surviving bus: (neighbour bus, line) for every surviving line.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency;

  bool line_alive(std::size_t line) const { return line_alpha[line] > 0.0; }
  bool adjacent(std::size_t a, std::size_t b) const;
  std::size_t surviving_bus_count() const;
};

/// A bus survives iff its ratio is 1; a line survives iff both end buses
/// survive and its ratio (the substation ratio, or 1 without one) is positive.
TopologyState build_topology(const Grid& grid, const DamageRealization& damage);

struct Island {
  std::vector<std::size_t> buses;       // ascending bus id
  std::vector<std::size_t> lines;       // surviving lines inside the island
  std::vector<std::size_t> generators;  // all generators on island buses
  std::vector<std::size_t> loads;       // all loads on island buses
  std::optional<std::size_t> slack_bus;
};

struct IslandPartition {
  std::vector<Island> islands;  // ordered by smallest bus id
};

/// Breadth-first connected components of the surviving graph.
IslandPartition find_islands(const Grid& grid, const TopologyState& topology);

/// At least one generator with a positive ratio and one load with positive
/// effective demand.
bool island_viability(const Island& island, const Grid& grid, const DamageRealization& damage);

/// Generator bus with the largest total derated capacity (ties: smallest bus
/// id). Throws ValidationError when no generator on the island is operational.
std::size_t designate_slack(const Island& island, const Grid& grid,
                            const DamageRealization& damage);

}  // namespace seisgrid
