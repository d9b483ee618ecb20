#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "seisgrid/model.hpp"

namespace seisgrid {

/// A validated network with index lookups and the ordered catalog of
/// damageable components: all buses, then generators, loads and substations,
/// each in file order. Component index i is the hazard site index i.
class Grid {
 public:
  explicit Grid(PowerNetworkModel model);

  const PowerNetworkModel& model() const { return model_; }
  double base_mva() const { return model_.base_mva; }

  std::size_t bus_count() const { return model_.buses.size(); }
  std::size_t line_count() const { return model_.lines.size(); }
  std::size_t generator_count() const { return model_.generators.size(); }
  std::size_t load_count() const { return model_.loads.size(); }
  std::size_t substation_count() const { return model_.substations.size(); }

  /// Throws std::out_of_range for an unknown id.
  std::size_t bus_index(int bus_id) const;
  std::size_t line_index(int line_id) const;

  const std::vector<std::size_t>& generators_at(std::size_t bus) const { return gens_at_[bus]; }
  const std::vector<std::size_t>& loads_at(std::size_t bus) const { return loads_at_[bus]; }
  std::size_t line_from(std::size_t line) const { return line_ends_[line].first; }
  std::size_t line_to(std::size_t line) const { return line_ends_[line].second; }
  /// Substation (local index) sitting on a line, if any.
  std::optional<std::size_t> line_substation(std::size_t line) const { return line_sub_[line]; }
  /// Bus indices in ascending id order.
  const std::vector<std::size_t>& buses_by_id() const { return buses_by_id_; }

  // --- component catalog ---
  std::size_t component_count() const { return components_.size(); }
  ComponentKey component(std::size_t index) const { return components_[index]; }
  std::optional<std::size_t> find_component(ComponentKey key) const;
  std::size_t class_offset(ComponentClass cls) const { return offsets_[class_index(cls)]; }
  std::size_t class_size(ComponentClass cls) const;
  std::size_t bus_component(std::size_t bus) const { return bus; }
  std::size_t generator_component(std::size_t g) const { return offsets_[1] + g; }
  std::size_t load_component(std::size_t d) const { return offsets_[2] + d; }
  std::size_t substation_component(std::size_t s) const { return offsets_[3] + s; }

  /// Hazard site of each component: its bus location, or the line midpoint
  /// for a substation.
  const std::vector<Point>& site_locations() const { return sites_; }

 private:
  PowerNetworkModel model_;
  std::unordered_map<int, std::size_t> bus_index_;
  std::unordered_map<int, std::size_t> line_index_;
  std::vector<std::vector<std::size_t>> gens_at_;
  std::vector<std::vector<std::size_t>> loads_at_;
  std::vector<std::pair<std::size_t, std::size_t>> line_ends_;
  std::vector<std::optional<std::size_t>> line_sub_;
  std::vector<std::size_t> buses_by_id_;
  std::vector<ComponentKey> components_;
  std::array<std::size_t, 4> offsets_{};
  std::vector<Point> sites_;
};

}  // namespace seisgrid
