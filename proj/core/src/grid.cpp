#include "seisgrid/grid.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace seisgrid {

Grid::Grid(PowerNetworkModel model) : model_(std::move(model)) {
  validate(model_);
  const auto nb = model_.buses.size();
  for (std::size_t i = 0; i < nb; ++i) bus_index_.emplace(model_.buses[i].id, i);
  for (std::size_t l = 0; l < model_.lines.size(); ++l) line_index_.emplace(model_.lines[l].id, l);

  gens_at_.resize(nb);
  loads_at_.resize(nb);
  for (std::size_t g = 0; g < model_.generators.size(); ++g) {
    gens_at_[bus_index(model_.generators[g].bus_id)].push_back(g);
  }
  for (std::size_t d = 0; d < model_.loads.size(); ++d) {
    loads_at_[bus_index(model_.loads[d].bus_id)].push_back(d);
  }

  line_ends_.reserve(model_.lines.size());
  for (const auto& line : model_.lines) {
    line_ends_.emplace_back(bus_index(line.from_bus), bus_index(line.to_bus));
  }
  line_sub_.assign(model_.lines.size(), std::nullopt);
  for (std::size_t s = 0; s < model_.substations.size(); ++s) {
    line_sub_[line_index(model_.substations[s].line_id)] = s;
  }

  buses_by_id_.resize(nb);
  std::iota(buses_by_id_.begin(), buses_by_id_.end(), std::size_t{0});
  std::sort(buses_by_id_.begin(), buses_by_id_.end(), [this](std::size_t a, std::size_t b) {
    return model_.buses[a].id < model_.buses[b].id;
  });

  offsets_ = {0, nb, nb + model_.generators.size(),
              nb + model_.generators.size() + model_.loads.size()};
  for (const auto& b : model_.buses) {
    components_.push_back({ComponentClass::Bus, b.id});
    sites_.push_back(b.location());
  }
  for (const auto& g : model_.generators) {
    components_.push_back({ComponentClass::Generator, g.id});
    sites_.push_back(model_.buses[bus_index(g.bus_id)].location());
  }
  for (const auto& d : model_.loads) {
    components_.push_back({ComponentClass::Load, d.id});
    sites_.push_back(model_.buses[bus_index(d.bus_id)].location());
  }
  for (const auto& s : model_.substations) {
    components_.push_back({ComponentClass::Substation, s.id});
    const auto l = line_index(s.line_id);
    sites_.push_back(midpoint(model_.buses[line_ends_[l].first].location(),
                              model_.buses[line_ends_[l].second].location()));
  }
}

std::size_t Grid::bus_index(int bus_id) const {
  auto it = bus_index_.find(bus_id);
  if (it == bus_index_.end()) throw std::out_of_range("unknown bus " + std::to_string(bus_id));
  return it->second;
}

std::size_t Grid::line_index(int line_id) const {
  auto it = line_index_.find(line_id);
  if (it == line_index_.end()) throw std::out_of_range("unknown line " + std::to_string(line_id));
  return it->second;
}

std::size_t Grid::class_size(ComponentClass cls) const {
  switch (cls) {
    case ComponentClass::Bus: return bus_count();
    case ComponentClass::Generator: return generator_count();
    case ComponentClass::Load: return load_count();
    case ComponentClass::Substation: return substation_count();
  }
  return 0;
}

std::optional<std::size_t> Grid::find_component(ComponentKey key) const {
  const auto begin = offsets_[class_index(key.cls)];
  const auto end = begin + class_size(key.cls);
  for (std::size_t i = begin; i < end; ++i) {
    if (components_[i].id == key.id) return i;
  }
  return std::nullopt;
}

}  // namespace seisgrid
