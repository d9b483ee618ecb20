#include "seisgrid/model.hpp"

#include <cmath>
#include <set>
#include <string>

namespace seisgrid {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

template <typename T>
std::string id_of(std::string_view kind, const T& item) {
  return std::string(kind) + " " + std::to_string(item.id);
}

}  // namespace

double PowerNetworkModel::total_demand_mw() const {
  double total = 0.0;
  for (const auto& load : loads) total += load.demand_mw;
  return total;
}

double PowerNetworkModel::total_capacity_mw() const {
  double total = 0.0;
  for (const auto& gen : generators) total += gen.pmax_mw;
  return total;
}

void validate(const PowerNetworkModel& model) {
  if (!(model.base_mva > 0.0)) fail("base_mva must be positive");
  if (model.buses.empty()) fail("network has no buses");

  std::set<int> bus_ids;
  for (const auto& bus : model.buses) {
    if (!bus_ids.insert(bus.id).second) fail("duplicate " + id_of("bus", bus));
    if (!std::isfinite(bus.x_km) || !std::isfinite(bus.y_km)) {
      fail(id_of("bus", bus) + " has non-finite coordinates");
    }
  }

  std::set<int> line_ids;
  for (const auto& line : model.lines) {
    if (!line_ids.insert(line.id).second) fail("duplicate " + id_of("line", line));
    if (!bus_ids.contains(line.from_bus)) {
      fail(id_of("line", line) + " references missing bus " + std::to_string(line.from_bus));
    }
    if (!bus_ids.contains(line.to_bus)) {
      fail(id_of("line", line) + " references missing bus " + std::to_string(line.to_bus));
    }
    if (line.from_bus == line.to_bus) fail(id_of("line", line) + " is a self-loop");
    if (!(line.reactance_pu > 0.0)) fail(id_of("line", line) + " must have reactance_pu > 0");
    if (!(line.rate_mw > 0.0)) fail(id_of("line", line) + " must have rate_mw > 0");
  }

  std::set<int> gen_ids;
  for (const auto& gen : model.generators) {
    if (!gen_ids.insert(gen.id).second) fail("duplicate " + id_of("generator", gen));
    if (!bus_ids.contains(gen.bus_id)) {
      fail(id_of("generator", gen) + " references missing bus " + std::to_string(gen.bus_id));
    }
    if (!(gen.pmin_mw >= 0.0) || !(gen.pmin_mw <= gen.pmax_mw)) {
      fail(id_of("generator", gen) + " must satisfy 0 <= pmin_mw <= pmax_mw");
    }
    if (!std::isfinite(gen.cost_per_mwh)) fail(id_of("generator", gen) + " has non-finite cost");
  }

  std::set<int> load_ids;
  for (const auto& load : model.loads) {
    if (!load_ids.insert(load.id).second) fail("duplicate " + id_of("load", load));
    if (!bus_ids.contains(load.bus_id)) {
      fail(id_of("load", load) + " references missing bus " + std::to_string(load.bus_id));
    }
    if (!(load.demand_mw >= 0.0) || !std::isfinite(load.demand_mw)) {
      fail(id_of("load", load) + " must have demand_mw >= 0");
    }
  }

  std::set<int> sub_ids;
  std::set<int> lines_with_sub;
  for (const auto& sub : model.substations) {
    if (!sub_ids.insert(sub.id).second) fail("duplicate " + id_of("substation", sub));
    if (!line_ids.contains(sub.line_id)) {
      fail(id_of("substation", sub) + " references missing line " + std::to_string(sub.line_id));
    }
    if (!lines_with_sub.insert(sub.line_id).second) {
      fail("line " + std::to_string(sub.line_id) + " carries more than one substation");
    }
  }
  for (const auto& line : model.lines) {
    if (!line.substation_id) continue;
    bool matched = false;
    for (const auto& sub : model.substations) {
      if (sub.id == *line.substation_id) {
        matched = sub.line_id == line.id;
        break;
      }
    }
    if (!matched) {
      fail(id_of("line", line) + " names substation " + std::to_string(*line.substation_id) +
           " which is not attached to it");
    }
  }
}

std::string_view mechanism_code(Mechanism m) {
  switch (m) {
    case Mechanism::Unspecified: return "U";
    case Mechanism::StrikeSlip: return "SS";
    case Mechanism::Normal: return "NS";
    case Mechanism::Reverse: return "RS";
  }
  return "U";
}

Mechanism parse_mechanism(std::string_view code) {
  if (code == "U") return Mechanism::Unspecified;
  if (code == "SS") return Mechanism::StrikeSlip;
  if (code == "NS") return Mechanism::Normal;
  if (code == "RS") return Mechanism::Reverse;
  throw ValidationError("mechanism must be one of U, SS, NS, RS (got '" + std::string(code) +
                        "')");
}

void validate(const GmpeCoefficients& c) {
  if (!(c.h > 0.0)) fail("gmpe: h must be positive");
  if (!(c.rref > 0.0)) fail("gmpe: Rref must be positive");
  if (!(c.vref > 0.0)) fail("gmpe: Vref must be positive");
  if (!(c.vc > 0.0)) fail("gmpe: Vc must be positive");
  if (!(c.f3 > 0.0)) fail("gmpe: f3 must be positive");
  if (!(c.r1 < c.r2) || !(c.r1 > 0.0)) fail("gmpe: require 0 < R1 < R2");
  if (!(c.v1 < c.v2) || !(c.v1 > 0.0)) fail("gmpe: require 0 < V1 < V2");
  if (!(c.phi > 0.0) || !(c.phi_small > 0.0)) fail("gmpe: phi must be positive");
  if (!(c.tau >= 0.0) || !(c.tau_small >= 0.0)) fail("gmpe: tau must be non-negative");
  if (!(c.dphi_r >= 0.0) || !(c.dphi_v >= 0.0)) fail("gmpe: phi reductions must be >= 0");
  if (!(c.phi - c.dphi_r - c.dphi_v > 0.0)) fail("gmpe: reduced phi must stay positive");
}

std::vector<double> MagnitudeGrid::points() const {
  std::vector<double> out;
  if (!(step > 0.0) || !(m_max >= m_min)) return out;
  const auto count = static_cast<std::size_t>(std::floor((m_max - m_min) / step + 1e-9)) + 1;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    // Round away representation noise so 6.0 + 3*0.5 prints as 7.5.
    out.push_back(std::round((m_min + static_cast<double>(i) * step) * 1e9) / 1e9);
  }
  return out;
}

void validate(const HazardConfig& config) {
  if (!(config.magnitudes.m_min < config.magnitudes.m_max)) {
    fail("magnitudes: min must be below max");
  }
  if (!(config.magnitudes.step > 0.0)) fail("magnitudes: step must be positive");
  if (!(config.magnitudes.m_min > 0.0)) fail("magnitudes: min must be positive");
  if (!(config.gr_b > 0.0)) fail("gutenberg_richter: b must be positive");
  if (!std::isfinite(config.gr_a)) fail("gutenberg_richter: a must be finite");
  if (!(config.vs30_mps > 0.0)) fail("vs30_mps must be positive");
  if (!(config.correlation_cap_km > 0.0)) fail("correlation_cap_km must be positive");
  if (config.fault_p1 == config.fault_p2) fail("fault endpoints coincide");
  validate(config.gmpe);
}

FragilityCurveSet FragilityCurveSet::scaled_medians(double factor) const {
  FragilityCurveSet out = *this;
  for (auto& s : out.states) s.median_g *= factor;
  return out;
}

void validate(const FragilityCurveSet& curves, std::string_view what) {
  for (int k = 0; k < kLimitStates; ++k) {
    const auto& s = curves[static_cast<std::size_t>(k)];
    if (!(s.beta > 0.0)) fail(std::string(what) + ": beta must be positive");
    if (!(s.median_g > 0.0)) fail(std::string(what) + ": median must be positive");
    if (k > 0 && !(s.median_g > curves[static_cast<std::size_t>(k - 1)].median_g)) {
      fail(std::string(what) + ": medians must increase from slight to complete");
    }
  }
}

void validate(const FragilityTable& table) {
  for (auto cls : kComponentClasses) {
    validate(table.base(cls), "baseline " + std::string(class_key(cls)));
    validate(table.upgraded(cls), "retrofitted " + std::string(class_key(cls)));
  }
}

FragilityTable default_fragility_table() {
  FragilityTable t;
  // {median (g), beta} for slight, moderate, extensive, complete.
  t.baseline[class_index(ComponentClass::Bus)] = {{{{0.13, 0.65}, {0.26, 0.50}, {0.34, 0.40}, {0.74, 0.40}}}};
  t.baseline[class_index(ComponentClass::Generator)] = {{{{0.10, 0.60}, {0.22, 0.55}, {0.49, 0.50}, {0.79, 0.50}}}};
  t.baseline[class_index(ComponentClass::Load)] = {{{{0.24, 0.25}, {0.32, 0.23}, {0.58, 0.15}, {0.89, 0.15}}}};
  t.baseline[class_index(ComponentClass::Substation)] = {{{{0.10, 0.60}, {0.20, 0.50}, {0.30, 0.40}, {0.50, 0.40}}}};

  t.retrofitted[class_index(ComponentClass::Bus)] = {{{{0.15, 0.70}, {0.29, 0.55}, {0.45, 0.45}, {0.90, 0.45}}}};
  t.retrofitted[class_index(ComponentClass::Generator)] = {{{{0.12, 0.60}, {0.25, 0.60}, {0.52, 0.55}, {0.92, 0.55}}}};
  t.retrofitted[class_index(ComponentClass::Load)] = {{{{0.28, 0.30}, {0.40, 0.20}, {0.72, 0.15}, {1.10, 0.15}}}};
  t.retrofitted[class_index(ComponentClass::Substation)] = {{{{0.15, 0.60}, {0.25, 0.50}, {0.35, 0.40}, {0.70, 0.40}}}};
  return t;
}

double CostTable::cost_of(ComponentKey key) const {
  if (auto it = overrides.find(key); it != overrides.end()) return it->second;
  return class_cost_musd[class_index(key.cls)];
}

void validate(const CostTable& costs) {
  for (auto cls : kComponentClasses) {
    if (!(costs.class_cost_musd[class_index(cls)] > 0.0)) {
      fail("cost for " + std::string(class_key(cls)) + " must be positive");
    }
  }
  for (const auto& [key, value] : costs.overrides) {
    if (!(value > 0.0)) fail("cost override for " + key.name() + " must be positive");
  }
  if (!(costs.budget_musd >= 0.0)) fail("budget_musd must be non-negative");
}

}  // namespace seisgrid
