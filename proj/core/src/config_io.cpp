#include "seisgrid/config_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

namespace seisgrid {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

const json& require(const json& obj, std::string_view key, std::string_view ctx) {
  if (!obj.is_object()) throw ParseError(std::string(ctx) + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(std::string(ctx) + ": missing field '" + std::string(key) + "'");
  }
  return *it;
}

double number(const json& obj, std::string_view key, std::string_view ctx) {
  const json& v = require(obj, key, ctx);
  if (!v.is_number()) {
    throw ParseError(std::string(ctx) + ": field '" + std::string(key) + "' must be a number");
  }
  return v.get<double>();
}

int integer(const json& obj, std::string_view key, std::string_view ctx) {
  const json& v = require(obj, key, ctx);
  if (!v.is_number_integer()) {
    throw ParseError(std::string(ctx) + ": field '" + std::string(key) + "' must be an integer");
  }
  return v.get<int>();
}

const json& array(const json& obj, std::string_view key, std::string_view ctx) {
  const json& v = require(obj, key, ctx);
  if (!v.is_array()) {
    throw ParseError(std::string(ctx) + ": field '" + std::string(key) + "' must be an array");
  }
  return v;
}

Point point(const json& v, std::string_view ctx) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ParseError(std::string(ctx) + ": expected [x_km, y_km]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

// Name <-> member table shared by the hazard parser and serializer.
const std::vector<std::pair<std::string_view, double GmpeCoefficients::*>>& gmpe_fields() {
  static const std::vector<std::pair<std::string_view, double GmpeCoefficients::*>> fields{
      {"e0", &GmpeCoefficients::e0},       {"e1", &GmpeCoefficients::e1},
      {"e2", &GmpeCoefficients::e2},       {"e3", &GmpeCoefficients::e3},
      {"e4", &GmpeCoefficients::e4},       {"e5", &GmpeCoefficients::e5},
      {"e6", &GmpeCoefficients::e6},       {"Mh", &GmpeCoefficients::mh},
      {"c1", &GmpeCoefficients::c1},       {"c2", &GmpeCoefficients::c2},
      {"c3", &GmpeCoefficients::c3},       {"Mref", &GmpeCoefficients::mref},
      {"Rref", &GmpeCoefficients::rref},   {"h", &GmpeCoefficients::h},
      {"dc3", &GmpeCoefficients::dc3},     {"c", &GmpeCoefficients::c_site},
      {"Vc", &GmpeCoefficients::vc},       {"Vref", &GmpeCoefficients::vref},
      {"f1", &GmpeCoefficients::f1},       {"f3", &GmpeCoefficients::f3},
      {"f4", &GmpeCoefficients::f4},       {"f5", &GmpeCoefficients::f5},
      {"R1", &GmpeCoefficients::r1},       {"R2", &GmpeCoefficients::r2},
      {"dphiR", &GmpeCoefficients::dphi_r}, {"dphiV", &GmpeCoefficients::dphi_v},
      {"V1", &GmpeCoefficients::v1},       {"V2", &GmpeCoefficients::v2},
      {"phi", &GmpeCoefficients::phi},     {"tau", &GmpeCoefficients::tau},
      {"phi_small", &GmpeCoefficients::phi_small},
      {"tau_small", &GmpeCoefficients::tau_small},
  };
  return fields;
}

constexpr std::array<std::string_view, kLimitStates> kStateKeys{"slight", "moderate",
                                                                "extensive", "complete"};

FragilityCurveSet parse_curve_set(const json& obj, std::string_view ctx) {
  FragilityCurveSet set;
  for (std::size_t k = 0; k < kStateKeys.size(); ++k) {
    const std::string sub = std::string(ctx) + "." + std::string(kStateKeys[k]);
    const json& state = require(obj, kStateKeys[k], ctx);
    set[k].median_g = number(state, "median_g", sub);
    set[k].beta = number(state, "beta", sub);
  }
  return set;
}

std::array<FragilityCurveSet, 4> parse_class_sets(const json& obj, std::string_view ctx) {
  std::array<FragilityCurveSet, 4> sets;
  for (auto cls : kComponentClasses) {
    const std::string sub = std::string(ctx) + "." + std::string(class_key(cls));
    sets[class_index(cls)] = parse_curve_set(require(obj, class_key(cls), ctx), sub);
  }
  return sets;
}

ojson curve_sets_json(const std::array<FragilityCurveSet, 4>& sets) {
  ojson out = ojson::object();
  for (auto cls : kComponentClasses) {
    ojson per = ojson::object();
    for (std::size_t k = 0; k < kStateKeys.size(); ++k) {
      const auto& s = sets[class_index(cls)][k];
      per[std::string(kStateKeys[k])] = {{"median_g", s.median_g}, {"beta", s.beta}};
    }
    out[std::string(class_key(cls))] = std::move(per);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// network.json
// ---------------------------------------------------------------------------

PowerNetworkModel parse_network(std::string_view json_text) {
  const json root = parse_json(json_text, "network");
  PowerNetworkModel m;
  m.base_mva = number(root, "base_mva", "network");

  for (const auto& b : array(root, "buses", "network")) {
    m.buses.push_back({integer(b, "id", "bus"), number(b, "x_km", "bus"), number(b, "y_km", "bus")});
  }
  for (const auto& l : array(root, "lines", "network")) {
    Line line;
    line.id = integer(l, "id", "line");
    const std::string ctx = "line " + std::to_string(line.id);
    line.from_bus = integer(l, "from", ctx);
    line.to_bus = integer(l, "to", ctx);
    line.reactance_pu = number(l, "x_pu", ctx);
    line.rate_mw = number(l, "rate_mw", ctx);
    if (auto it = l.find("substation"); it != l.end() && !it->is_null()) {
      line.substation_id = integer(l, "substation", ctx);
      m.substations.push_back({*line.substation_id, line.id});
    }
    m.lines.push_back(line);
  }
  for (const auto& g : array(root, "generators", "network")) {
    Generator gen;
    gen.id = integer(g, "id", "generator");
    const std::string ctx = "generator " + std::to_string(gen.id);
    gen.bus_id = integer(g, "bus", ctx);
    gen.pmin_mw = number(g, "pmin_mw", ctx);
    gen.pmax_mw = number(g, "pmax_mw", ctx);
    gen.cost_per_mwh = number(g, "cost_per_mwh", ctx);
    m.generators.push_back(gen);
  }
  for (const auto& d : array(root, "loads", "network")) {
    Load load;
    load.id = integer(d, "id", "load");
    const std::string ctx = "load " + std::to_string(load.id);
    load.bus_id = integer(d, "bus", ctx);
    load.demand_mw = number(d, "demand_mw", ctx);
    m.loads.push_back(load);
  }
  std::sort(m.substations.begin(), m.substations.end(),
            [](const Substation& a, const Substation& b) { return a.id < b.id; });

  validate(m);
  return m;
}

std::string network_to_json(const PowerNetworkModel& m) {
  ojson root;
  root["base_mva"] = m.base_mva;
  root["buses"] = ojson::array();
  for (const auto& b : m.buses) root["buses"].push_back({{"id", b.id}, {"x_km", b.x_km}, {"y_km", b.y_km}});
  root["lines"] = ojson::array();
  for (const auto& l : m.lines) {
    ojson line = {{"id", l.id}, {"from", l.from_bus}, {"to", l.to_bus},
                  {"x_pu", l.reactance_pu}, {"rate_mw", l.rate_mw}};
    if (l.substation_id) line["substation"] = *l.substation_id;
    root["lines"].push_back(std::move(line));
  }
  root["generators"] = ojson::array();
  for (const auto& g : m.generators) {
    root["generators"].push_back({{"id", g.id}, {"bus", g.bus_id}, {"pmin_mw", g.pmin_mw},
                                  {"pmax_mw", g.pmax_mw}, {"cost_per_mwh", g.cost_per_mwh}});
  }
  root["loads"] = ojson::array();
  for (const auto& d : m.loads) {
    root["loads"].push_back({{"id", d.id}, {"bus", d.bus_id}, {"demand_mw", d.demand_mw}});
  }
  return dump(root);
}

// ---------------------------------------------------------------------------
// hazard.json
// ---------------------------------------------------------------------------

HazardConfig parse_hazard(std::string_view json_text) {
  const json root = parse_json(json_text, "hazard");
  HazardConfig h;
  const json& fault = require(root, "fault", "hazard");
  h.fault_p1 = point(require(fault, "p1", "hazard.fault"), "hazard.fault.p1");
  h.fault_p2 = point(require(fault, "p2", "hazard.fault"), "hazard.fault.p2");

  const json& gr = require(root, "gutenberg_richter", "hazard");
  h.gr_a = number(gr, "a", "hazard.gutenberg_richter");
  h.gr_b = number(gr, "b", "hazard.gutenberg_richter");

  const json& mags = require(root, "magnitudes", "hazard");
  h.magnitudes.m_min = number(mags, "min", "hazard.magnitudes");
  h.magnitudes.m_max = number(mags, "max", "hazard.magnitudes");
  h.magnitudes.step = number(mags, "step", "hazard.magnitudes");

  h.vs30_mps = number(root, "vs30_mps", "hazard");
  const json& mech = require(root, "mechanism", "hazard");
  if (!mech.is_string()) throw ParseError("hazard: field 'mechanism' must be a string");
  h.mechanism = parse_mechanism(mech.get<std::string>());
  h.correlation_cap_km = number(root, "correlation_cap_km", "hazard");

  if (auto it = root.find("gmpe"); it != root.end() && !it->is_null()) {
    if (!it->is_object()) throw ParseError("hazard: field 'gmpe' must be an object");
    for (const auto& [key, value] : it->items()) {
      const auto& fields = gmpe_fields();
      auto f = std::find_if(fields.begin(), fields.end(),
                            [&](const auto& entry) { return entry.first == key; });
      if (f == fields.end()) throw ParseError("hazard.gmpe: unknown coefficient '" + key + "'");
      if (!value.is_number()) throw ParseError("hazard.gmpe: '" + key + "' must be a number");
      h.gmpe.*(f->second) = value.get<double>();
    }
  }

  validate(h);
  return h;
}

std::string hazard_to_json(const HazardConfig& h) {
  ojson root;
  root["fault"] = {{"p1", {h.fault_p1.x_km, h.fault_p1.y_km}},
                   {"p2", {h.fault_p2.x_km, h.fault_p2.y_km}}};
  root["gutenberg_richter"] = {{"a", h.gr_a}, {"b", h.gr_b}};
  root["magnitudes"] = {{"min", h.magnitudes.m_min}, {"max", h.magnitudes.m_max},
                        {"step", h.magnitudes.step}};
  root["vs30_mps"] = h.vs30_mps;
  root["mechanism"] = std::string(mechanism_code(h.mechanism));
  root["correlation_cap_km"] = h.correlation_cap_km;
  ojson gmpe = ojson::object();
  for (const auto& [name, member] : gmpe_fields()) gmpe[std::string(name)] = h.gmpe.*member;
  root["gmpe"] = std::move(gmpe);
  return dump(root);
}

// ---------------------------------------------------------------------------
// fragility.json / costs.json
// ---------------------------------------------------------------------------

FragilityTable parse_fragility(std::string_view json_text) {
  const json root = parse_json(json_text, "fragility");
  FragilityTable t;
  t.baseline = parse_class_sets(require(root, "baseline", "fragility"), "fragility.baseline");
  t.retrofitted =
      parse_class_sets(require(root, "retrofitted", "fragility"), "fragility.retrofitted");
  validate(t);
  return t;
}

std::string fragility_to_json(const FragilityTable& t) {
  ojson root;
  root["baseline"] = curve_sets_json(t.baseline);
  root["retrofitted"] = curve_sets_json(t.retrofitted);
  return dump(root);
}

CostTable parse_costs(std::string_view json_text) {
  const json root = parse_json(json_text, "costs");
  CostTable c;
  for (auto cls : kComponentClasses) {
    c.class_cost_musd[class_index(cls)] = number(root, class_key(cls), "costs");
  }
  if (root.contains("budget_musd")) c.budget_musd = number(root, "budget_musd", "costs");
  if (auto it = root.find("overrides"); it != root.end() && !it->is_null()) {
    if (!it->is_object()) throw ParseError("costs: field 'overrides' must be an object");
    for (const auto& [name, value] : it->items()) {
      if (!value.is_number()) throw ParseError("costs.overrides: '" + name + "' must be a number");
      c.overrides[ComponentKey::parse(name)] = value.get<double>();
    }
  }
  validate(c);
  return c;
}

std::string costs_to_json(const CostTable& c) {
  ojson root;
  for (auto cls : kComponentClasses) root[std::string(class_key(cls))] = c.class_cost_musd[class_index(cls)];
  root["budget_musd"] = c.budget_musd;
  if (!c.overrides.empty()) {
    ojson o = ojson::object();
    for (const auto& [key, value] : c.overrides) o[key.name()] = value;
    root["overrides"] = std::move(o);
  }
  return dump(root);
}

// ---------------------------------------------------------------------------
// files
// ---------------------------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

namespace {

template <typename Fn>
auto load_with_context(const std::filesystem::path& path, Fn&& parse) {
  const std::string text = read_text_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace

PowerNetworkModel load_network(const std::filesystem::path& path) {
  return load_with_context(path, parse_network);
}
HazardConfig load_hazard(const std::filesystem::path& path) {
  return load_with_context(path, parse_hazard);
}
FragilityTable load_fragility(const std::filesystem::path& path) {
  return load_with_context(path, parse_fragility);
}
CostTable load_costs(const std::filesystem::path& path) {
  return load_with_context(path, parse_costs);
}

InputPaths InputPaths::in_directory(const std::filesystem::path& dir) {
  return {dir / "network.json", dir / "hazard.json", dir / "fragility.json", dir / "costs.json"};
}

ModelInputs load_inputs(const InputPaths& paths) {
  ModelInputs in;
  in.network = load_network(paths.network);
  in.hazard = load_hazard(paths.hazard);
  in.fragility = load_fragility(paths.fragility);
  in.costs = load_costs(paths.costs);
  return in;
}

}  // namespace seisgrid
