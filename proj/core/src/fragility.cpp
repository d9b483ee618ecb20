#include "seisgrid/fragility.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace seisgrid {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

std::array<double, kLimitStates> exceedance_probs(double pga_g, const FragilityCurveSet& curves) {
  std::array<double, kLimitStates> p{};
  const double ln_pga = std::log(pga_g);
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = normal_cdf((ln_pga - std::log(curves[k].median_g)) / curves[k].beta);
  }
  return p;
}

int sample_damage_state(double pga_g, const FragilityCurveSet& curves, double u) {
  const auto p = exceedance_probs(pga_g, curves);
  int ds = 0;
  // Exceedance probabilities are non-increasing in k, so the state is the
  // count of limit states whose probability still covers u. A zero
  // probability never covers u (matters only for u == 0).
  for (double pk : p) {
    if (u <= pk && pk > 0.0) ++ds;
  }
  return ds;
}

FunctionalityMapping FunctionalityMapping::standard() {
  FunctionalityMapping m;
  const std::array<double, kDamageStates> graded{1.0, 0.75, 0.5, 0.25, 0.0};
  m.ratios[class_index(ComponentClass::Bus)] = {1.0, 1.0, 0.0, 0.0, 0.0};
  m.ratios[class_index(ComponentClass::Generator)] = graded;
  m.ratios[class_index(ComponentClass::Load)] = graded;
  m.ratios[class_index(ComponentClass::Substation)] = graded;
  return m;
}

double functionality_ratio(ComponentClass cls, int ds) {
  static const FunctionalityMapping mapping = FunctionalityMapping::standard();
  return mapping.ratio(cls, ds);
}

ComponentFragility baseline_fragility(const FragilityTable& table, const Grid& grid) {
  ComponentFragility f;
  f.curves.reserve(grid.component_count());
  for (std::size_t i = 0; i < grid.component_count(); ++i) {
    f.curves.push_back(table.base(grid.component(i).cls));
  }
  return f;
}

ComponentFragility apply_retrofit(const FragilityTable& table, const Grid& grid,
                                  std::span<const std::uint8_t> plan) {
  if (plan.size() != grid.component_count()) {
    throw ValidationError("retrofit plan has " + std::to_string(plan.size()) +
                          " entries, grid has " + std::to_string(grid.component_count()) +
                          " components");
  }
  ComponentFragility f = baseline_fragility(table, grid);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (plan[i]) f.curves[i] = table.upgraded(grid.component(i).cls);
  }
  return f;
}

ComponentFragility apply_retrofit(const FragilityTable& table, const Grid& grid,
                                  std::span<const ComponentKey> retrofitted) {
  std::vector<std::uint8_t> plan(grid.component_count(), 0);
  for (const auto& key : retrofitted) {
    const auto index = grid.find_component(key);
    if (!index) throw ValidationError("unknown component " + key.name());
    plan[*index] = 1;
  }
  return apply_retrofit(table, grid, plan);
}

ComponentFragility retrofit_class(const FragilityTable& table, const Grid& grid,
                                  ComponentClass cls) {
  std::vector<std::uint8_t> plan(grid.component_count(), 0);
  for (std::size_t i = 0; i < plan.size(); ++i) plan[i] = grid.component(i).cls == cls;
  return apply_retrofit(table, grid, plan);
}

DamageRealization intact_damage(const Grid& grid) {
  return {std::vector<std::uint8_t>(grid.component_count(), 0),
          std::vector<double>(grid.component_count(), 1.0)};
}

DamageRealization damage_from_draws(std::span<const double> pga_g, std::span<const double> u,
                                    const ComponentFragility& fragility, const Grid& grid,
                                    const FunctionalityMapping& mapping) {
  const auto n = grid.component_count();
  if (pga_g.size() != n || u.size() != n || fragility.curves.size() != n) {
    throw ValidationError("damage sampling inputs do not cover every component");
  }
  DamageRealization d;
  d.ds.resize(n);
  d.alpha.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int ds = sample_damage_state(pga_g[i], fragility.curves[i], u[i]);
    d.ds[i] = static_cast<std::uint8_t>(ds);
    d.alpha[i] = mapping.ratio(grid.component(i).cls, ds);
  }
  return d;
}

DamageRealization realize_damage(const GroundMotionField& field,
                                 const ComponentFragility& fragility, const Grid& grid,
                                 const FunctionalityMapping& mapping, Rng& rng) {
  std::vector<double> u(grid.component_count());
  for (auto& v : u) v = uniform01(rng);
  return damage_from_draws(field.pga_g, u, fragility, grid, mapping);
}

}  // namespace seisgrid
