#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "seisgrid/grid.hpp"
#include "seisgrid/hazard.hpp"
#include "seisgrid/model.hpp"
#include "seisgrid/rng.hpp"

namespace seisgrid {

/// Standard normal CDF.
double normal_cdf(double x);

/// P(DS >= k | pga) for k = slight .. complete.
std::array<double, kLimitStates> exceedance_probs(double pga_g, const FragilityCurveSet& curves);

/// Inverse sampling of the damage state (0..4) from a uniform draw u in [0, 1):
/// ds = k when P_{k+1} < u <= P_k, with P_0 = 1 and P_5 = 0.
int sample_damage_state(double pga_g, const FragilityCurveSet& curves, double u);

/// Residual functionality ratio per class and damage state.
struct FunctionalityMapping {
  std::array<std::array<double, kDamageStates>, 4> ratios{};

  /// Binary bus model {1, 1, 0, 0, 0}; generators, loads and substations
  /// {1, 0.75, 0.5, 0.25, 0}.
  static FunctionalityMapping standard();

  double ratio(ComponentClass cls, int ds) const {
    return ratios[class_index(cls)][static_cast<std::size_t>(ds)];
  }
};

/// Ratio under the standard mapping.
double functionality_ratio(ComponentClass cls, int ds);

/// Fragility curves per component, indexed like Grid's component catalog.
struct ComponentFragility {
  std::vector<FragilityCurveSet> curves;
};

ComponentFragility baseline_fragility(const FragilityTable& table, const Grid& grid);

/// Components with plan[i] != 0 take their class's retrofitted curves.
ComponentFragility apply_retrofit(const FragilityTable& table, const Grid& grid,
                                  std::span<const std::uint8_t> plan);

/// Same, by component key; throws ValidationError on an id not in the grid.
ComponentFragility apply_retrofit(const FragilityTable& table, const Grid& grid,
                                  std::span<const ComponentKey> retrofitted);

/// Every component of `cls` retrofitted, everything else at baseline.
ComponentFragility retrofit_class(const FragilityTable& table, const Grid& grid,
                                  ComponentClass cls);

struct DamageRealization {
  std::vector<std::uint8_t> ds;
  std::vector<double> alpha;
};

DamageRealization intact_damage(const Grid& grid);

/// Damage from pre-drawn per-component PGA values and uniforms.
DamageRealization damage_from_draws(std::span<const double> pga_g, std::span<const double> u,
                                    const ComponentFragility& fragility, const Grid& grid,
                                    const FunctionalityMapping& mapping);

/// Draws one uniform per component (in catalog order) and samples damage.
DamageRealization realize_damage(const GroundMotionField& field,
                                 const ComponentFragility& fragility, const Grid& grid,
                                 const FunctionalityMapping& mapping, Rng& rng);

}  // namespace seisgrid
