#pragma once

#include <array>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "seisgrid/types.hpp"

namespace seisgrid {

// ---------------------------------------------------------------------------
// Static grid description
// ---------------------------------------------------------------------------

struct Bus {
  int id = 0;
  double x_km = 0.0;
  double y_km = 0.0;

  Point location() const { return {x_km, y_km}; }
  bool operator==(const Bus&) const = default;
};

struct Line {
  int id = 0;
  int from_bus = 0;
  int to_bus = 0;
  double reactance_pu = 0.0;
  double rate_mw = 0.0;
  std::optional<int> substation_id;

  bool operator==(const Line&) const = default;
};

struct Generator {
  int id = 0;
  int bus_id = 0;
  double pmin_mw = 0.0;
  double pmax_mw = 0.0;
  double cost_per_mwh = 0.0;

  bool operator==(const Generator&) const = default;
};

struct Load {
  int id = 0;
  int bus_id = 0;
  double demand_mw = 0.0;

  bool operator==(const Load&) const = default;
};

/// A substation is modelled as the transformer branch it sits on.
struct Substation {
  int id = 0;
  int line_id = 0;

  bool operator==(const Substation&) const = default;
};

struct PowerNetworkModel {
  double base_mva = 100.0;
  std::vector<Bus> buses;
  std::vector<Line> lines;
  std::vector<Generator> generators;
  std::vector<Load> loads;
  std::vector<Substation> substations;

  double total_demand_mw() const;
  double total_capacity_mw() const;

  bool operator==(const PowerNetworkModel&) const = default;
};

/// Throws ValidationError naming the first violated invariant and the offending id.
void validate(const PowerNetworkModel& model);

// ---------------------------------------------------------------------------
// Hazard configuration
// ---------------------------------------------------------------------------

/// Fault mechanism flag of the magnitude-scaling term.
enum class Mechanism : std::uint8_t { Unspecified, StrikeSlip, Normal, Reverse };

std::string_view mechanism_code(Mechanism m);  // "U", "SS", "NS", "RS"
Mechanism parse_mechanism(std::string_view code);

/// BSSA14 coefficients for PGA (period 0 s). Defaults are the published values.
struct GmpeCoefficients {
  // magnitude scaling
  double e0 = 0.4473;
  double e1 = 0.4856;
  double e2 = 0.2459;
  double e3 = 0.4539;
  double e4 = 1.431;
  double e5 = 0.05053;
  double e6 = -0.1662;
  double mh = 5.5;
  // distance scaling
  double c1 = -1.134;
  double c2 = 0.1917;
  double c3 = -0.00809;
  double mref = 4.5;
  double rref = 1.0;
  double h = 4.5;
  // site term (dc3 is the regional anelastic adjustment applied in the distance term)
  double dc3 = 0.00286;
  double c_site = -0.5150;
  double vc = 925.0;
  double vref = 760.0;
  double f1 = 0.0;
  double f3 = 0.1;
  double f4 = -0.1500;
  double f5 = -0.00701;
  // aleatory uncertainty
  double r1 = 110.0;
  double r2 = 270.0;
  double dphi_r = 0.100;
  double dphi_v = 0.084;
  double v1 = 225.0;
  double v2 = 300.0;
  double phi = 0.495;  // M >= 5.5
  double tau = 0.348;  // M >= 5.5
  double phi_small = 0.695;  // M <= 4.5
  double tau_small = 0.398;  // M <= 4.5

  bool operator==(const GmpeCoefficients&) const = default;
};

void validate(const GmpeCoefficients& coeffs);

struct MagnitudeGrid {
  double m_min = 6.0;
  double m_max = 8.5;
  double step = 0.5;

  /// m_min, m_min + step, ... up to and including m_max (within 1e-9).
  std::vector<double> points() const;
  /// Same range with half the step.
  MagnitudeGrid refined() const { return {m_min, m_max, step / 2.0}; }

  bool operator==(const MagnitudeGrid&) const = default;
};

struct HazardConfig {
  Point fault_p1{0.0, 50.0};
  Point fault_p2{40.0, 60.0};
  double gr_a = 4.0;
  double gr_b = 1.0;
  MagnitudeGrid magnitudes;
  double vs30_mps = 760.0;
  Mechanism mechanism = Mechanism::StrikeSlip;
  GmpeCoefficients gmpe;
  double correlation_cap_km = 40.0;

  bool operator==(const HazardConfig&) const = default;
};

void validate(const HazardConfig& config);

// ---------------------------------------------------------------------------
// Fragility and cost tables
// ---------------------------------------------------------------------------

struct FragilityCurve {
  double median_g = 0.0;
  double beta = 0.0;

  bool operator==(const FragilityCurve&) const = default;
};

/// Lognormal curves for slight, moderate, extensive and complete damage.
struct FragilityCurveSet {
  std::array<FragilityCurve, kLimitStates> states{};

  const FragilityCurve& operator[](std::size_t k) const { return states[k]; }
  FragilityCurve& operator[](std::size_t k) { return states[k]; }
  /// Copy with every median multiplied by `factor`.
  FragilityCurveSet scaled_medians(double factor) const;

  bool operator==(const FragilityCurveSet&) const = default;
};

void validate(const FragilityCurveSet& curves, std::string_view what);

struct FragilityTable {
  std::array<FragilityCurveSet, 4> baseline{};
  std::array<FragilityCurveSet, 4> retrofitted{};

  const FragilityCurveSet& base(ComponentClass c) const { return baseline[class_index(c)]; }
  const FragilityCurveSet& upgraded(ComponentClass c) const {
    return retrofitted[class_index(c)];
  }

  bool operator==(const FragilityTable&) const = default;
};

void validate(const FragilityTable& table);

/// Hazus-based parameters for buses, generation plants, load units and substations,
/// before and after retrofit.
FragilityTable default_fragility_table();

struct CostTable {
  /// Million USD per component, indexed by ComponentClass.
  std::array<double, 4> class_cost_musd{0.5, 1.0, 0.3, 0.8};
  std::map<ComponentKey, double> overrides;
  double budget_musd = 5.0;

  double cost_of(ComponentKey key) const;

  bool operator==(const CostTable&) const = default;
};

void validate(const CostTable& costs);

/// Everything a risk analysis consumes.
struct ModelInputs {
  PowerNetworkModel network;
  HazardConfig hazard;
  FragilityTable fragility = default_fragility_table();
  CostTable costs;
};

}  // namespace seisgrid
