#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seisgrid/model.hpp"
#include "seisgrid/rng.hpp"

namespace seisgrid {

// --- Recurrence --------------------------------------------------------------

/// Gutenberg-Richter annual rate of events with magnitude >= M: 10^(a - b M).
double gr_annual_rate(double magnitude, double a, double b);

/// Poisson annual probability of at least one event with magnitude >= M.
double gr_exceedance_prob(double magnitude, double a, double b);

/// Annual weight of each magnitude bin [M_i, M_{i+1}); the last bin is open
/// above. The weights telescope to gr_exceedance_prob(m_min).
/// Throws ValidationError for an empty grid.
std::vector<double> magnitude_bin_rates(const MagnitudeGrid& grid, double a, double b);
std::vector<double> magnitude_bin_rates(std::span<const double> magnitudes, double a, double b);

// --- Ground motion model -----------------------------------------------------

/// Horizontal distance from `site` to the fault trace segment p1-p2.
/// Throws ValidationError when p1 == p2.
double joyner_boore_distance(Point site, Point p1, Point p2);

/// Magnitude, distance and site terms of the BSSA14 median (natural log of g).
struct GmpeTerms {
  double magnitude = 0.0;
  double distance = 0.0;
  double site = 0.0;

  double total() const { return magnitude + distance + site; }
};

GmpeTerms gmpe_terms(double magnitude, double r_jb_km, double vs30_mps, Mechanism mechanism,
                     const GmpeCoefficients& c);

/// Median ln PGA (ln g).
double gmpe_ln_mean(double magnitude, double r_jb_km, double vs30_mps, Mechanism mechanism,
                    const GmpeCoefficients& c);

/// Total standard deviation of ln PGA.
double gmpe_sigma(double magnitude, double r_jb_km, double vs30_mps, const GmpeCoefficients& c);

// --- Spatial correlation ------------------------------------------------------

/// Correlation length b(M) = min(5.4 + 4.7 M, cap).
double correlation_length(double magnitude, double cap_km);

/// Residual correlation between two sites d km apart: exp(-3 d / b(M)).
double correlation_coeff(double d_km, double magnitude, double cap_km);

struct SeismicScenario {
  double magnitude = 0.0;
  Point fault_p1;
  Point fault_p2;
  std::uint64_t seed = 0;
};

struct Site {
  std::string id;
  Point location;
};

struct GroundMotionField {
  std::vector<std::string> site_ids;
  std::vector<double> ln_mean;
  std::vector<double> sigma;
  std::vector<double> residuals;
  std::vector<double> pga_g;
};

/// Precomputes median, sigma and the correlation factor for one magnitude and
/// a fixed site layout, then draws fields from it. Drawing is const and can
/// be shared between threads as long as each thread owns its Rng.
class CorrelatedFieldSampler {
 public:
  CorrelatedFieldSampler(double magnitude, std::span<const Point> sites, Point fault_p1,
                         Point fault_p2, double vs30_mps, Mechanism mechanism,
                         const GmpeCoefficients& coeffs, double correlation_cap_km);

  std::size_t size() const { return ln_mean_.size(); }
  double magnitude() const { return magnitude_; }
  const std::vector<double>& ln_mean() const { return ln_mean_; }
  const std::vector<double>& sigma() const { return sigma_; }
  /// Diagonal jitter that was needed to factor the correlation matrix.
  double jitter() const { return jitter_; }

  /// Writes correlated residuals (N(0, Sigma)) into `residuals`.
  void sample_residuals(Rng& rng, std::span<double> residuals) const;
  /// Writes exp(ln_mean + residual) into `pga_g`.
  void sample_pga(Rng& rng, std::span<double> pga_g) const;

 private:
  double magnitude_;
  std::vector<double> ln_mean_;
  std::vector<double> sigma_;
  std::vector<double> factor_;  // row-major lower-triangular factor of the correlation matrix
  double jitter_ = 0.0;
};

/// One spatially correlated PGA field. Throws NumericalError when the
/// correlation matrix cannot be factored even after jitter.
GroundMotionField sample_pga_field(const SeismicScenario& scenario, std::span<const Site> sites,
                                   double vs30_mps, Mechanism mechanism,
                                   const GmpeCoefficients& coeffs, double correlation_cap_km,
                                   Rng& rng);

}  // namespace seisgrid
