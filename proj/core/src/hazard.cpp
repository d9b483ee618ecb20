#include "seisgrid/hazard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace seisgrid {

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t state = 0x9E3779B97F4A7C15ULL;
  for (std::uint64_t part : parts) {
    state ^= part + 0x9E3779B97F4A7C15ULL + (state << 6) + (state >> 2);
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    state = z ^ (z >> 31);
  }
  return state;
}

std::uint64_t magnitude_key(double magnitude) {
  return static_cast<std::uint64_t>(std::llround(magnitude * 1e6));
}

double gr_annual_rate(double magnitude, double a, double b) {
  return std::pow(10.0, a - b * magnitude);
}

double gr_exceedance_prob(double magnitude, double a, double b) {
  // -expm1(-x) keeps precision when the rate is tiny.
  return -std::expm1(-gr_annual_rate(magnitude, a, b));
}

std::vector<double> magnitude_bin_rates(std::span<const double> magnitudes, double a, double b) {
  if (magnitudes.empty()) throw ValidationError("magnitude grid is empty");
  std::vector<double> rates(magnitudes.size());
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    const double lower = gr_exceedance_prob(magnitudes[i], a, b);
    const double upper =
        i + 1 < magnitudes.size() ? gr_exceedance_prob(magnitudes[i + 1], a, b) : 0.0;
    rates[i] = std::max(0.0, lower - upper);
  }
  return rates;
}

std::vector<double> magnitude_bin_rates(const MagnitudeGrid& grid, double a, double b) {
  const auto points = grid.points();
  return magnitude_bin_rates(std::span<const double>(points), a, b);
}

double joyner_boore_distance(Point site, Point p1, Point p2) {
  const double dx = p2.x_km - p1.x_km;
  const double dy = p2.y_km - p1.y_km;
  const double len2 = dx * dx + dy * dy;
  if (!(len2 > 0.0)) throw ValidationError("fault trace endpoints coincide");
  double t = ((site.x_km - p1.x_km) * dx + (site.y_km - p1.y_km) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance_km(site, {p1.x_km + t * dx, p1.y_km + t * dy});
}

namespace {

double mechanism_term(Mechanism m, const GmpeCoefficients& c) {
  switch (m) {
    case Mechanism::Unspecified: return c.e0;
    case Mechanism::StrikeSlip: return c.e1;
    case Mechanism::Normal: return c.e2;
    case Mechanism::Reverse: return c.e3;
  }
  return c.e0;
}

double magnitude_term(double m, Mechanism mech, const GmpeCoefficients& c) {
  const double dm = m - c.mh;
  if (m <= c.mh) return mechanism_term(mech, c) + c.e4 * dm + c.e5 * dm * dm;
  return mechanism_term(mech, c) + c.e6 * dm;
}

double distance_term(double m, double r_jb, const GmpeCoefficients& c) {
  const double r = std::sqrt(r_jb * r_jb + c.h * c.h);
  return (c.c1 + c.c2 * (m - c.mref)) * std::log(r / c.rref) + (c.c3 + c.dc3) * (r - c.rref);
}

double site_term(double vs30, double pga_rock_g, const GmpeCoefficients& c) {
  const double ln_flin = c.c_site * std::log(std::min(vs30, c.vc) / c.vref);
  const double f2 = c.f4 * (std::exp(c.f5 * (std::min(vs30, 760.0) - 360.0)) -
                            std::exp(c.f5 * (760.0 - 360.0)));
  const double ln_fnl = c.f1 + f2 * std::log((pga_rock_g + c.f3) / c.f3);
  return ln_flin + ln_fnl;
}

// Linear transition between the small-magnitude (M <= 4.5) and large-magnitude
// (M >= 5.5) values.
double magnitude_blend(double m, double small, double large) {
  if (m <= 4.5) return small;
  if (m >= 5.5) return large;
  return small + (large - small) * (m - 4.5);
}

}  // namespace

GmpeTerms gmpe_terms(double magnitude, double r_jb_km, double vs30_mps, Mechanism mechanism,
                     const GmpeCoefficients& c) {
  GmpeTerms t;
  t.magnitude = magnitude_term(magnitude, mechanism, c);
  t.distance = distance_term(magnitude, r_jb_km, c);
  // Rock reference PGA at Vs30 = Vref, where the site term vanishes.
  const double pga_rock = std::exp(t.magnitude + t.distance);
  t.site = site_term(vs30_mps, pga_rock, c);
  return t;
}

double gmpe_ln_mean(double magnitude, double r_jb_km, double vs30_mps, Mechanism mechanism,
                    const GmpeCoefficients& c) {
  return gmpe_terms(magnitude, r_jb_km, vs30_mps, mechanism, c).total();
}

double gmpe_sigma(double magnitude, double r_jb_km, double vs30_mps, const GmpeCoefficients& c) {
  const double phi_m = magnitude_blend(magnitude, c.phi_small, c.phi);
  const double tau_m = magnitude_blend(magnitude, c.tau_small, c.tau);

  double phi = phi_m;
  if (r_jb_km > c.r2) {
    phi -= c.dphi_r;
  } else if (r_jb_km > c.r1) {
    phi -= c.dphi_r * std::log(r_jb_km / c.r1) / std::log(c.r2 / c.r1);
  }
  if (vs30_mps <= c.v1) {
    phi -= c.dphi_v;
  } else if (vs30_mps <= c.v2) {
    phi -= c.dphi_v * std::log(c.v2 / vs30_mps) / std::log(c.v2 / c.v1);
  }
  return std::sqrt(phi * phi + tau_m * tau_m);
}

double correlation_length(double magnitude, double cap_km) {
  return std::min(5.4 + 4.7 * magnitude, cap_km);
}

double correlation_coeff(double d_km, double magnitude, double cap_km) {
  return std::exp(-3.0 * d_km / correlation_length(magnitude, cap_km));
}

CorrelatedFieldSampler::CorrelatedFieldSampler(double magnitude, std::span<const Point> sites,
                                               Point fault_p1, Point fault_p2, double vs30_mps,
                                               Mechanism mechanism,
                                               const GmpeCoefficients& coeffs,
                                               double correlation_cap_km)
    : magnitude_(magnitude) {
  if (sites.empty()) throw ValidationError("ground motion field needs at least one site");
  if (!(magnitude > 0.0)) throw ValidationError("scenario magnitude must be positive");
  const auto n = sites.size();
  ln_mean_.resize(n);
  sigma_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r_jb = joyner_boore_distance(sites[i], fault_p1, fault_p2);
    ln_mean_[i] = gmpe_ln_mean(magnitude, r_jb, vs30_mps, mechanism, coeffs);
    sigma_[i] = gmpe_sigma(magnitude, r_jb, vs30_mps, coeffs);
  }

  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd corr(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    corr(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double rho = correlation_coeff(
          distance_km(sites[static_cast<std::size_t>(i)], sites[static_cast<std::size_t>(j)]),
          magnitude, correlation_cap_km);
      corr(i, j) = rho;
      corr(j, i) = rho;
    }
  }

  // Coincident sites make the matrix singular; escalate a diagonal jitter.
  Eigen::LLT<Eigen::MatrixXd> llt;
  bool factored = false;
  for (double jitter : {0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6}) {
    Eigen::MatrixXd trial = corr;
    trial.diagonal().array() += jitter;
    llt.compute(trial);
    if (llt.info() == Eigen::Success) {
      jitter_ = jitter;
      factored = true;
      break;
    }
  }
  if (!factored) {
    throw NumericalError("correlation matrix is not positive definite even with 1e-6 jitter");
  }
  const Eigen::MatrixXd lower = llt.matrixL();
  factor_.assign(n * n, 0.0);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      factor_[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = lower(i, j);
    }
  }
}

void CorrelatedFieldSampler::sample_residuals(Rng& rng, std::span<double> residuals) const {
  const auto n = size();
  if (residuals.size() != n) throw std::invalid_argument("residual buffer has the wrong size");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> z(n);
  for (auto& v : z) v = normal(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = factor_.data() + i * n;
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) acc += row[j] * z[j];
    residuals[i] = sigma_[i] * acc;
  }
}

void CorrelatedFieldSampler::sample_pga(Rng& rng, std::span<double> pga_g) const {
  sample_residuals(rng, pga_g);
  for (std::size_t i = 0; i < size(); ++i) pga_g[i] = std::exp(ln_mean_[i] + pga_g[i]);
}

GroundMotionField sample_pga_field(const SeismicScenario& scenario, std::span<const Site> sites,
                                   double vs30_mps, Mechanism mechanism,
                                   const GmpeCoefficients& coeffs, double correlation_cap_km,
                                   Rng& rng) {
  std::vector<Point> points;
  points.reserve(sites.size());
  for (const auto& s : sites) points.push_back(s.location);
  const CorrelatedFieldSampler sampler(scenario.magnitude, points, scenario.fault_p1,
                                       scenario.fault_p2, vs30_mps, mechanism, coeffs,
                                       correlation_cap_km);
  GroundMotionField field;
  for (const auto& s : sites) field.site_ids.push_back(s.id);
  field.ln_mean = sampler.ln_mean();
  field.sigma = sampler.sigma();
  field.residuals.resize(sites.size());
  sampler.sample_residuals(rng, field.residuals);
  field.pga_g.resize(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    field.pga_g[i] = std::exp(field.ln_mean[i] + field.residuals[i]);
  }
  return field;
}

}  // namespace seisgrid
