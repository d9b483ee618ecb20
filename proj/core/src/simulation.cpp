#include "seisgrid/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "seisgrid/parallel.hpp"

namespace seisgrid {

namespace {

constexpr std::size_t kMemoCapacity = 4'000'000;

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sample_std(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

void validate(const ConvergenceConfig& c) {
  if (!(c.tau > 0.0 && c.tau <= 1.0)) throw ValidationError("convergence tau must lie in (0, 1]");
  if (!(c.delta > 0.0)) throw ValidationError("convergence delta must be positive");
  if (!(c.z > 0.0)) throw ValidationError("convergence z must be positive");
  if (c.min_samples < 2) throw ValidationError("min_samples must be at least 2");
  if (c.max_samples < c.min_samples) throw ValidationError("max_samples must be >= min_samples");
  if (c.check_interval == 0) throw ValidationError("check_interval must be positive");
}

const char* stop_reason_name(StopReason r) {
  return r == StopReason::Converged ? "converged" : "max_samples";
}

RiskResult compute_eafl(std::span<const double> magnitudes, std::span<const double> rates,
                        std::vector<MagnitudeStats> stats) {
  if (magnitudes.empty()) throw ValidationError("empty magnitude grid");
  if (rates.size() != magnitudes.size() || stats.size() != magnitudes.size()) {
    throw ValidationError("magnitude grid, rates and statistics differ in length");
  }
  RiskResult r;
  r.magnitudes.assign(magnitudes.begin(), magnitudes.end());
  r.rates.assign(rates.begin(), rates.end());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (std::abs(stats[i].magnitude - magnitudes[i]) > 1e-9) {
      throw ValidationError("statistics for M=" + std::to_string(stats[i].magnitude) +
                            " do not match grid magnitude " + std::to_string(magnitudes[i]));
    }
    const double c = rates[i] * (1.0 - stats[i].mean_norm);
    r.contributions.push_back(c);
    r.eafl += c;
    if (stats[i].n_samples() > 0) {
      const double sd = stats[i].std_norm;
      r.eafl_std_error += rates[i] * rates[i] * sd * sd / static_cast<double>(stats[i].n_samples());
    }
  }
  r.eafl_std_error = std::sqrt(r.eafl_std_error);
  r.stats = std::move(stats);
  return r;
}

ScenarioDetail evaluate_network(const Grid& grid, const DamageRealization& damage) {
  ScenarioDetail d;
  d.damage = damage;
  d.topology = build_topology(grid, damage);
  d.partition = find_islands(grid, d.topology);
  for (auto& island : d.partition.islands) {
    const bool viable = island_viability(island, grid, damage);
    d.viable.push_back(viable);
    if (!viable) {
      d.cases.emplace_back();
      d.dispatch.emplace_back();
      continue;
    }
    const auto slack = designate_slack(island, grid, damage);
    island.slack_bus = slack;
    d.cases.push_back(
        assemble_case(island, grid, damage, d.topology, grid.model().buses[slack].id));
    d.dispatch.push_back(solve_with_shedding(d.cases.back()));
  }
  d.served_mw = system_functionality(d.dispatch);
  return d;
}

RiskEngine::RiskEngine(ModelInputs inputs, std::uint64_t master_seed, unsigned threads)
    : inputs_(std::move(inputs)),
      grid_(inputs_.network),
      seed_(master_seed),
      threads_(std::max(1u, threads)) {
  validate(inputs_.hazard);
  validate(inputs_.fragility);
  baseline_fragility_ = seisgrid::baseline_fragility(inputs_.fragility, grid_);
  rates_ = magnitude_bin_rates(inputs_.hazard.magnitudes, inputs_.hazard.gr_a, inputs_.hazard.gr_b);
  baseline_mw_ = evaluate_damage(intact_damage(grid_));
  if (!(baseline_mw_ > 0.0)) {
    throw ValidationError("undamaged network serves no load; baseline functionality is zero");
  }
}

std::shared_ptr<const CorrelatedFieldSampler> RiskEngine::sampler(double magnitude) const {
  const auto key = magnitude_key(magnitude);
  std::lock_guard lock(sampler_mutex_);
  auto& slot = samplers_[key];
  if (!slot) {
    const auto& h = inputs_.hazard;
    slot = std::make_shared<const CorrelatedFieldSampler>(
        magnitude, grid_.site_locations(), h.fault_p1, h.fault_p2, h.vs30_mps, h.mechanism, h.gmpe,
        h.correlation_cap_km);
  }
  return slot;
}

void RiskEngine::draw(double magnitude, std::size_t k, std::span<double> pga_g,
                      std::span<double> u) const {
  const auto mkey = magnitude_key(magnitude);
  Rng hazard_rng(mix_seed({seed_, mkey, k, 0}));
  sampler(magnitude)->sample_pga(hazard_rng, pga_g);
  Rng damage_rng(mix_seed({seed_, mkey, k, 1}));
  for (auto& v : u) v = uniform01(damage_rng);
}

double RiskEngine::evaluate_damage(const DamageRealization& damage) const {
  std::string key(damage.ds.begin(), damage.ds.end());
  {
    std::shared_lock lock(memo_mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const double served = evaluate_detail(damage).served_mw;
  std::unique_lock lock(memo_mutex_);
  if (memo_.size() < kMemoCapacity) memo_.emplace(std::move(key), served);
  return served;
}

ScenarioDetail RiskEngine::evaluate_detail(const DamageRealization& damage) const {
  return evaluate_network(grid_, damage);
}

double RiskEngine::simulate_sample(double magnitude, std::size_t k,
                                   const ComponentFragility& fragility) const {
  const auto n = grid_.component_count();
  std::vector<double> pga(n);
  std::vector<double> u(n);
  draw(magnitude, k, pga, u);
  return evaluate_damage(damage_from_draws(pga, u, fragility, grid_, mapping_));
}

ScenarioDetail RiskEngine::simulate_detail(double magnitude, std::size_t k,
                                           const ComponentFragility& fragility) const {
  const auto n = grid_.component_count();
  std::vector<double> pga(n);
  std::vector<double> u(n);
  draw(magnitude, k, pga, u);
  auto detail = evaluate_detail(damage_from_draws(pga, u, fragility, grid_, mapping_));
  const auto s = sampler(magnitude);
  detail.magnitude = magnitude;
  detail.sample_index = k;
  detail.ln_mean = s->ln_mean();
  detail.sigma = s->sigma();
  detail.pga_g = std::move(pga);
  return detail;
}

std::vector<double> RiskEngine::sample_batch(double magnitude, std::size_t begin, std::size_t end,
                                             const ComponentFragility& fragility) const {
  std::vector<double> out(end - begin);
  parallel_for(out.size(), threads_, [&](std::size_t i) {
    out[i] = simulate_sample(magnitude, begin + i, fragility);
  });
  return out;
}

MagnitudeStats RiskEngine::run_mc(double magnitude, const ConvergenceConfig& config,
                                  const ComponentFragility& fragility) const {
  validate(config);
  MagnitudeStats st;
  st.magnitude = magnitude;
  std::vector<double> norm;
  auto extend = [&](std::size_t target) {
    const auto begin = st.samples_mw.size();
    auto batch = sample_batch(magnitude, begin, target, fragility);
    for (double f : batch) {
      st.samples_mw.push_back(f);
      norm.push_back(f / baseline_mw_);
    }
  };

  extend(config.min_samples);
  while (true) {
    const auto n = norm.size();
    const double mu = mean_of(norm);
    const double sd = sample_std(norm, mu);
    const double width = 2.0 * config.z * sd / std::sqrt(static_cast<double>(n));
    // Windowed mean stability: compare against the mean one check interval ago.
    const auto prev_n = n > config.check_interval ? n - config.check_interval : 1;
    const double mu_prev = mean_of(std::span<const double>(norm).first(prev_n));
    double rel_change;
    if (mu_prev == 0.0) rel_change = mu == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    else rel_change = std::abs(mu - mu_prev) / mu_prev;
    const bool stable = config.tau >= 1.0 ? true : rel_change < config.tau;

    st.mean_norm = mu;
    st.std_norm = sd;
    st.ci_halfwidth = config.z * sd / std::sqrt(static_cast<double>(n));
    if (stable && width < config.delta) {
      st.stop = StopReason::Converged;
      break;
    }
    if (n >= config.max_samples) {
      st.stop = StopReason::MaxSamples;
      break;
    }
    extend(std::min(config.max_samples, n + config.check_interval));
  }
  return st;
}

RiskResult RiskEngine::assess(const ConvergenceConfig& config, const ComponentFragility& fragility,
                              const MagnitudeGrid& grid) const {
  const auto magnitudes = grid.points();
  const auto rates = magnitude_bin_rates(magnitudes, inputs_.hazard.gr_a, inputs_.hazard.gr_b);
  std::vector<MagnitudeStats> stats;
  for (double m : magnitudes) stats.push_back(run_mc(m, config, fragility));
  auto r = compute_eafl(magnitudes, rates, std::move(stats));
  r.seed = seed_;
  r.baseline_mw = baseline_mw_;
  return r;
}

FixedEstimate RiskEngine::eafl_fixed(const ComponentFragility& fragility,
                                     std::span<const std::size_t> samples_per_magnitude) const {
  const auto magnitudes = grid_magnitudes();
  if (samples_per_magnitude.size() != magnitudes.size()) {
    throw ValidationError("sample counts do not match the magnitude grid");
  }
  FixedEstimate est;
  double variance = 0.0;
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    const auto n = samples_per_magnitude[i];
    if (n == 0) throw ValidationError("fixed-sample EAFL needs at least one sample per magnitude");
    std::vector<double> norm(n);
    for (std::size_t k = 0; k < n; ++k) {
      norm[k] = simulate_sample(magnitudes[i], k, fragility) / baseline_mw_;
    }
    const double mu = mean_of(norm);
    const double sd = sample_std(norm, mu);
    est.mean_norm.push_back(mu);
    est.eafl += rates_[i] * (1.0 - mu);
    variance += rates_[i] * rates_[i] * sd * sd / static_cast<double>(n);
  }
  est.std_error = std::sqrt(variance);
  return est;
}

FixedEstimate RiskEngine::eafl_fixed(const ComponentFragility& fragility,
                                     std::size_t samples) const {
  std::vector<std::size_t> n(grid_magnitudes().size(), samples);
  return eafl_fixed(fragility, n);
}

std::size_t RiskEngine::memo_size() const {
  std::shared_lock lock(memo_mutex_);
  return memo_.size();
}

}  // namespace seisgrid
