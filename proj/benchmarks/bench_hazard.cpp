#include <benchmark/benchmark.h>

#include <vector>

#include "seisgrid/config_io.hpp"
#include "seisgrid/grid.hpp"
#include "seisgrid/hazard.hpp"

namespace sg = seisgrid;

namespace {

const sg::ModelInputs& inputs() {
  static const auto in = sg::load_inputs(sg::InputPaths::in_directory(SEISGRID_BENCH_DATA_DIR));
  return in;
}

void BM_GmpeLnMean(benchmark::State& state) {
  const sg::GmpeCoefficients k;
  double r = 0.0;
  for (auto _ : state) {
    r += 0.1;
    if (r > 300.0) r = 0.0;
    benchmark::DoNotOptimize(sg::gmpe_ln_mean(7.5, r, 760.0, sg::Mechanism::StrikeSlip, k));
  }
}
BENCHMARK(BM_GmpeLnMean);

void BM_SamplerSetup(benchmark::State& state) {
  const sg::Grid grid(inputs().network);
  const auto& h = inputs().hazard;
  for (auto _ : state) {
    sg::CorrelatedFieldSampler s(8.0, grid.site_locations(), h.fault_p1, h.fault_p2, h.vs30_mps,
                                 h.mechanism, h.gmpe, h.correlation_cap_km);
    benchmark::DoNotOptimize(s.size());
  }
}
BENCHMARK(BM_SamplerSetup);

void BM_SamplePga(benchmark::State& state) {
  const sg::Grid grid(inputs().network);
  const auto& h = inputs().hazard;
  const sg::CorrelatedFieldSampler s(8.0, grid.site_locations(), h.fault_p1, h.fault_p2,
                                     h.vs30_mps, h.mechanism, h.gmpe, h.correlation_cap_km);
  sg::Rng rng(7);
  std::vector<double> pga(s.size());
  for (auto _ : state) {
    s.sample_pga(rng, pga);
    benchmark::DoNotOptimize(pga.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pga.size()));
}
BENCHMARK(BM_SamplePga);

}  // namespace
