#include <benchmark/benchmark.h>

#include "seisgrid/config_io.hpp"
#include "seisgrid/simulation.hpp"

namespace sg = seisgrid;

namespace {

const sg::ModelInputs& inputs() {
  static const auto in = sg::load_inputs(sg::InputPaths::in_directory(SEISGRID_BENCH_DATA_DIR));
  return in;
}

void BM_IntactDispatch(benchmark::State& state) {
  const sg::Grid grid(inputs().network);
  const auto intact = sg::intact_damage(grid);
  for (auto _ : state) benchmark::DoNotOptimize(sg::evaluate_network(grid, intact).served_mw);
}
BENCHMARK(BM_IntactDispatch)->Unit(benchmark::kMicrosecond);

// Fresh engine per batch so the served-load memo starts empty.
void BM_SimulateSamples(benchmark::State& state) {
  const double magnitude = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    state.PauseTiming();
    const sg::RiskEngine engine(inputs(), 7);
    state.ResumeTiming();
    for (std::size_t k = 0; k < 50; ++k) {
      benchmark::DoNotOptimize(engine.simulate_sample(magnitude, k, engine.baseline_fragility()));
    }
  }
  state.SetItemsProcessed(state.iterations() * 50);
}
BENCHMARK(BM_SimulateSamples)->Arg(60)->Arg(80)->Unit(benchmark::kMillisecond);

}  // namespace
