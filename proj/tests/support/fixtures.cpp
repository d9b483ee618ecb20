#include "fixtures.hpp"

#include "seisgrid/config_io.hpp"

namespace seisgrid::testing {

std::filesystem::path data_dir() { return SEISGRID_TEST_DATA_DIR; }
std::filesystem::path rts_dir() { return data_dir() / "rts24"; }
std::filesystem::path fixture(const std::string& name) { return data_dir() / "fixtures" / name; }

ModelInputs rts_inputs() { return load_inputs(InputPaths::in_directory(rts_dir())); }

IslandCase toy_three_bus(double limit_13, double limit_23) {
  IslandCase c;
  c.bus_ids = {1, 2, 3};
  c.slack_bus = 1;
  c.branches = {{1, 1, 3, 10.0, limit_13}, {2, 2, 3, 10.0, limit_23}};
  c.units = {{1, 1, 0.0, 100.0, 10.0}, {2, 2, 0.0, 100.0, 20.0}};
  c.demands = {{3, 3, 120.0}};
  return c;
}

IslandCase toy_four_bus() {
  IslandCase c;
  c.bus_ids = {1, 2, 3, 4};
  c.slack_bus = 1;
  c.branches = {{1, 1, 2, 1.0 / 0.05, 80.0},
                {2, 2, 3, 1.0 / 0.10, 60.0},
                {3, 3, 4, 1.0 / 0.08, 90.0},
                {4, 4, 1, 1.0 / 0.12, 70.0},
                {5, 1, 3, 1.0 / 0.20, 40.0}};
  c.units = {{1, 1, 10.0, 120.0, 12.0}, {2, 2, 0.0, 60.0, 30.0}, {4, 4, 20.0, 80.0, 18.0}};
  c.demands = {{3, 3, 110.0}, {2, 2, 45.0}};
  return c;
}

IslandCase toy_parallel() {
  IslandCase c;
  c.bus_ids = {1, 2};
  c.slack_bus = 2;
  c.branches = {{1, 1, 2, 5.0, 40.0}, {2, 1, 2, 15.0, 40.0}};
  c.units = {{1, 1, 0.0, 200.0, 5.0}, {2, 2, 10.0, 50.0, 40.0}};
  c.demands = {{2, 2, 70.0}};
  return c;
}

IslandCase toy_shedding(double capacity_mw, double load_a_mw, double load_b_mw) {
  IslandCase c;
  c.bus_ids = {1, 2};
  c.slack_bus = 1;
  c.branches = {{1, 1, 2, 10.0, 500.0}};
  c.units = {{1, 1, 0.0, capacity_mw, 10.0}};
  c.demands = {{1, 2, load_a_mw}, {2, 2, load_b_mw}};
  return c;
}

PowerNetworkModel random_network(Rng& rng, int buses) {
  PowerNetworkModel m;
  for (int b = 1; b <= buses; ++b) {
    m.buses.push_back({b, uniform01(rng) * 50.0, uniform01(rng) * 50.0});
  }
  const int lines = static_cast<int>(uniform01(rng) * 2.0 * buses);
  for (int l = 1; l <= lines; ++l) {
    const int a = 1 + static_cast<int>(uniform01(rng) * buses);
    int b = 1 + static_cast<int>(uniform01(rng) * buses);
    if (a == b) b = b % buses + 1;
    if (a == b) continue;  // single-bus network
    Line line{l, a, b, 0.05 + uniform01(rng) * 0.2, 100.0, std::nullopt};
    if (uniform01(rng) < 0.2) {
      line.substation_id = static_cast<int>(m.substations.size()) + 1;
      m.substations.push_back({*line.substation_id, l});
    }
    m.lines.push_back(line);
  }
  for (int b = 1; b <= buses; ++b) {
    if (uniform01(rng) < 0.3) m.generators.push_back({b, b, 0.0, 100.0, 10.0});
    if (uniform01(rng) < 0.5) m.loads.push_back({b, b, 50.0});
  }
  return m;
}

}  // namespace seisgrid::testing
