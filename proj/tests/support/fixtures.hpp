#pragma once

#include <filesystem>
#include <string>

#include "seisgrid/dcopf.hpp"
#include "seisgrid/model.hpp"
#include "seisgrid/rng.hpp"

namespace seisgrid::testing {

std::filesystem::path data_dir();
std::filesystem::path rts_dir();
std::filesystem::path fixture(const std::string& name);

ModelInputs rts_inputs();

/// Buses 1 and 2 with generators (0-100 MW at costs 10 and 20), 120 MW load
/// at bus 3, lines 1-3 and 2-3 with x = 0.1.
IslandCase toy_three_bus(double limit_13 = 100.0, double limit_23 = 100.0);

/// Four-bus ring with a chord, three units (one with pmin > 0) and two loads.
IslandCase toy_four_bus();

/// Two parallel lines between a generator bus and a load bus.
IslandCase toy_parallel();

/// One generator bus feeding two loads at a second bus.
IslandCase toy_shedding(double capacity_mw, double load_a_mw, double load_b_mw);

/// Random network on `buses` buses with random lines (parallel lines allowed),
/// one substation on some lines, and a generator and load on a few buses.
PowerNetworkModel random_network(Rng& rng, int buses);

}  // namespace seisgrid::testing
