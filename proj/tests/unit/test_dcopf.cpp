#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "seisgrid/dcopf.hpp"
#include "seisgrid/simulation.hpp"

namespace sg = seisgrid;
using sg::testing::toy_four_bus;
using sg::testing::toy_parallel;
using sg::testing::toy_shedding;
using sg::testing::toy_three_bus;

namespace {

void expect_matches_oracle(const sg::IslandCase& c) {
  const auto r = sg::solve_island(c);
  const auto oracle = sg::testing::vertex_enumeration_dcopf(c);
  ASSERT_TRUE(oracle.has_value());
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.objective_cost, oracle->cost, 1e-6 * std::abs(oracle->cost));
  EXPECT_LT(sg::max_invariant_violation(c, r), 1e-6 * c.base_mva);
}

}  // namespace

TEST(Dcopf, ThreeBusToy) {
  const auto c = toy_three_bus();
  const auto r = sg::solve_island(c);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.pg_mw[0], 100.0, 1e-7);
  EXPECT_NEAR(r.pg_mw[1], 20.0, 1e-7);
  EXPECT_NEAR(r.objective_cost, 1400.0, 1e-7);
  EXPECT_NEAR(r.total_served_mw(), 120.0, 1e-9);
  EXPECT_TRUE(r.shed_load_ids.empty());
}

TEST(Dcopf, ThreeBusToyWithBindingLine) {
  const auto r = sg::solve_island(toy_three_bus(60.0, 100.0));
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.pg_mw[0], 60.0, 1e-7);
  EXPECT_NEAR(r.pg_mw[1], 60.0, 1e-7);
  EXPECT_NEAR(r.objective_cost, 1800.0, 1e-7);
  EXPECT_NEAR(std::abs(r.flows_mw[0]), 60.0, 1e-7);
}

TEST(Dcopf, ToysMatchVertexOracle) {
  expect_matches_oracle(toy_three_bus());
  expect_matches_oracle(toy_three_bus(60.0, 100.0));
  expect_matches_oracle(toy_three_bus(30.0, 95.0));
  expect_matches_oracle(toy_four_bus());
  expect_matches_oracle(toy_parallel());
}

TEST(Dcopf, InfeasibleWhenLinesTooWeak) {
  const auto c = toy_three_bus(10.0, 10.0);
  EXPECT_FALSE(sg::solve_island(c).converged);
  EXPECT_FALSE(sg::testing::vertex_enumeration_dcopf(c).has_value());
}

TEST(Dcopf, SlackChoiceDoesNotMatter) {
  for (const auto& base : {toy_three_bus(60.0, 100.0), toy_four_bus(), toy_parallel()}) {
    const auto ref = sg::solve_island(base);
    ASSERT_TRUE(ref.converged);
    for (int bus : base.bus_ids) {
      auto c = base;
      c.slack_bus = bus;
      const auto r = sg::solve_island(c);
      ASSERT_TRUE(r.converged);
      EXPECT_NEAR(r.objective_cost, ref.objective_cost, 1e-8 * std::abs(ref.objective_cost));
      for (std::size_t l = 0; l < c.branches.size(); ++l) {
        EXPECT_NEAR(r.flows_mw[l], ref.flows_mw[l], 1e-6);
      }
    }
  }
}

TEST(Dcopf, ParallelLinesShareByAdmittance) {
  const auto r = sg::solve_island(toy_parallel());
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.flows_mw[1], 3.0 * r.flows_mw[0], 1e-7);
}

TEST(Dcopf, DisconnectedCaseIsNumericalError) {
  auto c = toy_three_bus();
  c.branches.pop_back();
  EXPECT_THROW(sg::solve_island(c), sg::NumericalError);
}

TEST(Dcopf, UnknownBusRejected) {
  auto c = toy_three_bus();
  c.units[0].bus = 42;
  EXPECT_THROW(sg::solve_island(c), std::exception);
}

TEST(Shedding, FeasibleCaseIsUntouched) {
  const auto c = toy_three_bus();
  const auto plain = sg::solve_island(c);
  const auto shed = sg::solve_with_shedding(c);
  EXPECT_TRUE(shed.shed_load_ids.empty());
  EXPECT_EQ(shed.pg_mw, plain.pg_mw);
  EXPECT_EQ(shed.objective_cost, plain.objective_cost);
}

TEST(Shedding, DropsSmallestLoadFirst) {
  const auto r = sg::solve_with_shedding(toy_shedding(50.0, 30.0, 40.0));
  ASSERT_TRUE(r.converged);
  EXPECT_EQ(r.shed_load_ids, (std::vector<int>{1}));
  EXPECT_EQ(r.served_mw[0], 0.0);
  EXPECT_NEAR(r.served_mw[1], 40.0, 1e-9);
  EXPECT_NEAR(r.total_served_mw(), 40.0, 1e-9);
}

TEST(Shedding, TieBreaksOnLoadId) {
  const auto r = sg::solve_with_shedding(toy_shedding(45.0, 30.0, 30.0));
  ASSERT_TRUE(r.converged);
  EXPECT_EQ(r.shed_load_ids, (std::vector<int>{1}));
  EXPECT_NEAR(r.total_served_mw(), 30.0, 1e-9);
}

TEST(Shedding, ExhaustedIslandServesNothing) {
  const auto r = sg::solve_with_shedding(toy_shedding(10.0, 30.0, 40.0));
  EXPECT_EQ(r.shed_load_ids, (std::vector<int>{1, 2}));
  EXPECT_EQ(r.total_served_mw(), 0.0);
}

TEST(Shedding, RetryLimit) {
  const auto r = sg::solve_with_shedding(toy_shedding(10.0, 30.0, 40.0), 1);
  EXPECT_EQ(r.shed_load_ids, (std::vector<int>{1}));
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.total_served_mw(), 0.0);
}

TEST(Functionality, SumsConvergedIslands) {
  sg::DispatchResult a, b, c;
  a.converged = b.converged = true;
  a.served_mw = {803.5};
  b.served_mw = {500.0, 68.75};
  c.converged = false;
  c.served_mw = {100.0};
  EXPECT_DOUBLE_EQ(sg::system_functionality({a, b, c}), 1372.25);
  EXPECT_EQ(sg::system_functionality({}), 0.0);
}

TEST(Functionality, IntactRtsServesFullDemand) {
  const sg::Grid grid(sg::testing::rts_inputs().network);
  const auto detail = sg::evaluate_network(grid, sg::intact_damage(grid));
  ASSERT_EQ(detail.dispatch.size(), 1u);
  EXPECT_TRUE(detail.dispatch[0].converged);
  EXPECT_TRUE(detail.dispatch[0].shed_load_ids.empty());
  EXPECT_NEAR(detail.served_mw, 2850.0, 2850.0 * 1e-9);
  EXPECT_LT(sg::max_invariant_violation(detail.cases[0], detail.dispatch[0]), 1e-6 * 100.0);
  EXPECT_DOUBLE_EQ(detail.cases[0].total_demand_mw(), 2850.0);
}

TEST(Assemble, DeratingsApplied) {
  const sg::Grid grid(sg::testing::rts_inputs().network);
  auto d = sg::intact_damage(grid);
  const auto g = *grid.find_component({sg::ComponentClass::Generator, 13});
  d.ds[g] = 1;
  d.alpha[g] = 0.75;
  const auto s = *grid.find_component({sg::ComponentClass::Substation, 2});
  d.ds[s] = 3;
  d.alpha[s] = 0.25;
  const auto topo = sg::build_topology(grid, d);
  const auto part = sg::find_islands(grid, topo);
  ASSERT_EQ(part.islands.size(), 1u);
  const auto c = sg::assemble_case(part.islands[0], grid, d, topo, 23);
  EXPECT_EQ(c.slack_bus, 23);
  for (const auto& u : c.units) {
    if (u.id == 13) {
      EXPECT_DOUBLE_EQ(u.pmax_mw, 0.75 * 591.0);
      EXPECT_DOUBLE_EQ(u.pmin_mw, 0.75 * 207.0);
    }
  }
  const auto line = grid.line_index(14);
  for (const auto& br : c.branches) {
    if (br.id == 14) EXPECT_DOUBLE_EQ(br.limit_mw, 0.25 * grid.model().lines[line].rate_mw);
  }
  EXPECT_DOUBLE_EQ(c.total_demand_mw(), 2850.0);
}
