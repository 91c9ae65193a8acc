#include <gtest/gtest.h>

#include <random>

#include "broken_pairs.hpp"
#include "oracles.hpp"
#include "tileasm/dynamics.hpp"

using namespace tileasm;

namespace {

SimPair identity(const std::string& name) {
  Tas t = fixtures::load(name);
  return {t, t, identity_representation(t, t)};
}

Assembly cells(const Tas& t, std::initializer_list<std::tuple<const char*, int, int>> list) {
  Assembly a;
  for (auto [n, x, y] : list) a.place({x, y, 0}, t.tiles.id(n));
  return a;
}

}  // namespace

TEST(Blocks, BlockAtUsesFloorDivision) {
  auto t = fixtures::comb();
  Assembly a = cells(t, {{"G", 0, 0}, {"G", 1, 1}, {"G", 2, 0}, {"G", -1, -1}});
  auto b = block_at(a, 2, {0, 0, 0}, false);
  EXPECT_EQ(b.size(), 2u);
  EXPECT_TRUE(b.occupied({1, 1, 0}));
  auto n = block_at(a, 2, {-1, -1, 0}, false);
  ASSERT_EQ(n.size(), 1u);
  EXPECT_TRUE(n.occupied({1, 1, 0}));
  EXPECT_EQ(block_of({-1, 0, 0}, 2, false), (Position{-1, 0, 0}));
  EXPECT_EQ(blocks(a, 2, false).size(), 3u);
}

TEST(ApplyR, IdentityAndEmpty) {
  auto p = identity("T-RACE");
  for (const auto& prod : enumerate(p.simulator, 10).productions) EXPECT_EQ(apply_R(p, prod.assembly), prod.assembly);
  SimPair none{p.simulated, p.simulator, RepresentationFunction(1, {})};
  EXPECT_TRUE(apply_R(none, p.simulator.seed).empty());
}

TEST(ApplyR, TwoBlockMapping) {
  SimPair shape{parse_tas(broken::kLine), parse_tas(broken::kLine), {}};
  shape.R = parse_representation(shape, "m 2\nblock { SEED 0 0 } -> SEED\nblock { A 0 0; B 1 1 } -> A\n");
  const Tas& s = shape.simulator;
  Assembly a = cells(s, {{"SEED", 0, 0}, {"A", 2, 0}, {"B", 3, 1}, {"B", 1, 1}});
  Assembly want = cells(shape.simulated, {{"SEED", 0, 0}, {"A", 1, 0}});
  EXPECT_EQ(apply_R(shape, a), want);
  Assembly partial = cells(s, {{"SEED", 0, 0}, {"A", 2, 0}});
  EXPECT_EQ(apply_R(shape, partial), cells(shape.simulated, {{"SEED", 0, 0}}));
}

TEST(ApplyR, MonotoneAlongRuns) {
  auto p = identity("COMB");
  p.R = parse_representation(p, "m 2\nblock { G 0 0 } -> G\nblock { G 1 1 } -> G\n");
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Assembly a = p.simulator.seed, prev = apply_R(p, a);
    for (int i = 0; i < 14; ++i) {
      auto fr = frontier(p.simulator, a);
      const auto& at = fr[rng() % fr.size()];
      a.place(at.position, at.tile);
      Assembly next = apply_R(p, a);
      EXPECT_TRUE(prev.subassembly_of(next));
      prev = next;
    }
  }
}

TEST(MapsCleanly, EdgeFuzzIsAllowedDiagonalIsNot) {
  auto p = broken::fuzz();
  const Tas& s = p.simulator;
  EXPECT_TRUE(maps_cleanly(p, cells(s, {{"SEED", 0, 0}, {"A", 1, 0}})).clean);
  EXPECT_TRUE(maps_cleanly(p, cells(s, {{"SEED", 0, 0}, {"A", 1, 0}, {"F", 1, 1}})).clean);
  auto r = maps_cleanly(p, cells(s, {{"SEED", 0, 0}, {"A", 1, 0}, {"F", 1, 1}, {"G", 2, 1}}));
  EXPECT_FALSE(r.clean);
  ASSERT_EQ(r.fuzz.size(), 1u);
  EXPECT_EQ(r.fuzz[0], (Position{2, 1, 0}));
}

TEST(Representation, ParseErrorsAndInvalidBlocks) {
  SimPair shape{parse_tas(broken::kLine), parse_tas(broken::kLine), {}};
  EXPECT_THROW(parse_representation(shape, "block { SEED 0 0 } -> SEED\n"), InputError);
  EXPECT_THROW(parse_representation(shape, "m 1\nblock { Q 0 0 } -> SEED\n"), InputError);
  EXPECT_THROW(parse_representation(shape, "m 1\nblock { SEED 0 0 } -> Q\n"), InputError);
  EXPECT_THROW(parse_representation(shape, "m 1\nblock { SEED 1 0 } -> SEED\n"), InputError);
  EXPECT_THROW(parse_representation(shape, "m 1\nblock SEED 0 0 -> SEED\n"), InputError);
  EXPECT_TRUE(parse_representation(shape, "m 2\n").rules().empty());
}

TEST(Representation, OverlappingPatternsAreInvalid) {
  SimPair shape{parse_tas(broken::kLine), parse_tas(broken::kLine), {}};
  shape.R = parse_representation(shape, "m 2\nblock { SEED 0 0 } -> SEED\nblock { A 1 0 } -> A\n");
  Assembly a = cells(shape.simulator, {{"SEED", 0, 0}, {"A", 1, 0}});
  EXPECT_THROW(apply_R(shape, a), InvalidRepresentation);
  EXPECT_THROW(check_simulation(shape, 4), InvalidRepresentation);
}

TEST(CheckSimulation, IdentityPassesForEveryFixture) {
  for (const auto& name : {"S-PUMP", "T-RACE", "COMB"}) {
    auto p = identity(name);
    auto r = check_simulation(p, 8);
    EXPECT_TRUE(r.all_pass()) << name << r.productions.witness << r.terminals.witness;
    EXPECT_TRUE(check_follows(p, 8).pass);
    EXPECT_TRUE(check_models_weak(p, 8).pass);
    EXPECT_TRUE(check_equivalent_productions(p, 8).equivalent_productions());
  }
}

TEST(CheckSimulation, TerminalSeedPassesVacuously) {
  Tas t = parse_tas("temperature 1\ntile SEED\nseed SEED 0 0\n");
  SimPair p{t, t, identity_representation(t, t)};
  auto r = check_simulation(p, 5);
  EXPECT_TRUE(r.all_pass());
  EXPECT_TRUE(r.complete);
}

TEST(CheckSimulation, CubicSimulatorOfAPlanarSystem) {
  Tas flat = parse_tas(broken::kLine);
  Tas deep = parse_tas(std::string("space cubic3d\n") + broken::kLine);
  SimPair p{flat, deep, identity_representation(deep, flat)};
  EXPECT_TRUE(check_simulation(p, 6).all_pass());
  EXPECT_THROW(check_simulation(SimPair{deep, flat, identity_representation(flat, deep)}, 6), InputError);
}

TEST(BrokenPairs, FollowsFailsAtTheRemappedStep) {
  auto r = check_simulation(broken::follows(), 12);
  EXPECT_FALSE(r.follows.pass);
  EXPECT_NE(r.follows.witness.find("step P2 (2,0)"), std::string::npos);
  EXPECT_TRUE(r.models.pass);
  EXPECT_TRUE(r.clean.pass);
  EXPECT_FALSE(check_follows(broken::follows(), 12).pass);
}

TEST(BrokenPairs, ModelsFailsOnTheDeadEnd) {
  auto r = check_simulation(broken::models(), 12);
  EXPECT_FALSE(r.models.pass);
  EXPECT_NE(r.models.witness.find("X 1 0"), std::string::npos);
  EXPECT_TRUE(r.follows.pass);
  EXPECT_TRUE(r.productions.pass);
  EXPECT_TRUE(r.clean.pass);
}

TEST(BrokenPairs, DiagonalFuzzFailsOnlyCleanMapping) {
  auto r = check_simulation(broken::fuzz(), 12);
  EXPECT_FALSE(r.clean.pass);
  EXPECT_NE(r.clean.witness.find("(2,1)"), std::string::npos);
  EXPECT_TRUE(r.follows.pass);
  EXPECT_TRUE(r.models.pass);
  EXPECT_TRUE(r.productions.pass);
  EXPECT_TRUE(r.terminals.pass);
}

TEST(BrokenPairs, ExtraImageFailsClauseOne) {
  auto r = check_simulation(broken::extra_image(), 12);
  EXPECT_FALSE(r.productions.pass);
  EXPECT_NE(r.productions.witness.find("C 0 1"), std::string::npos);
  EXPECT_TRUE(r.follows.pass);
  EXPECT_TRUE(r.clean.pass);
}

TEST(MismatchSearch, CombHasNone) {
  auto s = search_mismatch_in_simulator(identity("COMB"), 7);
  EXPECT_FALSE(s.witness);
  EXPECT_FALSE(s.complete);
}

TEST(MismatchSearch, RaceCrashIsFound) {
  auto p = identity("T-RACE");
  auto s = search_mismatch_in_simulator(p, 40);
  ASSERT_TRUE(s.witness);
  EXPECT_EQ(s.mismatches.size(), 1u);
  EXPECT_EQ(oracle::count_mismatches(p.simulator.tiles, *s.witness), 1);
  EXPECT_TRUE(is_producible(p.simulator, *s.witness));
  auto small = search_mismatch_in_simulator(p, 6);
  EXPECT_FALSE(small.witness);
  EXPECT_FALSE(small.complete);
}
