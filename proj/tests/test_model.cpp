#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tileasm/dynamics.hpp"
#include "tileasm/fixtures.hpp"
#include "tileasm/io.hpp"

using namespace tileasm;

namespace {

Assembly rect(const Tas& t, int w, int h) {
  Assembly a;
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y) a.place({x, y, 0}, t.tiles.id("G"));
  return a;
}

const char* const kTwo = R"(
tile A E=g:1 N=k:2
tile B W=h:1 S=k:2
tile C
seed A 0 0
)";

}  // namespace

TEST(InteractionStrength, UniformTileBindsOnEverySide) {
  auto t = fixtures::comb();
  for (Port d : t.graph.ports()) EXPECT_EQ(interaction_strength(t.tiles, 0, 0, d), 1);
}

TEST(InteractionStrength, NullAndDifferentLabels) {
  auto t = parse_tas(kTwo);
  TileId a = t.tiles.id("A"), b = t.tiles.id("B"), c = t.tiles.id("C");
  EXPECT_EQ(interaction_strength(t.tiles, a, b, Port::E), 0);  // g against h
  EXPECT_EQ(interaction_strength(t.tiles, a, b, Port::N), 2);
  EXPECT_EQ(interaction_strength(t.tiles, c, a, Port::E), 0);
  EXPECT_EQ(interaction_strength(t.tiles, a, c, Port::W), 0);
}

TEST(InteractionStrength, IsSymmetric) {
  auto t = fixtures::race();
  for (TileId a = 0; a < t.tiles.size(); ++a)
    for (TileId b = 0; b < t.tiles.size(); ++b)
      for (Port d : t.graph.ports())
        EXPECT_EQ(interaction_strength(t.tiles, a, b, d), interaction_strength(t.tiles, b, a, opposite(d)));
}

TEST(BindingGraph, SmallCombAssemblies) {
  auto t = fixtures::comb();
  auto g1 = binding_graph(t.graph, t.tiles, t.seed);
  EXPECT_EQ(g1.vertices.size(), 1u);
  EXPECT_TRUE(g1.edges.empty());
  auto g2 = binding_graph(t.graph, t.tiles, rect(t, 2, 1));
  ASSERT_EQ(g2.edges.size(), 1u);
  EXPECT_EQ(g2.edges[0].weight, 1);
  auto g4 = binding_graph(t.graph, t.tiles, rect(t, 2, 2));
  EXPECT_EQ(g4.edges.size(), 4u);
  for (const auto& e : g4.edges) EXPECT_EQ(e.weight, 1);
}

TEST(Stability, CutsOfCombShapes) {
  auto t = fixtures::comb();
  EXPECT_TRUE(is_tau_stable(t.graph, t.tiles, t.seed, 1));
  EXPECT_FALSE(is_tau_stable(t.graph, t.tiles, rect(t, 3, 1), 2));
  EXPECT_TRUE(is_tau_stable(t.graph, t.tiles, rect(t, 2, 2), 2));
  EXPECT_FALSE(is_tau_stable(t.graph, t.tiles, rect(t, 2, 2), 3));
  EXPECT_THROW(is_tau_stable(t.graph, t.tiles, Assembly(), 1), InputError);
  Assembly apart;
  apart.place({0, 0, 0}, 0);
  apart.place({2, 0, 0}, 0);
  EXPECT_FALSE(is_tau_stable(t.graph, t.tiles, apart, 1));
}

TEST(Stability, MinCutMatchesBruteForceOnRandomShapes) {
  auto t = fixtures::comb();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    Assembly a = t.seed;
    int n = 2 + int(rng() % 12);
    while (int(a.size()) < n) {
      auto fr = frontier(t, a);
      const auto& at = fr[rng() % fr.size()];
      a.place(at.position, at.tile);
    }
    int v = 0;
    auto edges = oracle::binding_edges(t.tiles, a, &v);
    auto bg = binding_graph(t.graph, t.tiles, a);
    EXPECT_EQ(bg.edges.size(), edges.size());
    EXPECT_EQ(min_cut_weight(bg.vertices.size(), bg.edges), oracle::brute_min_cut(v, edges));
    for (int tau = 1; tau <= 3; ++tau)
      EXPECT_EQ(is_tau_stable(t.graph, t.tiles, a, tau), oracle::brute_stable(t.tiles, a, tau));
  }
}

TEST(AttachmentStrength, CornerAndNullTiles) {
  auto t = fixtures::comb();
  EXPECT_EQ(attachment_strength(t, t.seed, {1, 0, 0}, 0), 1);
  Assembly l = rect(t, 2, 1);
  l.place({0, 1, 0}, 0);
  EXPECT_EQ(attachment_strength(t, l, {1, 1, 0}, 0), 2);
  EXPECT_THROW(attachment_strength(t, l, {0, 0, 0}, 0), OccupiedError);
  auto two = parse_tas(kTwo);
  EXPECT_EQ(attachment_strength(two, two.seed, {1, 0, 0}, two.tiles.id("C")), 0);
}

TEST(Mismatches, Definition) {
  auto t = parse_tas(kTwo);
  Assembly a = t.seed;
  a.place({1, 0, 0}, t.tiles.id("B"));  // g against h
  auto m = mismatches(t.graph, t.tiles, a);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].edge, Edge({0, 0, 0}, {1, 0, 0}));
  EXPECT_EQ(m[0].at_a.label, "g");
  EXPECT_EQ(m[0].at_b.label, "h");
  Assembly b = t.seed;
  b.place({1, 0, 0}, t.tiles.id("C"));  // positive against null
  EXPECT_EQ(mismatches(t.graph, t.tiles, b).size(), 1u);
  Assembly c;
  c.place({0, 0, 0}, t.tiles.id("C"));
  c.place({1, 0, 0}, t.tiles.id("C"));  // null against null
  EXPECT_TRUE(mismatches(t.graph, t.tiles, c).empty());
}

TEST(Mismatches, SeedsAreClean) {
  for (const auto& [name, text] : fixtures::all()) {
    auto t = parse_tas(text);
    EXPECT_TRUE(mismatches(t.graph, t.tiles, t.seed).empty()) << name;
  }
}

TEST(Mismatches, CombIsAlwaysClean) {
  auto t = fixtures::comb();
  for (const auto& p : enumerate(t, 7).productions) EXPECT_TRUE(mismatches(t.graph, t.tiles, p.assembly).empty());
}

TEST(Mismatches, RaceCrashHasExactlyOne) {
  auto t = fixtures::race();
  auto ps = enumerate(t, 60);
  ASSERT_TRUE(ps.complete);
  int crashed = 0;
  for (const auto& p : ps.productions) {
    if (!p.terminal) continue;
    auto m = mismatches(t.graph, t.tiles, p.assembly);
    EXPECT_EQ(int(m.size()), oracle::count_mismatches(t.tiles, p.assembly));
    if (!m.empty()) {
      ++crashed;
      EXPECT_EQ(m.size(), 1u);
    }
  }
  EXPECT_GT(crashed, 0);
}

TEST(Excess, SquareCornerInComb) {
  auto t = fixtures::comb();
  AssemblySequence s{{0, {1, 0, 0}}, {0, {0, 1, 0}}, {0, {1, 1, 0}}};
  auto ex = attachment_excesses(t, s);
  ASSERT_EQ(ex.size(), 1u);
  EXPECT_EQ(ex[0].index, 2u);
  EXPECT_EQ(ex[0].strength, 2);
  EXPECT_FALSE(is_locally_consistent(t, s));
  EXPECT_TRUE(attachment_excesses(t, {{0, {1, 0, 0}}}).empty());
  EXPECT_TRUE(is_locally_consistent(t, {{0, {1, 0, 0}}}));
}

TEST(Excess, InvalidSequenceReportsIndex) {
  auto t = fixtures::comb();
  try {
    attachment_excesses(t, {{0, {1, 0, 0}}, {0, {5, 5, 0}}});
    FAIL();
  } catch (const SequenceError& e) {
    EXPECT_EQ(e.index, 1u);
  }
}

TEST(Excess, PumpNeverHasExcess) {
  auto t = fixtures::pump();
  for (const auto& p : enumerate(t, 30).productions) {
    auto seq = assembly_order(t, p.assembly);
    ASSERT_TRUE(seq);
    EXPECT_TRUE(attachment_excesses(t, *seq).empty());
  }
}

TEST(Excess, MatchesBruteForceOnRandomCombSequences) {
  auto t = fixtures::comb();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Assembly a = t.seed;
    AssemblySequence seq;
    std::vector<std::tuple<std::string, int, int>> named;
    int n = 1 + int(rng() % 15);
    for (int i = 0; i < n; ++i) {
      auto fr = frontier(t, a);
      auto at = fr[rng() % fr.size()];
      a.place(at.position, at.tile);
      seq.push_back(at);
      named.emplace_back("G", at.position.x, at.position.y);
    }
    auto want = oracle::brute_excesses(t.tiles, oracle::cells_of(t.tiles, t.seed), named, 1);
    auto got = attachment_excesses(t, seq);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].index, want[i].first);
      EXPECT_EQ(got[i].strength, want[i].second);
    }
  }
}

TEST(TileSet, ValidatesLabelsAndNames) {
  TileType a{"A", {}};
  a.glue(Port::N) = {"g", 1};
  TileType b{"B", {}};
  b.glue(Port::S) = {"g", 2};
  EXPECT_THROW(TileSet({a, b}), InputError);
  EXPECT_THROW(TileSet({a, a}), InputError);
  TileType z{"Z", {}};
  z.glue(Port::E) = {"q", 0};
  EXPECT_THROW(TileSet({z}), InputError);
  EXPECT_THROW(TileSet(std::vector<TileType>{}), InputError);
}

TEST(Tas, UnstableSeedIsRejected) {
  EXPECT_THROW(parse_tas("temperature 2\ntile G E=g:1 W=g:1\nseed G 0 0\nseed G 1 0\n"), InputError);
  EXPECT_NO_THROW(parse_tas("temperature 2\ntile G E=g:2 W=g:2\nseed G 0 0\nseed G 1 0\n"));
}

TEST(Assembly, PlacementAndOrder) {
  Assembly a;
  a.place({1, 0, 0}, 0);
  a.place({0, 0, 0}, 1);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.at({0, 0, 0}), std::optional<TileId>(1));
  EXPECT_FALSE(a.at({2, 0, 0}));
  EXPECT_THROW(a.place({1, 0, 0}, 0), OccupiedError);
  Assembly b = a.with({5, -3, 0}, 0);
  EXPECT_TRUE(a.subassembly_of(b));
  EXPECT_FALSE(b.subassembly_of(a));
  EXPECT_THROW(Cell({40000, 0, 0}, 0), InputError);
  EXPECT_EQ(Cell({-32766, 32766, 1}, 7).position(), (Position{-32766, 32766, 1}));
}
