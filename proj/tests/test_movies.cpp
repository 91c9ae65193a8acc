#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "tileasm/fixtures.hpp"
#include "tileasm/movies.hpp"

using namespace tileasm;

namespace {

Attachment at(const Tas& t, const std::string& name, int x, int y) { return {t.tiles.id(name), {x, y, 0}}; }

// Words of tile names a ribbon growing east from the seed can spell, up to max_len tiles,
// found by matching east and west glue labels directly.
std::vector<std::vector<std::string>> ribbon_words(const Tas& t, std::size_t max_len) {
  std::string seed = t.tiles[t.seed.begin()->tile()].name;
  std::vector<std::vector<std::string>> out{{seed}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto w = out[i];
    if (w.size() >= max_len) continue;
    const auto& east = oracle::type(t.tiles, w.back()).glues[1];
    if (east.strength <= 0) continue;
    for (const auto& cand : t.tiles.types())
      if (cand.glues[3].strength > 0 && cand.glues[3].label == east.label) {
        auto v = w;
        v.push_back(cand.name);
        out.push_back(v);
      }
  }
  return out;
}

std::string movie_text(const GlueMovie& m) { return format_movie(m, false); }

const char* const kGrowing = R"(
tile S E=l0
tile T1 W=l0 E=l1
tile T2 W=l1 E=l2
tile T3 W=l2 E=l3
tile T4 W=l3 E=l4
tile T5 W=l4 E=l5
tile T6 W=l5 E=l6
tile T7 W=l6 E=l7
tile T8 W=l7
seed S 0 0
)";

}  // namespace

TEST(InducedMovie, PumpCrossingIsOnePlusAddition) {
  auto t = fixtures::pump();
  AssemblySequence s{at(t, "P1", 1, 0), at(t, "P2", 2, 0), at(t, "P3", 3, 0),
                     at(t, "P4", 4, 0), at(t, "Q1", 5, 0), at(t, "Q2", 6, 0)};
  auto m = induced_movie(t, s, Cut::columns(t.graph, 2));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].edge, Edge({2, 0, 0}, {3, 0, 0}));
  EXPECT_TRUE(m[0].plus);
  EXPECT_EQ(m[0].glue, "c");
  EXPECT_EQ(movie_text(m), "(2,0)-(3,0) + c\n");
}

TEST(InducedMovie, EmptyWhenTheCutIsUntouched) {
  auto t = fixtures::pump();
  AssemblySequence s{at(t, "P1", 1, 0), at(t, "P2", 2, 0)};
  EXPECT_TRUE(induced_movie(t, s, Cut::columns(t.graph, 10)).empty());
}

TEST(InducedMovie, SingleEdgeAndOrientation) {
  auto t = fixtures::comb();
  auto east = Cut::of_edges(EdgeSet::of({Edge({1, 0, 0}, {2, 0, 0})}));
  auto m = induced_movie(t, {{0, {1, 0, 0}}, {0, {2, 0, 0}}}, east);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_TRUE(m[0].plus);
  EXPECT_EQ(m[0].glue, "g");
  auto west = Cut::of_edges(EdgeSet::of({Edge({-2, 0, 0}, {-1, 0, 0})}));
  auto w = induced_movie(t, {{0, {-1, 0, 0}}, {0, {-2, 0, 0}}}, west);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_FALSE(w[0].plus);
}

TEST(InducedMovie, ClockwiseFromNorth) {
  auto t = fixtures::comb();
  std::vector<Edge> all;
  for (const auto& e : Window::planar(-3, -3, 3, 3).edges(t.graph)) all.push_back(e);
  auto cut = Cut::of_edges(EdgeSet::of(all));
  // The last tile closes a plus shape around (0,1): it sees N, E, S and W neighbours... of
  // which only S and W exist here, then a later tile sees N and E.
  AssemblySequence s{{0, {1, 0, 0}}, {0, {0, 1, 0}}, {0, {1, 1, 0}}};
  auto m = induced_movie(t, s, cut);
  ASSERT_EQ(m.size(), 4u);
  EXPECT_EQ(m[2].edge, Edge({1, 0, 0}, {1, 1, 0}));  // S of the new tile
  EXPECT_EQ(m[3].edge, Edge({0, 1, 0}, {1, 1, 0}));  // then W
  EXPECT_TRUE(m[2].plus);
  EXPECT_TRUE(m[3].plus);
  std::set<Edge> edges;
  for (const auto& g : m) EXPECT_TRUE(edges.insert(g.edge).second);
}

TEST(DiplomaticSet, CombSingleEdgeBoundTwo) {
  auto t = fixtures::comb();
  auto cut = Cut::of_edges(EdgeSet::of({Edge({1, 0, 0}, {2, 0, 0})}));
  auto d = diplomatic_set(t, cut, 2);
  ASSERT_EQ(d.movies.size(), 2u);
  EXPECT_TRUE(d.movies.begin()->first.empty());
  EXPECT_EQ(std::next(d.movies.begin())->first.size(), 1u);
  EXPECT_FALSE(d.complete);
}

TEST(DiplomaticSet, UnreachableCutHasOnlyTheEmptyMovie) {
  auto t = fixtures::pump();
  auto d = diplomatic_set(t, Cut::columns(t.graph, 40), 12);
  ASSERT_EQ(d.movies.size(), 1u);
  EXPECT_TRUE(d.movies.begin()->first.empty());
}

TEST(DiplomaticSet, PumpMatchesTheRibbonOracle) {
  auto t = fixtures::pump();
  const std::size_t bound = 16;
  auto words = ribbon_words(t, bound + 1);
  for (int k = 0; k <= 12; ++k) {
    std::set<std::string> want{""};
    for (const auto& w : words)
      if (int(w.size()) > k + 1) {
        std::string label = oracle::type(t.tiles, w[std::size_t(k)]).glues[1].label;
        want.insert("(" + std::to_string(k) + ",0)-(" + std::to_string(k + 1) + ",0) + " + label + "\n");
      }
    auto d = diplomatic_set(t, Cut::columns(t.graph, k), bound);
    std::set<std::string> got;
    for (const auto& [m, e] : d.movies) got.insert(movie_text(m));
    EXPECT_EQ(got, want) << k;
    EXPECT_LE(d.movies.size(), 7u);
  }
}

TEST(DiplomaticSet, MovieEdgesAreDistinct) {
  auto t = fixtures::comb();
  auto d = diplomatic_set(t, Cut::columns(t.graph, 1), 6);
  for (const auto& [m, e] : d.movies) {
    std::set<Edge> seen;
    for (const auto& g : m) EXPECT_TRUE(seen.insert(g.edge).second);
    EXPECT_EQ(induced_movie(t, e.witness, d.cut), m);
  }
}

TEST(PolicySet, PumpMatchesRestrictedRibbons) {
  auto t = fixtures::pump();
  const std::size_t bound = 14;
  auto words = ribbon_words(t, bound + 1);
  for (int k : {2, 3, 5}) {
    std::set<AssemblySequence> want;
    for (const auto& w : words) {
      AssemblySequence far;
      for (std::size_t x = std::size_t(k) + 1; x < w.size(); ++x) far.push_back(at(t, w[x], int(x), 0));
      want.insert(far);
    }
    auto p = policy_set(t, Cut::columns(t.graph, k), bound);
    EXPECT_EQ(p.sequences, want) << k;
  }
}

TEST(PolicySet, DisjointAndCoveringRegions) {
  auto t = fixtures::pump();
  auto far = policy_set(t, Cut::columns(t.graph, 50), 10);
  ASSERT_EQ(far.sequences.size(), 1u);
  EXPECT_TRUE(far.sequences.begin()->empty());
  auto all = policy_set(t, Cut::columns(t.graph, 0), 10);
  auto ps = enumerate(t, 11);
  EXPECT_EQ(all.sequences.size(), ps.productions.size());
}

TEST(Restrict, EmptyAndFullPolicies) {
  auto t = fixtures::pump();
  auto cut = Cut::columns(t.graph, 3);
  auto d = diplomatic_set(t, cut, 12);
  PolicySet none{12, true, {AssemblySequence{}}};
  auto r0 = restrict_movies(d, none);
  ASSERT_EQ(r0.movies.size(), 1u);
  EXPECT_TRUE(r0.movies.begin()->first.empty());
  auto full = restrict_movies(d, policy_set(t, cut, 12));
  std::set<GlueMovie> prefixes;
  for (const auto& [m, e] : d.movies) {
    GlueMovie p;
    prefixes.insert(p);
    for (const auto& b : blocks_of(m)) {
      p.insert(p.end(), b.begin(), b.end());
      prefixes.insert(p);
    }
  }
  std::set<GlueMovie> got;
  for (const auto& [m, e] : full.movies) got.insert(m);
  EXPECT_EQ(got, prefixes);
}

TEST(Reconstruct, EqualsPolicySet) {
  for (const auto& [name, bound] : {std::pair{std::string("S-PUMP"), std::size_t(20)}, {"COMB", 6}}) {
    auto t = fixtures::load(name);
    for (int k = 2; k <= 4; ++k) {
      auto cut = Cut::columns(t.graph, k);
      auto d = diplomatic_set(t, cut, bound);
      EXPECT_EQ(f_reconstruct(t, d, bound).sequences, policy_set(t, cut, bound).sequences) << name << " " << k;
    }
  }
}

TEST(Reconstruct, EmptyMovieGivesTheEmptySequence) {
  auto t = fixtures::pump();
  DiplomaticSet d{Cut::columns(t.graph, 3), 10, true, {{GlueMovie{}, MovieEntry{}}}};
  auto f = f_reconstruct(t, d, 10);
  ASSERT_EQ(f.sequences.size(), 1u);
  EXPECT_TRUE(f.sequences.begin()->empty());
}

TEST(Reconstruct, RejectsEdgesOutsideTheCut) {
  auto t = fixtures::pump();
  GlueMovie bad{{Edge({7, 0, 0}, {8, 0, 0}), true, "c"}};
  DiplomaticSet d{Cut::columns(t.graph, 3), 10, true, {{bad, MovieEntry{}}}};
  EXPECT_THROW(f_reconstruct(t, d, 10), InputError);
}

TEST(Reconstruct, ContinuityOnSmallerPolicies) {
  for (const auto& [name, bound] : {std::pair{std::string("S-PUMP"), std::size_t(16)}, {"COMB", 6}}) {
    auto t = fixtures::load(name);
    auto cut = Cut::columns(t.graph, 2);
    auto d = diplomatic_set(t, cut, bound);
    for (std::size_t b : {bound / 3, bound / 2, bound - 1}) {
      auto p = policy_set(t, cut, b);
      EXPECT_EQ(f_reconstruct(t, restrict_movies(d, p), b).sequences, p.sequences) << name << " " << b;
    }
  }
}

TEST(FindRepeat, PumpColumns) {
  auto t = fixtures::pump();
  auto r = find_repeat(t, CutFamily::Columns, 3, 20, 16);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->first, 3);
  EXPECT_EQ(r->second, 7);
  auto r2 = find_repeat(t, CutFamily::Columns, 2, 10, 14);
  ASSERT_TRUE(r2);
  EXPECT_EQ(r2->first, 2);
  EXPECT_EQ(r2->second, 6);
  EXPECT_FALSE(find_repeat(t, CutFamily::Columns, 4, 4, 14));
}

TEST(FindRepeat, GrowingAlphabetHasNone) {
  auto t = parse_tas(kGrowing);
  EXPECT_FALSE(find_repeat(t, CutFamily::Columns, 0, 7, 12));
}

TEST(Pump, FiveBecomesNineAndIterates) {
  auto t = fixtures::pump();
  AssemblySequence s{at(t, "P1", 1, 0), at(t, "P2", 2, 0), at(t, "P3", 3, 0), at(t, "CAP", 4, 0)};
  EXPECT_EQ(pump(t, s, CutFamily::Columns, 2, 2, 10), s);
  auto cur = s;
  for (int i = 1; i <= 5; ++i) {
    cur = pump(t, cur, CutFamily::Columns, 2, 6, 12);
    Assembly a = replay(t, cur);
    EXPECT_EQ(a.size(), 5u + 4u * std::size_t(i));
    EXPECT_TRUE(is_terminal(t, a));
    EXPECT_TRUE(mismatches(t.graph, t.tiles, a).empty());
  }
}

TEST(Pump, ReportsAMissingMovie) {
  auto t = fixtures::pump();
  AssemblySequence s{at(t, "P1", 1, 0), at(t, "P2", 2, 0), at(t, "P3", 3, 0), at(t, "CAP", 4, 0)};
  // Cut 3 carries d, cut 4 never does.
  EXPECT_THROW(pump(t, s, CutFamily::Columns, 3, 4, 12), PumpError);
}
