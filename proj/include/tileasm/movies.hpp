#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "dynamics.hpp"
#include "error.hpp"
#include "grid.hpp"
#include "model.hpp"

namespace tileasm {

// One glue match across a cut edge. plus: the newly placed tile is the larger endpoint.
struct GlueAddition {
  Edge edge;
  bool plus = true;
  std::string glue;
  auto operator<=>(const GlueAddition&) const = default;

  Position new_vertex() const { return plus ? edge.b : edge.a; }
  Position old_vertex() const { return plus ? edge.a : edge.b; }
};

using GlueMovie = std::vector<GlueAddition>;

// A cut given either as the boundary of a far-side region or as an explicit edge set.
class Cut {
 public:
  static Cut of_region(const CutRegion& r) {
    Cut c;
    c.region_ = r;
    return c;
  }
  static Cut of_edges(const EdgeSet& e) {
    Cut c;
    c.edges_ = e;
    return c;
  }
  static Cut columns(const SpaceGraph& g, int k) { return of_region(CutRegion(g, CutFamily::Columns, k)); }

  bool has_region() const { return region_.has_value(); }
  const CutRegion& region() const { return *region_; }

  bool contains(const Edge& e) const { return region_ ? region_->crosses(e) : edges_.contains(e); }
  bool far(const Position& p) const { return region_ && region_->far(p); }

  LocalEdge local(const Edge& e) const {
    if (region_) return region_->local(e);
    auto l = edges_.local(e);
    if (!l) throw InputError("edge is not in the cut");
    return *l;
  }

 private:
  std::optional<CutRegion> region_;
  EdgeSet edges_;
};

struct LocalAddition {
  LocalEdge edge;
  bool plus;
  std::string glue;
  auto operator<=>(const LocalAddition&) const = default;
};

using LocalMovie = std::vector<LocalAddition>;

inline LocalMovie localize(const Cut& cut, const GlueMovie& m) {
  LocalMovie out;
  for (const auto& g : m) out.push_back({cut.local(g.edge), g.plus, g.glue});
  return out;
}

// Glue matches a new tile at p makes across the cut, clockwise from its north side.
inline void append_additions(const Tas& tas, const Cut& cut, const Assembly& before, const Attachment& at,
                             GlueMovie& out) {
  for (Port d : tas.graph.ports()) {
    Position q = tas.graph.neighbor(at.position, d);
    auto u = before.at(q);
    if (!u || interaction_strength(tas.tiles, at.tile, *u, d) <= 0) continue;
    Edge e(at.position, q);
    if (cut.contains(e)) out.push_back({e, faces_smaller(d), tas.tiles[at.tile].glue(d).label});
  }
}

inline GlueMovie induced_movie(const Tas& tas, const AssemblySequence& seq, const Cut& cut) {
  GlueMovie m;
  Assembly a = tas.seed;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    try {
      append_additions(tas, cut, a, seq[i], m);
      a = apply(tas, a, seq[i]);
    } catch (const std::exception& e) {
      throw SequenceError(i, e.what());
    }
  }
  return m;
}

// Maximal runs of additions made by the same new tile.
inline std::vector<GlueMovie> blocks_of(const GlueMovie& m) {
  std::vector<GlueMovie> out;
  for (const auto& g : m) {
    if (out.empty() || out.back().back().new_vertex() != g.new_vertex()) out.emplace_back();
    out.back().push_back(g);
  }
  return out;
}

inline std::string format_movie(const GlueMovie& m, bool with_z) {
  std::ostringstream out;
  for (const auto& g : m)
    out << to_string(g.edge.a, with_z) << "-" << to_string(g.edge.b, with_z) << " " << (g.plus ? '+' : '-') << " "
        << g.glue << "\n";
  return out.str();
}

struct MovieEntry {
  std::size_t near_steps = 0;  // fewest steps outside the far side needed to realise the movie
  AssemblySequence witness;    // a sequence realising it with that many near steps
};

struct DiplomaticSet {
  Cut cut;
  std::size_t bound = 0;
  bool complete = true;  // no sequence was cut short by the bound
  std::map<GlueMovie, MovieEntry> movies;

  std::set<LocalMovie> local_movies() const {
    std::set<LocalMovie> out;
    for (const auto& [m, e] : movies) out.insert(localize(cut, m));
    return out;
  }
};

struct PolicySet {
  std::size_t bound = 0;
  bool complete = true;
  std::set<AssemblySequence> sequences;  // far-side parts of sequences, in order
};

namespace detail {

inline void put_cells(std::string& key, const Assembly& a) {
  for (const auto& c : a) key.append(reinterpret_cast<const char*>(&c), sizeof(Cell));
  key.push_back('|');
}

inline void put_movie(std::string& key, const GlueMovie& m) {
  for (const auto& g : m) {
    std::uint64_t a = Cell::pack(g.edge.a), b = Cell::pack(g.edge.b);
    key.append(reinterpret_cast<const char*>(&a), sizeof a);
    key.append(reinterpret_cast<const char*>(&b), sizeof b);
    key.push_back(g.plus ? '+' : '-');
    key += g.glue;
    key.push_back('\0');
  }
}

inline void put_sequence(std::string& key, const AssemblySequence& s) {
  for (const auto& at : s) {
    Cell c(at.position, at.tile);
    key.append(reinterpret_cast<const char*>(&c), sizeof(Cell));
  }
}

// Depth-first walk over all sequences of at most bound steps, deduplicated on a caller key.
// The movie on the cut, if one is given, is carried along.
template <class KeyOf, class Visit>
bool walk_sequences(const Tas& tas, std::size_t bound, const Cut* cut, KeyOf&& key_of, Visit&& visit) {
  bool complete = true;
  std::unordered_set<std::string> seen;
  struct Frame {
    Assembly assembly;
    AssemblySequence seq;
    GlueMovie movie;
  };
  std::vector<Frame> stack{{tas.seed, {}, {}}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(key_of(f.assembly, f.seq, f.movie)).second) continue;
    visit(f.assembly, f.seq, f.movie);
    auto fr = frontier(tas, f.assembly);
    if (f.seq.size() >= bound) {
      if (!fr.empty()) complete = false;
      continue;
    }
    for (auto it = fr.rbegin(); it != fr.rend(); ++it) {
      Frame g{f.assembly.with(it->position, it->tile), f.seq, f.movie};
      if (cut) append_additions(tas, *cut, f.assembly, *it, g.movie);
      g.seq.push_back(*it);
      stack.push_back(std::move(g));
    }
  }
  return complete;
}

}  // namespace detail

// All movies induced on the cut by sequences of at most bound steps.
inline DiplomaticSet diplomatic_set(const Tas& tas, const Cut& cut, std::size_t bound) {
  DiplomaticSet d{cut, bound, true, {}};
  for (const auto& c : tas.seed)
    if (cut.far(c.position())) throw InputError("seed must lie on the near side of the cut");
  d.complete = detail::walk_sequences(
      tas, bound, &cut,
      [&](const Assembly& a, const AssemblySequence&, const GlueMovie& m) {
        std::string key;
        detail::put_cells(key, a);
        detail::put_movie(key, m);
        return key;
      },
      [&](const Assembly&, const AssemblySequence& seq, const GlueMovie& m) {
        std::size_t near = 0;
        for (const auto& at : seq)
          if (!cut.far(at.position)) ++near;
        auto it = d.movies.find(m);
        if (it == d.movies.end() || near < it->second.near_steps) d.movies[m] = {near, seq};
      });
  return d;
}

inline AssemblySequence far_part(const Cut& cut, const AssemblySequence& seq) {
  AssemblySequence out;
  for (const auto& at : seq)
    if (cut.far(at.position)) out.push_back(at);
  return out;
}

// Far-side parts of all sequences of at most bound steps.
inline PolicySet policy_set(const Tas& tas, const Cut& cut, std::size_t bound) {
  if (!cut.has_region()) throw InputError("policy sets need a cut with a far-side region");
  for (const auto& c : tas.seed)
    if (cut.far(c.position())) throw InputError("seed must lie on the near side of the cut");
  PolicySet p{bound, true, {}};
  p.complete = detail::walk_sequences(
      tas, bound, nullptr,
      [&](const Assembly& a, const AssemblySequence& seq, const GlueMovie&) {
        std::string key;
        detail::put_cells(key, a);
        detail::put_sequence(key, far_part(cut, seq));
        return key;
      },
      [&](const Assembly&, const AssemblySequence& seq, const GlueMovie&) { p.sequences.insert(far_part(cut, seq)); });
  return p;
}

// Prefixes of movies, cut at block boundaries, whose far-side endpoints are all tiled by
// some member of the policy set.
inline DiplomaticSet restrict_movies(const DiplomaticSet& d, const PolicySet& p) {
  std::set<Position> tiled;
  for (const auto& s : p.sequences)
    for (const auto& at : s) tiled.insert(at.position);
  DiplomaticSet out{d.cut, d.bound, d.complete, {}};
  auto cost_of = [&](const GlueMovie& prefix, const MovieEntry& fallback) {
    auto it = d.movies.find(prefix);
    return it != d.movies.end() ? it->second : fallback;
  };
  for (const auto& [m, e] : d.movies) {
    GlueMovie prefix;
    out.movies.emplace(prefix, cost_of(prefix, e));
    for (const auto& block : blocks_of(m)) {
      bool ok = std::all_of(block.begin(), block.end(), [&](const GlueAddition& g) {
        Position z = d.cut.far(g.edge.a) ? g.edge.a : g.edge.b;
        return tiled.count(z) > 0;
      });
      if (!ok) break;
      prefix.insert(prefix.end(), block.begin(), block.end());
      auto c = cost_of(prefix, e);
      auto it = out.movies.find(prefix);
      if (it == out.movies.end() || c.near_steps < it->second.near_steps) out.movies[prefix] = c;
    }
  }
  return out;
}

// Far-side sequences s with |s| + (near steps of the consumed movie prefix) <= bound that
// grow using only far-side neighbours and the glues a movie of d reveals across the cut.
inline PolicySet f_reconstruct(const Tas& tas, const DiplomaticSet& d, std::size_t bound) {
  const Cut& cut = d.cut;
  if (!cut.has_region()) throw InputError("reconstruction needs a cut with a far-side region");
  for (const auto& c : tas.seed)
    if (cut.far(c.position())) throw InputError("seed must lie on the near side of the cut");
  struct Node {
    std::size_t cost = 0;
    std::map<GlueMovie, std::size_t> next;
  };
  std::vector<Node> trie(1);
  trie[0].cost = 0;
  for (const auto& [m, e] : d.movies) {
    for (const auto& g : m)
      if (!cut.contains(g.edge)) throw InputError("movie edge outside the cut");
    std::size_t node = 0;
    GlueMovie prefix;
    for (const auto& block : blocks_of(m)) {
      prefix.insert(prefix.end(), block.begin(), block.end());
      auto it = trie[node].next.find(block);
      std::size_t child;
      if (it == trie[node].next.end()) {
        child = trie.size();
        trie[node].next.emplace(block, child);
        trie.push_back({});
        trie[child].cost = std::numeric_limits<std::size_t>::max();
      } else {
        child = it->second;
      }
      auto exact = d.movies.find(prefix);
      std::size_t c = exact != d.movies.end() ? exact->second.near_steps : e.near_steps;
      trie[child].cost = std::min(trie[child].cost, c);
      node = child;
    }
  }

  PolicySet out{bound, true, {}};
  struct State {
    Assembly far;
    AssemblySequence seq;
    std::size_t node;
  };
  std::unordered_set<std::string> seen;
  std::vector<State> stack;
  auto strength_inside = [&](const Assembly& far, const Position& p, TileId t) {
    int s = 0;
    for (Port dir : tas.graph.ports()) {
      Position q = tas.graph.neighbor(p, dir);
      if (!cut.far(q)) continue;
      auto u = far.at(q);
      if (u) s += interaction_strength(tas.tiles, t, *u, dir);
    }
    return s;
  };
  auto push = [&](State s) {
    std::string key;
    detail::put_sequence(key, s.seq);
    key.append(reinterpret_cast<const char*>(&s.node), sizeof s.node);
    if (seen.insert(key).second) stack.push_back(std::move(s));
  };
  push({Assembly(), {}, 0});
  while (!stack.empty()) {
    State s = std::move(stack.back());
    stack.pop_back();
    out.sequences.insert(s.seq);
    const Node& node = trie[s.node];
    // Growth inside the far side.
    if (s.seq.size() + 1 + node.cost <= bound) {
      std::set<Position> open;
      for (const auto& c : s.far)
        for (Port dir : tas.graph.ports()) {
          Position q = tas.graph.neighbor(c.position(), dir);
          if (tas.graph.is_valid(q) && cut.far(q) && !s.far.occupied(q)) open.insert(q);
        }
      for (const auto& q : open)
        for (TileId t = 0; t < tas.tiles.size(); ++t)
          if (strength_inside(s.far, q, t) >= tas.temperature) {
            State n{s.far.with(q, t), s.seq, s.node};
            n.seq.push_back({t, q});
            push(std::move(n));
          }
    }
    // Consuming the next block of a movie.
    for (const auto& [block, child] : node.next) {
      Position v = block.front().new_vertex();
      if (cut.far(v)) {
        if (s.seq.size() + 1 + trie[child].cost > bound || s.far.occupied(v)) continue;
        for (TileId t = 0; t < tas.tiles.size(); ++t) {
          int strength = strength_inside(s.far, v, t);
          bool fits = true;
          for (const auto& g : block) {
            auto dir = tas.graph.port_towards(v, g.old_vertex());
            const Glue& glue = tas.tiles[t].glue(*dir);
            if (glue.strength <= 0 || glue.label != g.glue) fits = false;
            strength += glue.strength;
          }
          if (!fits || strength < tas.temperature) continue;
          State n{s.far.with(v, t), s.seq, child};
          n.seq.push_back({t, v});
          push(std::move(n));
        }
      } else {
        if (s.seq.size() + trie[child].cost > bound) continue;
        bool fits = std::all_of(block.begin(), block.end(), [&](const GlueAddition& g) {
          Position z = g.old_vertex();
          auto u = s.far.at(z);
          if (!u) return false;
          auto dir = tas.graph.port_towards(z, v);
          const Glue& glue = tas.tiles[*u].glue(*dir);
          return glue.strength > 0 && glue.label == g.glue;
        });
        if (fits) push({s.far, s.seq, child});
      }
    }
  }
  return out;
}

struct Repeat {
  int first;
  int second;
};

// First pair first < second in [lo, hi] (ordered by second, then first) whose diplomatic sets
// agree after translation.
inline std::optional<Repeat> find_repeat(const Tas& tas, CutFamily family, int lo, int hi, std::size_t bound) {
  std::vector<std::set<LocalMovie>> sets;
  for (int k = lo; k <= hi; ++k) {
    sets.push_back(diplomatic_set(tas, Cut::of_region(CutRegion(tas.graph, family, k)), bound).local_movies());
    int j = k - lo;
    for (int i = 0; i < j; ++i)
      if (sets[std::size_t(i)] == sets[std::size_t(j)]) return Repeat{lo + i, k};
  }
  return std::nullopt;
}

// Moves the far side of seq from cut k to cut k2 of the family, rebuilding the near side
// from a sequence whose movie on cut k2 is the translated movie of seq on cut k.
inline AssemblySequence pump(const Tas& tas, const AssemblySequence& seq, CutFamily family, int k, int k2,
                             std::size_t bound) {
  replay(tas, seq);
  if (k == k2) return seq;
  CutRegion from(tas.graph, family, k), to(tas.graph, family, k2);
  Cut cut_from = Cut::of_region(from), cut_to = Cut::of_region(to);
  LocalMovie wanted = localize(cut_from, induced_movie(tas, seq, cut_from));
  DiplomaticSet d = diplomatic_set(tas, cut_to, bound);
  const MovieEntry* witness = nullptr;
  for (const auto& [m, e] : d.movies)
    if (localize(cut_to, m) == wanted) {
      witness = &e;
      break;
    }
  if (!witness) throw PumpError(0, "no sequence within the bound realises the translated movie");
  AssemblySequence near, far;
  for (const auto& at : witness->witness)
    if (!cut_to.far(at.position)) near.push_back(at);
  for (const auto& at : seq)
    if (cut_from.far(at.position)) {
      int part = from.part(at.position);
      far.push_back({at.tile, at.position + from.shift(part, k2 - k)});
    }
  AssemblySequence out;
  Assembly a = tas.seed;
  std::size_t i = 0, j = 0;
  auto fits = [&](const Attachment& at) {
    return !a.occupied(at.position) && attachment_strength(tas, a, at.position, at.tile) >= tas.temperature;
  };
  while (i < near.size() || j < far.size()) {
    while (i < near.size() && fits(near[i])) a.place(near[i].position, near[i].tile), out.push_back(near[i++]);
    if (j < far.size() && fits(far[j])) {
      a.place(far[j].position, far[j].tile);
      out.push_back(far[j++]);
    } else if (i < near.size() || j < far.size()) {
      if (i < near.size() && fits(near[i])) continue;
      throw PumpError(out.size(), "no step of either side can attach");
    }
  }
  try {
    replay(tas, out);
  } catch (const SequenceError& e) {
    throw PumpError(e.index, e.what());
  }
  return out;
}

}  // namespace tileasm
