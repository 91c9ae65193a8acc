#pragma once

#include <map>
#include <span>
#include <unordered_map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "error.hpp"
#include "io.hpp"
#include "model.hpp"

namespace tileasm {

inline int floor_div(int a, int m) { return a >= 0 ? a / m : -((-a + m - 1) / m); }

// Tiles of an m-block, positions relative to the block's lower corner.
using Block = Assembly;

inline Position block_of(const Position& p, int m, bool deep) {
  return {floor_div(p.x, m), floor_div(p.y, m), deep ? floor_div(p.z, m) : 0};
}

inline void block_cells(const Assembly& a, int m, const Position& v, bool deep, std::vector<Cell>& out) {
  out.clear();
  Position origin{v.x * m, v.y * m, deep ? v.z * m : 0};
  std::uint64_t lo = Cell::pack({origin.x, -32766, -32766});
  auto it = std::lower_bound(a.begin(), a.end(), lo, [](const Cell& c, std::uint64_t k) { return c.place() < k; });
  for (; it != a.end(); ++it) {
    Position p = it->position();
    if (p.x >= origin.x + m) break;
    if (block_of(p, m, deep) == v) out.emplace_back(p - origin, it->tile());
  }
}

inline Block block_at(const Assembly& a, int m, const Position& v, bool deep) {
  std::vector<Cell> cells;
  block_cells(a, m, v, deep, cells);
  return Block::from_sorted(std::move(cells));
}

// Rules "pattern -> simulated tile". A block represents the target of every rule whose
// pattern it contains; a block containing patterns of different targets makes R invalid.
class RepresentationFunction {
 public:
  struct Rule {
    Block pattern;
    TileId target;
  };

  RepresentationFunction() = default;
  RepresentationFunction(int m, std::vector<Rule> rules) : m_(m), rules_(std::move(rules)) {
    if (m_ < 1) throw InputError("block size must be at least 1");
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (rules_[i].pattern.empty()) throw InputError("empty block pattern");
      for (const auto& c : rules_[i].pattern) {
        Position p = c.position();
        if (p.x < 0 || p.x >= m_ || p.y < 0 || p.y >= m_ || p.z < 0 || p.z >= m_)
          throw InputError("block pattern cell outside the block");
      }
      by_first_[rules_[i].pattern.cells().front().bits()].push_back(i);
    }
  }

  int m() const { return m_; }
  const std::vector<Rule>& rules() const { return rules_; }

  std::optional<TileId> operator()(const Block& b) const { return (*this)(std::span<const Cell>(b.cells())); }

  // Cells sorted, positions relative to the block corner.
  std::optional<TileId> operator()(std::span<const Cell> b) const {
    std::optional<std::size_t> hit;
    for (const auto& c : b) {
      auto it = by_first_.find(c.bits());
      if (it == by_first_.end()) continue;
      for (std::size_t i : it->second) {
        const auto& pat = rules_[i].pattern.cells();
        if (!std::includes(b.begin(), b.end(), pat.begin(), pat.end())) continue;
        if (hit && rules_[*hit].target != rules_[i].target)
          throw InvalidRepresentation("block contains patterns of rules " + std::to_string(*hit + 1) + " and " +
                                      std::to_string(i + 1) + ", which name different tiles");
        hit = i;
      }
    }
    if (!hit) return std::nullopt;
    return rules_[*hit].target;
  }

 private:
  int m_ = 1;
  std::vector<Rule> rules_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_first_;
};

struct SimPair {
  Tas simulated;
  Tas simulator;
  RepresentationFunction R;

  bool deep() const { return simulator.graph.kind() == SpaceKind::Cubic3D; }
  bool flat_target() const { return simulated.graph.kind() == SpaceKind::Square2D; }
};

inline void validate_pair(const SimPair& p) {
  for (const Tas* t : {&p.simulated, &p.simulator})
    if (t->graph.kind() == SpaceKind::Cutspace) throw InputError("simulation checks need square or cubic spaces");
  if (!p.deep() && !p.flat_target()) throw InputError("a planar system cannot simulate a cubic one");
  for (const auto& r : p.R.rules()) {
    if (r.target >= p.simulated.tiles.size()) throw InputError("rule names an unknown simulated tile");
    for (const auto& c : r.pattern)
      if (c.tile() >= p.simulator.tiles.size()) throw InputError("pattern uses an unknown simulator tile");
    if (!p.deep())
      for (const auto& c : r.pattern)
        if (c.position().z != 0) throw InputError("planar block pattern with a depth offset");
  }
}

// Simulated position of block v, or nothing for blocks off the simulated plane.
inline std::optional<Position> represented_position(const SimPair& p, const Position& v) {
  if (p.deep() && p.flat_target()) {
    if (v.z != 0) return std::nullopt;
    return Position{v.x, v.y, 0};
  }
  return v;
}

// Nonempty blocks of a, ordered by block coordinate.
inline std::vector<std::pair<Position, Block>> blocks(const Assembly& a, int m, bool deep) {
  std::vector<std::pair<Position, Cell>> cells;
  cells.reserve(a.size());
  for (const auto& c : a) {
    Position v = block_of(c.position(), m, deep);
    Position origin{v.x * m, v.y * m, deep ? v.z * m : 0};
    cells.emplace_back(v, Cell(c.position() - origin, c.tile()));
  }
  if (m > 1) std::sort(cells.begin(), cells.end());
  std::vector<std::pair<Position, Block>> out;
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t j = i;
    std::vector<Cell> group;
    while (j < cells.size() && cells[j].first == cells[i].first) group.push_back(cells[j++].second);
    out.emplace_back(cells[i].first, Block::from_sorted(std::move(group)));
    i = j;
  }
  return out;
}

struct Representation {
  Assembly image;
  bool clean = true;
  std::vector<Position> fuzz;  // nonempty blocks with no represented block at distance <= 1
};

inline Representation represent(const SimPair& p, const Assembly& a) {
  const int m = p.R.m();
  const bool deep = p.deep();
  thread_local std::vector<std::pair<Position, Cell>> cells;
  thread_local std::vector<Cell> group;
  thread_local std::vector<Position> nonempty, defined;
  cells.clear();
  for (const auto& c : a) {
    Position v = block_of(c.position(), m, deep);
    Position origin{v.x * m, v.y * m, deep ? v.z * m : 0};
    cells.emplace_back(v, Cell(c.position() - origin, c.tile()));
  }
  if (m > 1) std::sort(cells.begin(), cells.end());
  Representation r;
  std::vector<Cell> image;
  nonempty.clear();
  defined.clear();
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t j = i;
    group.clear();
    while (j < cells.size() && cells[j].first == cells[i].first) group.push_back(cells[j++].second);
    const Position& v = cells[i].first;
    nonempty.push_back(v);
    auto t = p.R(std::span<const Cell>(group));
    auto s = represented_position(p, v);
    if (t && s) {
      image.emplace_back(*s, *t);
      defined.push_back(v);
    }
    i = j;
  }
  r.image = Assembly::from_sorted(std::move(image));
  const SpaceGraph& g = p.simulator.graph;
  auto has = [&](const Position& v) { return std::binary_search(defined.begin(), defined.end(), v); };
  for (const auto& v : nonempty) {
    bool near = has(v);
    for (Port d : g.ports()) near = near || has(g.neighbor(v, d));
    if (!near) r.fuzz.push_back(v), r.clean = false;
  }
  return r;
}

inline Assembly apply_R(const SimPair& p, const Assembly& a) { return represent(p, a).image; }

struct CleanReport {
  bool clean = true;
  std::vector<Position> fuzz;
};

inline CleanReport maps_cleanly(const SimPair& p, const Assembly& a) {
  auto r = represent(p, a);
  return {r.clean, r.fuzz};
}

struct ClauseVerdict {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct SimulationReport {
  std::size_t bound = 0;
  std::size_t simulated_bound = 0;
  bool complete = true;
  ClauseVerdict follows{"follows", true, {}};
  ClauseVerdict models{"models-weak", true, {}};
  ClauseVerdict productions{"equivalent-productions:images", true, {}};
  ClauseVerdict terminals{"equivalent-productions:terminal", true, {}};
  ClauseVerdict clean{"equivalent-productions:clean", true, {}};

  bool equivalent_productions() const { return productions.pass && terminals.pass && clean.pass; }
  bool all_pass() const { return follows.pass && models.pass && equivalent_productions(); }
};

struct ScanOptions {
  std::optional<std::size_t> simulated_bound;  // default: bound / m^dimension
  bool images = true;                         // the two-sided image comparisons
  ExploreOptions explore;
};

namespace detail {
inline std::string dump(const Tas& tas, const Assembly& a) {
  std::string s = format_assembly(tas, a);
  if (!s.empty() && s.back() == '\n') s.pop_back();
  for (auto& ch : s)
    if (ch == '\n') ch = ';';
  return s;
}
inline void fail(ClauseVerdict& v, const std::string& w) {
  if (v.pass) v.pass = false, v.witness = w;
}
}  // namespace detail

// One walk over the simulator's productions of at most bound tiles, checking every clause.
inline SimulationReport check_simulation(const SimPair& p, std::size_t bound, const ScanOptions& opts = {}) {
  validate_pair(p);
  SimulationReport rep;
  rep.bound = bound;
  std::size_t volume = std::size_t(p.R.m()) * std::size_t(p.R.m()) * (p.deep() ? std::size_t(p.R.m()) : 1);
  rep.simulated_bound = opts.simulated_bound.value_or(bound / volume);
  const Tas& T = p.simulated;
  const Tas& S = p.simulator;
  const int m = p.R.m();
  const bool deep = p.deep();
  detail::AssemblyStore images, terminal_images;
  std::vector<std::uint8_t> reached;  // image known producible
  Assembly image;

  auto stats = explore(
      S, bound,
      [&](std::size_t id, const Assembly& a, const std::vector<Attachment>&, bool terminal) {
        auto r = represent(p, a);
        image = std::move(r.image);
        if (!r.clean) detail::fail(rep.clean, "fuzz block " + to_string(r.fuzz.front(), deep) + " in " + detail::dump(S, a));
        if (reached.size() <= id) reached.resize(id + 1, 0);
        if (!reached[id]) reached[id] = is_producible(T, image) ? 1 : 0;
        bool producible = reached[id];
        if (!producible)
          detail::fail(rep.productions, "image of " + detail::dump(S, a) + " is not a production: " + detail::dump(T, image));
        if (terminal) {
          bool t_terminal = producible && is_terminal(T, image);
          if (producible && !t_terminal)
            detail::fail(rep.models, "terminal " + detail::dump(S, a) + " represents growable " + detail::dump(T, image));
          if (!t_terminal)
            detail::fail(rep.terminals, "terminal " + detail::dump(S, a) + " maps to non-terminal " + detail::dump(T, image));
          if (opts.images) terminal_images.insert(image);
        }
        if (opts.images) images.insert(image);
        return true;
      },
      [&](std::size_t pid, const Assembly& parent, std::size_t cid, const Attachment& at, bool) {
        Position v = block_of(at.position, m, deep);
        thread_local std::vector<Cell> before, after;
        block_cells(parent, m, v, deep, before);
        Position origin{v.x * m, v.y * m, deep ? v.z * m : 0};
        Cell added(at.position - origin, at.tile);
        after.assign(before.begin(), before.end());
        after.insert(std::lower_bound(after.begin(), after.end(), added), added);
        auto rb = before.empty() ? std::nullopt : p.R(std::span<const Cell>(before));
        auto ra = p.R(std::span<const Cell>(after));
        bool ok = true;
        auto s = represented_position(p, v);
        if (rb != ra && s) {
          if (rb) throw InvalidRepresentation("block " + to_string(v, deep) + " changes its represented tile");
          ok = !image.occupied(*s) && attachment_strength(T, image, *s, *ra) >= T.temperature;
          if (!ok)
            detail::fail(rep.follows, "step " + S.tiles[at.tile].name + " " + to_string(at.position, deep) + " after " +
                                          detail::dump(S, parent) + " needs " + T.tiles[*ra].name + " at " +
                                          to_string(*s, false) + ", which cannot attach");
        }
        if (reached.size() <= cid) reached.resize(cid + 1, 0);
        if (ok && pid < reached.size() && reached[pid]) reached[cid] = 1;
      },
      opts.explore);
  rep.complete = stats.complete;

  if (opts.images) {
    auto tstats = explore(
        T, std::max(rep.simulated_bound, T.seed.size()),
        [&](std::size_t, const Assembly& a, const std::vector<Attachment>&, bool terminal) {
          if (rep.productions.pass && !images.contains(a))
            detail::fail(rep.productions, "production " + detail::dump(T, a) + " is not represented within the bound");
          if (terminal && rep.terminals.pass && !terminal_images.contains(a))
            detail::fail(rep.terminals,
                         "terminal " + detail::dump(T, a) + " is not represented by a terminal production");
          return true;
        },
        [](std::size_t, const Assembly&, std::size_t, const Attachment&, bool) {}, opts.explore);
    rep.complete = rep.complete && tstats.complete;
  }
  return rep;
}

inline ClauseVerdict check_follows(const SimPair& p, std::size_t bound) {
  return check_simulation(p, bound, {std::nullopt, false, {}}).follows;
}

inline ClauseVerdict check_models_weak(const SimPair& p, std::size_t bound) {
  return check_simulation(p, bound, {std::nullopt, false, {}}).models;
}

inline SimulationReport check_equivalent_productions(const SimPair& p, std::size_t bound) {
  return check_simulation(p, bound);
}

struct MismatchSearch {
  std::optional<Assembly> witness;
  std::vector<Mismatch> mismatches;
  bool complete = true;
};

// First simulator production of at most bound tiles that has a mismatch.
inline MismatchSearch search_mismatch_in_simulator(const SimPair& p, std::size_t bound) {
  MismatchSearch out;
  auto stats = explore(
      p.simulator, bound,
      [&](std::size_t, const Assembly& a, const std::vector<Attachment>&, bool) {
        auto mm = mismatches(p.simulator.graph, p.simulator.tiles, a);
        if (mm.empty()) return true;
        out.witness = a;
        out.mismatches = mm;
        return false;
      },
      [](std::size_t, const Assembly&, std::size_t, const Attachment&, bool) {});
  out.complete = out.witness ? true : stats.complete;
  return out;
}

inline RepresentationFunction identity_representation(const Tas& simulator, const Tas& simulated) {
  std::vector<RepresentationFunction::Rule> rules;
  for (const auto& t : simulator.tiles.types()) {
    auto target = simulated.tiles.find(t.name);
    if (!target) continue;
    Block b;
    b.place({0, 0, 0}, simulator.tiles.id(t.name));
    rules.push_back({b, *target});
  }
  return RepresentationFunction(1, std::move(rules));
}

// Text format:
//   m 2
//   block { NAME dx dy [dz]; NAME dx dy [dz] } -> TARGET
inline RepresentationFunction parse_representation(const SimPair& shape, const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  std::optional<int> m;
  std::vector<RepresentationFunction::Rule> rules;
  auto fail = [&](const std::string& why) { throw InputError("line " + std::to_string(line) + ": " + why); };
  while (std::getline(in, raw)) {
    ++line;
    std::string body = detail::strip_comment(raw);
    auto w = detail::words_of(body);
    if (w.empty()) continue;
    if (w[0] == "m") {
      if (w.size() != 2) fail("expected 'm SIZE'");
      m = detail::parse_int(w[1], line, "block size");
      continue;
    }
    if (w[0] != "block") fail("unknown directive '" + w[0] + "'");
    if (!m) fail("block before 'm'");
    auto open = body.find('{'), close = body.find('}'), arrow = body.find("->");
    if (open == std::string::npos || close == std::string::npos || arrow == std::string::npos || close < open ||
        arrow < close)
      fail("expected 'block { ... } -> TARGET'");
    auto target = detail::words_of(body.substr(arrow + 2));
    if (target.size() != 1) fail("expected one target tile");
    auto tid = shape.simulated.tiles.find(target[0]);
    if (!tid) fail("unknown simulated tile '" + target[0] + "'");
    Block b;
    std::istringstream cells(body.substr(open + 1, close - open - 1));
    for (std::string cell; std::getline(cells, cell, ';');) {
      auto cw = detail::words_of(cell);
      if (cw.empty()) continue;
      if (cw.size() != 3 && cw.size() != 4) fail("expected 'NAME dx dy [dz]'");
      auto sid = shape.simulator.tiles.find(cw[0]);
      if (!sid) fail("unknown simulator tile '" + cw[0] + "'");
      Position off{detail::parse_int(cw[1], line, "offset"), detail::parse_int(cw[2], line, "offset"),
                   cw.size() == 4 ? detail::parse_int(cw[3], line, "offset") : 0};
      try {
        b.place(off, *sid);
      } catch (const OccupiedError& e) {
        fail(e.what());
      }
    }
    rules.push_back({b, *tid});
  }
  if (!m) throw InputError("missing 'm SIZE'");
  try {
    return RepresentationFunction(*m, std::move(rules));
  } catch (const InputError& e) {
    throw InputError(std::string("representation: ") + e.what());
  }
}

}  // namespace tileasm
