#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "grid.hpp"
#include "model.hpp"

namespace tileasm {

struct Attachment {
  TileId tile = 0;
  Position position;
  bool operator==(const Attachment&) const = default;
  // Position first, then tile name (tile ids follow name order).
  auto operator<=>(const Attachment& o) const {
    if (auto c = position <=> o.position; c != 0) return c;
    return tile <=> o.tile;
  }
};

using AssemblySequence = std::vector<Attachment>;

inline std::vector<Position> open_neighbours(const SpaceGraph& g, const Assembly& a) {
  std::vector<Position> out;
  for (const auto& c : a) {
    Position p = c.position();
    for (Port d : g.ports()) {
      Position q = g.neighbor(p, d);
      if (g.is_valid(q) && !a.occupied(q)) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

inline std::optional<TileId> tile_at_key(const std::vector<Cell>& cells, std::uint64_t key) {
  auto it = std::lower_bound(cells.begin(), cells.end(), key,
                             [](const Cell& c, std::uint64_t k) { return c.place() < k; });
  if (it == cells.end() || it->place() != key) return std::nullopt;
  return it->tile();
}

// Packed-key neighbour; the swap band of a cutspace needs the general rule.
inline std::uint64_t neighbour_key(const SpaceGraph& g, std::uint64_t key, Port d) {
  if (g.kind() == SpaceKind::Cutspace && (d == Port::N || d == Port::S))
    return Cell(g.neighbor(Cell::from_bits(key << 16).position(), d), 0).place();
  switch (d) {
    case Port::E: return key + (std::uint64_t(1) << 32);
    case Port::W: return key - (std::uint64_t(1) << 32);
    case Port::N: return key + (std::uint64_t(1) << 16);
    case Port::S: return key - (std::uint64_t(1) << 16);
    case Port::U: return key + 1;
    case Port::D: return key - 1;
  }
  return key;
}

}  // namespace detail

namespace detail {

// Open-addressing lookup of an assembly's positions, rebuilt per call in reused storage.
class PlaceIndex {
 public:
  void build(const std::vector<Cell>& cells) {
    std::size_t n = 16;
    while (n < cells.size() * 4) n *= 2;
    mask_ = n - 1;
    keys_.assign(n, kEmpty);
    tiles_.resize(n);
    for (const auto& c : cells) {
      std::size_t h = slot(c.place());
      while (keys_[h] != kEmpty) h = (h + 1) & mask_;
      keys_[h] = c.place();
      tiles_[h] = c.tile();
    }
  }
  int find(std::uint64_t key) const {
    for (std::size_t h = slot(key);; h = (h + 1) & mask_) {
      if (keys_[h] == key) return tiles_[h];
      if (keys_[h] == kEmpty) return -1;
    }
  }

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t(0);
  std::size_t slot(std::uint64_t k) const { return std::size_t((k * 0x9e3779b97f4a7c15ULL) >> 40) & mask_; }
  std::size_t mask_ = 0;
  std::vector<std::uint64_t> keys_;
  std::vector<TileId> tiles_;
};

}  // namespace detail

// All single-tile attachments with strength at least the temperature, sorted. Each empty
// neighbour collects the facing glues of the tiles around it while the cells are scanned.
inline std::vector<Attachment> frontier(const Tas& tas, const Assembly& a) {
  struct Site {
    std::uint64_t key;
    std::array<int, 6> code;
    std::array<int, 6> strength;
  };
  const auto& cells = a.cells();
  const auto ports = tas.graph.ports();
  const bool layered = tas.graph.kind() == SpaceKind::Cutspace;
  thread_local detail::PlaceIndex index;
  thread_local std::vector<Site> sites;
  thread_local std::vector<std::uint64_t> slot_keys;
  thread_local std::vector<std::uint32_t> slot_site;
  index.build(cells);
  sites.clear();
  std::size_t cap = 16;
  while (cap < cells.size() * ports.size() * 2) cap *= 2;
  slot_keys.assign(cap, ~std::uint64_t(0));
  slot_site.resize(cap);
  for (const auto& c : cells)
    for (Port d : ports) {
      std::uint64_t q = detail::neighbour_key(tas.graph, c.place(), d);
      if (layered && (q & 0xffff) != 32768 && (q & 0xffff) != 32769) continue;
      if (index.find(q) >= 0) continue;
      std::size_t h = std::size_t((q * 0x9e3779b97f4a7c15ULL) >> 40) & (cap - 1);
      while (slot_keys[h] != q && slot_keys[h] != ~std::uint64_t(0)) h = (h + 1) & (cap - 1);
      if (slot_keys[h] != q) {
        slot_keys[h] = q;
        slot_site[h] = std::uint32_t(sites.size());
        Site site{q, {}, {}};
        site.code.fill(-1);
        site.strength.fill(0);
        sites.push_back(site);
      }
      Site& site = sites[slot_site[h]];
      // The tile at c lies on side opposite(d) of the site.
      Port back = opposite(d);
      site.code[int(back)] = tas.tiles.code(c.tile(), d);
      site.strength[int(back)] = tas.tiles.strength(c.tile(), d);
    }
  std::sort(sites.begin(), sites.end(), [](const Site& l, const Site& r) { return l.key < r.key; });
  std::vector<Attachment> out;
  out.reserve(sites.size() * 2);
  const std::size_t kinds = tas.tiles.size();
  for (const Site& site : sites) {
    Position p{};
    bool decoded = false;
    for (std::size_t t = 0; t < kinds; ++t) {
      int s = 0;
      for (Port d : ports) {
        int code = site.code[int(d)];
        if (code >= 0 && code == tas.tiles.code(TileId(t), d)) s += site.strength[int(d)];
      }
      if (s < tas.temperature) continue;
      if (!decoded) p = Cell::from_bits(site.key << 16).position(), decoded = true;
      out.push_back({TileId(t), p});
    }
  }
  return out;
}

// Whether any tile can attach; stops at the first one found.
inline bool can_grow(const Tas& tas, const Assembly& a) {
  const auto ports = tas.graph.ports();
  const bool layered = tas.graph.kind() == SpaceKind::Cutspace;
  thread_local detail::PlaceIndex index;
  index.build(a.cells());
  for (const auto& c : a.cells())
    for (Port d : ports) {
      std::uint64_t q = detail::neighbour_key(tas.graph, c.place(), d);
      if (layered && (q & 0xffff) != 32768 && (q & 0xffff) != 32769) continue;
      if (index.find(q) >= 0) continue;
      std::array<int, 6> code{}, strength{};
      for (Port e : ports) {
        int n = index.find(detail::neighbour_key(tas.graph, q, e));
        code[int(e)] = n >= 0 ? tas.tiles.code(TileId(n), opposite(e)) : -1;
        strength[int(e)] = n >= 0 ? tas.tiles.strength(TileId(n), opposite(e)) : 0;
      }
      for (std::size_t t = 0; t < tas.tiles.size(); ++t) {
        int sum = 0;
        for (Port e : ports)
          if (code[int(e)] >= 0 && code[int(e)] == tas.tiles.code(TileId(t), e)) sum += strength[int(e)];
        if (sum >= tas.temperature) return true;
      }
    }
  return false;
}

inline bool is_terminal(const Tas& tas, const Assembly& a) { return !can_grow(tas, a); }

inline Assembly apply(const Tas& tas, const Assembly& a, const Attachment& at) {
  tas.graph.validate(at.position);
  if (at.tile >= tas.tiles.size()) throw InputError("unknown tile id");
  int s = attachment_strength(tas, a, at.position, at.tile);
  if (s < tas.temperature)
    throw AttachmentError("tile " + tas.tiles[at.tile].name + " at " + to_string(at.position, tas.graph.has_depth()) +
                              " binds with strength " + std::to_string(s) + " below temperature " +
                              std::to_string(tas.temperature),
                          s, tas.temperature);
  return a.with(at.position, at.tile);
}

inline Assembly replay(const Tas& tas, const AssemblySequence& seq) {
  Assembly a = tas.seed;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    try {
      a = apply(tas, a, seq[i]);
    } catch (const std::exception& e) {
      throw SequenceError(i, e.what());
    }
  }
  return a;
}

struct Excess {
  std::size_t index;
  int strength;
};

// Steps binding with more than the temperature.
inline std::vector<Excess> attachment_excesses(const Tas& tas, const AssemblySequence& seq) {
  std::vector<Excess> out;
  Assembly a = tas.seed;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    int s = 0;
    try {
      s = attachment_strength(tas, a, seq[i].position, seq[i].tile);
      a = apply(tas, a, seq[i]);
    } catch (const std::exception& e) {
      throw SequenceError(i, e.what());
    }
    if (s > tas.temperature) out.push_back({i, s});
  }
  return out;
}

inline bool is_locally_consistent(const Tas& tas, const AssemblySequence& seq) {
  if (!attachment_excesses(tas, seq).empty()) return false;
  return mismatches(tas.graph, tas.tiles, replay(tas, seq)).empty();
}

// Whether a is reachable from the seed: greedy growth inside a is exact because attachment
// strength only grows with the assembly.
inline bool is_producible(const Tas& tas, const Assembly& a) {
  if (!tas.seed.subassembly_of(a)) return false;
  Assembly cur = tas.seed;
  std::vector<Cell> rest;
  for (const auto& c : a)
    if (!cur.occupied(c.position())) rest.push_back(c);
  bool progress = true;
  while (!rest.empty() && progress) {
    progress = false;
    for (std::size_t i = 0; i < rest.size();) {
      if (attachment_strength(tas, cur, rest[i].position(), rest[i].tile()) >= tas.temperature) {
        cur.place(rest[i].position(), rest[i].tile());
        rest.erase(rest.begin() + long(i));
        progress = true;
      } else {
        ++i;
      }
    }
  }
  return rest.empty();
}

// Some assembly order of a from the seed, or nothing if a is not producible.
inline std::optional<AssemblySequence> assembly_order(const Tas& tas, const Assembly& a) {
  if (!tas.seed.subassembly_of(a)) return std::nullopt;
  Assembly cur = tas.seed;
  AssemblySequence seq;
  while (cur.size() < a.size()) {
    bool progress = false;
    for (const auto& c : a) {
      if (cur.occupied(c.position())) continue;
      if (attachment_strength(tas, cur, c.position(), c.tile()) >= tas.temperature) {
        cur.place(c.position(), c.tile());
        seq.push_back({c.tile(), c.position()});
        progress = true;
        break;
      }
    }
    if (!progress) return std::nullopt;
  }
  return seq;
}

namespace detail {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL + h;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return v ^ (v >> 31);
}

// Fixed-width keys stored back to back, with an open-addressing index. Each slot holds a
// 32-bit hash above a 32-bit key index (plus one); failed probes and rehashing skip the key data.
class KeyArena {
 public:
  explicit KeyArena(std::size_t width) : width_(width), slots_(1024, 0) {}

  std::size_t width() const { return width_; }
  std::size_t size() const { return count_; }
  const std::uint64_t* key(std::size_t i) const { return data_.data() + i * width_; }

  // Returns the key's index and whether it was new.
  std::pair<std::size_t, bool> insert(const std::uint64_t* k) {
    if ((count_ + 1) * 2 > slots_.size()) grow();
    std::uint64_t tag = hash(k) & 0xffffffffULL;
    std::size_t mask = slots_.size() - 1;
    for (std::size_t s = std::size_t(tag) & mask;; s = (s + 1) & mask) {
      std::uint64_t v = slots_[s];
      if (v == 0) {
        data_.insert(data_.end(), k, k + width_);
        slots_[s] = (tag << 32) | ++count_;
        return {count_ - 1, true};
      }
      if ((v >> 32) == tag && std::equal(k, k + width_, key((v & 0xffffffffULL) - 1)))
        return {(v & 0xffffffffULL) - 1, false};
    }
  }

  bool contains(const std::uint64_t* k) const {
    std::uint64_t tag = hash(k) & 0xffffffffULL;
    std::size_t mask = slots_.size() - 1;
    for (std::size_t s = std::size_t(tag) & mask;; s = (s + 1) & mask) {
      std::uint64_t v = slots_[s];
      if (v == 0) return false;
      if ((v >> 32) == tag && std::equal(k, k + width_, key((v & 0xffffffffULL) - 1))) return true;
    }
  }

 private:
  std::uint64_t hash(const std::uint64_t* k) const {
    std::uint64_t h = width_;
    for (std::size_t i = 0; i < width_; ++i) h = (h ^ k[i]) * 0x100000001b3ULL + (h >> 29);
    return mix(0, h);
  }

  void grow() {
    std::vector<std::uint64_t> fresh(slots_.size() * 2, 0);
    std::size_t mask = fresh.size() - 1;
    for (std::uint64_t v : slots_) {
      if (v == 0) continue;
      std::size_t s = std::size_t(v >> 32) & mask;
      while (fresh[s] != 0) s = (s + 1) & mask;
      fresh[s] = v;
    }
    slots_.swap(fresh);
  }

  std::size_t width_;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> data_;
  std::vector<std::uint64_t> slots_;
};

// Exact assembly sets bucketed by size.
class AssemblyStore {
 public:
  bool insert(const Assembly& a) { return bucket(a.size()).insert(words(a)).second; }
  bool contains(const Assembly& a) const {
    auto it = buckets_.find(a.size());
    if (it == buckets_.end()) return false;
    return it->second.contains(words(a));
  }
  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [w, b] : buckets_) n += b.size();
    return n;
  }

 private:
  static const std::uint64_t* words(const Assembly& a) {
    thread_local std::vector<std::uint64_t> k;
    k.clear();
    for (const auto& c : a) k.push_back(c.bits());
    if (k.empty()) k.push_back(0);
    return k.data();
  }
  KeyArena& bucket(std::size_t n) {
    auto it = buckets_.find(n);
    if (it == buckets_.end()) it = buckets_.emplace(n, KeyArena(std::max<std::size_t>(n, 1))).first;
    return it->second;
  }
  std::map<std::size_t, KeyArena> buckets_;
};

}  // namespace detail

struct ExploreOptions {
  std::size_t max_productions = 0;  // 0: unlimited
};

struct ExploreStats {
  std::size_t productions = 0;
  bool complete = true;          // no production at the size bound could still grow
  bool budget_exhausted = false;
  bool stopped = false;          // a visitor asked to stop
};

// Breadth-first walk over the productions of tas with at most max_tiles tiles, each visited
// once. Ids are dense and increase with size; within a size, order follows the parent order
// and then the frontier order.
//   on_production(id, assembly, frontier, terminal) -> bool   (false stops the walk)
// Productions at the size bound are not expanded, so their frontier is passed empty and only
// the terminal flag is meaningful.
//   on_transition(parent_id, parent, child_id, attachment, child_is_new)
template <class OnProduction, class OnTransition>
ExploreStats explore(const Tas& tas, std::size_t max_tiles, OnProduction&& on_production,
                     OnTransition&& on_transition, const ExploreOptions& opts = {}) {
  if (max_tiles < tas.seed.size())
    throw InputError("size bound " + std::to_string(max_tiles) + " is below the seed size " +
                     std::to_string(tas.seed.size()));
  ExploreStats stats;
  auto level = std::make_unique<detail::KeyArena>(tas.seed.size());
  {
    std::vector<std::uint64_t> k;
    for (const auto& c : tas.seed) k.push_back(c.bits());
    level->insert(k.data());
  }
  std::size_t base = 0;
  std::vector<Cell> cells;
  std::vector<std::uint64_t> child;
  for (std::size_t n = tas.seed.size();; ++n) {
    auto next = std::make_unique<detail::KeyArena>(n + 1);
    std::size_t next_base = base + level->size();
    for (std::size_t i = 0; i < level->size(); ++i) {
      if (opts.max_productions && stats.productions >= opts.max_productions) {
        stats.budget_exhausted = true;
        stats.complete = false;
        return stats;
      }
      const std::uint64_t* key = level->key(i);
      cells.clear();
      for (std::size_t j = 0; j < n; ++j) cells.push_back(Cell::from_bits(key[j]));
      Assembly a = Assembly::from_sorted(cells);
      const bool last = n >= max_tiles;
      std::vector<Attachment> fr;
      if (!last) fr = frontier(tas, a);
      const bool terminal = last ? !can_grow(tas, a) : fr.empty();
      ++stats.productions;
      if (!on_production(base + i, a, fr, terminal)) {
        stats.stopped = true;
        stats.complete = false;
        return stats;
      }
      if (last) {
        if (!terminal) stats.complete = false;
        continue;
      }
      for (const auto& at : fr) {
        Cell c(at.position, at.tile);
        child.clear();
        bool inserted = false;
        for (std::size_t j = 0; j < n; ++j) {
          if (!inserted && c.bits() < key[j]) child.push_back(c.bits()), inserted = true;
          child.push_back(key[j]);
        }
        if (!inserted) child.push_back(c.bits());
        auto [j, fresh] = next->insert(child.data());
        on_transition(base + i, a, next_base + j, at, fresh);
      }
    }
    if (next->size() == 0) break;
    base = next_base;
    level = std::move(next);
  }
  return stats;
}

struct Production {
  Assembly assembly;
  bool terminal = false;
};

struct ProductionSet {
  std::vector<Production> productions;  // sorted by size, then lexicographically
  std::size_t bound = 0;
  bool complete = true;
  bool budget_exhausted = false;

  std::size_t terminal_count() const {
    return std::size_t(std::count_if(productions.begin(), productions.end(), [](const Production& p) { return p.terminal; }));
  }
};

inline ProductionSet enumerate(const Tas& tas, std::size_t max_tiles, const ExploreOptions& opts = {}) {
  ProductionSet out;
  out.bound = max_tiles;
  auto stats = explore(
      tas, max_tiles,
      [&](std::size_t, const Assembly& a, const std::vector<Attachment>&, bool terminal) {
        out.productions.push_back({a, terminal});
        return true;
      },
      [](std::size_t, const Assembly&, std::size_t, const Attachment&, bool) {}, opts);
  out.complete = stats.complete;
  out.budget_exhausted = stats.budget_exhausted;
  std::sort(out.productions.begin(), out.productions.end(), [](const Production& l, const Production& r) {
    if (l.assembly.size() != r.assembly.size()) return l.assembly.size() < r.assembly.size();
    return l.assembly < r.assembly;
  });
  return out;
}

// ---- cutspace tools ----

inline Tas lift_system(const Tas& planar, int scale) {
  if (planar.graph.kind() != SpaceKind::Square2D) throw InputError("lift_system expects a square-grid system");
  Tas cut{SpaceGraph::cutspace(scale), planar.tiles, {}, planar.temperature};
  for (const auto& c : planar.seed) cut.seed.place(embed(c.position()), c.tile());
  validate_tas(cut);
  return cut;
}

// Path lifting: each step goes to the canonical layer when it binds there, otherwise to the
// other layer. No layer function on the plane keeps every adjacency, so the canonical
// placement alone cannot be used.
inline AssemblySequence lift(const Tas& planar, const Tas& cut, const AssemblySequence& seq) {
  if (cut.graph.kind() != SpaceKind::Cutspace) throw InputError("lift target must be a cutspace system");
  replay(planar, seq);
  Assembly a = cut.seed;
  AssemblySequence out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    Position home = embed(seq[i].position);
    bool placed = false;
    for (int layer : {home.z, 1 - home.z}) {
      Position q{home.x, home.y, layer};
      if (a.occupied(q)) continue;
      if (attachment_strength(cut, a, q, seq[i].tile) < cut.temperature) continue;
      a.place(q, seq[i].tile);
      out.push_back({seq[i].tile, q});
      placed = true;
      break;
    }
    if (!placed) throw std::logic_error("lift: step " + std::to_string(i) + " binds on neither layer");
  }
  return out;
}

namespace detail {
inline std::map<std::pair<int, int>, TileId> projected_tiles(const Assembly& a, bool* consistent) {
  std::map<std::pair<int, int>, TileId> seen;
  *consistent = true;
  for (const auto& c : a) {
    auto [it, fresh] = seen.emplace(std::pair{c.position().x, c.position().y}, c.tile());
    if (!fresh && it->second != c.tile()) *consistent = false;
  }
  return seen;
}
}  // namespace detail

// Tiles sharing a projection carry the same type.
inline bool is_consistent(const Tas& cut, const AssemblySequence& seq) {
  bool ok = true;
  detail::projected_tiles(replay(cut, seq), &ok);
  return ok;
}

// Projection keeping the first placement at each planar position.
inline AssemblySequence project_first(const Tas& cut, const AssemblySequence& seq) {
  if (!is_consistent(cut, seq)) throw InputError("sequence is not consistent");
  std::set<std::pair<int, int>> seen;
  for (const auto& c : cut.seed) seen.insert({c.position().x, c.position().y});
  AssemblySequence out;
  for (const auto& at : seq)
    if (seen.insert({at.position.x, at.position.y}).second) out.push_back({at.tile, project(at.position)});
  return out;
}

inline Tas project_system(const Tas& cut) {
  Tas planar{SpaceGraph::square2d(), cut.tiles, {}, cut.temperature};
  for (const auto& c : cut.seed)
    if (!planar.seed.occupied(project(c.position()))) planar.seed.place(project(c.position()), c.tile());
  return planar;
}

// When an arm wants (x, y, 1-l) while (x, y, l) already holds tile t, places t there instead.
inline Attachment reconcile(const Tas& cut, const AssemblySequence& seq, const Attachment& at) {
  if (cut.graph.kind() != SpaceKind::Cutspace) throw InputError("reconcile needs a cutspace system");
  Assembly a = replay(cut, seq);
  bool consistent = true;
  detail::projected_tiles(a, &consistent);
  if (!consistent) throw ReconcileError("consistency", "sequence is not consistent");
  const Position& p = at.position;
  if (p.z != 0 && p.z != 1) throw ReconcileError("twin", "position is not on a cutspace layer");
  auto twin = a.at({p.x, p.y, 1 - p.z});
  if (!twin) throw ReconcileError("twin", "no tile at the other layer of " + to_string(p, true));
  if (a.occupied(p)) throw ReconcileError("twin", to_string(p, true) + " is already occupied");
  if (p.y <= cut.graph.swap_row() + 1) throw ReconcileError("band", "position is not above the swap band");
  auto fr = frontier(cut, a);
  if (std::none_of(fr.begin(), fr.end(), [&](const Attachment& f) { return f.position == p; }))
    throw ReconcileError("attachable", "nothing attaches at " + to_string(p, true));
  Tas planar = project_system(cut);
  Assembly flat;
  for (const auto& c : a)
    if (!flat.occupied(project(c.position()))) flat.place(project(c.position()), c.tile());
  auto bad = mismatches(planar.graph, planar.tiles, flat);
  if (!bad.empty())
    throw ReconcileError("mismatch-free", "projection has " + std::to_string(bad.size()) + " mismatch(es), first at " +
                                             to_string(bad.front().edge.a, false) + "-" +
                                             to_string(bad.front().edge.b, false));
  Attachment out{*twin, p};
  if (attachment_strength(cut, a, p, out.tile) < cut.temperature)
    throw ReconcileError("conclusion", "the twin tile does not bind at " + to_string(p, true));
  return out;
}

struct CrossingResult {
  bool success = false;
  AssemblySequence sequence;
  std::string report;
  std::size_t states = 0;
};

struct CrossingOptions {
  AssemblySequence start;
  std::size_t max_states = 200000;
};

// Reach of the horizontal arm (layer 0, above the swap band) and the vertical arm (layer 1).
inline std::pair<int, int> arm_reach(const SpaceGraph& g, const Assembly& a) {
  int horizontal = std::numeric_limits<int>::min(), vertical = std::numeric_limits<int>::min();
  for (const auto& c : a) {
    Position p = c.position();
    if (p.z == 0 && p.y > g.swap_row() + 1) horizontal = std::max(horizontal, p.x);
    if (p.z == 1) vertical = std::max(vertical, p.y);
  }
  return {horizontal, vertical};
}

namespace detail {
// Graph distance from each window position to a target set, ignoring tiles.
inline std::map<Position, int> distances_to(const SpaceGraph& g, const Window& w,
                                            const std::function<bool(const Position&)>& target) {
  std::map<Position, int> dist;
  std::vector<Position> queue;
  for (const auto& p : w.positions(g))
    if (target(p)) dist[p] = 0, queue.push_back(p);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Position p = queue[i];
    for (Port d : g.ports()) {
      Position q = g.neighbor(p, d);
      if (!w.contains({q.x, q.y, w.z0}) || dist.count(q)) continue;
      dist[q] = dist[p] + 1;
      queue.push_back(q);
    }
  }
  return dist;
}
}  // namespace detail

// Depth-first search over consistent sequences. Moves are tried nearest-first toward the
// target of the arm with more ground to cover; a move that would put a second tile type over
// an occupied projection goes through reconcile instead.
inline CrossingResult build_crossing(const Tas& cut, int height, int width, const CrossingOptions& opts = {}) {
  if (cut.graph.kind() != SpaceKind::Cutspace) throw InputError("build_crossing needs a cutspace system");
  if (height < 0 || width < 0) throw InputError("arm targets must be non-negative");
  if (!is_consistent(cut, opts.start)) throw InputError("start sequence is not consistent");
  const SpaceGraph& g = cut.graph;
  const int band = g.swap_row() + 1;
  CrossingResult res;
  auto done = [&](const Assembly& a) {
    auto [h, v] = arm_reach(g, a);
    return (width == 0 || h > width) && (height == 0 || v > height);
  };
  Assembly start = replay(cut, opts.start);
  Window w = Window::planar(-2, -2, std::max(width, band) + 3, std::max(height, band) + 3);
  for (const auto& c : start) {
    Position p = c.position();
    w.x0 = std::min(w.x0, p.x - 2), w.x1 = std::max(w.x1, p.x + 2);
    w.y0 = std::min(w.y0, p.y - 2), w.y1 = std::max(w.y1, p.y + 2);
  }
  auto to_h = detail::distances_to(g, w, [&](const Position& p) { return p.z == 0 && p.y > band && p.x > width; });
  auto to_v = detail::distances_to(g, w, [&](const Position& p) { return p.z == 1 && p.y > height; });
  constexpr int kFar = 1 << 20;
  auto dist = [&](const std::map<Position, int>& d, const Position& p) {
    auto it = d.find(p);
    return it == d.end() ? kFar : it->second;
  };
  auto need = [&](const std::map<Position, int>& d, const Assembly& a, bool wanted) {
    if (!wanted) return 0;
    int best = kFar;
    for (const auto& c : a) best = std::min(best, dist(d, c.position()));
    return best;
  };

  struct Node {
    Assembly assembly;
    Attachment via;
    std::vector<Attachment> moves;  // best last
    bool expanded = false;
  };
  std::map<std::string, std::size_t> blocked;
  std::set<Assembly> visited;
  std::vector<Node> stack;
  AssemblySequence seq = opts.start;
  stack.push_back({start, {}, {}, false});
  visited.insert(start);
  while (!stack.empty()) {
    Node& top = stack.back();
    if (!top.expanded) {
      top.expanded = true;
      ++res.states;
      if (done(top.assembly)) {
        res.success = true;
        res.sequence = seq;
        res.report = "both arms passed their targets after " + std::to_string(seq.size()) + " steps";
        return res;
      }
      if (res.states >= opts.max_states) break;
      const Assembly& a = top.assembly;
      bool vertical = need(to_v, a, height > 0) > need(to_h, a, width > 0);
      const auto& primary = vertical ? to_v : to_h;
      const auto& secondary = vertical ? to_h : to_v;
      bool consistent = true;
      auto flat = detail::projected_tiles(a, &consistent);
      std::vector<Attachment> moves;
      for (const auto& at : frontier(cut, a)) {
        auto it = flat.find({at.position.x, at.position.y});
        if (it == flat.end() || it->second == at.tile) {
          moves.push_back(at);
          continue;
        }
        try {
          moves.push_back(reconcile(cut, seq, at));
        } catch (const ReconcileError& e) {
          ++blocked[e.what()];
        }
      }
      std::sort(moves.begin(), moves.end());
      moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
      std::stable_sort(moves.begin(), moves.end(), [&](const Attachment& l, const Attachment& r) {
        auto key = [&](const Attachment& m) { return std::pair{dist(primary, m.position), dist(secondary, m.position)}; };
        return key(l) > key(r);
      });
      top.moves = std::move(moves);
    }
    if (top.moves.empty()) {
      stack.pop_back();
      if (!stack.empty()) seq.pop_back();
      continue;
    }
    Attachment m = top.moves.back();
    top.moves.pop_back();
    Assembly next = top.assembly.with(m.position, m.tile);
    if (!visited.insert(next).second) continue;
    seq.push_back(m);
    stack.push_back({std::move(next), m, {}, false});
  }
  res.report = "no consistent sequence reaches both targets (" + std::to_string(res.states) + " states explored";
  if (res.states >= opts.max_states) res.report += ", state budget exhausted";
  res.report += ")";
  for (const auto& [why, n] : blocked) res.report += "; reconcile refused " + std::to_string(n) + "x: " + why;
  return res;
}

}  // namespace tileasm
