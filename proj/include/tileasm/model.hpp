#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "grid.hpp"

namespace tileasm {

struct Glue {
  std::string label;
  int strength = 0;
  bool is_null() const { return strength == 0; }
  bool operator==(const Glue&) const = default;
};

struct TileType {
  std::string name;
  std::array<Glue, 6> glues{};
  const Glue& glue(Port p) const { return glues[static_cast<int>(p)]; }
  Glue& glue(Port p) { return glues[static_cast<int>(p)]; }
};

using TileId = std::uint16_t;

// Tile types sorted by name, so id order is name order.
class TileSet {
 public:
  TileSet() = default;
  explicit TileSet(std::vector<TileType> tiles) : tiles_(std::move(tiles)) {
    if (tiles_.empty()) throw InputError("tile set is empty");
    if (tiles_.size() >= std::numeric_limits<TileId>::max()) throw InputError("too many tile types");
    std::sort(tiles_.begin(), tiles_.end(), [](const TileType& a, const TileType& b) { return a.name < b.name; });
    for (std::size_t i = 0; i < tiles_.size(); ++i) {
      const auto& t = tiles_[i];
      if (t.name.empty()) throw InputError("tile type with empty name");
      if (i > 0 && tiles_[i - 1].name == t.name) throw InputError("duplicate tile type '" + t.name + "'");
      for (Port p : kAllPorts) {
        const Glue& g = t.glue(p);
        if (g.strength < 0) throw InputError("tile '" + t.name + "' has a negative glue strength");
        if (g.strength == 0 && !g.label.empty())
          throw InputError("tile '" + t.name + "' side " + std::string(port_name(p)) + " has a labelled glue of strength 0");
        if (g.strength > 0 && g.label.empty())
          throw InputError("tile '" + t.name + "' side " + std::string(port_name(p)) + " has an unlabelled glue");
        if (g.strength == 0) continue;
        auto [it, fresh] = label_strength_.emplace(g.label, g.strength);
        if (!fresh && it->second != g.strength)
          throw InputError("glue label '" + g.label + "' used with strengths " + std::to_string(it->second) +
                           " and " + std::to_string(g.strength));
      }
    }
    int next = 0;
    for (auto& [label, s] : label_strength_) label_id_[label] = next++;
    codes_.resize(tiles_.size());
    for (std::size_t i = 0; i < tiles_.size(); ++i)
      for (Port p : kAllPorts) {
        const Glue& g = tiles_[i].glue(p);
        codes_[i][static_cast<int>(p)] = g.strength > 0 ? label_id_.at(g.label) : -1;
      }
  }

  std::size_t size() const { return tiles_.size(); }
  const TileType& operator[](TileId id) const { return tiles_[id]; }
  const std::vector<TileType>& types() const { return tiles_; }

  std::optional<TileId> find(const std::string& name) const {
    auto it = std::lower_bound(tiles_.begin(), tiles_.end(), name,
                               [](const TileType& t, const std::string& n) { return t.name < n; });
    if (it == tiles_.end() || it->name != name) return std::nullopt;
    return static_cast<TileId>(it - tiles_.begin());
  }

  TileId id(const std::string& name) const {
    auto i = find(name);
    if (!i) throw InputError("unknown tile type '" + name + "'");
    return *i;
  }

  std::size_t label_count() const { return label_strength_.size(); }
  const std::map<std::string, int>& labels() const { return label_strength_; }

  // Dense label code of a side, -1 for the null glue.
  int code(TileId t, Port p) const { return codes_[t][static_cast<int>(p)]; }
  int strength(TileId t, Port p) const { return tiles_[t].glue(p).strength; }

 private:
  std::vector<TileType> tiles_;
  std::map<std::string, int> label_strength_;
  std::map<std::string, int> label_id_;
  std::vector<std::array<int, 6>> codes_;
};

// Strength with which tile a binds to tile b lying on side d of a.
inline int interaction_strength(const TileSet& ts, TileId a, TileId b, Port d) {
  int ca = ts.code(a, d);
  if (ca < 0 || ca != ts.code(b, opposite(d))) return 0;
  return ts.strength(a, d);
}

// A placed tile packed into 64 bits: three 16-bit biased coordinates above a 16-bit tile id.
// Ordering by bits is lexicographic on (x, y, z) then tile.
class Cell {
 public:
  static constexpr int kLimit = 32767;

  Cell() = default;
  Cell(const Position& p, TileId t) {
    if (std::abs(p.x) >= kLimit || std::abs(p.y) >= kLimit || std::abs(p.z) >= kLimit)
      throw InputError("position " + to_string(p, true) + " outside the supported coordinate range");
    bits_ = (pack(p) << 16) | t;
  }
  static Cell from_bits(std::uint64_t b) {
    Cell c;
    c.bits_ = b;
    return c;
  }

  static std::uint64_t pack(const Position& p) {
    return (std::uint64_t(std::uint16_t(p.x + 32768)) << 32) | (std::uint64_t(std::uint16_t(p.y + 32768)) << 16) |
           std::uint64_t(std::uint16_t(p.z + 32768));
  }

  Position position() const {
    return {int((bits_ >> 48) & 0xffff) - 32768, int((bits_ >> 32) & 0xffff) - 32768,
            int((bits_ >> 16) & 0xffff) - 32768};
  }
  TileId tile() const { return TileId(bits_ & 0xffff); }
  std::uint64_t place() const { return bits_ >> 16; }
  std::uint64_t bits() const { return bits_; }
  auto operator<=>(const Cell&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

// Finite partial map from positions to tile ids, kept sorted by position.
class Assembly {
 public:
  Assembly() = default;

  static Assembly from_cells(std::vector<Cell> cells) {
    Assembly a;
    a.cells_ = std::move(cells);
    std::sort(a.cells_.begin(), a.cells_.end());
    for (std::size_t i = 1; i < a.cells_.size(); ++i)
      if (a.cells_[i].place() == a.cells_[i - 1].place())
        throw OccupiedError("position " + to_string(a.cells_[i].position(), true) + " given twice");
    return a;
  }

  // Caller guarantees cells are sorted and positions distinct.
  static Assembly from_sorted(std::vector<Cell> cells) {
    Assembly a;
    a.cells_ = std::move(cells);
    return a;
  }

  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  const std::vector<Cell>& cells() const { return cells_; }
  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }

  std::optional<TileId> at(const Position& p) const {
    std::uint64_t key = Cell::pack(p);
    auto it = std::lower_bound(cells_.begin(), cells_.end(), key,
                               [](const Cell& c, std::uint64_t k) { return c.place() < k; });
    if (it == cells_.end() || it->place() != key) return std::nullopt;
    return it->tile();
  }

  bool occupied(const Position& p) const { return at(p).has_value(); }

  void place(const Position& p, TileId t) {
    Cell c(p, t);
    auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
    if ((it != cells_.end() && it->place() == c.place()) ||
        (it != cells_.begin() && std::prev(it)->place() == c.place()))
      throw OccupiedError("position " + to_string(p, true) + " is occupied");
    cells_.insert(it, c);
  }

  Assembly with(const Position& p, TileId t) const {
    Assembly a = *this;
    a.place(p, t);
    return a;
  }

  std::vector<Position> positions() const {
    std::vector<Position> out;
    out.reserve(cells_.size());
    for (const auto& c : cells_) out.push_back(c.position());
    return out;
  }

  // Every placement of this assembly agrees with other.
  bool subassembly_of(const Assembly& other) const {
    return std::includes(other.cells_.begin(), other.cells_.end(), cells_.begin(), cells_.end());
  }

  auto operator<=>(const Assembly&) const = default;
  bool operator==(const Assembly&) const = default;

 private:
  std::vector<Cell> cells_;
};

struct Tas {
  SpaceGraph graph = SpaceGraph::square2d();
  TileSet tiles;
  Assembly seed;
  int temperature = 1;
};

struct WeightedEdge {
  std::size_t u;
  std::size_t v;
  int weight;
};

// Vertices are the assembly's positions in order; edges carry positive interaction strengths.
struct BindingGraph {
  std::vector<Position> vertices;
  std::vector<WeightedEdge> edges;
};

inline BindingGraph binding_graph(const SpaceGraph& g, const TileSet& ts, const Assembly& a) {
  BindingGraph bg;
  bg.vertices = a.positions();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Cell& c = a.cells()[i];
    Position p = c.position();
    for (Port d : g.ports()) {
      Position q = g.neighbor(p, d);
      if (!(p < q)) continue;
      auto t = a.at(q);
      if (!t) continue;
      int w = interaction_strength(ts, c.tile(), *t, d);
      if (w <= 0) continue;
      auto j = std::size_t(std::lower_bound(bg.vertices.begin(), bg.vertices.end(), q) - bg.vertices.begin());
      bg.edges.push_back({i, j, w});
    }
  }
  return bg;
}

inline bool is_connected(std::size_t n, const std::vector<WeightedEdge>& edges) {
  if (n <= 1) return true;
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t groups = n;
  for (const auto& e : edges) {
    auto a = root(e.u), b = root(e.v);
    if (a != b) parent[a] = b, --groups;
  }
  return groups == 1;
}

// Global minimum cut weight (Stoer-Wagner). A single vertex has no cut: returns max int.
inline int min_cut_weight(std::size_t n, const std::vector<WeightedEdge>& edges) {
  if (n <= 1) return std::numeric_limits<int>::max();
  std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
  for (const auto& e : edges) w[e.u][e.v] += e.weight, w[e.v][e.u] += e.weight;
  std::vector<std::size_t> alive(n);
  for (std::size_t i = 0; i < n; ++i) alive[i] = i;
  int best = std::numeric_limits<int>::max();
  while (alive.size() > 1) {
    std::vector<int> key(n, 0);
    std::vector<bool> added(n, false);
    std::size_t prev = alive[0], last = alive[0];
    for (std::size_t step = 0; step < alive.size(); ++step) {
      std::size_t pick = n;
      for (auto v : alive)
        if (!added[v] && (pick == n || key[v] > key[pick])) pick = v;
      added[pick] = true;
      prev = last;
      last = pick;
      if (step + 1 == alive.size()) best = std::min(best, key[pick]);
      for (auto v : alive)
        if (!added[v]) key[v] += w[pick][v];
    }
    for (auto v : alive) w[prev][v] += w[last][v], w[v][prev] = w[prev][v];
    alive.erase(std::find(alive.begin(), alive.end(), last));
  }
  return best;
}

inline bool is_tau_stable(const SpaceGraph& g, const TileSet& ts, const Assembly& a, int tau) {
  if (a.empty()) throw InputError("stability of an empty assembly is undefined");
  BindingGraph bg = binding_graph(g, ts, a);
  if (!is_connected(bg.vertices.size(), bg.edges)) return false;
  if (tau <= 1) return true;
  return min_cut_weight(bg.vertices.size(), bg.edges) >= tau;
}

inline int attachment_strength(const SpaceGraph& g, const TileSet& ts, const Assembly& a, const Position& p,
                               TileId t) {
  if (a.occupied(p)) throw OccupiedError("position " + to_string(p, true) + " is occupied");
  int s = 0;
  for (Port d : g.ports()) {
    auto n = a.at(g.neighbor(p, d));
    if (n) s += interaction_strength(ts, t, *n, d);
  }
  return s;
}

inline int attachment_strength(const Tas& tas, const Assembly& a, const Position& p, TileId t) {
  return attachment_strength(tas.graph, tas.tiles, a, p, t);
}

struct Mismatch {
  Edge edge;
  Glue at_a;  // glue of the tile at edge.a facing edge.b
  Glue at_b;
};

// Adjacent tiles whose facing glues differ while at least one is positive.
inline std::vector<Mismatch> mismatches(const SpaceGraph& g, const TileSet& ts, const Assembly& a) {
  std::vector<Mismatch> out;
  for (const auto& c : a) {
    Position p = c.position();
    for (Port d : g.ports()) {
      Position q = g.neighbor(p, d);
      if (!(p < q)) continue;
      auto t = a.at(q);
      if (!t) continue;
      const Glue& gp = ts[c.tile()].glue(d);
      const Glue& gq = ts[*t].glue(opposite(d));
      if ((gp.strength > 0 || gq.strength > 0) && gp != gq) out.push_back({Edge(p, q), gp, gq});
    }
  }
  std::sort(out.begin(), out.end(), [](const Mismatch& l, const Mismatch& r) { return l.edge < r.edge; });
  return out;
}

inline void validate_tas(const Tas& tas) {
  if (tas.temperature < 1) throw InputError("temperature must be at least 1");
  if (tas.tiles.size() == 0) throw InputError("tile set is empty");
  if (tas.seed.empty()) throw InputError("seed is empty");
  for (const auto& c : tas.seed) {
    tas.graph.validate(c.position());
    if (c.tile() >= tas.tiles.size()) throw InputError("seed uses an unknown tile id");
  }
  if (!is_tau_stable(tas.graph, tas.tiles, tas.seed, tas.temperature))
    throw InputError("seed is not stable at temperature " + std::to_string(tas.temperature));
}

}  // namespace tileasm
