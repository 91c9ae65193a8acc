#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace tileasm {

enum class Port : std::uint8_t { N = 0, E = 1, S = 2, W = 3, U = 4, D = 5 };

inline constexpr std::array<Port, 6> kAllPorts{Port::N, Port::E, Port::S, Port::W, Port::U, Port::D};

constexpr Port opposite(Port p) {
  switch (p) {
    case Port::N: return Port::S;
    case Port::S: return Port::N;
    case Port::E: return Port::W;
    case Port::W: return Port::E;
    case Port::U: return Port::D;
    case Port::D: return Port::U;
  }
  return Port::N;
}

constexpr std::string_view port_name(Port p) {
  constexpr std::array<std::string_view, 6> names{"N", "E", "S", "W", "U", "D"};
  return names[static_cast<int>(p)];
}

inline std::optional<Port> parse_port(std::string_view s) {
  for (Port p : kAllPorts)
    if (port_name(p) == s) return p;
  return std::nullopt;
}

// South, West and Down glues face a smaller neighbour.
constexpr bool faces_smaller(Port p) { return p == Port::S || p == Port::W || p == Port::D; }

// z is the height on the cubic grid and the layer on a cutspace; it is 0 on the square grid.
struct Position {
  int x = 0;
  int y = 0;
  int z = 0;
  auto operator<=>(const Position&) const = default;
};

inline Position operator+(Position a, Position b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Position operator-(Position a, Position b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

inline std::string to_string(const Position& p, bool with_z) {
  std::string s = "(" + std::to_string(p.x) + "," + std::to_string(p.y);
  if (with_z) s += "," + std::to_string(p.z);
  return s + ")";
}

enum class SpaceKind { Square2D, Cubic3D, Cutspace };

class SpaceGraph {
 public:
  static SpaceGraph square2d() { return SpaceGraph(SpaceKind::Square2D, 0); }
  static SpaceGraph cubic3d() { return SpaceGraph(SpaceKind::Cubic3D, 0); }
  static SpaceGraph cutspace(int scale) {
    if (scale < 1) throw InputError("cutspace scale must be at least 1");
    return SpaceGraph(SpaceKind::Cutspace, scale);
  }

  static SpaceGraph parse(std::string_view s) {
    if (s == "square2d") return square2d();
    if (s == "cubic3d") return cubic3d();
    constexpr std::string_view prefix = "cutspace(s=";
    if (s.starts_with(prefix) && s.ends_with(")")) {
      auto digits = s.substr(prefix.size(), s.size() - prefix.size() - 1);
      if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return cutspace(std::stoi(std::string(digits)));
    }
    throw InputError("unknown space '" + std::string(s) + "'");
  }

  SpaceKind kind() const { return kind_; }
  int scale() const { return scale_; }
  int degree() const { return kind_ == SpaceKind::Cubic3D ? 6 : 4; }
  bool has_depth() const { return kind_ != SpaceKind::Square2D; }

  std::span<const Port> ports() const {
    return std::span<const Port>(kAllPorts.data(), static_cast<std::size_t>(degree()));
  }

  std::string name() const {
    switch (kind_) {
      case SpaceKind::Square2D: return "square2d";
      case SpaceKind::Cubic3D: return "cubic3d";
      case SpaceKind::Cutspace: return "cutspace(s=" + std::to_string(scale_) + ")";
    }
    return {};
  }

  bool is_valid(const Position& p) const {
    switch (kind_) {
      case SpaceKind::Square2D: return p.z == 0;
      case SpaceKind::Cubic3D: return true;
      case SpaceKind::Cutspace: return p.z == 0 || p.z == 1;
    }
    return false;
  }

  void validate(const Position& p) const {
    if (!is_valid(p)) throw InputError("position " + to_string(p, true) + " is not a vertex of " + name());
  }

  // Lower row of the layer-swapping band on a cutspace.
  int swap_row() const { return 2 * scale_; }

  Position neighbor(const Position& p, Port d) const {
    switch (d) {
      case Port::E: return {p.x + 1, p.y, p.z};
      case Port::W: return {p.x - 1, p.y, p.z};
      case Port::U: return {p.x, p.y, p.z + 1};
      case Port::D: return {p.x, p.y, p.z - 1};
      case Port::N:
        if (kind_ == SpaceKind::Cutspace && p.x >= 2 && p.y == swap_row()) return {p.x, p.y + 1, 1 - p.z};
        return {p.x, p.y + 1, p.z};
      case Port::S:
        if (kind_ == SpaceKind::Cutspace && p.x >= 2 && p.y == swap_row() + 1) return {p.x, p.y - 1, 1 - p.z};
        return {p.x, p.y - 1, p.z};
    }
    return p;
  }

  std::vector<std::pair<Port, Position>> neighbors(const Position& p) const {
    validate(p);
    std::vector<std::pair<Port, Position>> out;
    for (Port d : ports()) out.emplace_back(d, neighbor(p, d));
    return out;
  }

  std::optional<Port> port_towards(const Position& a, const Position& b) const {
    for (Port d : ports())
      if (neighbor(a, d) == b) return d;
    return std::nullopt;
  }

  bool adjacent(const Position& a, const Position& b) const {
    return is_valid(a) && is_valid(b) && port_towards(a, b).has_value();
  }

  bool operator==(const SpaceGraph&) const = default;

 private:
  SpaceGraph(SpaceKind k, int s) : kind_(k), scale_(s) {}
  SpaceKind kind_;
  int scale_;
};

// Undirected edge, stored with a < b.
struct Edge {
  Position a;
  Position b;
  Edge() = default;
  Edge(Position p, Position q) : a(std::min(p, q)), b(std::max(p, q)) {}
  auto operator<=>(const Edge&) const = default;
};

// Axis-aligned box of positions, bounds inclusive.
struct Window {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0, z0 = 0, z1 = 0;

  static Window planar(int x0, int y0, int x1, int y1) { return {x0, y0, x1, y1, 0, 0}; }

  bool contains(const Position& p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1 && p.z >= z0 && p.z <= z1;
  }

  std::vector<Position> positions(const SpaceGraph& g) const {
    int lo = z0, hi = z1;
    if (g.kind() == SpaceKind::Square2D) lo = hi = 0;
    if (g.kind() == SpaceKind::Cutspace) lo = 0, hi = 1;
    std::vector<Position> out;
    for (int x = x0; x <= x1; ++x)
      for (int y = y0; y <= y1; ++y)
        for (int z = lo; z <= hi; ++z) out.push_back({x, y, z});
    return out;
  }

  std::vector<Edge> edges(const SpaceGraph& g) const {
    std::vector<Edge> out;
    for (const auto& p : positions(g))
      for (Port d : g.ports()) {
        Position q = g.neighbor(p, d);
        if (p < q && g.is_valid(q) && within(g, q)) out.emplace_back(p, q);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  bool within(const SpaceGraph& g, const Position& q) const {
    if (g.kind() == SpaceKind::Cubic3D) return contains(q);
    return q.x >= x0 && q.x <= x1 && q.y >= y0 && q.y <= y1;
  }
};

inline Position project(const Position& p) { return {p.x, p.y, 0}; }

// Canonical square-grid to cutspace placement: the quadrant x>=2, y>=2 goes to layer 1.
inline Position embed(const Position& p) {
  if (p.z != 0) throw InputError("embed expects a square-grid position");
  return {p.x, p.y, (p.x >= 2 && p.y >= 2) ? 1 : 0};
}

// Position-independent name of a cut edge: which part of the cut it belongs to and its
// endpoints relative to that part's anchor. Translated cuts give identical local edges.
struct LocalEdge {
  int part = 0;
  Position a;
  Position b;
  auto operator<=>(const LocalEdge&) const = default;
};

struct IndexedEdge {
  Edge edge;
  LocalEdge local;
  auto operator<=>(const IndexedEdge&) const = default;
};

class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::vector<IndexedEdge> edges) : edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end(),
                             [](const IndexedEdge& l, const IndexedEdge& r) { return l.edge == r.edge; }),
                 edges_.end());
  }

  // Plain edge list; local indices are the absolute endpoints.
  static EdgeSet of(const std::vector<Edge>& edges) {
    std::vector<IndexedEdge> v;
    for (const auto& e : edges) v.push_back({e, {0, e.a, e.b}});
    return EdgeSet(std::move(v));
  }

  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  const std::vector<IndexedEdge>& edges() const { return edges_; }

  bool contains(const Edge& e) const { return find(e) != nullptr; }

  std::optional<LocalEdge> local(const Edge& e) const {
    const IndexedEdge* ie = find(e);
    if (!ie) return std::nullopt;
    return ie->local;
  }

  std::vector<Edge> plain() const {
    std::vector<Edge> out;
    for (const auto& ie : edges_) out.push_back(ie.edge);
    return out;
  }

 private:
  const IndexedEdge* find(const Edge& e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e,
                               [](const IndexedEdge& l, const Edge& r) { return l.edge < r; });
    if (it == edges_.end() || it->edge != e) return nullptr;
    return &*it;
  }
  std::vector<IndexedEdge> edges_;
};

// Families of cuts indexed by an integer k. Each cut is the edge boundary of a far-side
// region, and translating k translates the region.
//   Columns: {x > k} on any space.
//   C (cutspace): layer-1 vertices above row k.
//   D (cutspace): layer-0 vertices right of column k and above the swap band.
//   E (cutspace): union of the C and D regions.
enum class CutFamily { Columns, C, D, E };

inline std::optional<CutFamily> parse_cut_family(std::string_view s) {
  if (s == "columns" || s == "Z") return CutFamily::Columns;
  if (s == "C") return CutFamily::C;
  if (s == "D") return CutFamily::D;
  if (s == "E") return CutFamily::E;
  return std::nullopt;
}

class CutRegion {
 public:
  CutRegion(const SpaceGraph& g, CutFamily family, int k) : graph_(g), family_(family), k_(k) {
    if (family != CutFamily::Columns) {
      if (g.kind() != SpaceKind::Cutspace) throw InputError("C, D and E cuts need a cutspace");
      if (k < band_top()) throw InputError("cut index " + std::to_string(k) + " below " + std::to_string(band_top()));
    }
  }

  const SpaceGraph& graph() const { return graph_; }
  CutFamily family() const { return family_; }
  int index() const { return k_; }

  // Part 1 is the layer-1 region, part 2 the layer-0 region; columns use part 0.
  int part(const Position& p) const {
    switch (family_) {
      case CutFamily::Columns: return p.x > k_ ? 0 : -1;
      case CutFamily::C: return in_upper(p) ? 1 : -1;
      case CutFamily::D: return in_lower(p) ? 2 : -1;
      case CutFamily::E: return in_upper(p) ? 1 : in_lower(p) ? 2 : -1;
    }
    return -1;
  }

  bool far(const Position& p) const { return part(p) >= 0; }

  Position anchor(int part) const { return part == 1 ? Position{0, k_, 0} : Position{k_, 0, 0}; }

  Position shift(int part, int delta) const { return part == 1 ? Position{0, delta, 0} : Position{delta, 0, 0}; }

  bool crosses(const Edge& e) const { return far(e.a) != far(e.b); }

  LocalEdge local(const Edge& e) const {
    int p = far(e.a) ? part(e.a) : part(e.b);
    Position o = anchor(p);
    return {p, e.a - o, e.b - o};
  }

  EdgeSet edges(const Window& w) const {
    std::vector<IndexedEdge> out;
    for (const auto& e : w.edges(graph_))
      if (crosses(e)) out.push_back({e, local(e)});
    return EdgeSet(std::move(out));
  }

 private:
  int band_top() const { return std::max(3, graph_.swap_row() + 1); }
  bool in_upper(const Position& p) const { return p.z == 1 && p.y > k_; }
  bool in_lower(const Position& p) const { return p.z == 0 && p.y > band_top() && p.x > k_; }

  SpaceGraph graph_;
  CutFamily family_;
  int k_;
};

inline EdgeSet cutset(const SpaceGraph& g, CutFamily family, int k, const Window& w) {
  return CutRegion(g, family, k).edges(w);
}

}  // namespace tileasm
