#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "error.hpp"
#include "model.hpp"

namespace tileasm {

namespace detail {

inline std::vector<std::string> words_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::string strip_comment(const std::string& line) {
  auto i = line.find('#');
  return i == std::string::npos ? line : line.substr(0, i);
}

inline int parse_int(const std::string& s, std::size_t line, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("line " + std::to_string(line) + ": bad " + what + " '" + s + "'");
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Text format, one directive per line, '#' starts a comment:
//   space square2d | cubic3d | cutspace(s=N)
//   temperature T
//   tile NAME [N|E|S|W|U|D=label[:strength]]...
//   seed NAME x y [z]
inline Tas parse_tas(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  std::optional<SpaceGraph> graph;
  std::optional<int> temperature;
  std::vector<TileType> types;
  std::vector<std::pair<std::string, Position>> seeds;
  auto fail = [&](const std::string& why) { throw InputError("line " + std::to_string(line) + ": " + why); };
  while (std::getline(in, raw)) {
    ++line;
    auto w = detail::words_of(detail::strip_comment(raw));
    if (w.empty()) continue;
    if (w[0] == "space") {
      if (w.size() != 2) fail("expected 'space NAME'");
      if (graph) fail("space given twice");
      try {
        graph = SpaceGraph::parse(w[1]);
      } catch (const InputError& e) {
        fail(e.what());
      }
    } else if (w[0] == "temperature") {
      if (w.size() != 2) fail("expected 'temperature T'");
      if (temperature) fail("temperature given twice");
      temperature = detail::parse_int(w[1], line, "temperature");
      if (*temperature < 1) fail("temperature must be at least 1");
    } else if (w[0] == "tile") {
      if (w.size() < 2) fail("expected 'tile NAME ...'");
      TileType t;
      t.name = w[1];
      std::set<Port> given;
      for (std::size_t i = 2; i < w.size(); ++i) {
        auto eq = w[i].find('=');
        if (eq == std::string::npos) fail("expected SIDE=label[:strength], got '" + w[i] + "'");
        auto port = parse_port(w[i].substr(0, eq));
        if (!port) fail("unknown side '" + w[i].substr(0, eq) + "'");
        if (!given.insert(*port).second) fail("side " + std::string(port_name(*port)) + " given twice");
        std::string rest = w[i].substr(eq + 1);
        auto colon = rest.find(':');
        Glue g{rest.substr(0, colon), 1};
        if (colon != std::string::npos) g.strength = detail::parse_int(rest.substr(colon + 1), line, "strength");
        if (g.label.empty()) fail("empty glue label");
        if (g.strength < 1) fail("declared glue strength must be positive");
        t.glue(*port) = g;
      }
      types.push_back(t);
    } else if (w[0] == "seed") {
      if (w.size() != 4 && w.size() != 5) fail("expected 'seed NAME x y [z]'");
      Position p{detail::parse_int(w[2], line, "coordinate"), detail::parse_int(w[3], line, "coordinate"),
                 w.size() == 5 ? detail::parse_int(w[4], line, "coordinate") : 0};
      seeds.emplace_back(w[1], p);
    } else {
      fail("unknown directive '" + w[0] + "'");
    }
  }
  if (types.empty()) throw InputError("no tile types");
  if (seeds.empty()) throw InputError("no seed");
  Tas tas;
  tas.graph = graph.value_or(SpaceGraph::square2d());
  tas.temperature = temperature.value_or(1);
  tas.tiles = TileSet(types);
  if (tas.graph.kind() != SpaceKind::Cubic3D)
    for (const auto& t : types)
      if (t.glue(Port::U).strength > 0 || t.glue(Port::D).strength > 0)
        throw InputError("tile '" + t.name + "' has an up or down glue in a planar space");
  for (const auto& [name, p] : seeds) {
    tas.graph.validate(p);
    tas.seed.place(p, tas.tiles.id(name));
  }
  validate_tas(tas);
  return tas;
}

inline std::string format_tas(const Tas& tas) {
  std::ostringstream out;
  out << "space " << tas.graph.name() << "\n";
  out << "temperature " << tas.temperature << "\n";
  for (const auto& t : tas.tiles.types()) {
    out << "tile " << t.name;
    for (Port p : tas.graph.ports()) {
      const Glue& g = t.glue(p);
      if (g.strength > 0) out << " " << port_name(p) << "=" << g.label << ":" << g.strength;
    }
    out << "\n";
  }
  for (const auto& c : tas.seed) {
    Position p = c.position();
    out << "seed " << tas.tiles[c.tile()].name << " " << p.x << " " << p.y;
    if (tas.graph.has_depth()) out << " " << p.z;
    out << "\n";
  }
  return out.str();
}

// One attachment per line: NAME x y [z]
inline AssemblySequence parse_sequence(const Tas& tas, const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  AssemblySequence seq;
  while (std::getline(in, raw)) {
    ++line;
    auto w = detail::words_of(detail::strip_comment(raw));
    if (w.empty()) continue;
    if (w.size() != 3 && w.size() != 4)
      throw InputError("line " + std::to_string(line) + ": expected 'NAME x y [z]'");
    auto id = tas.tiles.find(w[0]);
    if (!id) throw InputError("line " + std::to_string(line) + ": unknown tile type '" + w[0] + "'");
    Position p{detail::parse_int(w[1], line, "coordinate"), detail::parse_int(w[2], line, "coordinate"),
               w.size() == 4 ? detail::parse_int(w[3], line, "coordinate") : 0};
    if (!tas.graph.is_valid(p)) throw InputError("line " + std::to_string(line) + ": invalid position");
    seq.push_back({*id, p});
  }
  return seq;
}

inline std::string format_sequence(const Tas& tas, const AssemblySequence& seq) {
  std::ostringstream out;
  for (const auto& at : seq) {
    out << tas.tiles[at.tile].name << " " << at.position.x << " " << at.position.y;
    if (tas.graph.has_depth()) out << " " << at.position.z;
    out << "\n";
  }
  return out.str();
}

inline std::string format_assembly(const Tas& tas, const Assembly& a) {
  std::ostringstream out;
  for (const auto& c : a) {
    Position p = c.position();
    out << tas.tiles[c.tile()].name << " " << p.x << " " << p.y;
    if (tas.graph.has_depth()) out << " " << p.z;
    out << "\n";
  }
  return out.str();
}

}  // namespace tileasm
