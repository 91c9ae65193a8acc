#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "grid.hpp"
#include "model.hpp"

namespace tileasm {

enum class RenderFormat { Ascii, Svg };
enum class ColorBy { Tile, Glue, Mismatch };

inline std::optional<RenderFormat> parse_render_format(std::string_view s) {
  if (s == "ascii") return RenderFormat::Ascii;
  if (s == "svg") return RenderFormat::Svg;
  return std::nullopt;
}

inline std::optional<ColorBy> parse_color_by(std::string_view s) {
  if (s == "tile") return ColorBy::Tile;
  if (s == "glue") return ColorBy::Glue;
  if (s == "mismatch") return ColorBy::Mismatch;
  return std::nullopt;
}

struct RenderSpec {
  RenderFormat format = RenderFormat::Ascii;
  std::optional<Window> window;  // default: bounding box of the assembly
  ColorBy color_by = ColorBy::Tile;
};

namespace detail {

inline Window bounding_window(const SpaceGraph& g, const Assembly& a) {
  if (a.empty()) return Window::planar(0, 0, 0, 0);
  Window w{a.begin()->position().x, a.begin()->position().y, a.begin()->position().x,
           a.begin()->position().y,  a.begin()->position().z, a.begin()->position().z};
  for (const auto& c : a) {
    Position p = c.position();
    w.x0 = std::min(w.x0, p.x), w.x1 = std::max(w.x1, p.x);
    w.y0 = std::min(w.y0, p.y), w.y1 = std::max(w.y1, p.y);
    w.z0 = std::min(w.z0, p.z), w.z1 = std::max(w.z1, p.z);
  }
  if (g.kind() != SpaceKind::Cubic3D) w.z0 = w.z1 = 0;
  return w;
}

// Layers drawn top to bottom.
inline std::vector<int> panes(const SpaceGraph& g, const Window& w) {
  if (g.kind() == SpaceKind::Cutspace) return {1, 0};
  if (g.kind() == SpaceKind::Square2D) return {0};
  std::vector<int> out;
  for (int z = w.z1; z >= w.z0; --z) out.push_back(z);
  return out;
}

inline char glyph(std::size_t i) {
  static const char* const kGlyphs = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
  return i < 62 ? kGlyphs[i] : '?';
}

enum class Link { None, Bond, Mismatch, Touch };

struct Scene {
  const SpaceGraph& g;
  const TileSet& ts;
  const Assembly& a;
  std::set<Edge> mismatched;
  std::set<Position> crashed;

  Scene(const SpaceGraph& graph, const TileSet& tiles, const Assembly& assembly) : g(graph), ts(tiles), a(assembly) {
    for (const auto& m : mismatches(g, ts, a)) {
      mismatched.insert(m.edge);
      crashed.insert(m.edge.a), crashed.insert(m.edge.b);
    }
  }

  // Relation between p and its neighbour in direction d, when that neighbour is drawn in the same pane.
  Link link(const Position& p, Port d) const {
    Position q = g.neighbor(p, d);
    if (q.z != p.z) return Link::None;
    auto s = a.at(p), t = a.at(q);
    if (!s || !t) return Link::None;
    if (mismatched.count(Edge(p, q))) return Link::Mismatch;
    return interaction_strength(ts, *s, *t, d) > 0 ? Link::Bond : Link::Touch;
  }

  // Edges the swap rule sends to the other layer: drawn as the ray.
  bool on_ray(int x, int y_low) const {
    return g.kind() == SpaceKind::Cutspace && x >= 2 && y_low == g.swap_row();
  }
};

inline std::string svg_color(std::size_t i) {
  // Evenly spread hues, fixed saturation and lightness.
  double h = std::fmod(double(i) * 0.618033988749895, 1.0) * 360.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "hsl(%.0f,60%%,65%%)", h);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else if (c == '"') out += "&quot;";
    else out += c;
  }
  return out;
}

inline std::string render_ascii(const Scene& sc, const Window& w, ColorBy by) {
  std::ostringstream out;
  const auto layers = panes(sc.g, w);
  const int width = 2 * (w.x1 - w.x0) + 1;
  for (int z : layers) {
    if (layers.size() > 1 || sc.g.kind() == SpaceKind::Cutspace) out << "layer " << z << "\n";
    for (int y = w.y1; y >= w.y0; --y) {
      std::string cells(std::size_t(width), ' ');
      std::string below(std::size_t(width), ' ');
      for (int x = w.x0; x <= w.x1; ++x) {
        Position p{x, y, z};
        std::size_t col = std::size_t(2 * (x - w.x0));
        auto t = sc.a.at(p);
        if (t) {
          if (by == ColorBy::Tile) cells[col] = glyph(*t);
          else if (by == ColorBy::Glue) cells[col] = '#';
          else cells[col] = sc.crashed.count(p) ? '@' : 'o';
        } else {
          cells[col] = '.';
        }
        auto mark = [&](Link l, char bond) {
          if (l == Link::Mismatch) return '!';
          if (l == Link::Touch) return by == ColorBy::Glue ? ':' : ' ';
          if (l == Link::Bond) {
            if (by != ColorBy::Glue) return bond;
            Port d = bond == '-' ? Port::E : Port::S;
            int s = sc.ts.strength(*t, d);
            return s < 10 ? char('0' + s) : '+';
          }
          return ' ';
        };
        if (x < w.x1) cells[col + 1] = mark(sc.link(p, Port::E), '-');
        if (y > w.y0) {
          below[col] = mark(sc.link(p, Port::S), '|');
          if (sc.on_ray(x, y - 1)) below[col] = '~';
        }
      }
      while (!cells.empty() && cells.back() == ' ') cells.pop_back();
      out << cells << "\n";
      if (y > w.y0) {
        while (!below.empty() && below.back() == ' ') below.pop_back();
        out << below << "\n";
      }
    }
  }
  if (by == ColorBy::Tile) {
    std::set<TileId> used;
    for (const auto& c : sc.a)
      if (w.contains({c.position().x, c.position().y, w.z0}) || sc.g.kind() == SpaceKind::Cubic3D) used.insert(c.tile());
    for (TileId t : used) out << glyph(t) << " = " << sc.ts[t].name << "\n";
  }
  if (by == ColorBy::Mismatch) out << "mismatches: " << sc.mismatched.size() << "\n";
  return out.str();
}

inline std::string render_svg(const Scene& sc, const Window& w, ColorBy by) {
  const int cell = 24, gap = 30, margin = 10;
  const auto layers = panes(sc.g, w);
  const int cols = w.x1 - w.x0 + 1, rows = w.y1 - w.y0 + 1;
  const int pane_h = rows * cell + 20;
  const int total_w = cols * cell + 2 * margin, total_h = int(layers.size()) * (pane_h + gap) - gap + 2 * margin;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_w << "\" height=\"" << total_h
      << "\" viewBox=\"0 0 " << total_w << " " << total_h << "\" font-family=\"monospace\" font-size=\"8\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t pi = 0; pi < layers.size(); ++pi) {
    const int z = layers[pi];
    const int top = margin + int(pi) * (pane_h + gap);
    auto cx = [&](int x) { return margin + (x - w.x0) * cell; };
    auto cy = [&](int y) { return top + 20 + (w.y1 - y) * cell; };
    if (layers.size() > 1 || sc.g.kind() == SpaceKind::Cutspace)
      out << "<text x=\"" << margin << "\" y=\"" << top + 12 << "\" font-size=\"11\">layer " << z << "</text>\n";
    out << "<rect x=\"" << margin << "\" y=\"" << top + 20 << "\" width=\"" << cols * cell << "\" height=\""
        << rows * cell << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
    for (int y = w.y1; y >= w.y0; --y)
      for (int x = w.x0; x <= w.x1; ++x) {
        Position p{x, y, z};
        auto t = sc.a.at(p);
        if (!t) continue;
        std::string fill = "#ddd";
        if (by == ColorBy::Tile) fill = svg_color(*t);
        if (by == ColorBy::Mismatch) fill = sc.crashed.count(p) ? "#f4a6a6" : "#cfe3f5";
        out << "<rect x=\"" << cx(x) + 1 << "\" y=\"" << cy(y) + 1 << "\" width=\"" << cell - 2 << "\" height=\""
            << cell - 2 << "\" fill=\"" << fill << "\" stroke=\"#555\"><title>" << xml_escape(sc.ts[*t].name) << " "
            << to_string(p, sc.g.has_depth()) << "</title></rect>\n";
        if (by == ColorBy::Tile)
          out << "<text x=\"" << cx(x) + cell / 2 << "\" y=\"" << cy(y) + cell / 2 + 3
              << "\" text-anchor=\"middle\">" << xml_escape(sc.ts[*t].name) << "</text>\n";
        if (by == ColorBy::Glue) {
          const std::pair<Port, std::pair<int, int>> sides[] = {
              {Port::N, {cell / 2, 8}}, {Port::E, {cell - 3, cell / 2 + 3}},
              {Port::S, {cell / 2, cell - 3}}, {Port::W, {3, cell / 2 + 3}}};
          for (const auto& [d, off] : sides) {
            const Glue& gl = sc.ts[*t].glue(d);
            if (gl.strength <= 0) continue;
            const char* anchor = d == Port::E ? "end" : d == Port::W ? "start" : "middle";
            out << "<text x=\"" << cx(x) + off.first << "\" y=\"" << cy(y) + off.second << "\" text-anchor=\""
                << anchor << "\" font-size=\"6\">" << xml_escape(gl.label) << "</text>\n";
          }
        }
        for (Port d : {Port::E, Port::S}) {
          Link l = sc.link(p, d);
          if (l != Link::Mismatch && l != Link::Bond) continue;
          Position q = sc.g.neighbor(p, d);
          if (!w.contains({q.x, q.y, w.z0}) && sc.g.kind() != SpaceKind::Cubic3D) continue;
          int x1 = cx(x) + cell / 2, y1 = cy(y) + cell / 2, x2 = cx(q.x) + cell / 2, y2 = cy(q.y) + cell / 2;
          if (l == Link::Mismatch)
            out << "<line x1=\"" << (x1 + x2) / 2 - (y2 - y1) / 2 << "\" y1=\"" << (y1 + y2) / 2 - (x2 - x1) / 2
                << "\" x2=\"" << (x1 + x2) / 2 + (y2 - y1) / 2 << "\" y2=\"" << (y1 + y2) / 2 + (x2 - x1) / 2
                << "\" stroke=\"red\" stroke-width=\"4\" class=\"mismatch\"/>\n";
          else if (by != ColorBy::Tile)
            out << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
                << "\" stroke=\"#333\" stroke-width=\"1.5\"/>\n";
        }
      }
    if (sc.g.kind() == SpaceKind::Cutspace) {
      int y_line = cy(sc.g.swap_row());
      int x_start = cx(std::max(2, w.x0));
      if (sc.g.swap_row() >= w.y0 && sc.g.swap_row() < w.y1 && w.x1 >= 2)
        out << "<line x1=\"" << x_start << "\" y1=\"" << y_line << "\" x2=\"" << margin + cols * cell << "\" y2=\""
            << y_line << "\" stroke=\"#c00\" stroke-width=\"2\" stroke-dasharray=\"5,3\" class=\"swap-ray\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace detail

// Drawing only; the assembly is not modified.
inline std::string render(const SpaceGraph& g, const TileSet& ts, const Assembly& a, const RenderSpec& spec) {
  Window w = spec.window.value_or(detail::bounding_window(g, a));
  if (w.x0 > w.x1 || w.y0 > w.y1 || w.z0 > w.z1) throw InputError("empty render window");
  if (long(w.x1 - w.x0 + 1) * long(w.y1 - w.y0 + 1) > 1000000L) throw InputError("render window too large");
  detail::Scene sc(g, ts, a);
  return spec.format == RenderFormat::Svg ? detail::render_svg(sc, w, spec.color_by)
                                          : detail::render_ascii(sc, w, spec.color_by);
}

inline std::string render(const Tas& tas, const Assembly& a, const RenderSpec& spec) {
  return render(tas.graph, tas.tiles, a, spec);
}

}  // namespace tileasm
