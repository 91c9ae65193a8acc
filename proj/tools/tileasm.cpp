// Command-line front end for the tile assembly library.

#include <CLI11.hpp>

#include <iostream>
#include <set>
#include <sstream>

#include "tileasm/dynamics.hpp"
#include "tileasm/fixtures.hpp"
#include "tileasm/io.hpp"
#include "tileasm/movies.hpp"
#include "tileasm/render.hpp"
#include "tileasm/simcheck.hpp"

using namespace tileasm;

namespace {

enum Exit { kOk = 0, kCounterexample = 1, kUsage = 2, kIncomplete = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SystemArgs {
  std::string system;
  std::string space;
  std::string seed_file;
};

void add_system(CLI::App* cmd, SystemArgs& a, const char* what = "system") {
  cmd->add_option(what, a.system, "Built-in fixture (S-PUMP, T-RACE, COMB) or TAS file")->required();
  cmd->add_option("--space", a.space, "square2d | cubic3d | cutspace(s=N); a planar system is lifted into a cutspace");
  cmd->add_option("--seed-file", a.seed_file, "Replace the seed by the cells of a 'NAME x y [z]' file");
}

Tas load_system(const SystemArgs& a) {
  auto builtin = fixtures::text(a.system);
  Tas tas = parse_tas(builtin ? *builtin : read_file(a.system));
  if (!a.seed_file.empty()) {
    Assembly seed;
    for (const auto& at : parse_sequence(tas, read_file(a.seed_file))) seed.place(at.position, at.tile);
    tas.seed = seed;
    validate_tas(tas);
  }
  if (!a.space.empty()) {
    SpaceGraph g = SpaceGraph::parse(a.space);
    if (g == tas.graph) return tas;
    if (tas.graph.kind() == SpaceKind::Square2D && g.kind() == SpaceKind::Cutspace) return lift_system(tas, g.scale());
    throw UsageError("cannot run a " + tas.graph.name() + " system in " + g.name());
  }
  return tas;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string glue_text(const Glue& g) { return g.strength > 0 ? g.label + ":" + std::to_string(g.strength) : "null"; }

std::string one_line(const Tas& tas, const Assembly& a) {
  std::string s = format_assembly(tas, a);
  for (auto& c : s)
    if (c == '\n') c = ';';
  if (!s.empty()) s.pop_back();
  return s;
}

std::string one_line(const Tas& tas, const AssemblySequence& seq) {
  std::string s = format_sequence(tas, seq);
  for (auto& c : s)
    if (c == '\n') c = ';';
  if (!s.empty()) s.pop_back();
  return s;
}

std::pair<int, int> extent(const Assembly& a) {
  int x0 = a.begin()->position().x, x1 = x0, y0 = a.begin()->position().y, y1 = y0;
  for (const auto& c : a) {
    x0 = std::min(x0, c.position().x), x1 = std::max(x1, c.position().x);
    y0 = std::min(y0, c.position().y), y1 = std::max(y1, c.position().y);
  }
  return {x1 - x0 + 1, y1 - y0 + 1};
}

void header(const Tas& tas, const SystemArgs& a) {
  std::cout << "system: " << a.system << "\n";
  std::cout << "space: " << tas.graph.name() << "\n";
  std::cout << "temperature: " << tas.temperature << "\n";
}

std::pair<CutFamily, int> parse_cut(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("expected --cut FAMILY:K, e.g. columns:3");
  auto family = parse_cut_family(s.substr(0, colon));
  if (!family) throw UsageError("unknown cut family '" + s.substr(0, colon) + "'");
  try {
    std::size_t used = 0;
    int k = std::stoi(s.substr(colon + 1), &used);
    if (used != s.size() - colon - 1) throw std::invalid_argument("trailing");
    return {*family, k};
  } catch (const std::logic_error&) {
    throw UsageError("bad cut index in '" + s + "'");
  }
}

std::optional<Window> parse_window(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::vector<int> v;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, ',');) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw UsageError("bad --window '" + s + "', expected x0,y0,x1,y1");
    }
  }
  if (v.size() != 4) throw UsageError("bad --window '" + s + "', expected x0,y0,x1,y1");
  return Window::planar(v[0], v[1], v[2], v[3]);
}

// --- enumerate -----------------------------------------------------------------------------

struct EnumerateArgs {
  SystemArgs sys;
  std::size_t max_tiles = 12;
  std::size_t max_productions = 0;
  bool terminal_only = false;
  bool list = false;
  bool cells = false;
};

int run_enumerate(const EnumerateArgs& a) {
  Tas tas = load_system(a.sys);
  auto ps = enumerate(tas, a.max_tiles, {a.max_productions});
  header(tas, a.sys);
  std::cout << "max-tiles: " << a.max_tiles << "\n";
  std::cout << "productions: " << ps.productions.size() << "\n";
  std::cout << "terminal: " << ps.terminal_count() << "\n";
  std::cout << "complete: " << yes(ps.complete) << "\n";
  std::cout << "budget-exhausted: " << yes(ps.budget_exhausted) << "\n";
  std::set<int> widths, heights;
  std::size_t index = 0;
  for (const auto& p : ps.productions) {
    ++index;
    if (a.terminal_only && !p.terminal) continue;
    auto [w, h] = extent(p.assembly);
    widths.insert(w), heights.insert(h);
    if (a.list || a.terminal_only) {
      std::cout << "production: " << index << " tiles=" << p.assembly.size() << " terminal=" << yes(p.terminal)
                << " width=" << w << " height=" << h << "\n";
      if (a.cells) std::cout << "cells: " << one_line(tas, p.assembly) << "\n";
    }
  }
  std::cout << "widths:";
  for (int w : widths) std::cout << " " << w;
  std::cout << "\nheights:";
  for (int h : heights) std::cout << " " << h;
  std::cout << "\n";
  return ps.budget_exhausted ? kIncomplete : kOk;
}

// --- analyze -------------------------------------------------------------------------------

struct AnalyzeArgs {
  SystemArgs sys;
  std::size_t max_tiles = 10;
  std::size_t max_productions = 0;
  bool expect_mismatch_free = false;
};

int run_analyze(const AnalyzeArgs& a) {
  Tas tas = load_system(a.sys);
  std::size_t productions = 0, terminal = 0, mismatched = 0, total_mismatches = 0, unstable = 0, excess = 0;
  int strongest = 0;
  std::optional<std::string> first_mismatch, first_excess;
  auto stats = explore(
      tas, a.max_tiles,
      [&](std::size_t, const Assembly& x, const std::vector<Attachment>&, bool is_terminal) {
        ++productions;
        if (is_terminal) ++terminal;
        auto mm = mismatches(tas.graph, tas.tiles, x);
        if (!mm.empty()) {
          ++mismatched;
          total_mismatches += mm.size();
          if (!first_mismatch) first_mismatch = one_line(tas, x);
        }
        if (!is_tau_stable(tas.graph, tas.tiles, x, tas.temperature)) ++unstable;
        return true;
      },
      [&](std::size_t, const Assembly& parent, std::size_t, const Attachment& at, bool) {
        int s = attachment_strength(tas, parent, at.position, at.tile);
        strongest = std::max(strongest, s);
        if (s <= tas.temperature) return;
        ++excess;
        if (!first_excess)
          first_excess = tas.tiles[at.tile].name + " " + to_string(at.position, tas.graph.has_depth()) +
                         " strength=" + std::to_string(s) + " tiles=" + std::to_string(parent.size() + 1);
      },
      {a.max_productions});
  header(tas, a.sys);
  std::cout << "max-tiles: " << a.max_tiles << "\n";
  std::cout << "productions: " << productions << "\n";
  std::cout << "terminal: " << terminal << "\n";
  std::cout << "complete: " << yes(stats.complete) << "\n";
  std::cout << "budget-exhausted: " << yes(stats.budget_exhausted) << "\n";
  std::cout << "mismatches: " << total_mismatches << "\n";
  std::cout << "mismatched-productions: " << mismatched << "\n";
  std::cout << "unstable: " << unstable << "\n";
  std::cout << "excess attachments: " << excess << "\n";
  std::cout << "strongest-attachment: " << strongest << "\n";
  if (first_excess) std::cout << "first-excess: " << *first_excess << "\n";
  if (first_mismatch) std::cout << "first-mismatch: " << *first_mismatch << "\n";
  if (a.expect_mismatch_free && mismatched > 0) return kCounterexample;
  return stats.budget_exhausted ? kIncomplete : kOk;
}

// --- movie ---------------------------------------------------------------------------------

struct MovieArgs {
  SystemArgs sys;
  std::string cut = "columns:0";
  std::size_t bound = 12;
  bool witness = false;
  bool check = false;
};

int run_movie(const MovieArgs& a) {
  Tas tas = load_system(a.sys);
  auto [family, k] = parse_cut(a.cut);
  Cut cut = Cut::of_region(CutRegion(tas.graph, family, k));
  auto d = diplomatic_set(tas, cut, a.bound);
  const bool z = tas.graph.has_depth();
  header(tas, a.sys);
  std::cout << "cut: " << a.cut << "\n";
  std::cout << "bound: " << a.bound << "\n";
  std::cout << "complete: " << yes(d.complete) << "\n";
  std::cout << "movies: " << d.movies.size() << "\n";
  std::size_t index = 0;
  for (const auto& [m, e] : d.movies) {
    std::cout << "movie: " << ++index << " additions=" << m.size() << " blocks=" << blocks_of(m).size()
              << " near-steps=" << e.near_steps << "\n";
    std::istringstream lines(format_movie(m, z));
    for (std::string line; std::getline(lines, line);) std::cout << "addition: " << line << "\n";
    if (a.witness) std::cout << "witness: " << (e.witness.empty() ? "-" : one_line(tas, e.witness)) << "\n";
  }
  if (!a.check) return kOk;
  auto policy = policy_set(tas, cut, a.bound);
  auto rebuilt = f_reconstruct(tas, d, a.bound);
  bool equal = policy.sequences == rebuilt.sequences;
  std::cout << "policy-sequences: " << policy.sequences.size() << "\n";
  std::cout << "reconstructed-sequences: " << rebuilt.sequences.size() << "\n";
  std::cout << "reconstruct-equal: " << yes(equal) << "\n";
  return equal ? kOk : kCounterexample;
}

}  // namespace

namespace {

// --- pump ----------------------------------------------------------------------------------

struct PumpArgs {
  SystemArgs sys;
  bool auto_repeat = false;
  std::string sequence_file;
  std::string family = "columns";
  std::optional<int> from, to;
  int lo = 0, hi = 10;
  std::size_t bound = 14;
  std::size_t max_tiles = 12;
  int iterations = 1;
};

// The last terminal production of the largest size found, in assembly order.
std::optional<AssemblySequence> longest_terminal(const Tas& tas, std::size_t max_tiles, std::size_t* tiles) {
  auto ps = enumerate(tas, max_tiles);
  const Production* best = nullptr;
  for (const auto& p : ps.productions)
    if (p.terminal && (!best || p.assembly.size() >= best->assembly.size())) best = &p;
  if (!best) return std::nullopt;
  *tiles = best->assembly.size();
  return assembly_order(tas, best->assembly);
}

int run_pump(const PumpArgs& a) {
  Tas tas = load_system(a.sys);
  auto family = parse_cut_family(a.family);
  if (!family) throw UsageError("unknown cut family '" + a.family + "'");
  if (!a.auto_repeat && (!a.from || !a.to)) throw UsageError("pump needs --auto or both --from and --to");
  if (a.iterations < 1) throw UsageError("--iterations must be at least 1");
  header(tas, a.sys);
  int k = 0, k2 = 0;
  if (a.auto_repeat) {
    auto r = find_repeat(tas, *family, a.lo, a.hi, a.bound);
    if (!r) {
      std::cout << "repeat: none\n";
      return kCounterexample;
    }
    k = r->first, k2 = r->second;
  } else {
    k = *a.from, k2 = *a.to;
  }
  std::cout << "family: " << a.family << "\n";
  std::cout << "repeat: " << k << " " << k2 << "\n";
  AssemblySequence seq;
  if (!a.sequence_file.empty()) {
    seq = parse_sequence(tas, read_file(a.sequence_file));
  } else {
    std::size_t tiles = 0;
    auto found = longest_terminal(tas, a.max_tiles, &tiles);
    if (!found) {
      std::cout << "input: none\n";
      return kCounterexample;
    }
    seq = *found;
    std::cout << "longest-enumerated: " << tiles << "\n";
  }
  std::cout << "input-steps: " << seq.size() << "\n";
  for (int i = 1; i <= a.iterations; ++i) {
    try {
      seq = pump(tas, seq, *family, k, k2, a.bound);
    } catch (const PumpError& e) {
      std::cout << "iteration: " << i << " error=" << e.what() << "\n";
      return kCounterexample;
    }
    Assembly x = replay(tas, seq);
    std::cout << "iteration: " << i << " steps=" << seq.size() << " terminal=" << yes(is_terminal(tas, x))
              << " mismatches=" << mismatches(tas.graph, tas.tiles, x).size() << "\n";
  }
  Assembly out = replay(tas, seq);
  bool terminal = is_terminal(tas, out);
  std::cout << "output-steps: " << seq.size() << "\n";
  std::cout << "replay: ok\n";
  std::cout << "terminal: " << yes(terminal) << "\n";
  std::istringstream lines(format_sequence(tas, seq));
  for (std::string line; std::getline(lines, line);) std::cout << "step: " << line << "\n";
  return terminal ? kOk : kCounterexample;
}

// --- simcheck ------------------------------------------------------------------------------

struct SimcheckArgs {
  SystemArgs sys;
  std::string simulated;
  std::string repr_file;
  std::size_t bound = 12;
  std::optional<std::size_t> simulated_bound;
  std::size_t max_productions = 0;
  bool search_mismatch = false;
};

int run_simcheck(const SimcheckArgs& a) {
  Tas sim = load_system(a.sys);
  Tas target = a.simulated.empty() ? sim : load_system({a.simulated, "", ""});
  SimPair pair{target, sim, identity_representation(sim, target)};
  if (!a.repr_file.empty()) pair.R = parse_representation(pair, read_file(a.repr_file));
  std::cout << "simulator: " << a.sys.system << "\n";
  std::cout << "simulated: " << (a.simulated.empty() ? a.sys.system : a.simulated) << "\n";
  std::cout << "block-size: " << pair.R.m() << "\n";
  std::cout << "bound: " << a.bound << "\n";
  if (a.search_mismatch) {
    auto s = search_mismatch_in_simulator(pair, a.bound);
    std::cout << "complete: " << yes(s.complete) << "\n";
    std::cout << "mismatch-found: " << yes(s.witness.has_value()) << "\n";
    if (!s.witness) return kOk;
    std::cout << "mismatches: " << s.mismatches.size() << "\n";
    for (const auto& m : s.mismatches)
      std::cout << "mismatch: " << to_string(m.edge.a, sim.graph.has_depth()) << "-"
                << to_string(m.edge.b, sim.graph.has_depth()) << " " << glue_text(m.at_a) << " " << glue_text(m.at_b)
                << "\n";
    std::cout << "witness: " << one_line(sim, *s.witness) << "\n";
    return kCounterexample;
  }
  auto r = check_simulation(pair, a.bound, {a.simulated_bound, true, {a.max_productions}});
  std::cout << "simulated-bound: " << r.simulated_bound << "\n";
  std::cout << "complete: " << yes(r.complete) << "\n";
  for (const auto* v : {&r.follows, &r.models, &r.productions, &r.terminals, &r.clean}) {
    std::cout << v->name << ": " << (v->pass ? "pass" : "fail") << "\n";
    if (!v->pass) std::cout << v->name << "-witness: " << v->witness << "\n";
  }
  std::cout << "result: " << (r.all_pass() ? "pass" : "fail") << "\n";
  return r.all_pass() ? kOk : kCounterexample;
}

// --- render, replay, cross -----------------------------------------------------------------

struct RenderArgs {
  SystemArgs sys;
  std::string sequence_file;
  std::string pick = "seed";
  std::size_t max_tiles = 40;
  std::string format = "ascii";
  std::string window;
  std::string color_by = "tile";
};

RenderSpec render_spec(const std::string& format, const std::string& window, const std::string& color_by) {
  auto f = parse_render_format(format);
  if (!f) throw UsageError("unknown --format '" + format + "'");
  auto c = parse_color_by(color_by);
  if (!c) throw UsageError("unknown --color-by '" + color_by + "'");
  return {*f, parse_window(window), *c};
}

int run_render(const RenderArgs& a) {
  Tas tas = load_system(a.sys);
  RenderSpec spec = render_spec(a.format, a.window, a.color_by);
  Assembly x = tas.seed;
  if (!a.sequence_file.empty()) {
    x = replay(tas, parse_sequence(tas, read_file(a.sequence_file)));
  } else if (a.pick != "seed") {
    const Production* chosen = nullptr;
    auto ps = enumerate(tas, a.max_tiles);
    for (const auto& p : ps.productions) {
      if (a.pick == "first-mismatch" && !mismatches(tas.graph, tas.tiles, p.assembly).empty()) {
        chosen = &p;
        break;
      }
      if (a.pick == "largest-terminal" && p.terminal && (!chosen || p.assembly.size() >= chosen->assembly.size()))
        chosen = &p;
    }
    if (a.pick != "first-mismatch" && a.pick != "largest-terminal") throw UsageError("unknown --pick '" + a.pick + "'");
    if (!chosen) {
      std::cerr << "no production matches --pick " << a.pick << " within " << a.max_tiles << " tiles\n";
      return kCounterexample;
    }
    x = chosen->assembly;
  }
  std::cout << render(tas, x, spec);
  return kOk;
}

struct ReplayArgs {
  SystemArgs sys;
  std::string sequence_file;
};

int run_replay(const ReplayArgs& a) {
  Tas tas = load_system(a.sys);
  auto seq = parse_sequence(tas, read_file(a.sequence_file));
  Assembly x;
  try {
    x = replay(tas, seq);
  } catch (const SequenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << "replay: failed\nfailing-index: " << e.index << "\n";
    return kCounterexample;
  }
  std::cout << "replay: ok\n";
  std::cout << "steps: " << seq.size() << "\n";
  std::cout << "tiles: " << x.size() << "\n";
  std::cout << "terminal: " << yes(is_terminal(tas, x)) << "\n";
  std::cout << "mismatches: " << mismatches(tas.graph, tas.tiles, x).size() << "\n";
  std::cout << "excess attachments: " << attachment_excesses(tas, seq).size() << "\n";
  return kOk;
}

struct CrossArgs {
  SystemArgs sys;
  int height = 8, width = 8;
  std::size_t max_states = 200000;
  bool print_sequence = false;
};

int run_cross(CrossArgs a) {
  if (a.sys.space.empty()) a.sys.space = "cutspace(s=1)";
  Tas tas = load_system(a.sys);
  if (tas.graph.kind() != SpaceKind::Cutspace) throw UsageError("cross needs a cutspace system");
  CrossingOptions opts;
  opts.max_states = a.max_states;
  auto r = build_crossing(tas, a.height, a.width, opts);
  header(tas, a.sys);
  std::cout << "height: " << a.height << "\nwidth: " << a.width << "\n";
  std::cout << "success: " << yes(r.success) << "\n";
  std::cout << "states: " << r.states << "\n";
  std::istringstream lines(r.report);
  for (std::string line; std::getline(lines, line);) std::cout << "report: " << line << "\n";
  if (r.success) {
    Assembly x = replay(tas, r.sequence);
    auto [h, v] = arm_reach(tas.graph, x);
    std::cout << "steps: " << r.sequence.size() << "\n";
    std::cout << "consistent: " << yes(is_consistent(tas, r.sequence)) << "\n";
    std::cout << "horizontal-reach: " << h << "\nvertical-reach: " << v << "\n";
    std::cout << "mismatches: " << mismatches(tas.graph, tas.tiles, x).size() << "\n";
    Tas planar = project_system(tas);
    try {
      Assembly p = replay(planar, project_first(tas, r.sequence));
      std::cout << "projection-replay: ok\nprojection-tiles: " << p.size() << "\n";
    } catch (const SequenceError& e) {
      std::cout << "projection-replay: failed at " << e.index << "\n";
    }
    if (a.print_sequence) {
      std::istringstream steps(format_sequence(tas, r.sequence));
      for (std::string line; std::getline(steps, line);) std::cout << "step: " << line << "\n";
    }
  }
  return r.success ? kOk : kCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tile assembly analysis: enumeration, glue movies, pumping, simulation checks, rendering"};
  app.require_subcommand(1);

  EnumerateArgs en;
  auto* c_en = app.add_subcommand("enumerate", "List productions up to a size bound");
  add_system(c_en, en.sys);
  c_en->add_option("--max-tiles", en.max_tiles, "Size bound in tiles")->check(CLI::PositiveNumber);
  c_en->add_option("--max-productions", en.max_productions, "Stop after this many productions (0: no budget)");
  c_en->add_flag("--terminal-only", en.terminal_only, "List terminal productions only");
  c_en->add_flag("--list", en.list, "List every production");
  c_en->add_flag("--cells", en.cells, "Print the cells of each listed production");

  AnalyzeArgs an;
  auto* c_an = app.add_subcommand("analyze", "Count mismatches, unstable productions and excess attachments");
  add_system(c_an, an.sys);
  c_an->add_option("--max-tiles", an.max_tiles, "Size bound in tiles")->check(CLI::PositiveNumber);
  c_an->add_option("--max-productions", an.max_productions, "Stop after this many productions (0: no budget)");
  c_an->add_flag("--expect-mismatch-free", an.expect_mismatch_free, "Exit 1 when a mismatch is found");

  MovieArgs mv;
  auto* c_mv = app.add_subcommand("movie", "Diplomatic set of glue movies on a cut");
  add_system(c_mv, mv.sys);
  c_mv->add_option("--cut", mv.cut, "FAMILY:K with FAMILY one of columns, C, D, E");
  c_mv->add_option("--bound", mv.bound, "Sequence length bound");
  c_mv->add_flag("--witness", mv.witness, "Print a realising sequence per movie");
  c_mv->add_flag("--check", mv.check, "Rebuild the policy set from the movies and compare");

  PumpArgs pu;
  auto* c_pu = app.add_subcommand("pump", "Pump a terminal sequence between two cuts with equal movies");
  add_system(c_pu, pu.sys);
  c_pu->add_flag("--auto", pu.auto_repeat, "Find the repeat with the smallest second index");
  c_pu->add_option("--sequence-file", pu.sequence_file, "Input sequence (default: longest enumerated terminal)");
  c_pu->add_option("--family", pu.family, "Cut family: columns, C, D or E");
  c_pu->add_option("--from", pu.from, "First cut index");
  c_pu->add_option("--to", pu.to, "Second cut index");
  c_pu->add_option("--lo", pu.lo, "Smallest index searched by --auto");
  c_pu->add_option("--hi", pu.hi, "Largest index searched by --auto");
  c_pu->add_option("--bound", pu.bound, "Sequence length bound for movies");
  c_pu->add_option("--max-tiles", pu.max_tiles, "Size bound for choosing the input sequence");
  c_pu->add_option("--iterations", pu.iterations, "Number of times to pump");

  SimcheckArgs sc;
  auto* c_sc = app.add_subcommand("simcheck", "Bounded check that one system simulates another");
  add_system(c_sc, sc.sys, "simulator");
  c_sc->add_option("--simulated", sc.simulated, "Simulated system (default: the simulator itself)");
  c_sc->add_option("--repr-file", sc.repr_file, "Representation function (default: identity by tile name)");
  c_sc->add_option("--bound", sc.bound, "Simulator size bound in tiles");
  c_sc->add_option("--simulated-bound", sc.simulated_bound, "Simulated size bound (default: bound / m^d)");
  c_sc->add_option("--max-productions", sc.max_productions, "Stop after this many productions (0: no budget)");
  c_sc->add_flag("--search-mismatch", sc.search_mismatch, "Search the simulator for a production with a mismatch");

  RenderArgs rd;
  auto* c_rd = app.add_subcommand("render", "Draw an assembly as ASCII or SVG");
  add_system(c_rd, rd.sys);
  c_rd->add_option("--sequence-file", rd.sequence_file, "Draw the replay of this sequence");
  c_rd->add_option("--pick", rd.pick, "seed | first-mismatch | largest-terminal");
  c_rd->add_option("--max-tiles", rd.max_tiles, "Size bound for --pick");
  c_rd->add_option("--format", rd.format, "ascii | svg");
  c_rd->add_option("--window", rd.window, "x0,y0,x1,y1");
  c_rd->add_option("--color-by", rd.color_by, "tile | glue | mismatch");

  ReplayArgs rp;
  auto* c_rp = app.add_subcommand("replay", "Replay a sequence file");
  add_system(c_rp, rp.sys);
  c_rp->add_option("sequence", rp.sequence_file, "Sequence file")->required();

  CrossArgs cr;
  auto* c_cr = app.add_subcommand("cross", "Build a sequence whose arms pass each other in a cutspace");
  add_system(c_cr, cr.sys);
  c_cr->add_option("--height", cr.height, "Vertical arm target");
  c_cr->add_option("--width", cr.width, "Horizontal arm target");
  c_cr->add_option("--max-states", cr.max_states, "Search budget");
  c_cr->add_flag("--print-sequence", cr.print_sequence, "Print the sequence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    if (*c_en) return run_enumerate(en);
    if (*c_an) return run_analyze(an);
    if (*c_mv) return run_movie(mv);
    if (*c_pu) return run_pump(pu);
    if (*c_sc) return run_simcheck(sc);
    if (*c_rd) return run_render(rd);
    if (*c_rp) return run_replay(rp);
    if (*c_cr) return run_cross(cr);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidRepresentation& e) {
    std::cerr << "invalid representation: " << e.what() << "\n";
    return kCounterexample;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
