#pragma once

#include <map>
#include <optional>
#include <string>

#include "io.hpp"

namespace tileasm::fixtures {

// Ribbon growing east along y = 0 with a free choice every fourth column between a cap and
// a continuation; terminal productions are 1 x (4k + 1).
inline const char* const kPump = R"(# S-PUMP
space square2d
temperature 1
tile SEED E=a:1
tile P1 W=a:1 E=b:1
tile P2 W=b:1 E=c:1
tile P3 W=c:1 E=d:1
tile P4 W=d:1 E=e:1
tile CAP W=d:1
tile Q1 W=e:1 E=f:1
tile Q2 W=f:1 E=c:1
seed SEED 0 0
)";

// Two arms leave the seed, each either turning toward (4,4) or stopping short. Turned arms
// count their tiles, so the one arriving second meets an opposing glue and stops.
inline std::string race_text() {
  std::string s = "# T-RACE\nspace square2d\ntemperature 1\n";
  s += "tile SEED N=u1:1 E=r1:1\n";
  for (int i = 1; i <= 3; ++i)
    s += "tile U" + std::to_string(i) + " S=u" + std::to_string(i) + ":1 N=u" + std::to_string(i + 1) + ":1\n";
  s += "tile UT S=u4:1 E=h1:1\n";
  s += "tile US S=u4:1 N=us1:1\n";
  s += "tile US1 S=us1:1 N=us2:1\ntile US2 S=us2:1 N=us3:1\ntile US3 S=us3:1\n";
  for (int j = 1; j <= 12; ++j) {
    s += "tile H" + std::to_string(j) + " W=h" + std::to_string(j) + ":1";
    if (j < 12) s += " E=h" + std::to_string(j + 1) + ":1";
    s += "\n";
  }
  for (int i = 1; i <= 3; ++i)
    s += "tile R" + std::to_string(i) + " W=r" + std::to_string(i) + ":1 E=r" + std::to_string(i + 1) + ":1\n";
  s += "tile RT W=r4:1 N=v1:1\n";
  s += "tile RS W=r4:1 E=rs1:1\n";
  s += "tile RS1 W=rs1:1 E=rs2:1\ntile RS2 W=rs2:1 E=rs3:1\ntile RS3 W=rs3:1\n";
  for (int j = 1; j <= 12; ++j) {
    s += "tile V" + std::to_string(j) + " S=v" + std::to_string(j) + ":1";
    if (j < 12) s += " N=v" + std::to_string(j + 1) + ":1";
    s += "\n";
  }
  s += "seed SEED 0 0\n";
  return s;
}

// One tile binding on every side: all connected shapes containing the seed.
inline const char* const kComb = R"(# COMB
space square2d
temperature 1
tile G N=g:1 E=g:1 S=g:1 W=g:1
seed G 0 0
)";

inline std::map<std::string, std::string> all() {
  return {{"S-PUMP", kPump}, {"T-RACE", race_text()}, {"COMB", kComb}};
}

inline std::optional<std::string> text(const std::string& name) {
  auto m = all();
  auto it = m.find(name);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

inline Tas load(const std::string& name) {
  auto t = text(name);
  if (!t) throw InputError("unknown fixture '" + name + "'");
  return parse_tas(*t);
}

inline Tas pump() { return load("S-PUMP"); }
inline Tas race() { return load("T-RACE"); }
inline Tas comb() { return load("COMB"); }

}  // namespace tileasm::fixtures
