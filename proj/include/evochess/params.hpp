#pragma once

// The 18 tunable selective-search parameters. Field order, widths and
// ranges follow the chromosome layout used by the genetic optimizer.

#include <array>
#include <string>
#include <string_view>

namespace evochess {

struct SearchParams {
  bool null_move_use = false;
  int null_move_reduction = 0;         // plies, 0..7
  bool null_move_adaptive = false;
  int null_move_adaptivity_depth = 0;  // plies, 0..7
  int futility_depth = 0;              // plies, 0..3
  std::array<int, 3> futility_threshold{};  // centipawns, 0..1023, by remaining depth 1..3
  bool multicut_use = false;
  int multicut_reduction = 0;  // plies, 0..7
  int multicut_depth = 0;      // plies, 0..7
  int multicut_move_num = 0;   // M, 0..31
  int multicut_cut_num = 0;    // C, 0..7
  // Extensions in quarter plies, 0..4 each.
  int ext_check = 0;
  int ext_one_reply = 0;
  int ext_recapture = 0;
  int ext_passed_pawn = 0;
  int ext_mate_threat = 0;

  bool operator==(const SearchParams&) const = default;

  // Every selective mechanism off: plain PVS with quiescence.
  static SearchParams disabled() { return {}; }

  // Hand-set values in the range commonly used by tournament engines.
  static SearchParams defaults() {
    SearchParams p;
    p.null_move_use = true;
    p.null_move_reduction = 3;
    p.null_move_adaptive = true;
    p.null_move_adaptivity_depth = 6;
    p.futility_depth = 2;
    p.futility_threshold = {320, 500, 900};
    p.multicut_use = true;
    p.multicut_reduction = 2;
    p.multicut_depth = 4;
    p.multicut_move_num = 10;
    p.multicut_cut_num = 3;
    p.ext_check = 4;
    p.ext_one_reply = 4;
    p.ext_recapture = 2;
    p.ext_passed_pawn = 2;
    p.ext_mate_threat = 4;
    return p;
  }

  bool valid() const;
};

struct ParamField {
  std::string_view name;
  int bits;
  int max;  // inclusive; minimum is always 0
};

inline constexpr int ParamCount = 18;

// Table order; widths sum to 70.
inline constexpr std::array<ParamField, ParamCount> ParamLayout = {{
    {"null_move_use", 1, 1},
    {"null_move_reduction", 3, 7},
    {"null_move_adaptive", 1, 1},
    {"null_move_adaptivity_depth", 3, 7},
    {"futility_depth", 2, 3},
    {"futility_threshold_1", 10, 1023},
    {"futility_threshold_2", 10, 1023},
    {"futility_threshold_3", 10, 1023},
    {"multicut_use", 1, 1},
    {"multicut_reduction", 3, 7},
    {"multicut_depth", 3, 7},
    {"multicut_move_num", 5, 31},
    {"multicut_cut_num", 3, 7},
    {"ext_check", 3, 4},
    {"ext_one_reply", 3, 4},
    {"ext_recapture", 3, 4},
    {"ext_passed_pawn", 3, 4},
    {"ext_mate_threat", 3, 4},
}};

inline int get_field(const SearchParams& p, int index) {
  switch (index) {
    case 0: return p.null_move_use;
    case 1: return p.null_move_reduction;
    case 2: return p.null_move_adaptive;
    case 3: return p.null_move_adaptivity_depth;
    case 4: return p.futility_depth;
    case 5: return p.futility_threshold[0];
    case 6: return p.futility_threshold[1];
    case 7: return p.futility_threshold[2];
    case 8: return p.multicut_use;
    case 9: return p.multicut_reduction;
    case 10: return p.multicut_depth;
    case 11: return p.multicut_move_num;
    case 12: return p.multicut_cut_num;
    case 13: return p.ext_check;
    case 14: return p.ext_one_reply;
    case 15: return p.ext_recapture;
    case 16: return p.ext_passed_pawn;
    case 17: return p.ext_mate_threat;
  }
  return 0;
}

inline void set_field(SearchParams& p, int index, int v) {
  switch (index) {
    case 0: p.null_move_use = v != 0; break;
    case 1: p.null_move_reduction = v; break;
    case 2: p.null_move_adaptive = v != 0; break;
    case 3: p.null_move_adaptivity_depth = v; break;
    case 4: p.futility_depth = v; break;
    case 5: p.futility_threshold[0] = v; break;
    case 6: p.futility_threshold[1] = v; break;
    case 7: p.futility_threshold[2] = v; break;
    case 8: p.multicut_use = v != 0; break;
    case 9: p.multicut_reduction = v; break;
    case 10: p.multicut_depth = v; break;
    case 11: p.multicut_move_num = v; break;
    case 12: p.multicut_cut_num = v; break;
    case 13: p.ext_check = v; break;
    case 14: p.ext_one_reply = v; break;
    case 15: p.ext_recapture = v; break;
    case 16: p.ext_passed_pawn = v; break;
    case 17: p.ext_mate_threat = v; break;
  }
}

inline bool SearchParams::valid() const {
  for (int i = 0; i < ParamCount; ++i) {
    const int v = get_field(*this, i);
    if (v < 0 || v > ParamLayout[i].max) return false;
  }
  return true;
}

// "name = value" lines in layout order.
inline std::string describe(const SearchParams& p) {
  std::string out;
  for (int i = 0; i < ParamCount; ++i) {
    out += ParamLayout[i].name;
    out += " = ";
    out += std::to_string(get_field(p, i));
    out += '\n';
  }
  return out;
}

}  // namespace evochess
