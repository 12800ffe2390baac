#pragma once

#include <string>
#include <vector>

#include "evochess/evochess.hpp"

namespace evochess::test {

inline std::string data_path(const std::string& name) { return std::string(EVOCHESS_DATA_DIR) + "/" + name; }

// Position reached by `plies` uniformly random legal moves from the start,
// or earlier if the game ends. History is kept, so repetitions count.
inline Position random_position(Rng& rng, int plies) {
  Position pos = Position::start();
  for (int i = 0; i < plies; ++i) {
    const MoveList moves = generate_legal_moves(pos);
    if (moves.empty()) break;
    pos.apply_move(moves[std::size_t(rng.next_u64() % moves.size())]);
  }
  return pos;
}

// Random positions that still have a legal move.
inline std::vector<Position> random_positions(std::uint64_t seed, int count, int min_plies, int max_plies) {
  Rng rng(seed);
  std::vector<Position> out;
  while (int(out.size()) < count) {
    const int plies = min_plies + int(rng.next_u64() % std::uint64_t(max_plies - min_plies + 1));
    Position pos = random_position(rng, plies);
    if (has_legal_move(pos)) out.push_back(pos);
  }
  return out;
}

inline Move find_move(const Position& pos, const std::string& uci) { return parse_uci_move(pos, uci); }

}  // namespace evochess::test
