#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "evochess/core/types.hpp"
#include "evochess/eval.hpp"

namespace evochess {

enum class Bound : std::uint8_t { None = 0, Exact = 1, Lower = 2, Upper = 3 };

struct TTEntry {
  std::uint64_t key = 0;
  Move move;
  Score score = 0;
  int depth = 0;  // quarter plies
  Bound bound = Bound::None;
};

// Direct-mapped table with depth-preferred replacement. new_search() makes
// every stored entry invisible, so consecutive searches are independent.
class TranspositionTable {
 public:
  explicit TranspositionTable(std::size_t entries = std::size_t{1} << 20) {
    std::size_t size = 1;
    while (size < entries) size <<= 1;
    slots_.resize(size);
    mask_ = size - 1;
  }

  std::size_t size() const { return slots_.size(); }

  void new_search() {
    if (++generation_ == 0) {
      std::fill(slots_.begin(), slots_.end(), Slot{});
      generation_ = 1;
    }
  }

  // Mate scores are stored relative to the node and rebased on probe.
  bool probe(std::uint64_t key, int ply, TTEntry& out) const {
    const Slot& s = slots_[key & mask_];
    if (s.generation != generation_ || s.key != key) return false;
    out.key = key;
    out.move = Move::from_bits(s.move_and_bound & 0xFFFFFF);
    out.bound = Bound(s.move_and_bound >> 24);
    out.depth = s.depth;
    out.score = from_tt(s.score, ply);
    return true;
  }

  void store(std::uint64_t key, int ply, int depth, Score score, Bound bound, Move move) {
    Slot& s = slots_[key & mask_];
    if (s.generation == generation_ && s.key != key && depth < s.depth) return;
    if (s.generation == generation_ && s.key == key && depth < s.depth) return;
    s.key = key;
    s.move_and_bound = (move.bits() & 0xFFFFFF) | std::uint32_t(bound) << 24;
    s.score = std::int16_t(to_tt(score, ply));
    s.depth = std::uint8_t(depth < 0 ? 0 : depth > 255 ? 255 : depth);
    s.generation = generation_;
  }

 private:
  struct Slot {
    std::uint64_t key = 0;
    std::uint32_t move_and_bound = 0;
    std::int16_t score = 0;
    std::uint8_t depth = 0;
    std::uint8_t generation = 0;
  };
  static_assert(sizeof(Slot) == 16);

  static Score to_tt(Score s, int ply) {
    if (s > MateThreshold) return s + ply;
    if (s < -MateThreshold) return s - ply;
    return s;
  }
  static Score from_tt(Score s, int ply) {
    if (s > MateThreshold) return s - ply;
    if (s < -MateThreshold) return s + ply;
    return s;
  }

  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  std::uint8_t generation_ = 1;
};

}  // namespace evochess
