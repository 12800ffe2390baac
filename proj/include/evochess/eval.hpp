#pragma once

// Fixed static evaluation: material plus piece-square tables, scored from
// the side to move's point of view. The evaluator never changes while
// search parameters are tuned.

#include <algorithm>
#include <array>
#include <cstdlib>

#include "evochess/core/position.hpp"

namespace evochess {

using Score = int;

inline constexpr Score MateBound = 30000;
inline constexpr Score Infinite = MateBound + 1;
// Scores beyond this magnitude encode forced mates.
inline constexpr Score MateThreshold = MateBound - 1000;
// Static evaluations are clamped inside this bound so they never look like mates.
inline constexpr Score EvalLimit = 2999;

constexpr Score mated_in(int ply) { return -MateBound + ply; }
constexpr Score mate_in(int ply) { return MateBound - ply; }
constexpr bool is_mate_score(Score s) { return s > MateThreshold || s < -MateThreshold; }

inline constexpr std::array<Score, 7> PieceValue = {0, 100, 320, 330, 500, 900, 0};

namespace detail {

// Tables are written rank 8 first as seen by white; index with
// flip_rank(square) for white and the square itself for black.
using Table = std::array<Score, 64>;

// clang-format off
inline constexpr Table PawnTable = {
    0,   0,   0,   0,   0,   0,   0,   0,
   50,  50,  50,  50,  50,  50,  50,  50,
   10,  10,  20,  30,  30,  20,  10,  10,
    5,   5,  10,  25,  25,  10,   5,   5,
    0,   0,   0,  20,  20,   0,   0,   0,
    5,  -5, -10,   0,   0, -10,  -5,   5,
    5,  10,  10, -20, -20,  10,  10,   5,
    0,   0,   0,   0,   0,   0,   0,   0};
inline constexpr Table KnightTable = {
  -50, -40, -30, -30, -30, -30, -40, -50,
  -40, -20,   0,   0,   0,   0, -20, -40,
  -30,   0,  10,  15,  15,  10,   0, -30,
  -30,   5,  15,  20,  20,  15,   5, -30,
  -30,   0,  15,  20,  20,  15,   0, -30,
  -30,   5,  10,  15,  15,  10,   5, -30,
  -40, -20,   0,   5,   5,   0, -20, -40,
  -50, -40, -30, -30, -30, -30, -40, -50};
inline constexpr Table BishopTable = {
  -20, -10, -10, -10, -10, -10, -10, -20,
  -10,   0,   0,   0,   0,   0,   0, -10,
  -10,   0,   5,  10,  10,   5,   0, -10,
  -10,   5,   5,  10,  10,   5,   5, -10,
  -10,   0,  10,  10,  10,  10,   0, -10,
  -10,  10,  10,  10,  10,  10,  10, -10,
  -10,   5,   0,   0,   0,   0,   5, -10,
  -20, -10, -10, -10, -10, -10, -10, -20};
inline constexpr Table RookTable = {
    0,   0,   0,   0,   0,   0,   0,   0,
    5,  10,  10,  10,  10,  10,  10,   5,
   -5,   0,   0,   0,   0,   0,   0,  -5,
   -5,   0,   0,   0,   0,   0,   0,  -5,
   -5,   0,   0,   0,   0,   0,   0,  -5,
   -5,   0,   0,   0,   0,   0,   0,  -5,
   -5,   0,   0,   0,   0,   0,   0,  -5,
    0,   0,   0,   5,   5,   0,   0,   0};
inline constexpr Table QueenTable = {
  -20, -10, -10,  -5,  -5, -10, -10, -20,
  -10,   0,   0,   0,   0,   0,   0, -10,
  -10,   0,   5,   5,   5,   5,   0, -10,
   -5,   0,   5,   5,   5,   5,   0,  -5,
    0,   0,   5,   5,   5,   5,   0,  -5,
  -10,   5,   5,   5,   5,   5,   0, -10,
  -10,   0,   5,   0,   0,   0,   0, -10,
  -20, -10, -10,  -5,  -5, -10, -10, -20};
inline constexpr Table KingMiddleTable = {
  -30, -40, -40, -50, -50, -40, -40, -30,
  -30, -40, -40, -50, -50, -40, -40, -30,
  -30, -40, -40, -50, -50, -40, -40, -30,
  -30, -40, -40, -50, -50, -40, -40, -30,
  -20, -30, -30, -40, -40, -30, -30, -20,
  -10, -20, -20, -20, -20, -20, -20, -10,
   20,  20,   0,   0,   0,   0,  20,  20,
   20,  30,  10,   0,   0,  10,  30,  20};
inline constexpr Table KingEndTable = {
  -50, -40, -30, -20, -20, -30, -40, -50,
  -30, -20, -10,   0,   0, -10, -20, -30,
  -30, -10,  20,  30,  30,  20, -10, -30,
  -30, -10,  30,  40,  40,  30, -10, -30,
  -30, -10,  30,  40,  40,  30, -10, -30,
  -30, -10,  20,  30,  30,  20, -10, -30,
  -30, -30,   0,   0,   0,   0, -30, -30,
  -50, -30, -30, -30, -30, -30, -30, -50};
// clang-format on

inline constexpr std::array<const Table*, 6> PieceTables = {
    &PawnTable, &KnightTable, &BishopTable, &RookTable, &QueenTable, &KingMiddleTable};

// Combined non-pawn material at or below which kings use the endgame table.
inline constexpr Score EndgameMaterial = 1300;

}  // namespace detail

// Piece-square bonus of a piece of color c and type t on square s.
constexpr Score piece_square(Color c, PieceType t, Square s, bool endgame = false) {
  const Square idx = c == White ? flip_rank(s) : s;
  if (t == King && endgame) return detail::KingEndTable[idx];
  return (*detail::PieceTables[t - 1])[idx];
}

inline bool is_endgame(const Position& pos) {
  Score material = 0;
  for (PieceType t : {Knight, Bishop, Rook, Queen})
    material += PieceValue[t] * popcount(pos.pieces(t));
  return material <= detail::EndgameMaterial;
}

// Side-to-move relative static score in centipawns, |score| <= EvalLimit.
inline Score evaluate_static(const Position& pos) {
  const bool endgame = is_endgame(pos);
  Score score = 0;  // white's point of view
  for (Color c : {White, Black}) {
    Score side = 0;
    for (PieceType t : {Pawn, Knight, Bishop, Rook, Queen, King}) {
      Bitboard b = pos.pieces(c, t);
      while (b) side += PieceValue[t] + piece_square(c, t, pop_lsb(b), endgame);
    }
    score += c == White ? side : -side;
  }
  score = std::clamp(score, -EvalLimit, EvalLimit);
  return pos.side_to_move() == White ? score : -score;
}

}  // namespace evochess
