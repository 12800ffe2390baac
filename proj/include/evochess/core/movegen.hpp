#pragma once

// Pseudo-legal and legal move generation, plus perft.
//
// Order is fixed: pieces by type (pawn .. king), then origin square, then
// destination square, promotions queen first. Search ordering, fitness and
// match results all depend on this order being reproducible.

#include <array>
#include <cstdint>
#include <vector>

#include "evochess/core/position.hpp"

namespace evochess {

class MoveList {
 public:
  static constexpr std::size_t Capacity = 256;

  void push(Move m) { moves_[size_++] = m; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  void clear() { size_ = 0; }
  Move operator[](std::size_t i) const { return moves_[i]; }
  Move& operator[](std::size_t i) { return moves_[i]; }
  const Move* begin() const { return moves_.data(); }
  const Move* end() const { return moves_.data() + size_; }
  Move* begin() { return moves_.data(); }
  Move* end() { return moves_.data() + size_; }

  bool contains(Move m) const {
    for (Move x : *this)
      if (x == m) return true;
    return false;
  }

 private:
  std::array<Move, Capacity> moves_;
  std::size_t size_ = 0;
};

enum class GenMode {
  All,
  // Captures (capture-promotions to a queen only) and non-capturing queen
  // promotions: the quiescence move set.
  Tactical,
};

namespace detail {

inline void add_pawn_moves(const Position& pos, MoveList& list, Square from, Square to,
                           PieceType captured, std::uint8_t flags, GenMode mode) {
  const Color us = pos.side_to_move();
  if (relative_rank(us, to) == 7) {
    list.push(Move(from, to, Pawn, captured, Queen, flags));
    if (mode == GenMode::All)
      for (PieceType promo : {Rook, Bishop, Knight})
        list.push(Move(from, to, Pawn, captured, promo, flags));
  } else if (mode == GenMode::All || captured != NoPieceType) {
    list.push(Move(from, to, Pawn, captured, NoPieceType, flags));
  }
}

}  // namespace detail

inline void generate_pseudo_legal(const Position& pos, MoveList& list,
                                  GenMode mode = GenMode::All) {
  const Color us = pos.side_to_move(), them = ~us;
  const Bitboard occupied = pos.pieces();
  const Bitboard enemies = pos.pieces(them);
  const Bitboard targets = mode == GenMode::All ? ~pos.pieces(us) : enemies;
  const int push = us == White ? 8 : -8;

  Bitboard pawns = pos.pieces(us, Pawn);
  while (pawns) {
    const Square from = pop_lsb(pawns);
    // Lower destination squares first: for white captures-left come first.
    Bitboard caps = pawn_attacks(us, from) & enemies;
    const Square one = from + push;
    std::array<Square, 4> dests{};
    int n = 0;
    Bitboard all = caps;
    if (!(occupied & bb(one))) all |= bb(one);
    if (pos.en_passant() != NoSquare && (pawn_attacks(us, from) & bb(pos.en_passant())))
      all |= bb(pos.en_passant());
    if (relative_rank(us, from) == 1 && !(occupied & bb(one)) && !(occupied & bb(one + push)))
      all |= bb(one + push);
    while (all) dests[n++] = pop_lsb(all);
    for (int i = 0; i < n; ++i) {
      const Square to = dests[i];
      if (to == pos.en_passant() && !(occupied & bb(to))) {
        list.push(Move(from, to, Pawn, Pawn, NoPieceType, FlagEnPassant));
      } else if (enemies & bb(to)) {
        detail::add_pawn_moves(pos, list, from, to, type_of(pos.piece_on(to)), FlagNone, mode);
      } else if (to == one) {
        detail::add_pawn_moves(pos, list, from, to, NoPieceType, FlagNone, mode);
      } else if (mode == GenMode::All) {
        list.push(Move(from, to, Pawn, NoPieceType, NoPieceType, FlagDoublePush));
      }
    }
  }

  for (PieceType t : {Knight, Bishop, Rook, Queen, King}) {
    Bitboard pieces = pos.pieces(us, t);
    while (pieces) {
      const Square from = pop_lsb(pieces);
      Bitboard dest = attacks_of(t, from, occupied) & targets;
      while (dest) {
        const Square to = pop_lsb(dest);
        list.push(Move(from, to, t, type_of(pos.piece_on(to))));
      }
    }
  }

  if (mode == GenMode::All && pos.castling()) {
    const Square k = pos.king_square(us);
    const std::uint8_t oo = us == White ? WhiteOO : BlackOO;
    const std::uint8_t ooo = us == White ? WhiteOOO : BlackOOO;
    if ((pos.castling() & (oo | ooo)) && !pos.in_check()) {
      if ((pos.castling() & oo) && !(occupied & (bb(k + 1) | bb(k + 2))) &&
          !pos.is_attacked(k + 1, them))
        list.push(Move(k, k + 2, King, NoPieceType, NoPieceType, FlagCastle));
      if ((pos.castling() & ooo) && !(occupied & (bb(k - 1) | bb(k - 2) | bb(k - 3))) &&
          !pos.is_attacked(k - 1, them))
        list.push(Move(k, k - 2, King, NoPieceType, NoPieceType, FlagCastle));
    }
  }
}

inline MoveList generate_legal_moves(const Position& pos) {
  MoveList pseudo, legal;
  generate_pseudo_legal(pos, pseudo);
  for (Move m : pseudo)
    if (pos.is_legal(m)) legal.push(m);
  return legal;
}

// Legal moves that quiescence expands when not in check.
inline MoveList generate_legal_tactical(const Position& pos) {
  MoveList pseudo, legal;
  generate_pseudo_legal(pos, pseudo, GenMode::Tactical);
  for (Move m : pseudo)
    if (pos.is_legal(m)) legal.push(m);
  return legal;
}

inline bool has_legal_move(const Position& pos) {
  MoveList pseudo;
  generate_pseudo_legal(pos, pseudo);
  for (Move m : pseudo)
    if (pos.is_legal(m)) return true;
  return false;
}

inline std::uint64_t perft(Position& pos, int depth) {
  if (depth <= 0) return 1;
  const MoveList moves = generate_legal_moves(pos);
  if (depth == 1) return moves.size();
  std::uint64_t nodes = 0;
  for (Move m : moves) {
    const Undo u = pos.apply_move(m);
    nodes += perft(pos, depth - 1);
    pos.unapply_move(u);
  }
  return nodes;
}

}  // namespace evochess
