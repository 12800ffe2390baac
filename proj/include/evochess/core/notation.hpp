#pragma once

// Standard algebraic notation (SAN) and coordinate notation.

#include <string>
#include <string_view>

#include "evochess/core/movegen.hpp"

namespace evochess {

// Resolves a coordinate move ("e2e4", "a7a8q") against the legal moves.
inline Move parse_uci_move(const Position& pos, std::string_view text) {
  for (Move m : generate_legal_moves(pos))
    if (m.uci() == text) return m;
  throw ParseError(std::string(text), "not a legal move in this position");
}

// SAN of a legal move, including the check or mate suffix.
inline std::string to_san(const Position& pos, Move m) {
  std::string san;
  if (m.is_castle()) {
    san = m.to() > m.from() ? "O-O" : "O-O-O";
  } else if (m.piece() == Pawn) {
    if (m.is_capture()) {
      san += char('a' + file_of(m.from()));
      san += 'x';
    }
    san += square_name(m.to());
    if (m.is_promotion()) {
      san += '=';
      san += piece_type_char(m.promotion());
    }
  } else {
    san += piece_type_char(m.piece());
    bool clash = false, same_file = false, same_rank = false;
    for (Move o : generate_legal_moves(pos)) {
      if (o == m || o.piece() != m.piece() || o.to() != m.to()) continue;
      clash = true;
      same_file |= file_of(o.from()) == file_of(m.from());
      same_rank |= rank_of(o.from()) == rank_of(m.from());
    }
    if (clash) {
      if (!same_file) san += char('a' + file_of(m.from()));
      else if (!same_rank) san += char('1' + rank_of(m.from()));
      else san += square_name(m.from());
    }
    if (m.is_capture()) san += 'x';
    san += square_name(m.to());
  }
  Position after = pos;
  after.apply_move(m);
  if (after.in_check()) san += has_legal_move(after) ? '+' : '#';
  return san;
}

// Resolves a SAN token. Check/mate suffixes and annotation marks are
// ignored; a missing 'x' or superfluous disambiguation is tolerated.
inline Move parse_san(const Position& pos, std::string_view token) {
  const std::string original(token);
  std::string t(token);
  while (!t.empty() && (t.back() == '+' || t.back() == '#' || t.back() == '!' || t.back() == '?'))
    t.pop_back();
  if (t.empty()) throw ParseError(original, "empty move");

  const MoveList legal = generate_legal_moves(pos);
  if (t == "O-O" || t == "0-0" || t == "O-O-O" || t == "0-0-0") {
    const bool king_side = t.size() == 3;
    for (Move m : legal)
      if (m.is_castle() && (m.to() > m.from()) == king_side) return m;
    throw ParseError(original, "castling is not legal in this position");
  }

  PieceType piece = Pawn;
  std::size_t i = 0;
  if (std::string_view("NBRQK").find(t[0]) != std::string_view::npos) {
    piece = PieceType(std::string_view(" PNBRQK").find(t[0]));
    i = 1;
  }

  PieceType promotion = NoPieceType;
  if (t.size() >= 2) {
    const char last = t.back();
    const auto idx = std::string_view("NBRQ").find(last);
    if (piece == Pawn && idx != std::string_view::npos) {
      promotion = PieceType(Knight + idx);
      t.pop_back();
      if (!t.empty() && t.back() == '=') t.pop_back();
    }
  }

  // Remaining: [from-file][from-rank][x]to-square
  if (t.size() < i + 2) throw ParseError(original, "malformed move");
  const char tf = t[t.size() - 2], tr = t[t.size() - 1];
  if (tf < 'a' || tf > 'h' || tr < '1' || tr > '8') throw ParseError(original, "malformed destination");
  const Square to = make_square(tf - 'a', tr - '1');
  int from_file = -1, from_rank = -1;
  for (std::size_t j = i; j + 2 < t.size(); ++j) {
    const char c = t[j];
    if (c >= 'a' && c <= 'h') from_file = c - 'a';
    else if (c >= '1' && c <= '8') from_rank = c - '1';
    else if (c != 'x' && c != '-' && c != ':') throw ParseError(original, "malformed move");
  }

  Move found;
  int matches = 0;
  for (Move m : legal) {
    if (m.piece() != piece || m.to() != to || m.promotion() != promotion) continue;
    if (from_file >= 0 && file_of(m.from()) != from_file) continue;
    if (from_rank >= 0 && rank_of(m.from()) != from_rank) continue;
    if (m.is_castle()) continue;
    found = m;
    ++matches;
  }
  if (matches == 0) throw ParseError(original, "not a legal move in this position");
  if (matches > 1) throw ParseError(original, "ambiguous move");
  return found;
}

}  // namespace evochess
