#pragma once

// Basic chess vocabulary: colors, pieces, squares and the packed Move value.

#include <cstdint>
#include <string>

namespace evochess {

enum Color : std::uint8_t { White = 0, Black = 1 };

constexpr Color operator~(Color c) { return Color(c ^ 1); }

enum PieceType : std::uint8_t {
  NoPieceType = 0,
  Pawn = 1,
  Knight = 2,
  Bishop = 3,
  Rook = 4,
  Queen = 5,
  King = 6,
};

// Piece = color * 8 + type; 0 is the empty square.
enum Piece : std::uint8_t { NoPiece = 0 };

constexpr Piece make_piece(Color c, PieceType t) { return Piece(c * 8 + t); }
constexpr PieceType type_of(Piece p) { return PieceType(p & 7); }
constexpr Color color_of(Piece p) { return Color(p >> 3); }

using Square = int;  // a1 = 0, b1 = 1, ..., h8 = 63
constexpr Square NoSquare = -1;

constexpr int file_of(Square s) { return s & 7; }
constexpr int rank_of(Square s) { return s >> 3; }
constexpr Square make_square(int file, int rank) { return rank * 8 + file; }
// Rank as seen by side c (0 = own back rank).
constexpr int relative_rank(Color c, Square s) {
  return c == White ? rank_of(s) : 7 - rank_of(s);
}
constexpr Square flip_rank(Square s) { return s ^ 56; }

inline std::string square_name(Square s) {
  return {char('a' + file_of(s)), char('1' + rank_of(s))};
}

constexpr char piece_type_char(PieceType t) {
  constexpr char chars[] = " PNBRQK";
  return chars[t];
}

enum MoveFlag : std::uint8_t {
  FlagNone = 0,
  FlagCastle = 1,
  FlagEnPassant = 2,
  FlagDoublePush = 4,
};

// A move packed into 32 bits:
//   bits 0-5 from, 6-11 to, 12-14 moving piece type, 15-17 captured type,
//   18-20 promotion type, 21-23 flags.
// The all-zero value is the null move / "no move".
class Move {
 public:
  constexpr Move() = default;
  constexpr Move(Square from, Square to, PieceType piece,
                 PieceType captured = NoPieceType,
                 PieceType promotion = NoPieceType,
                 std::uint8_t flags = FlagNone)
      : bits_(std::uint32_t(from) | std::uint32_t(to) << 6 |
              std::uint32_t(piece) << 12 | std::uint32_t(captured) << 15 |
              std::uint32_t(promotion) << 18 | std::uint32_t(flags) << 21) {}

  static constexpr Move from_bits(std::uint32_t bits) {
    Move m;
    m.bits_ = bits;
    return m;
  }

  constexpr Square from() const { return Square(bits_ & 63); }
  constexpr Square to() const { return Square(bits_ >> 6 & 63); }
  constexpr PieceType piece() const { return PieceType(bits_ >> 12 & 7); }
  constexpr PieceType captured() const { return PieceType(bits_ >> 15 & 7); }
  constexpr PieceType promotion() const { return PieceType(bits_ >> 18 & 7); }
  constexpr std::uint8_t flags() const { return std::uint8_t(bits_ >> 21 & 7); }

  constexpr bool is_capture() const { return captured() != NoPieceType; }
  constexpr bool is_promotion() const { return promotion() != NoPieceType; }
  constexpr bool is_castle() const { return flags() & FlagCastle; }
  constexpr bool is_en_passant() const { return flags() & FlagEnPassant; }
  constexpr bool is_double_push() const { return flags() & FlagDoublePush; }
  constexpr bool is_null() const { return bits_ == 0; }
  // Captures and promotions; everything quiescence looks at.
  constexpr bool is_tactical() const { return is_capture() || is_promotion(); }

  constexpr std::uint32_t bits() const { return bits_; }

  constexpr bool operator==(const Move&) const = default;

  // Coordinate notation, e.g. "e2e4", "e7e8q".
  std::string uci() const {
    if (is_null()) return "0000";
    std::string s = square_name(from()) + square_name(to());
    if (is_promotion()) s += char(piece_type_char(promotion()) - 'A' + 'a');
    return s;
  }

 private:
  std::uint32_t bits_ = 0;
};

}  // namespace evochess
