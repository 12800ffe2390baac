#pragma once

// Chess position with incremental Zobrist hashing and reversible make/unmake.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "evochess/core/bitboard.hpp"
#include "evochess/core/types.hpp"

namespace evochess {

// Input that cannot be turned into a position or move. `field()` names the
// offending FEN field or EPD token.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum CastlingRight : std::uint8_t {
  WhiteOO = 1,
  WhiteOOO = 2,
  BlackOO = 4,
  BlackOOO = 8,
};

namespace detail {

struct Zobrist {
  std::array<std::array<std::uint64_t, 64>, 16> piece{};
  std::array<std::uint64_t, 16> castling{};
  std::array<std::uint64_t, 8> ep_file{};
  std::uint64_t side = 0;

  Zobrist() {
    std::uint64_t state = 0x4D595DF4D0F33173ULL;  // splitmix64
    auto next = [&] {
      std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      return z ^ (z >> 31);
    };
    for (auto& row : piece)
      for (auto& k : row) k = next();
    for (auto& k : castling) k = next();
    for (auto& k : ep_file) k = next();
    side = next();
  }
};

inline const Zobrist& zobrist() {
  static const Zobrist z;
  return z;
}
inline const Zobrist& g_zobrist = zobrist();

// Castling rights that survive a move touching the given square.
constexpr std::array<std::uint8_t, 64> castling_mask = [] {
  std::array<std::uint8_t, 64> m{};
  for (auto& v : m) v = 15;
  m[0] = 15 & ~WhiteOOO;
  m[4] = 15 & ~(WhiteOO | WhiteOOO);
  m[7] = 15 & ~WhiteOO;
  m[56] = 15 & ~BlackOOO;
  m[60] = 15 & ~(BlackOO | BlackOOO);
  m[63] = 15 & ~BlackOO;
  return m;
}();

}  // namespace detail

inline constexpr std::string_view StartFen =
    "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

// Everything apply_move destroys; handing it back to unapply_move restores
// the position bit for bit.
struct Undo {
  Move move;
  Piece captured = NoPiece;
  std::uint8_t castling = 0;
  Square en_passant = NoSquare;
  int halfmove = 0;
  std::uint64_t key = 0;
};

class Position {
 public:
  Position() = default;

  static Position from_fen(std::string_view fen) { return parse(fen, true); }
  // Accepts the four leading FEN fields with optional clocks (EPD style).
  static Position from_fields(std::string_view fen) { return parse(fen, false); }
  static Position start() { return from_fen(StartFen); }

  Piece piece_on(Square s) const { return board_[s]; }
  Color side_to_move() const { return side_; }
  std::uint8_t castling() const { return castling_; }
  Square en_passant() const { return ep_; }
  int halfmove_clock() const { return halfmove_; }
  int fullmove_number() const { return fullmove_; }
  std::uint64_t key() const { return key_; }

  Bitboard pieces() const { return by_color_[White] | by_color_[Black]; }
  Bitboard pieces(Color c) const { return by_color_[c]; }
  Bitboard pieces(PieceType t) const { return by_type_[t]; }
  Bitboard pieces(Color c, PieceType t) const { return by_color_[c] & by_type_[t]; }
  Square king_square(Color c) const { return lsb(pieces(c, King)); }

  // Knights, bishops, rooks or queens (zugzwang guard for null moves).
  bool has_non_pawn_material(Color c) const {
    return pieces(c) & ~pieces(Pawn) & ~pieces(King);
  }

  Bitboard attackers_to(Square s, Bitboard occupied) const {
    return (pawn_attacks(White, s) & pieces(Black, Pawn)) |
           (pawn_attacks(Black, s) & pieces(White, Pawn)) |
           (knight_attacks(s) & pieces(Knight)) |
           (bishop_attacks(s, occupied) & (pieces(Bishop) | pieces(Queen))) |
           (rook_attacks(s, occupied) & (pieces(Rook) | pieces(Queen))) |
           (king_attacks(s) & pieces(King));
  }

  bool is_attacked(Square s, Color by) const {
    return attackers_to(s, pieces()) & pieces(by);
  }

  Bitboard checkers() const {
    return attackers_to(king_square(side_), pieces()) & pieces(~side_);
  }
  bool in_check() const { return is_attacked(king_square(side_), ~side_); }

  // True when a pseudo-legal move does not leave the mover's king attacked.
  bool is_legal(Move m) const {
    const Color us = side_, them = ~side_;
    const Square from = m.from(), to = m.to();
    Bitboard occupied = (pieces() & ~bb(from)) | bb(to);
    Bitboard removed = bb(to);
    if (m.is_en_passant()) {
      const Square cap = to + (us == White ? -8 : 8);
      occupied &= ~bb(cap);
      removed |= bb(cap);
    }
    const Square ksq = m.piece() == King ? to : king_square(us);
    const Bitboard enemies = pieces(them) & ~removed;
    return !((pawn_attacks(us, ksq) & pieces(Pawn) & enemies) |
             (knight_attacks(ksq) & pieces(Knight) & enemies) |
             (bishop_attacks(ksq, occupied) & (pieces(Bishop) | pieces(Queen)) & enemies) |
             (rook_attacks(ksq, occupied) & (pieces(Rook) | pieces(Queen)) & enemies) |
             (king_attacks(ksq) & pieces(King) & enemies));
  }

  // True when the (legal) move checks the opponent.
  bool gives_check(Move m) {
    const Undo u = apply_move(m);
    const bool check = in_check();
    unapply_move(u);
    return check;
  }

  Undo apply_move(Move m) {
    Undo u{m, NoPiece, castling_, ep_, halfmove_, key_};
    const auto& z = detail::g_zobrist;
    const Color us = side_;
    const Square from = m.from(), to = m.to();
    const Piece moving = board_[from];

    history_.push_back(key_);
    if (ep_ != NoSquare) key_ ^= z.ep_file[file_of(ep_)];
    ep_ = NoSquare;
    ++halfmove_;

    if (m.is_en_passant()) {
      const Square cap = to + (us == White ? -8 : 8);
      u.captured = board_[cap];
      remove_piece(cap);
      halfmove_ = 0;
    } else if (board_[to] != NoPiece) {
      u.captured = board_[to];
      remove_piece(to);
      halfmove_ = 0;
    }

    remove_piece(from);
    put_piece(m.is_promotion() ? make_piece(us, m.promotion()) : moving, to);

    if (m.is_castle()) {
      const bool king_side = to > from;
      const Square rook_from = king_side ? from + 3 : from - 4;
      const Square rook_to = king_side ? from + 1 : from - 1;
      const Piece rook = board_[rook_from];
      remove_piece(rook_from);
      put_piece(rook, rook_to);
    }

    if (type_of(moving) == Pawn) {
      halfmove_ = 0;
      if (m.is_double_push()) {
        ep_ = (from + to) / 2;
        key_ ^= z.ep_file[file_of(ep_)];
      }
    }

    const std::uint8_t rights =
        castling_ & detail::castling_mask[from] & detail::castling_mask[to];
    if (rights != castling_) {
      key_ ^= z.castling[castling_] ^ z.castling[rights];
      castling_ = rights;
    }

    if (us == Black) ++fullmove_;
    side_ = ~side_;
    key_ ^= z.side;
    return u;
  }

  void unapply_move(const Undo& u) {
    const Move m = u.move;
    side_ = ~side_;
    const Color us = side_;
    if (us == Black) --fullmove_;
    const Square from = m.from(), to = m.to();

    if (m.is_castle()) {
      const bool king_side = to > from;
      const Square rook_from = king_side ? from + 3 : from - 4;
      const Square rook_to = king_side ? from + 1 : from - 1;
      const Piece rook = board_[rook_to];
      remove_piece(rook_to);
      put_piece(rook, rook_from);
    }

    remove_piece(to);
    put_piece(make_piece(us, m.piece()), from);
    if (u.captured != NoPiece) {
      const Square cap = m.is_en_passant() ? to + (us == White ? -8 : 8) : to;
      put_piece(u.captured, cap);
    }

    castling_ = u.castling;
    ep_ = u.en_passant;
    halfmove_ = u.halfmove;
    key_ = u.key;
    history_.pop_back();
  }

  // Passing the turn; only meaningful inside search.
  Undo apply_null() {
    Undo u{Move{}, NoPiece, castling_, ep_, halfmove_, key_};
    const auto& z = detail::g_zobrist;
    history_.push_back(key_);
    if (ep_ != NoSquare) key_ ^= z.ep_file[file_of(ep_)];
    ep_ = NoSquare;
    ++halfmove_;
    side_ = ~side_;
    key_ ^= z.side;
    return u;
  }

  void unapply_null(const Undo& u) {
    side_ = ~side_;
    ep_ = u.en_passant;
    halfmove_ = u.halfmove;
    key_ = u.key;
    history_.pop_back();
  }

  // Hash of the current position recomputed from scratch.
  std::uint64_t compute_key() const {
    const auto& z = detail::g_zobrist;
    std::uint64_t k = 0;
    for (Square s = 0; s < 64; ++s)
      if (board_[s] != NoPiece) k ^= z.piece[board_[s]][s];
    k ^= z.castling[castling_];
    if (ep_ != NoSquare) k ^= z.ep_file[file_of(ep_)];
    if (side_ == Black) k ^= z.side;
    return k;
  }

  // Keys of the positions that can still repeat: those reached since the
  // last capture or pawn move, oldest first.
  std::vector<std::uint64_t> repetition_stack() const {
    const std::size_t n = std::min<std::size_t>(history_.size(), std::size_t(halfmove_));
    return {history_.end() - std::ptrdiff_t(n), history_.end()};
  }

  // Number of earlier occurrences of the current position (same side to move).
  int repetition_count() const {
    int count = 0;
    const int n = std::min<int>(int(history_.size()), halfmove_);
    for (int i = 4; i <= n; i += 2)
      if (history_[history_.size() - std::size_t(i)] == key_) ++count;
    return count;
  }

  bool is_repetition() const {
    const int n = std::min<int>(int(history_.size()), halfmove_);
    for (int i = 4; i <= n; i += 2)
      if (history_[history_.size() - std::size_t(i)] == key_) return true;
    return false;
  }

  // Drops the game history (repetition detection restarts here).
  void clear_history() { history_.clear(); }

  std::string fen() const;

  // Same placement and state, ignoring history.
  bool same_state(const Position& o) const {
    return board_ == o.board_ && side_ == o.side_ && castling_ == o.castling_ &&
           ep_ == o.ep_ && halfmove_ == o.halfmove_ && fullmove_ == o.fullmove_ &&
           key_ == o.key_;
  }
  bool operator==(const Position& o) const {
    return same_state(o) && history_ == o.history_ && by_color_ == o.by_color_ &&
           by_type_ == o.by_type_;
  }

  // Colors swapped and board flipped top to bottom.
  Position mirrored() const {
    Position p;
    for (Square s = 0; s < 64; ++s)
      if (board_[s] != NoPiece)
        p.put_piece(make_piece(~color_of(board_[s]), type_of(board_[s])), flip_rank(s));
    p.side_ = ~side_;
    p.castling_ = std::uint8_t((castling_ & 3) << 2 | (castling_ >> 2));
    p.ep_ = ep_ == NoSquare ? NoSquare : flip_rank(ep_);
    p.halfmove_ = halfmove_;
    p.fullmove_ = fullmove_;
    p.key_ = p.compute_key();
    return p;
  }

 private:
  void put_piece(Piece p, Square s) {
    board_[s] = p;
    by_color_[color_of(p)] |= bb(s);
    by_type_[type_of(p)] |= bb(s);
    key_ ^= detail::g_zobrist.piece[p][s];
  }

  void remove_piece(Square s) {
    const Piece p = board_[s];
    board_[s] = NoPiece;
    by_color_[color_of(p)] &= ~bb(s);
    by_type_[type_of(p)] &= ~bb(s);
    key_ ^= detail::g_zobrist.piece[p][s];
  }

  static Position parse(std::string_view fen, bool require_clocks);

  std::array<Piece, 64> board_{};
  std::array<Bitboard, 2> by_color_{};
  std::array<Bitboard, 7> by_type_{};
  Color side_ = White;
  std::uint8_t castling_ = 0;
  Square ep_ = NoSquare;
  int halfmove_ = 0;
  int fullmove_ = 1;
  std::uint64_t key_ = 0;
  std::vector<std::uint64_t> history_;
};

inline Position Position::parse(std::string_view fen, bool require_clocks) {
  std::istringstream in{std::string(fen)};
  std::string placement, side, castling, ep, half, full;
  if (!(in >> placement)) throw ParseError("placement", "empty FEN");
  if (!(in >> side)) throw ParseError("side", "missing side to move");
  if (!(in >> castling)) throw ParseError("castling", "missing castling field");
  if (!(in >> ep)) throw ParseError("en-passant", "missing en-passant field");
  const bool has_half = bool(in >> half);
  const bool has_full = bool(in >> full);
  if (require_clocks && (!has_half || !has_full))
    throw ParseError(has_half ? "fullmove" : "halfmove", "missing clock field");
  std::string extra;
  if (require_clocks && (in >> extra)) throw ParseError("fen", "trailing data '" + extra + "'");

  Position p;
  int rank = 7, file = 0;
  for (char c : placement) {
    if (c == '/') {
      if (file != 8) throw ParseError("placement", "rank " + std::to_string(rank + 1) + " has wrong length");
      if (--rank < 0) throw ParseError("placement", "too many ranks");
      file = 0;
    } else if (c >= '1' && c <= '8') {
      file += c - '0';
      if (file > 8) throw ParseError("placement", "rank overflow");
    } else {
      const std::string_view pieces = " PNBRQK";
      const auto idx = pieces.find(char(std::toupper(static_cast<unsigned char>(c))));
      if (idx == std::string_view::npos || idx == 0)
        throw ParseError("placement", std::string("bad piece character '") + c + "'");
      if (file > 7) throw ParseError("placement", "rank overflow");
      const Color color = std::isupper(static_cast<unsigned char>(c)) ? White : Black;
      p.put_piece(make_piece(color, PieceType(idx)), make_square(file, rank));
      ++file;
    }
  }
  if (rank != 0 || file != 8) throw ParseError("placement", "expected 8 ranks of 8 squares");
  if (popcount(p.pieces(White, King)) != 1 || popcount(p.pieces(Black, King)) != 1)
    throw ParseError("placement", "missing kings: each side needs exactly one king");
  if (p.pieces(Pawn) & (Rank1 | Rank8))
    throw ParseError("placement", "pawn on first or last rank");

  if (side == "w") p.side_ = White;
  else if (side == "b") p.side_ = Black;
  else throw ParseError("side", "expected 'w' or 'b', got '" + side + "'");

  if (castling != "-") {
    for (char c : castling) {
      std::uint8_t right = 0;
      Square king = 0, rook = 0;
      Color color = White;
      switch (c) {
        case 'K': right = WhiteOO; king = 4; rook = 7; break;
        case 'Q': right = WhiteOOO; king = 4; rook = 0; break;
        case 'k': right = BlackOO; king = 60; rook = 63; color = Black; break;
        case 'q': right = BlackOOO; king = 60; rook = 56; color = Black; break;
        default: throw ParseError("castling", std::string("bad castling character '") + c + "'");
      }
      if (p.board_[king] != make_piece(color, King) || p.board_[rook] != make_piece(color, Rook))
        throw ParseError("castling", std::string("right '") + c + "' without king and rook in place");
      p.castling_ |= right;
    }
  }

  if (ep != "-") {
    if (ep.size() != 2 || ep[0] < 'a' || ep[0] > 'h' || ep[1] < '1' || ep[1] > '8')
      throw ParseError("en-passant", "bad square '" + ep + "'");
    const Square s = make_square(ep[0] - 'a', ep[1] - '1');
    if (rank_of(s) != (p.side_ == White ? 5 : 2))
      throw ParseError("en-passant", "square '" + ep + "' not on the third or sixth rank for this side");
    p.ep_ = s;
  }

  auto parse_int = [](const std::string& text, const char* field, int min) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(text, &used);
    } catch (const std::exception&) {
      throw ParseError(field, "not a number: '" + text + "'");
    }
    if (used != text.size() || v < min) throw ParseError(field, "bad value '" + text + "'");
    return v;
  };
  if (has_half) p.halfmove_ = parse_int(half, "halfmove", 0);
  if (has_full) p.fullmove_ = parse_int(full, "fullmove", 1);

  if (p.is_attacked(p.king_square(~p.side_), p.side_))
    throw ParseError("side", "side not to move is in check");

  p.key_ = p.compute_key();
  return p;
}

inline std::string Position::fen() const {
  std::string out;
  for (int r = 7; r >= 0; --r) {
    int empty = 0;
    for (int f = 0; f < 8; ++f) {
      const Piece p = board_[make_square(f, r)];
      if (p == NoPiece) {
        ++empty;
        continue;
      }
      if (empty) out += char('0' + empty);
      empty = 0;
      const char c = piece_type_char(type_of(p));
      out += color_of(p) == White ? c : char(c - 'A' + 'a');
    }
    if (empty) out += char('0' + empty);
    if (r) out += '/';
  }
  out += side_ == White ? " w " : " b ";
  if (!castling_) out += '-';
  if (castling_ & WhiteOO) out += 'K';
  if (castling_ & WhiteOOO) out += 'Q';
  if (castling_ & BlackOO) out += 'k';
  if (castling_ & BlackOOO) out += 'q';
  out += ' ';
  out += ep_ == NoSquare ? "-" : square_name(ep_);
  out += ' ' + std::to_string(halfmove_) + ' ' + std::to_string(fullmove_);
  return out;
}

}  // namespace evochess
