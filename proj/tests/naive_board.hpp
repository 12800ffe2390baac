#pragma once

// Deliberately simple mailbox move generator used as a reference for the
// bitboard implementation. Moves are UCI strings; nothing is shared with the
// library except the FEN text.

#include <algorithm>
#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace naive {

// Pieces are chars as in FEN; '.' is empty. Squares a1 = 0 .. h8 = 63.
struct Board {
  std::array<char, 64> sq{};
  bool white = true;
  bool wk = false, wq = false, bk = false, bq = false;
  int ep = -1;

  static Board from_fen(const std::string& fen) {
    Board b;
    b.sq.fill('.');
    std::istringstream in(fen);
    std::string placement, side, castling, ep;
    in >> placement >> side >> castling >> ep;
    int rank = 7, file = 0;
    for (char c : placement) {
      if (c == '/') {
        --rank;
        file = 0;
      } else if (c >= '1' && c <= '8') {
        file += c - '0';
      } else {
        b.sq[std::size_t(rank * 8 + file++)] = c;
      }
    }
    b.white = side == "w";
    b.wk = castling.find('K') != std::string::npos;
    b.wq = castling.find('Q') != std::string::npos;
    b.bk = castling.find('k') != std::string::npos;
    b.bq = castling.find('q') != std::string::npos;
    if (ep != "-") b.ep = (ep[1] - '1') * 8 + (ep[0] - 'a');
    return b;
  }

  static bool is_white(char p) { return p >= 'A' && p <= 'Z'; }
  bool own(char p, bool w) const { return p != '.' && is_white(p) == w; }
  char at(int f, int r) const { return sq[std::size_t(r * 8 + f)]; }
  static bool on_board(int f, int r) { return f >= 0 && f < 8 && r >= 0 && r < 8; }

  // Is square s attacked by side `by_white`? Scans outward from s.
  bool attacked(int s, bool by_white) const {
    const int f = s % 8, r = s / 8;
    auto is = [&](int ff, int rr, char upper) {
      if (!on_board(ff, rr)) return false;
      const char p = at(ff, rr);
      return p == (by_white ? upper : char(upper + 32));
    };
    const int pawn_dir = by_white ? -1 : 1;  // attacking pawn sits behind s
    if (is(f - 1, r + pawn_dir, 'P') || is(f + 1, r + pawn_dir, 'P')) return true;
    static const int knight[8][2] = {{1, 2}, {2, 1}, {2, -1}, {1, -2}, {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
    for (auto& d : knight)
      if (is(f + d[0], r + d[1], 'N')) return true;
    for (int df = -1; df <= 1; ++df)
      for (int dr = -1; dr <= 1; ++dr)
        if ((df || dr) && is(f + df, r + dr, 'K')) return true;
    static const int dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (int i = 0; i < 8; ++i) {
      const bool straight = i < 4;
      int ff = f + dirs[i][0], rr = r + dirs[i][1];
      while (on_board(ff, rr)) {
        const char p = at(ff, rr);
        if (p != '.') {
          if (own(p, by_white)) {
            const char u = char(p & ~32);
            if (u == 'Q' || (straight ? u == 'R' : u == 'B')) return true;
          }
          break;
        }
        ff += dirs[i][0];
        rr += dirs[i][1];
      }
    }
    return false;
  }

  int king(bool w) const {
    for (int s = 0; s < 64; ++s)
      if (sq[std::size_t(s)] == (w ? 'K' : 'k')) return s;
    return -1;
  }

  bool in_check() const { return attacked(king(white), !white); }

  static std::string name(int s) { return {char('a' + s % 8), char('1' + s / 8)}; }

  Board play(const std::string& uci) const {
    Board b = *this;
    const int from = (uci[1] - '1') * 8 + (uci[0] - 'a');
    const int to = (uci[3] - '1') * 8 + (uci[2] - 'a');
    char p = b.sq[std::size_t(from)];
    const char upper = char(p & ~32);
    b.sq[std::size_t(from)] = '.';
    if (upper == 'P' && to == ep) b.sq[std::size_t(white ? to - 8 : to + 8)] = '.';
    if (uci.size() == 5) p = white ? char(uci[4] - 32) : uci[4];
    b.sq[std::size_t(to)] = p;
    if (upper == 'K' && std::abs(to - from) == 2) {
      const int rook_from = to > from ? from + 3 : from - 4;
      const int rook_to = to > from ? from + 1 : from - 1;
      b.sq[std::size_t(rook_to)] = b.sq[std::size_t(rook_from)];
      b.sq[std::size_t(rook_from)] = '.';
    }
    b.ep = upper == 'P' && std::abs(to - from) == 16 ? (from + to) / 2 : -1;
    for (int s : {from, to}) {
      if (s == 4) b.wk = b.wq = false;
      if (s == 60) b.bk = b.bq = false;
      if (s == 0) b.wq = false;
      if (s == 7) b.wk = false;
      if (s == 56) b.bq = false;
      if (s == 63) b.bk = false;
    }
    b.white = !white;
    return b;
  }

  std::vector<std::string> pseudo_moves() const {
    std::vector<std::string> out;
    auto add = [&](int from, int to) { out.push_back(name(from) + name(to)); };
    for (int s = 0; s < 64; ++s) {
      const char p = sq[std::size_t(s)];
      if (!own(p, white)) continue;
      const int f = s % 8, r = s / 8;
      const char u = char(p & ~32);
      auto target_ok = [&](int ff, int rr) { return on_board(ff, rr) && !own(at(ff, rr), white); };
      if (u == 'P') {
        const int dir = white ? 1 : -1;
        const int last = white ? 7 : 0;
        auto pawn_to = [&](int to) {
          if (to / 8 == last) {
            for (char promo : {'q', 'r', 'b', 'n'}) out.push_back(name(s) + name(to) + promo);
          } else {
            add(s, to);
          }
        };
        if (on_board(f, r + dir) && at(f, r + dir) == '.') {
          pawn_to(s + 8 * dir);
          const int start = white ? 1 : 6;
          if (r == start && at(f, r + 2 * dir) == '.') add(s, s + 16 * dir);
        }
        for (int df : {-1, 1}) {
          if (!on_board(f + df, r + dir)) continue;
          const int to = (r + dir) * 8 + f + df;
          const char t = sq[std::size_t(to)];
          if ((t != '.' && !own(t, white)) || to == ep) pawn_to(to);
        }
      } else if (u == 'N' || u == 'K') {
        static const int knight[8][2] = {{1, 2}, {2, 1}, {2, -1}, {1, -2}, {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
        static const int king_steps[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
        for (auto& d : (u == 'N' ? knight : king_steps))
          if (target_ok(f + d[0], r + d[1])) add(s, (r + d[1]) * 8 + f + d[0]);
      } else {
        static const int dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
        for (int i = 0; i < 8; ++i) {
          if (u == 'R' && i >= 4) continue;
          if (u == 'B' && i < 4) continue;
          int ff = f + dirs[i][0], rr = r + dirs[i][1];
          while (on_board(ff, rr)) {
            const char t = at(ff, rr);
            if (own(t, white)) break;
            add(s, rr * 8 + ff);
            if (t != '.') break;
            ff += dirs[i][0];
            rr += dirs[i][1];
          }
        }
      }
    }
    // Castling: path empty, king not in check and not crossing attacked squares.
    const int k = white ? 4 : 60;
    const bool them = !white;
    if (sq[std::size_t(k)] == (white ? 'K' : 'k') && !attacked(k, them)) {
      if ((white ? wk : bk) && sq[std::size_t(k + 1)] == '.' && sq[std::size_t(k + 2)] == '.' &&
          sq[std::size_t(k + 3)] == (white ? 'R' : 'r') && !attacked(k + 1, them) && !attacked(k + 2, them))
        add(k, k + 2);
      if ((white ? wq : bq) && sq[std::size_t(k - 1)] == '.' && sq[std::size_t(k - 2)] == '.' &&
          sq[std::size_t(k - 3)] == '.' && sq[std::size_t(k - 4)] == (white ? 'R' : 'r') &&
          !attacked(k - 1, them) && !attacked(k - 2, them))
        add(k, k - 2);
    }
    return out;
  }

  // Legal = own king not attacked after the move.
  std::vector<std::string> legal_moves() const {
    std::vector<std::string> out;
    for (const auto& m : pseudo_moves()) {
      const Board b = play(m);
      if (!b.attacked(b.king(white), !white)) out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::uint64_t perft(int depth) const {
    if (depth == 0) return 1;
    std::uint64_t n = 0;
    for (const auto& m : legal_moves()) n += play(m).perft(depth - 1);
    return n;
  }
};

}  // namespace naive
