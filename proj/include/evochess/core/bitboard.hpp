#pragma once

// Bitboards and precomputed attack tables. Sliding attacks use magic
// bitboards whose multipliers are searched once at startup with a fixed-seed
// generator, so the tables are identical on every run.

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "evochess/core/types.hpp"

namespace evochess {

using Bitboard = std::uint64_t;

constexpr Bitboard bb(Square s) { return Bitboard{1} << s; }

constexpr Bitboard FileA = 0x0101010101010101ULL;
constexpr Bitboard FileH = FileA << 7;
constexpr Bitboard Rank1 = 0xFFULL;
constexpr Bitboard Rank8 = Rank1 << 56;

constexpr Bitboard file_bb(int f) { return FileA << f; }
constexpr Bitboard rank_bb(int r) { return Rank1 << (8 * r); }

inline int popcount(Bitboard b) { return std::popcount(b); }
inline Square lsb(Bitboard b) { return std::countr_zero(b); }
inline Square pop_lsb(Bitboard& b) {
  Square s = lsb(b);
  b &= b - 1;
  return s;
}

namespace detail {

// Attacks of a slider on an empty-ish board computed ray by ray; used to
// build the magic tables and as the reference in tests.
inline Bitboard slide(Square s, Bitboard occupied, const int (&deltas)[4][2]) {
  Bitboard attacks = 0;
  for (const auto& d : deltas) {
    int f = file_of(s) + d[0];
    int r = rank_of(s) + d[1];
    while (f >= 0 && f < 8 && r >= 0 && r < 8) {
      Square t = make_square(f, r);
      attacks |= bb(t);
      if (occupied & bb(t)) break;
      f += d[0];
      r += d[1];
    }
  }
  return attacks;
}

constexpr int RookDeltas[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
constexpr int BishopDeltas[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

struct Magic {
  Bitboard mask = 0;
  Bitboard magic = 0;
  unsigned shift = 0;
  std::size_t offset = 0;

  std::size_t index(Bitboard occupied) const {
    return offset + std::size_t(((occupied & mask) * magic) >> shift);
  }
};

class Tables {
 public:
  Tables() {
    for (Square s = 0; s < 64; ++s) {
      const int f = file_of(s), r = rank_of(s);
      auto add = [&](Bitboard& target, int df, int dr) {
        int nf = f + df, nr = r + dr;
        if (nf >= 0 && nf < 8 && nr >= 0 && nr < 8) target |= bb(make_square(nf, nr));
      };
      for (auto [df, dr] : {std::pair{1, 2}, {2, 1}, {2, -1}, {1, -2},
                            {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}})
        add(knight[s], df, dr);
      for (int df = -1; df <= 1; ++df)
        for (int dr = -1; dr <= 1; ++dr)
          if (df || dr) add(king[s], df, dr);
      add(pawn[White][s], -1, 1);
      add(pawn[White][s], 1, 1);
      add(pawn[Black][s], -1, -1);
      add(pawn[Black][s], 1, -1);
    }
    std::uint64_t seed = 0x9E3779B97F4A7C15ULL;
    init_magics(rook_magics, rook_table, RookDeltas, seed);
    init_magics(bishop_magics, bishop_table, BishopDeltas, seed);

    for (Square a = 0; a < 64; ++a)
      for (Square b = 0; b < 64; ++b) {
        if (a == b) continue;
        for (const auto* deltas : {&RookDeltas, &BishopDeltas}) {
          if (slide(a, 0, *deltas) & bb(b)) {
            between[a][b] = slide(a, bb(b), *deltas) & slide(b, bb(a), *deltas);
            line[a][b] = (slide(a, 0, *deltas) & slide(b, 0, *deltas)) | bb(a) | bb(b);
          }
        }
      }
  }

  Bitboard rook(Square s, Bitboard occupied) const {
    return rook_table[rook_magics[s].index(occupied)];
  }
  Bitboard bishop(Square s, Bitboard occupied) const {
    return bishop_table[bishop_magics[s].index(occupied)];
  }

  std::array<Bitboard, 64> knight{};
  std::array<Bitboard, 64> king{};
  std::array<std::array<Bitboard, 64>, 2> pawn{};
  // Squares strictly between two aligned squares.
  std::array<std::array<Bitboard, 64>, 64> between{};
  // Full line through two aligned squares (empty when not aligned).
  std::array<std::array<Bitboard, 64>, 64> line{};

 private:
  static std::uint64_t next(std::uint64_t& state) {
    // xorshift64*
    state ^= state >> 12;
    state ^= state << 25;
    state ^= state >> 27;
    return state * 0x2545F4914F6CDD1DULL;
  }

  static void init_magics(std::array<Magic, 64>& magics, std::vector<Bitboard>& table,
                          const int (&deltas)[4][2], std::uint64_t& seed) {
    std::vector<Bitboard> occupancy, reference;
    std::vector<int> epoch;
    for (Square s = 0; s < 64; ++s) {
      const Bitboard edges = ((Rank1 | Rank8) & ~rank_bb(rank_of(s))) |
                             ((FileA | FileH) & ~file_bb(file_of(s)));
      Magic& m = magics[s];
      m.mask = slide(s, 0, deltas) & ~edges;
      const int bits = popcount(m.mask);
      m.shift = 64 - bits;
      m.offset = table.size();
      const std::size_t size = std::size_t{1} << bits;
      table.resize(table.size() + size);

      occupancy.clear();
      reference.clear();
      Bitboard sub = 0;
      do {  // Carry-Rippler enumeration of all subsets of the mask.
        occupancy.push_back(sub);
        reference.push_back(slide(s, sub, deltas));
        sub = (sub - m.mask) & m.mask;
      } while (sub);

      epoch.assign(size, 0);
      for (int attempt = 1;; ++attempt) {
        do {
          m.magic = next(seed) & next(seed) & next(seed);
        } while (popcount((m.mask * m.magic) >> 56) < 6);
        bool ok = true;
        for (std::size_t i = 0; i < occupancy.size() && ok; ++i) {
          std::size_t idx = std::size_t(((occupancy[i] & m.mask) * m.magic) >> m.shift);
          if (epoch[idx] < attempt) {
            epoch[idx] = attempt;
            table[m.offset + idx] = reference[i];
          } else if (table[m.offset + idx] != reference[i]) {
            ok = false;
          }
        }
        if (ok) break;
      }
    }
  }

  std::array<Magic, 64> rook_magics{};
  std::array<Magic, 64> bishop_magics{};
  std::vector<Bitboard> rook_table;
  std::vector<Bitboard> bishop_table;
};

inline const Tables& tables() {
  static const Tables t;
  return t;
}

// Forces table construction before any hot loop.
inline const Tables& g_tables = tables();

}  // namespace detail

inline Bitboard knight_attacks(Square s) { return detail::g_tables.knight[s]; }
inline Bitboard king_attacks(Square s) { return detail::g_tables.king[s]; }
inline Bitboard pawn_attacks(Color c, Square s) { return detail::g_tables.pawn[c][s]; }
inline Bitboard bishop_attacks(Square s, Bitboard occupied) {
  return detail::g_tables.bishop(s, occupied);
}
inline Bitboard rook_attacks(Square s, Bitboard occupied) {
  return detail::g_tables.rook(s, occupied);
}
inline Bitboard queen_attacks(Square s, Bitboard occupied) {
  return bishop_attacks(s, occupied) | rook_attacks(s, occupied);
}
inline Bitboard between_bb(Square a, Square b) { return detail::g_tables.between[a][b]; }
inline Bitboard line_bb(Square a, Square b) { return detail::g_tables.line[a][b]; }

inline Bitboard attacks_of(PieceType t, Square s, Bitboard occupied) {
  switch (t) {
    case Knight: return knight_attacks(s);
    case Bishop: return bishop_attacks(s, occupied);
    case Rook: return rook_attacks(s, occupied);
    case Queen: return queen_attacks(s, occupied);
    case King: return king_attacks(s);
    default: return 0;
  }
}

}  // namespace evochess
