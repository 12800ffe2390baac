#pragma once

// Test-suite solving and engine-vs-engine matches.

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "evochess/core/epd.hpp"
#include "evochess/core/notation.hpp"
#include "evochess/parallel.hpp"
#include "evochess/search.hpp"

namespace evochess {

// ---------------------------------------------------------------------------
// Suites

struct SolveResult {
  bool solved = false;
  std::uint64_t nodes = 0;
  int depth = 0;  // iteration that found a correct move; 0 when unsolved
};

// Deepens until an iteration's best move is one of the record's solutions.
// Unsolved positions cost exactly node_cap.
inline SolveResult solve_position(Searcher& searcher, const EpdRecord& rec,
                                  const SearchParams& params, std::uint64_t node_cap) {
  SolveResult r;
  searcher.search(rec.position, params, SearchBudget{node_cap, MaxSearchDepth}, {},
                  [&](const IterationInfo& it) {
                    if (!rec.is_best(it.best_move)) return false;
                    r.solved = true;
                    r.nodes = it.nodes;
                    r.depth = it.depth;
                    return true;
                  });
  if (!r.solved) r.nodes = node_cap;
  return r;
}

inline SolveResult solve_position(const EpdRecord& rec, const SearchParams& params,
                                  std::uint64_t node_cap) {
  Searcher searcher;
  return solve_position(searcher, rec, params, node_cap);
}

struct SuiteRow {
  std::string id;
  bool solved = false;
  std::uint64_t nodes = 0;
  int depth = 0;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  int solved = 0;
  std::uint64_t total_nodes = 0;
};

// One Searcher per worker, reused across tasks.
class SearcherPool {
 public:
  explicit SearcherPool(int jobs) : searchers_(std::size_t(std::max(jobs, 1))) {}
  int jobs() const { return int(searchers_.size()); }
  Searcher& get(int worker) {
    auto& s = searchers_[std::size_t(worker)];
    if (!s) s = std::make_unique<Searcher>();
    return *s;
  }

 private:
  std::vector<std::unique_ptr<Searcher>> searchers_;
};

inline SuiteReport summarize(std::vector<SuiteRow> rows) {
  SuiteReport report;
  report.rows = std::move(rows);
  for (const auto& row : report.rows) {
    report.solved += row.solved;
    report.total_nodes += row.nodes;
  }
  return report;
}

inline SuiteReport run_suite(const std::vector<EpdRecord>& suite, const SearchParams& params,
                             std::uint64_t node_cap, SearcherPool& pool) {
  std::vector<SuiteRow> rows(suite.size());
  parallel_for(suite.size(), pool.jobs(), [&](std::size_t i, int worker) {
    const SolveResult r = solve_position(pool.get(worker), suite[i], params, node_cap);
    rows[i] = SuiteRow{suite[i].id, r.solved, r.nodes, r.depth};
  });
  return summarize(std::move(rows));
}

inline SuiteReport run_suite(const std::vector<EpdRecord>& suite, const SearchParams& params,
                             std::uint64_t node_cap, int jobs = 1) {
  SearcherPool pool(jobs);
  return run_suite(suite, params, node_cap, pool);
}

// ---------------------------------------------------------------------------
// Games

enum class GameResult { WhiteWins, Draw, BlackWins };

inline std::string result_text(GameResult r) {
  switch (r) {
    case GameResult::WhiteWins: return "1-0";
    case GameResult::BlackWins: return "0-1";
    default: return "1/2-1/2";
  }
}

struct GameRecord {
  int opening_index = 0;
  std::string opening_fen;
  bool a_is_white = true;  // set by run_match
  GameResult result = GameResult::Draw;
  std::string termination;  // checkmate, stalemate, fifty-move, threefold, insufficient-material, ply-limit
  std::vector<Move> moves;
};

struct GameOptions {
  std::uint64_t nodes_per_move = 200000;
  int max_plies = 300;
  double seconds_per_move = 0.0;  // non-zero: wall-clock mode, not reproducible
};

// No sequence of legal moves can mate: bare kings, a single minor piece, or
// bishops that all stand on one square color.
inline bool insufficient_material(const Position& pos) {
  if (pos.pieces(Pawn) | pos.pieces(Rook) | pos.pieces(Queen)) return false;
  const Bitboard minors = pos.pieces(Knight) | pos.pieces(Bishop);
  if (popcount(minors) <= 1) return true;
  if (pos.pieces(Knight)) return false;
  constexpr Bitboard DarkSquares = 0xAA55AA55AA55AA55ULL;
  const Bitboard bishops = pos.pieces(Bishop);
  return !(bishops & DarkSquares) || !(bishops & ~DarkSquares);
}

// Terminal state of a position in a game, or an empty termination.
inline std::string game_termination(const Position& pos, int plies_played, int max_plies,
                                    GameResult& result) {
  if (!has_legal_move(pos)) {
    if (pos.in_check()) {
      result = pos.side_to_move() == White ? GameResult::BlackWins : GameResult::WhiteWins;
      return "checkmate";
    }
    result = GameResult::Draw;
    return "stalemate";
  }
  result = GameResult::Draw;
  if (pos.halfmove_clock() >= 100) return "fifty-move";
  if (pos.repetition_count() >= 2) return "threefold";
  if (insufficient_material(pos)) return "insufficient-material";
  if (plies_played >= max_plies) return "ply-limit";
  return {};
}

inline GameRecord play_game(const SearchParams& white, const SearchParams& black,
                            const Position& opening, const GameOptions& options,
                            Searcher& white_searcher, Searcher& black_searcher) {
  GameRecord game;
  game.opening_fen = opening.fen();
  Position pos = opening;
  pos.clear_history();
  for (int ply = 0;; ++ply) {
    game.termination = game_termination(pos, ply, options.max_plies, game.result);
    if (!game.termination.empty()) break;
    const bool white_to_move = pos.side_to_move() == White;
    Searcher& searcher = white_to_move ? white_searcher : black_searcher;
    const SearchResult r =
        searcher.search(pos, white_to_move ? white : black,
                        SearchBudget{options.nodes_per_move, MaxSearchDepth, options.seconds_per_move});
    EVOCHESS_INVARIANT(generate_legal_moves(pos).contains(r.best_move),
                       "search returned an illegal move");
    game.moves.push_back(r.best_move);
    pos.apply_move(r.best_move);
  }
  return game;
}

inline GameRecord play_game(const SearchParams& white, const SearchParams& black,
                            const Position& opening, const GameOptions& options) {
  Searcher w, b;
  return play_game(white, black, opening, options, w, b);
}

// ---------------------------------------------------------------------------
// Matches and Elo

// Elo difference for a score fraction, rounded to the nearest integer.
// A fraction of 0 or 1 yields -inf or +inf.
inline double elo_difference(double w) {
  if (w <= 0.0) return -std::numeric_limits<double>::infinity();
  if (w >= 1.0) return std::numeric_limits<double>::infinity();
  return std::round(400.0 * std::log10(w / (1.0 - w)));
}

// "+67", "-12", "0"; infinite differences display as +/-1000.
inline std::string format_elo(double rd) {
  const long v = std::isinf(rd) ? (rd > 0 ? 1000 : -1000) : std::lround(rd);
  return v > 0 ? "+" + std::to_string(v) : std::to_string(v);
}

struct MatchResult {
  int wins = 0;  // for side A
  int draws = 0;
  int losses = 0;
  std::vector<GameRecord> games;

  int game_count() const { return wins + draws + losses; }
  double score_fraction() const {
    return game_count() ? (wins + 0.5 * draws) / game_count() : 0.0;
  }
  double elo() const { return elo_difference(score_fraction()); }
};

// Every opening is played twice with colors swapped; results are for A.
inline MatchResult run_match(const SearchParams& a, const SearchParams& b,
                             const std::vector<Position>& openings, const GameOptions& options,
                             int jobs = 1) {
  MatchResult match;
  match.games.resize(openings.size() * 2);
  std::vector<std::unique_ptr<Searcher>> searchers(std::size_t(std::max(jobs, 1)) * 2);
  parallel_for(match.games.size(), jobs, [&](std::size_t g, int worker) {
    auto& ws = searchers[std::size_t(worker) * 2];
    auto& bs = searchers[std::size_t(worker) * 2 + 1];
    if (!ws) ws = std::make_unique<Searcher>();
    if (!bs) bs = std::make_unique<Searcher>();
    const bool a_white = g % 2 == 0;
    GameRecord game = play_game(a_white ? a : b, a_white ? b : a, openings[g / 2], options, *ws, *bs);
    game.opening_index = int(g / 2);
    game.a_is_white = a_white;
    match.games[g] = std::move(game);
  });
  for (const auto& game : match.games) {
    if (game.result == GameResult::Draw) {
      ++match.draws;
    } else if ((game.result == GameResult::WhiteWins) == game.a_is_white) {
      ++match.wins;
    } else {
      ++match.losses;
    }
  }
  return match;
}

// ---------------------------------------------------------------------------
// Output

inline void write_pgn(std::ostream& out, const MatchResult& match, const std::string& a_name,
                      const std::string& b_name) {
  int round = 1;
  for (const auto& game : match.games) {
    const std::string result = result_text(game.result);
    out << "[Event \"evochess match\"]\n"
        << "[Site \"?\"]\n"
        << "[Date \"????.??.??\"]\n"
        << "[Round \"" << round++ << "\"]\n"
        << "[White \"" << (game.a_is_white ? a_name : b_name) << "\"]\n"
        << "[Black \"" << (game.a_is_white ? b_name : a_name) << "\"]\n"
        << "[Result \"" << result << "\"]\n"
        << "[SetUp \"1\"]\n"
        << "[FEN \"" << game.opening_fen << "\"]\n"
        << "[Termination \"" << game.termination << "\"]\n"
        << "[PlyCount \"" << game.moves.size() << "\"]\n\n";
    Position pos = Position::from_fen(game.opening_fen);
    std::string line;
    auto emit = [&](const std::string& token) {
      if (line.size() + token.size() + 1 > 79) {
        out << line << '\n';
        line.clear();
      }
      if (!line.empty()) line += ' ';
      line += token;
    };
    for (std::size_t i = 0; i < game.moves.size(); ++i) {
      if (pos.side_to_move() == White)
        emit(std::to_string(pos.fullmove_number()) + ".");
      else if (i == 0)
        emit(std::to_string(pos.fullmove_number()) + "...");
      emit(to_san(pos, game.moves[i]));
      pos.apply_move(game.moves[i]);
    }
    emit(result);
    out << line << "\n\n";
  }
}

}  // namespace evochess
