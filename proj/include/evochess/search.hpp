#pragma once

// Parameterized PVS searcher. Null-move pruning, futility pruning, multi-cut
// pruning and fractional-ply extensions are each governed by SearchParams;
// with all of them off this is plain fail-soft PVS plus quiescence.
//
// Depth is tracked in quarter plies. Every node entered (main search,
// quiescence, null-move searches, multi-cut probes) increments the node
// counter exactly once, and the counter never exceeds the budget.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "evochess/core/movegen.hpp"
#include "evochess/eval.hpp"
#include "evochess/params.hpp"
#include "evochess/tt.hpp"

namespace evochess {

inline constexpr int UnitsPerPly = 4;
inline constexpr int MaxPly = 128;
inline constexpr int MaxSearchDepth = 63;  // plies; extended lines stay below MaxPly
inline constexpr int MaxExtensionUnits = UnitsPerPly;

// Raised when an internal search invariant does not hold.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define EVOCHESS_INVARIANT(cond, what) \
  do {                                 \
    if (!(cond)) throw ::evochess::InvariantViolation(what); \
  } while (0)

struct SearchWindow {
  Score alpha = -Infinite;
  Score beta = Infinite;
};

struct SearchBudget {
  std::uint64_t max_nodes = 500000;
  int max_depth = MaxSearchDepth;  // plies
  // Optional wall-clock limit; non-zero makes results timing dependent.
  double max_seconds = 0.0;
};

struct SearchResult {
  Move best_move;
  Score score = 0;
  std::uint64_t nodes = 0;
  int depth_completed = 0;
  bool aborted = false;
};

struct SearchOptions {
  // Off in oracle-comparison mode: stored scores are never used to cut off.
  bool tt_cutoffs = true;
};

// Reported after each completed iteration; returning true stops the search.
struct IterationInfo {
  int depth = 0;
  Move best_move;
  Score score = 0;
  std::uint64_t nodes = 0;
};
using IterationCallback = std::function<bool(const IterationInfo&)>;

// ---------------------------------------------------------------------------
// Decision rules of the selective mechanisms, separated from the tree walk.

// Reduction actually used: one less close to the leaves when adaptive.
inline int effective_null_reduction(const SearchParams& p, int remaining_plies) {
  if (p.null_move_adaptive && remaining_plies <= p.null_move_adaptivity_depth)
    return std::max(0, p.null_move_reduction - 1);
  return p.null_move_reduction;
}

// Depth (plies) of the null-move search below a node of the given depth.
inline int null_search_depth(const SearchParams& p, int remaining_plies) {
  return remaining_plies - 1 - effective_null_reduction(p, remaining_plies);
}

inline bool null_move_allowed(const SearchParams& p, const Position& pos, bool in_check,
                              bool previous_was_null) {
  return p.null_move_use && !in_check && !previous_was_null &&
         pos.has_non_pawn_material(pos.side_to_move());
}

enum class NullOutcome { NoOp, Cutoff, BoundUpdate };

struct NullMoveResult {
  NullOutcome outcome = NullOutcome::NoOp;
  Score score = 0;           // cutoff score or the new lower bound
  bool mate_threat = false;  // the null search came back mated
};

// Runs the null-move search through `null_search(depth_units, window)`,
// which must return the score from the current side's point of view.
template <class NullSearch>
NullMoveResult null_move_step(const SearchParams& p, const Position& pos, bool in_check,
                              bool previous_was_null, SearchWindow window, int depth_units,
                              NullSearch&& null_search) {
  NullMoveResult r;
  if (!null_move_allowed(p, pos, in_check, previous_was_null)) return r;
  const int remaining = depth_units / UnitsPerPly;
  const int reduced = depth_units - UnitsPerPly * (1 + effective_null_reduction(p, remaining));
  const Score v = null_search(reduced, SearchWindow{window.beta - 1, window.beta});
  r.mate_threat = v < -MateThreshold;
  // A null move proves nothing about mates. With a mate-range beta the
  // search only serves mate-threat detection.
  if (is_mate_score(window.beta)) return r;
  if (v >= window.beta) {
    r.outcome = NullOutcome::Cutoff;
    r.score = is_mate_score(v) ? window.beta : v;
  } else if (v > window.alpha && !is_mate_score(v)) {
    r.outcome = NullOutcome::BoundUpdate;
    r.score = v;
  }
  return r;
}

inline bool futility_check(const SearchParams& p, int remaining_plies, bool in_check,
                           Score static_eval, Score alpha) {
  if (in_check || remaining_plies < 1 || remaining_plies > 3) return false;
  if (remaining_plies > p.futility_depth) return false;
  return static_eval + p.futility_threshold[remaining_plies - 1] < alpha;
}

inline bool multicut_applies(const SearchParams& p, int remaining_plies, bool in_check,
                             Bound tt_bound) {
  return p.multicut_use && !in_check && remaining_plies >= p.multicut_depth &&
         tt_bound == Bound::Lower;
}

struct MulticutResult {
  bool cutoff = false;
  int probes = 0;
  int cuts = 0;
};

// Probes up to M moves through `probe()`: 1 for a fail-high, 0 otherwise,
// -1 once the moves run out. Cuts off when C probes fail high.
template <class Probe>
MulticutResult multicut_check(const SearchParams& p, Probe&& probe) {
  MulticutResult r;
  while (r.cuts < p.multicut_cut_num && r.probes < p.multicut_move_num) {
    const int outcome = probe();
    if (outcome < 0) break;
    ++r.probes;
    r.cuts += outcome;
  }
  r.cutoff = r.cuts >= p.multicut_cut_num;
  return r;
}

struct ExtensionContext {
  bool gives_check = false;
  bool one_reply = false;                 // the position has exactly one legal move
  Square last_capture_square = NoSquare;  // opponent's immediately preceding capture
  bool passed_pawn_push = false;          // passed pawn advancing to its 7th rank
  bool mate_threat = false;               // the null-move search here was mated
};

// Squares in front of a pawn on its own and adjacent files.
inline Bitboard passed_pawn_span(Color c, Square s) {
  Bitboard files = file_bb(file_of(s));
  if (file_of(s) > 0) files |= file_bb(file_of(s) - 1);
  if (file_of(s) < 7) files |= file_bb(file_of(s) + 1);
  Bitboard ahead = 0;
  if (c == White) {
    for (int r = rank_of(s) + 1; r < 8; ++r) ahead |= rank_bb(r);
  } else {
    for (int r = rank_of(s) - 1; r >= 0; --r) ahead |= rank_bb(r);
  }
  return files & ahead;
}

// pos is the position before m is played.
inline bool is_passed_pawn_push(const Position& pos, Move m) {
  if (m.piece() != Pawn || m.is_promotion()) return false;
  const Color us = pos.side_to_move();
  return relative_rank(us, m.to()) == 6 &&
         !(passed_pawn_span(us, m.to()) & pos.pieces(~us, Pawn));
}

// Sum of the triggered extensions, capped at one ply.
inline int compute_extension(Move m, const ExtensionContext& ctx, const SearchParams& p) {
  int units = 0;
  if (ctx.gives_check) units += p.ext_check;
  if (ctx.one_reply) units += p.ext_one_reply;
  if (m.is_capture() && ctx.last_capture_square == m.to()) units += p.ext_recapture;
  if (ctx.passed_pawn_push) units += p.ext_passed_pawn;
  if (ctx.mate_threat) units += p.ext_mate_threat;
  return std::min(units, MaxExtensionUnits);
}

// Same, deriving the check and passed-pawn triggers from the position.
inline int compute_extension(Position& pos, Move m, ExtensionContext ctx,
                             const SearchParams& p) {
  ctx.passed_pawn_push = is_passed_pawn_push(pos, m);
  ctx.gives_check = pos.gives_check(m);
  return compute_extension(m, ctx, p);
}

// ---------------------------------------------------------------------------

class Searcher {
 public:
  explicit Searcher(std::size_t tt_entries = std::size_t{1} << 20) : tt_(tt_entries) {}

  SearchResult search(const Position& root, const SearchParams& params,
                      const SearchBudget& budget, const SearchOptions& options = {},
                      const IterationCallback& on_iteration = {}) {
    EVOCHESS_INVARIANT(budget.max_nodes >= 1, "node budget must be positive");
    pos_ = root;
    params_ = params;
    options_ = options;
    max_nodes_ = budget.max_nodes;
    max_seconds_ = budget.max_seconds;
    start_ = std::chrono::steady_clock::now();
    nodes_ = 0;
    probe_depth_ = 0;
    tt_.new_search();
    for (auto& k : killers_) k = {};
    for (auto& side : history_)
      for (auto& row : side) row.fill(0);
    moves_.fill(Move{});

    SearchResult result;
    const MoveList legal = generate_legal_moves(pos_);
    if (legal.empty()) return result;
    result.best_move = legal[0];

    const int max_depth = std::clamp(budget.max_depth, 1, MaxSearchDepth);
    for (int depth = 1; depth <= max_depth; ++depth) {
      root_units_ = depth * UnitsPerPly;
      root_best_ = Move{};
      Score score = 0;
      try {
        score = search_node(root_units_, -Infinite, Infinite, 0, false);
      } catch (const Aborted&) {
        result.aborted = true;
        pos_ = root;
        break;
      }
      if (!root_best_.is_null()) result.best_move = root_best_;
      result.score = score;
      result.depth_completed = depth;
      if (on_iteration &&
          on_iteration(IterationInfo{depth, result.best_move, score, nodes_}))
        break;
    }
    result.nodes = nodes_;
    return result;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Aborted {};

  void enter_node() {
    if (nodes_ >= max_nodes_) throw Aborted{};
    if (max_seconds_ > 0 && (nodes_ & 1023) == 0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
      if (elapsed.count() >= max_seconds_ && root_units_ > UnitsPerPly) throw Aborted{};
    }
    ++nodes_;
  }

  // Ordering keys: TT move, captures/queen promotions by MVV-LVA, killers,
  // then history. Ties keep generation order.
  int order_key(Move m, Move tt_move, int ply, Color us) const {
    if (m == tt_move) return 1 << 30;
    if (m.is_capture() || m.promotion() == Queen) {
      int key = (1 << 24) + PieceValue[m.captured()] * 16 - int(m.piece());
      if (m.promotion() == Queen) key += PieceValue[Queen];
      return key;
    }
    if (m.is_promotion()) return -(1 << 20);  // underpromotions last
    if (m == killers_[ply][0]) return (1 << 23) + 1;
    if (m == killers_[ply][1]) return 1 << 23;
    return history_[us][m.from()][m.to()];
  }

  void score_moves(const MoveList& moves, std::array<int, MoveList::Capacity>& keys,
                   Move tt_move, int ply) const {
    const Color us = pos_.side_to_move();
    for (std::size_t i = 0; i < moves.size(); ++i) keys[i] = order_key(moves[i], tt_move, ply, us);
  }

  // Selection step: brings the best remaining move to index i.
  static void pick(MoveList& moves, std::array<int, MoveList::Capacity>& keys, std::size_t i) {
    std::size_t best = i;
    for (std::size_t j = i + 1; j < moves.size(); ++j)
      if (keys[j] > keys[best]) best = j;
    if (best != i) {
      // Rotate rather than swap so equal keys keep their generation order.
      const Move m = moves[best];
      const int k = keys[best];
      for (std::size_t j = best; j > i; --j) {
        moves[j] = moves[j - 1];
        keys[j] = keys[j - 1];
      }
      moves[i] = m;
      keys[i] = k;
    }
  }

  void store(int ply, int depth, Score score, Bound bound, Move move) {
    if (probe_depth_ == 0) tt_.store(pos_.key(), ply, depth, score, bound, move);
  }

  Square last_capture_square(int ply) const {
    if (ply == 0) return NoSquare;
    const Move prev = moves_[ply - 1];
    return prev.is_capture() ? prev.to() : NoSquare;
  }

  Score quiescence(Score alpha, Score beta, int ply, bool count_node = true) {
    if (count_node) enter_node();
    if (ply >= MaxPly) return evaluate_static(pos_);

    const bool in_check = pos_.in_check();
    Score best = -Infinite;
    MoveList moves;
    if (in_check) {
      generate_pseudo_legal(pos_, moves, GenMode::All);
    } else {
      const Score stand_pat = evaluate_static(pos_);
      if (stand_pat >= beta) return stand_pat;
      best = stand_pat;
      alpha = std::max(alpha, stand_pat);
      generate_pseudo_legal(pos_, moves, GenMode::Tactical);
    }

    std::array<int, MoveList::Capacity> keys;
    score_moves(moves, keys, Move{}, ply);
    int legal = 0;
    for (std::size_t i = 0; i < moves.size(); ++i) {
      pick(moves, keys, i);
      const Move m = moves[i];
      if (!pos_.is_legal(m)) continue;
      ++legal;
      moves_[ply] = m;
      const Undo u = pos_.apply_move(m);
      const Score v = -quiescence(-beta, -alpha, ply + 1);
      pos_.unapply_move(u);
      if (v > best) {
        best = v;
        if (v > alpha) {
          alpha = v;
          if (v >= beta) break;
        }
      }
    }
    if (in_check && legal == 0) return mated_in(ply);
    return best;
  }

  Score search_node(int depth, Score alpha, Score beta, int ply, bool previous_was_null) {
    if (depth < UnitsPerPly) return quiescence(alpha, beta, ply);
    enter_node();
    EVOCHESS_INVARIANT(ply * UnitsPerPly + depth <= 2 * root_units_,
                       "extended line exceeds twice the nominal depth");

    const bool pv = beta - alpha > 1;
    if (ply > 0) {
      if (pos_.halfmove_clock() >= 100 || pos_.is_repetition()) return 0;
      if (ply >= MaxPly - 1) return evaluate_static(pos_);
    }

    const bool in_check = pos_.in_check();
    const int plies = depth / UnitsPerPly;
    const Score alpha_orig = alpha;

    TTEntry tte;
    const bool tt_hit = tt_.probe(pos_.key(), ply, tte);
    Move tt_move = tt_hit ? tte.move : Move{};
    if (tt_hit && options_.tt_cutoffs && !pv && ply > 0 && tte.depth >= depth) {
      if (tte.bound == Bound::Exact) return tte.score;
      if (tte.bound == Bound::Lower && tte.score >= beta) return tte.score;
      if (tte.bound == Bound::Upper && tte.score <= alpha) return tte.score;
    }

    Score best = -Infinite;
    bool mate_threat = false;

    if (ply > 0) {
      // Futility: hopeless nodes near the leaves drop into quiescence.
      if (params_.futility_depth > 0 && !in_check && plies <= 3 &&
          futility_check(params_, plies, in_check, evaluate_static(pos_), alpha))
        return quiescence(alpha, beta, ply, false);

      const NullMoveResult null = null_move_step(
          params_, pos_, in_check, previous_was_null, SearchWindow{alpha, beta}, depth,
          [&](int null_depth, SearchWindow w) {
            EVOCHESS_INVARIANT(!in_check && !previous_was_null, "illegal null move");
            moves_[ply] = Move{};
            const Undo u = pos_.apply_null();
            const Score v = -search_node(null_depth, -w.beta, -w.alpha, ply + 1, true);
            pos_.unapply_null(u);
            return v;
          });
      mate_threat = null.mate_threat;
      if (null.outcome == NullOutcome::Cutoff) {
        store(ply, depth, null.score, Bound::Lower, Move{});
        return null.score;
      }
      if (null.outcome == NullOutcome::BoundUpdate) {
        alpha = null.score;
        best = null.score;
      }

      // Expected cut-nodes only: zero-window, TT says it failed high before.
      if (!pv && !is_mate_score(beta) &&
          multicut_applies(params_, plies, in_check, tt_hit ? tte.bound : Bound::None)) {
        MoveList probes;
        generate_pseudo_legal(pos_, probes);
        std::array<int, MoveList::Capacity> keys;
        score_moves(probes, keys, tt_move, ply);
        std::size_t next = 0;
        const int probe_depth = depth - UnitsPerPly * (1 + params_.multicut_reduction);
        const MulticutResult mc = multicut_check(params_, [&]() -> int {
          while (next < probes.size()) {
            pick(probes, keys, next);
            const Move m = probes[next++];
            if (!pos_.is_legal(m)) continue;
            moves_[ply] = m;
            ++probe_depth_;
            const Undo u = pos_.apply_move(m);
            const Score v = -search_node(probe_depth, -beta, -beta + 1, ply + 1, false);
            pos_.unapply_move(u);
            --probe_depth_;
            return v >= beta ? 1 : 0;
          }
          return -1;
        });
        if (mc.cutoff) return beta;
      }
    }

    // Internal iterative deepening supplies a move to try first.
    if (pv && tt_move.is_null() && plies >= 4) {
      search_node(depth - 2 * UnitsPerPly, alpha, beta, ply, previous_was_null);
      TTEntry iid;
      if (tt_.probe(pos_.key(), ply, iid)) tt_move = iid.move;
    }

    MoveList moves;
    generate_pseudo_legal(pos_, moves);
    std::array<int, MoveList::Capacity> keys;
    score_moves(moves, keys, tt_move, ply);

    bool one_reply = false;
    if (params_.ext_one_reply > 0) {
      int legal = 0;
      for (Move m : moves)
        if (pos_.is_legal(m) && ++legal > 1) break;
      one_reply = legal == 1;
    }
    const Square recapture_square = last_capture_square(ply);
    const int max_ext = std::min(MaxExtensionUnits,
                                 2 * root_units_ - UnitsPerPly * (ply + 1) - depth + UnitsPerPly);

    Move best_move;
    int legal = 0;
    for (std::size_t i = 0; i < moves.size(); ++i) {
      pick(moves, keys, i);
      const Move m = moves[i];
      if (!pos_.is_legal(m)) continue;
      ++legal;

      ExtensionContext ctx;
      ctx.one_reply = one_reply;
      ctx.last_capture_square = recapture_square;
      ctx.passed_pawn_push = is_passed_pawn_push(pos_, m);
      ctx.mate_threat = mate_threat;

      moves_[ply] = m;
      const Undo u = pos_.apply_move(m);
      ctx.gives_check = pos_.in_check();
      int ext = 0;
      if (max_ext > 0) ext = std::min(max_ext, compute_extension(m, ctx, params_));
      const int child_depth = depth - UnitsPerPly + ext;

      Score v;
      if (legal == 1) {
        v = -search_node(child_depth, -beta, -alpha, ply + 1, false);
      } else {
        v = -search_node(child_depth, -alpha - 1, -alpha, ply + 1, false);
        if (v > alpha && v < beta) v = -search_node(child_depth, -beta, -alpha, ply + 1, false);
      }
      pos_.unapply_move(u);

      if (v > best) {
        best = v;
        best_move = m;
        if (ply == 0) root_best_ = m;
        if (v > alpha) {
          alpha = v;
          if (v >= beta) {
            if (!m.is_tactical()) {
              if (killers_[ply][0] != m) {
                killers_[ply][1] = killers_[ply][0];
                killers_[ply][0] = m;
              }
              int& h = history_[pos_.side_to_move()][m.from()][m.to()];
              h += plies * plies;
              if (h > (1 << 20)) age_history();
            }
            break;
          }
        }
      }
    }

    if (legal == 0) return in_check ? mated_in(ply) : 0;

    const Bound bound = best >= beta ? Bound::Lower : best > alpha_orig ? Bound::Exact : Bound::Upper;
    store(ply, depth, best, bound, best_move.is_null() ? tt_move : best_move);
    return best;
  }

  void age_history() {
    for (auto& side : history_)
      for (auto& row : side)
        for (int& h : row) h /= 2;
  }

  TranspositionTable tt_;
  Position pos_;
  SearchParams params_;
  SearchOptions options_;
  std::uint64_t max_nodes_ = 0;
  double max_seconds_ = 0;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
  int root_units_ = 0;
  int probe_depth_ = 0;
  Move root_best_;
  std::array<std::array<Move, 2>, MaxPly + 1> killers_{};
  std::array<std::array<std::array<int, 64>, 64>, 2> history_{};
  std::array<Move, MaxPly + 1> moves_{};
};

// One-shot convenience wrapper.
inline SearchResult search_position(const Position& pos, const SearchParams& params,
                                    const SearchBudget& budget, const SearchOptions& options = {}) {
  Searcher searcher;
  return searcher.search(pos, params, budget, options);
}

}  // namespace evochess
