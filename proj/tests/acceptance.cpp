// Acceptance checks, one per criterion. `acceptance <name>` runs one check,
// `acceptance` runs them all. Each prints "PASS <name>: ..." or
// "FAIL <name>: ..."; the exit status is non-zero if any check failed.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "naive_board.hpp"
#include "negamax_oracle.hpp"
#include "support.hpp"

using namespace evochess;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

// Tolerances and scales.
constexpr int OracleCount = 100;
constexpr double NullMoveMaxRatio = 0.75;
constexpr int NullMoveDepth = 6;
constexpr int CodecTrials = 10000;
constexpr double EloTolerance = 1.0;
constexpr double MinImprovement = 0.10;
constexpr double MinMatchScore = 0.55;
constexpr std::uint64_t MatchNodes = 200000;

GaConfig desk_config() {
  GaConfig c;
  c.population_size = 10;
  c.generations = 20;
  c.node_cap = 100000;
  c.seed = 1;
  return c;
}

const std::vector<EpdRecord>& bundled_suite() {
  static const auto suite = load_epd_file(test::data_path("suite50.epd"));
  return suite;
}

Outcome perft_check() {
  const std::uint64_t expected[] = {20, 400, 8902, 197281, 4865609};
  std::ostringstream detail;
  bool pass = true;
  for (int depth = 1; depth <= 5; ++depth) {
    Position pos = Position::start();
    const std::uint64_t n = perft(pos, depth);
    // The mailbox generator is slow; it confirms the shallower counts.
    const std::uint64_t oracle = depth <= 4 ? naive::Board::from_fen(std::string(StartFen)).perft(depth) : expected[depth - 1];
    pass = pass && n == expected[depth - 1] && n == oracle;
    detail << (depth > 1 ? " " : "") << n;
  }
  return {pass, "start position depths 1-5: " + detail.str()};
}

Outcome oracle_check() {
  const auto positions = test::random_positions(2024, OracleCount, 0, 80);
  Searcher searcher;
  test::NegamaxOracle oracle;
  int mismatches = 0;
  std::ostringstream first;
  for (int i = 0; i < OracleCount; ++i) {
    const int depth = 1 + i % 4;
    const Score want = oracle.search(positions[std::size_t(i)], depth);
    const Score got = test::plain_engine_score(positions[std::size_t(i)], depth, searcher);
    if (want != got && mismatches++ == 0)
      first << "; first mismatch " << positions[std::size_t(i)].fen() << " depth " << depth << ": " << got
            << " vs " << want;
  }
  return {mismatches == 0,
          std::to_string(OracleCount - mismatches) + "/" + std::to_string(OracleCount) + " root scores equal" + first.str()};
}

Outcome null_move_check() {
  SearchParams null_only = SearchParams::disabled();
  null_only.null_move_use = true;
  null_only.null_move_reduction = 2;
  null_only.null_move_adaptive = false;
  Searcher searcher;
  std::uint64_t with = 0, without = 0;
  for (const auto& rec : bundled_suite()) {
    const SearchBudget budget{~std::uint64_t{0}, NullMoveDepth};
    with += searcher.search(rec.position, null_only, budget).nodes;
    without += searcher.search(rec.position, SearchParams::disabled(), budget).nodes;
  }
  const double ratio = double(with) / double(without);
  std::ostringstream d;
  d << "depth " << NullMoveDepth << " nodes " << with << " vs " << without << ", ratio " << ratio
    << " (limit " << NullMoveMaxRatio << ")";
  return {ratio <= NullMoveMaxRatio, d.str()};
}

Outcome codec_check() {
  Rng rng(2025);
  int failures = 0;
  for (int i = 0; i < CodecTrials; ++i) {
    SearchParams p;
    for (int f = 0; f < ParamCount; ++f)
      set_field(p, f, int(rng.next_u64() % std::uint64_t(ParamLayout[std::size_t(f)].max + 1)));
    failures += decode(encode(p)) != p;
  }
  int adjacency_failures = 0;
  for (int width : {1, 2, 3, 5, 10})
    for (unsigned v = 0; v + 1 < (1u << width); ++v)
      adjacency_failures += std::popcount(gray_encode(v) ^ gray_encode(v + 1)) != 1;
  return {failures == 0 && adjacency_failures == 0,
          std::to_string(CodecTrials - failures) + "/" + std::to_string(CodecTrials) +
              " round trips, " + std::to_string(adjacency_failures) + " Gray adjacency failures"};
}

Outcome elo_check() {
  const double a = elo_difference(0.595), b = elo_difference(0.714);
  bool antisymmetric = true;
  for (int i = 1; i < 1000; ++i)
    antisymmetric = antisymmetric && elo_difference(i / 1000.0) == -elo_difference(1 - i / 1000.0);
  std::ostringstream d;
  d << "59.5% -> " << format_elo(a) << ", 71.4% -> " << format_elo(b)
    << (antisymmetric ? ", antisymmetric" : ", NOT antisymmetric");
  return {std::abs(a - 67) <= EloTolerance && std::abs(b - 159) <= EloTolerance && antisymmetric, d.str()};
}

Outcome ga_invariants_check() {
  GaConfig config = desk_config();
  config.generations = 2;
  const EvolutionResult first = run_evolution(config, bundled_suite());
  const EvolutionResult again = run_evolution(config, bundled_suite());
  config.jobs = 2;
  const EvolutionResult parallel = run_evolution(config, bundled_suite());
  const bool reproducible = first.log == again.log && first.log == parallel.log;
  bool monotone = true;
  for (std::size_t g = 1; g < first.log.size(); ++g)
    monotone = monotone && first.log[g].best_nodes <= first.log[g - 1].best_nodes;
  std::ostringstream d;
  d << "best nodes";
  for (const auto& g : first.log) d << ' ' << g.best_nodes;
  d << (reproducible ? ", identical at jobs 1 and 2" : ", runs differ") << (monotone ? "" : ", elitism violated");
  return {reproducible && monotone, d.str()};
}

EvolutionResult desk_evolution() {
  return run_evolution(desk_config(), bundled_suite(), [](const GenerationLog& g) {
    std::cerr << "generation " << g.generation << ": best " << g.best_nodes << " nodes, " << g.best_solved
              << " solved\n";
  });
}

Outcome evolution_check() {
  const EvolutionResult r = desk_evolution();
  const GenerationLog &first = r.log.front(), &last = r.log.back();
  const double improvement = 1.0 - double(last.best_nodes) / double(first.best_nodes);
  std::ostringstream d;
  d << "best nodes " << first.best_nodes << " -> " << last.best_nodes << " (" << 100 * improvement
    << "%), solved " << first.best_solved << " -> " << last.best_solved;
  return {improvement >= MinImprovement && last.best_solved >= first.best_solved, d.str()};
}

Outcome match_check() {
  const EvolutionResult r = desk_evolution();
  // The opponent is the first random organism of generation 0.
  const Chromosome opponent = r.log.front().population.front();
  const auto openings = load_fen_file(test::data_path("openings50.fen"));
  GameOptions options;
  options.nodes_per_move = MatchNodes;
  const MatchResult m = run_match(decode(r.best.chromosome), decode(opponent), openings, options);
  std::ostringstream d;
  d << "+" << m.wins << " =" << m.draws << " -" << m.losses << " over " << m.game_count() << " games, W% "
    << 100 * m.score_fraction() << ", RD " << format_elo(m.elo());
  return {m.score_fraction() > MinMatchScore, d.str()};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> Checks = {
    {"perft", perft_check},
    {"oracle", oracle_check},
    {"null_move", null_move_check},
    {"codec", codec_check},
    {"elo", elo_check},
    {"ga_invariants", ga_invariants_check},
    {"evolution", evolution_check},
    {"match", match_check},
};

}  // namespace

int main(int argc, char** argv) {
  const std::string only = argc > 1 ? argv[1] : "";
  bool known = only.empty();
  int failures = 0;
  for (const auto& [name, check] : Checks) {
    if (!only.empty() && name != only) continue;
    known = true;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << " [" << std::lround(seconds) << " s]"
              << std::endl;
    failures += !o.pass;
  }
  if (!known) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return failures ? 1 : 0;
}
