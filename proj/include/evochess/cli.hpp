#pragma once

// Command-line front end: evolve, bench, match, search, perft, elo, decode.
// Exit status 0 on success, 1 on input errors, 2 on internal invariant
// violations.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "evochess/evolve.hpp"
#include "evochess/harness.hpp"
#include "evochess/version.hpp"

namespace evochess::cli {

using nlohmann::ordered_json;

enum class Format { Csv, Json };

// "default", "disabled", "random" (drawn from seed) or a 70-character bit
// string, optionally followed by name=value overrides.
inline SearchParams resolve_params(const std::string& spec, std::uint64_t seed,
                                   const std::vector<std::string>& overrides = {}) {
  SearchParams p;
  if (spec == "default") {
    p = SearchParams::defaults();
  } else if (spec == "disabled") {
    p = SearchParams::disabled();
  } else if (spec == "random") {
    p = decode(random_chromosome(seed));
  } else {
    try {
      p = decode(chromosome_from_text(spec));
    } catch (const std::invalid_argument& e) {
      throw InputError("bad parameter source '" + spec + "': " + e.what());
    }
  }
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("override '" + item + "' is not name=value");
    const std::string name = item.substr(0, eq);
    int index = -1;
    for (int i = 0; i < ParamCount; ++i)
      if (ParamLayout[i].name == name) index = i;
    if (index < 0) throw InputError("unknown parameter '" + name + "'");
    int value = 0;
    try {
      std::size_t used = 0;
      value = std::stoi(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw InputError("override '" + item + "' needs an integer value");
    }
    if (value < 0 || value > ParamLayout[index].max)
      throw InputError("parameter '" + name + "' must lie in [0, " +
                       std::to_string(ParamLayout[index].max) + "]");
    set_field(p, index, value);
  }
  return p;
}

inline ordered_json params_json(const SearchParams& p) {
  ordered_json j;
  for (int i = 0; i < ParamCount; ++i) j[std::string(ParamLayout[i].name)] = get_field(p, i);
  return j;
}

inline Position parse_fen_arg(const std::string& fen) {
  if (fen == "startpos") return Position::start();
  try {
    return Position::from_fields(fen);
  } catch (const ParseError& e) {
    throw InputError(std::string("bad FEN: ") + e.what());
  }
}

// Output goes to a file when a path is given, otherwise to `fallback`. The
// file is opened only after all inputs have been validated.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback, bool append = false) {
    if (path.empty() || path == "-") {
      out_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, append ? std::ios::app : std::ios::trunc);
    if (!*file_) throw InputError("cannot write '" + path + "'");
    out_ = file_.get();
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_ = nullptr;
};

inline void write_header(std::ostream& out, Format format, const std::string& command,
                         std::uint64_t seed, const ordered_json& config) {
  if (format == Format::Json) {
    ordered_json h;
    h["program"] = "evochess";
    h["version"] = Version;
    h["command"] = command;
    h["seed"] = seed;
    h["config"] = config;
    out << h.dump() << '\n';
    return;
  }
  out << "# evochess " << Version << ' ' << command << '\n';
  out << "# seed " << seed << '\n';
  for (const auto& [key, value] : config.items())
    out << "# " << key << ' ' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

inline std::string population_text(const std::vector<Chromosome>& population) {
  std::string s;
  for (const auto& c : population) {
    if (!s.empty()) s += ';';
    s += to_text(c);
  }
  return s;
}

inline std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

inline const char* CsvLogColumns =
    "generation,best_nodes,mean_nodes,best_solved,best_chromosome,population,rng_state";

inline void write_generation(std::ostream& out, Format format, const GenerationLog& g) {
  if (format == Format::Json) {
    ordered_json j;
    j["generation"] = g.generation;
    j["best_nodes"] = g.best_nodes;
    j["mean_nodes"] = g.mean_nodes;
    j["best_solved"] = g.best_solved;
    j["best_chromosome"] = to_text(g.best);
    j["solved"] = g.solved;
    std::vector<std::string> pop;
    for (const auto& c : g.population) pop.push_back(to_text(c));
    j["population"] = pop;
    j["rng_state"] = g.rng_state;
    out << j.dump() << '\n';
  } else {
    out << g.generation << ',' << g.best_nodes << ',' << fixed(g.mean_nodes, 1) << ','
        << g.best_solved << ',' << to_text(g.best) << ',' << population_text(g.population) << ','
        << g.rng_state << '\n';
  }
  out.flush();
}

// Reads the last generation line of a log written by `evolve`.
inline ResumePoint read_resume_point(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open resume log '" + path + "'");
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#' && line.rfind("generation,", 0) != 0 &&
        line.find("\"program\"") == std::string::npos)
      last = line;
  if (last.empty()) throw InputError("resume log '" + path + "' has no generation lines");

  ResumePoint point;
  try {
    if (last[0] == '{') {
      const auto j = nlohmann::json::parse(last);
      point.generation = j.at("generation").get<int>();
      for (const auto& c : j.at("population")) point.population.push_back(chromosome_from_text(c.get<std::string>()));
      point.rng_state = j.at("rng_state").get<std::string>();
    } else {
      std::vector<std::string> cols;
      std::stringstream ss(last);
      for (std::string col; std::getline(ss, col, ',');) cols.push_back(col);
      if (cols.size() != 7) throw std::invalid_argument("expected 7 columns");
      point.generation = std::stoi(cols[0]);
      std::stringstream pop(cols[5]);
      for (std::string c; std::getline(pop, c, ';');) point.population.push_back(chromosome_from_text(c));
      point.rng_state = cols[6];
    }
  } catch (const std::exception& e) {
    throw InputError("resume log '" + path + "': " + e.what());
  }
  return point;
}

inline int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chess search parameters tuned by a genetic algorithm", "evochess"};
  app.require_subcommand(1);
  app.set_version_flag("--version", Version);

  std::uint64_t seed = 1;
  int jobs = 1;
  std::string format_name = "csv";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Random seed")->capture_default_str();
    sub->add_option("--jobs", jobs, "Concurrent evaluations")->capture_default_str()->check(CLI::Range(1, 256));
    sub->add_option("--format", format_name, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
  };

  // evolve
  GaConfig ga;
  std::string suite_path, log_path, resume_path;
  auto* evolve = app.add_subcommand("evolve", "Evolve search parameters on a test suite");
  add_common(evolve);
  evolve->add_option("--suite", suite_path, "EPD test suite")->required();
  evolve->add_option("--population", ga.population_size)->capture_default_str();
  evolve->add_option("--generations", ga.generations)->capture_default_str();
  evolve->add_option("--crossover", ga.crossover_rate, "Crossover rate")->capture_default_str();
  evolve->add_option("--mutation", ga.mutation_rate, "Mutation rate per bit")->capture_default_str();
  evolve->add_option("--elitism", ga.elitism_count)->capture_default_str();
  evolve->add_option("--node-cap", ga.node_cap)->capture_default_str();
  evolve->add_option("--log", log_path, "Generation log (default: stdout)");
  evolve->add_option("--resume", resume_path, "Continue the run recorded in this log, appending to it");

  // bench, search and match share parameter sources
  std::string params_spec = "default";
  std::vector<std::string> overrides;
  std::uint64_t node_cap = 500000;
  std::string out_path;
  auto* bench = app.add_subcommand("bench", "Solve a test suite and report node counts");
  add_common(bench);
  bench->add_option("--suite", suite_path)->required();
  bench->add_option("--params", params_spec, "default | disabled | random | 70-bit chromosome")->capture_default_str();
  bench->add_option("--set", overrides, "Override one parameter, name=value");
  bench->add_option("--node-cap", node_cap)->capture_default_str();
  bench->add_option("--out", out_path, "Report file (default: stdout)");

  std::string a_spec = "default", b_spec = "random", openings_path, pgn_path;
  GameOptions game;
  auto* match = app.add_subcommand("match", "Play both colors of every opening");
  add_common(match);
  match->add_option("--openings", openings_path, "FEN file, one position per line")->required();
  match->add_option("--a", a_spec, "Side A parameters")->capture_default_str();
  match->add_option("--b", b_spec, "Side B parameters")->capture_default_str();
  match->add_option("--nodes", game.nodes_per_move, "Nodes per move")->capture_default_str()->check(CLI::PositiveNumber);
  match->add_option("--max-plies", game.max_plies)->capture_default_str()->check(CLI::PositiveNumber);
  match->add_option("--seconds", game.seconds_per_move, "Wall-clock seconds per move (not reproducible)")
      ->check(CLI::NonNegativeNumber);
  match->add_option("--out", out_path, "Per-game report (default: stdout)");
  match->add_option("--pgn", pgn_path, "PGN export");

  std::string fen = "startpos";
  int depth = 0;
  auto* search = app.add_subcommand("search", "Search a single position");
  add_common(search);
  search->add_option("--fen", fen)->capture_default_str();
  search->add_option("--params", params_spec)->capture_default_str();
  search->add_option("--set", overrides);
  search->add_option("--nodes", node_cap)->capture_default_str()->check(CLI::PositiveNumber);
  search->add_option("--depth", depth, "Maximum depth in plies (0: unlimited)")->check(CLI::Range(0, MaxSearchDepth));

  auto* perft_cmd = app.add_subcommand("perft", "Count leaf nodes of the legal move tree");
  perft_cmd->add_option("--fen", fen)->capture_default_str();
  perft_cmd->add_option("--depth", depth)->required()->check(CLI::Range(0, 10));
  bool divide = false;
  perft_cmd->add_flag("--divide", divide, "Per-move subtotals");

  double wpct = 0;
  auto* elo = app.add_subcommand("elo", "Elo difference for a winning percentage");
  elo->add_option("--wpct", wpct, "Winning percentage, 0..100")->required()->check(CLI::Range(0.0, 100.0));

  std::string chromosome;
  auto* decode_cmd = app.add_subcommand("decode", "List the parameters a chromosome encodes");
  decode_cmd->add_option("chromosome", chromosome, "70-character bit string")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const Format format = format_name == "json" ? Format::Json : Format::Csv;
  try {
    if (*evolve) {
      ga.seed = seed;
      ga.jobs = jobs;
      try {
        ga.validate();
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      const auto suite = load_epd_file(suite_path);
      if (suite.empty()) throw InputError("suite '" + suite_path + "' has no positions");
      std::unique_ptr<ResumePoint> resume;
      if (!resume_path.empty()) {
        resume = std::make_unique<ResumePoint>(read_resume_point(resume_path));
        if (int(resume->population.size()) != ga.population_size)
          throw InputError("resume log population size differs from --population");
      }
      ordered_json config;
      config["suite"] = suite_path;
      config["positions"] = suite.size();
      config["population"] = ga.population_size;
      config["generations"] = ga.generations;
      config["crossover"] = ga.crossover_rate;
      config["mutation"] = ga.mutation_rate;
      config["elitism"] = ga.elitism_count;
      config["node_cap"] = ga.node_cap;
      Sink log(resume ? resume_path : log_path, out, bool(resume));
      if (!resume) {
        write_header(*log, format, "evolve", seed, config);
        if (format == Format::Csv) *log << CsvLogColumns << '\n';
      }
      const auto result = run_evolution(ga, suite, [&](const GenerationLog& g) {
        write_generation(*log, format, g);
        err << "generation " << g.generation << ": best " << g.best_nodes << " nodes, "
            << g.best_solved << " solved\n";
      }, resume.get());
      if (!log_path.empty() || resume) {
        out << "best " << to_text(result.best.chromosome) << '\n'
            << "total_nodes " << result.best.total_nodes << '\n'
            << "solved " << result.best.solved << '\n'
            << describe(decode(result.best.chromosome));
      }
      return 0;
    }

    if (*bench) {
      const SearchParams params = resolve_params(params_spec, seed, overrides);
      if (node_cap < 1) throw InputError("node cap must be positive");
      const auto suite = load_epd_file(suite_path);
      if (suite.empty()) throw InputError("suite '" + suite_path + "' has no positions");
      ordered_json config;
      config["suite"] = suite_path;
      config["node_cap"] = node_cap;
      config["params"] = params_json(params);
      Sink sink(out_path, out);
      const SuiteReport report = run_suite(suite, params, node_cap, jobs);
      write_header(*sink, format, "bench", seed, config);
      if (format == Format::Json) {
        for (const auto& row : report.rows)
          *sink << ordered_json{{"id", row.id}, {"solved", row.solved}, {"nodes", row.nodes}, {"depth", row.depth}}.dump()
                << '\n';
        *sink << ordered_json{{"positions", report.rows.size()}, {"solved", report.solved}, {"total_nodes", report.total_nodes}}.dump()
              << '\n';
      } else {
        *sink << "id,solved,nodes,depth\n";
        for (const auto& row : report.rows)
          *sink << row.id << ',' << int(row.solved) << ',' << row.nodes << ',' << row.depth << '\n';
        *sink << "# solved " << report.solved << '/' << report.rows.size() << '\n'
              << "# total_nodes " << report.total_nodes << '\n';
      }
      return 0;
    }

    if (*match) {
      const SearchParams a = resolve_params(a_spec, seed);
      const SearchParams b = resolve_params(b_spec, seed);
      const auto openings = load_fen_file(openings_path);
      if (openings.empty()) throw InputError("openings file '" + openings_path + "' has no positions");
      ordered_json config;
      config["openings"] = openings_path;
      config["games"] = openings.size() * 2;
      config["nodes_per_move"] = game.nodes_per_move;
      config["max_plies"] = game.max_plies;
      config["seconds_per_move"] = game.seconds_per_move;
      config["a"] = a_spec == "random" || a_spec == "default" || a_spec == "disabled" ? a_spec : "chromosome";
      config["a_chromosome"] = to_text(encode(a));
      config["b"] = b_spec == "random" || b_spec == "default" || b_spec == "disabled" ? b_spec : "chromosome";
      config["b_chromosome"] = to_text(encode(b));
      Sink sink(out_path, out);
      std::unique_ptr<Sink> pgn;
      if (!pgn_path.empty()) pgn = std::make_unique<Sink>(pgn_path, out);
      const MatchResult m = run_match(a, b, openings, game, jobs);
      write_header(*sink, format, "match", seed, config);
      if (format == Format::Json) {
        for (const auto& g : m.games)
          *sink << ordered_json{{"opening", g.opening_index}, {"a_color", g.a_is_white ? "white" : "black"},
                                {"result", result_text(g.result)}, {"termination", g.termination},
                                {"plies", g.moves.size()}}.dump()
                << '\n';
        *sink << ordered_json{{"wins", m.wins}, {"draws", m.draws}, {"losses", m.losses},
                              {"w", m.score_fraction()}, {"rd", format_elo(m.elo())}}.dump()
              << '\n';
      } else {
        *sink << "opening,a_color,result,termination,plies\n";
        for (const auto& g : m.games)
          *sink << g.opening_index << ',' << (g.a_is_white ? "white" : "black") << ','
                << result_text(g.result) << ',' << g.termination << ',' << g.moves.size() << '\n';
        *sink << "# wins " << m.wins << " draws " << m.draws << " losses " << m.losses << '\n'
              << "# W% " << fixed(100 * m.score_fraction(), 1) << " RD " << format_elo(m.elo()) << '\n';
      }
      if (pgn) write_pgn(**pgn, m, "A", "B");
      return 0;
    }

    if (*search) {
      const SearchParams params = resolve_params(params_spec, seed, overrides);
      const Position pos = parse_fen_arg(fen);
      if (!has_legal_move(pos)) throw InputError("position has no legal moves");
      Searcher searcher;
      const SearchResult r = searcher.search(
          pos, params, SearchBudget{node_cap, depth ? depth : MaxSearchDepth}, {},
          [&](const IterationInfo& it) {
            out << "depth " << it.depth << " score " << it.score << " nodes " << it.nodes << " move "
                << it.best_move.uci() << '\n';
            return false;
          });
      out << "bestmove " << r.best_move.uci() << " (" << to_san(pos, r.best_move)
          << ") score " << r.score << " nodes " << r.nodes << '\n';
      return 0;
    }

    if (*perft_cmd) {
      Position pos = parse_fen_arg(fen);
      if (divide && depth > 0) {
        std::uint64_t total = 0;
        for (const Move m : generate_legal_moves(pos)) {
          const Undo u = pos.apply_move(m);
          const std::uint64_t n = perft(pos, depth - 1);
          pos.unapply_move(u);
          out << m.uci() << ": " << n << '\n';
          total += n;
        }
        out << total << '\n';
      } else {
        out << perft(pos, depth) << '\n';
      }
      return 0;
    }

    if (*elo) {
      out << format_elo(elo_difference(wpct / 100.0)) << '\n';
      return 0;
    }

    if (*decode_cmd) {
      try {
        out << describe(decode(chromosome_from_text(chromosome)));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      return 0;
    }
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace evochess::cli
