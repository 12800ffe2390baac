#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "evochess/cli.hpp"
#include "support.hpp"

using namespace evochess;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  args.insert(args.begin(), "evochess");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::dispatch(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string temp_path(const std::string& name) {
  const std::string path = testing::TempDir() + "evochess_cli_" + name;
  std::filesystem::remove(path);
  return path;
}

// The first few bundled records, as a fast suite for end-to-end runs.
std::string tiny_suite() {
  const std::string path = temp_path("tiny.epd");
  std::ifstream in(test::data_path("suite50.epd"));
  std::ofstream out(path);
  int records = 0;
  for (std::string line; std::getline(in, line) && records < 4;) {
    if (line.empty() || line[0] == '#') continue;
    out << line << '\n';
    ++records;
  }
  return path;
}

}  // namespace

TEST(Cli, Perft) {
  const Invocation r = run({"perft", "--depth", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "197281\n");
  const Invocation divide = run({"perft", "--depth", "2", "--divide"});
  EXPECT_EQ(divide.code, 0);
  EXPECT_NE(divide.out.find("e2e4: 20\n"), std::string::npos);
  EXPECT_NE(divide.out.find("\n400\n"), std::string::npos);
}

TEST(Cli, Elo) {
  EXPECT_EQ(run({"elo", "--wpct", "59.5"}).out, "+67\n");
  EXPECT_EQ(run({"elo", "--wpct", "71.4"}).out, "+159\n");
  EXPECT_EQ(run({"elo", "--wpct", "100"}).out, "+1000\n");
  EXPECT_EQ(run({"elo", "--wpct", "101"}).code, 1);
}

TEST(Cli, Decode) {
  const Invocation r = run({"decode", to_text(encode(SearchParams::defaults()))});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, describe(SearchParams::defaults()));
  EXPECT_NE(r.out.find("null_move_reduction = "), std::string::npos);
  const Invocation bad = run({"decode", "0101"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("error"), std::string::npos);
}

TEST(Cli, Search) {
  const Invocation r = run({"search", "--fen", "6k1/5ppp/8/8/8/8/5PPP/3R2K1 w - - 0 1", "--depth", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("bestmove d1d8 (Rd8#)"), std::string::npos) << r.out;
  EXPECT_EQ(run({"search", "--set", "ext_check=9"}).code, 1);
  EXPECT_EQ(run({"search", "--set", "no_such=1"}).code, 1);
  EXPECT_EQ(run({"search", "--fen", "not a fen"}).code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"perft", "--depth", "2", "--bogus"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  const Invocation missing = run({"bench", "--suite", "/nonexistent/suite.epd"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("/nonexistent/suite.epd"), std::string::npos);
}

TEST(Cli, NothingWrittenWhenValidationFails) {
  const std::string log = temp_path("rejected.csv");
  EXPECT_EQ(run({"evolve", "--suite", tiny_suite(), "--mutation", "2", "--log", log}).code, 1);
  EXPECT_EQ(run({"evolve", "--suite", "/nonexistent.epd", "--log", log}).code, 1);
  EXPECT_FALSE(std::filesystem::exists(log));
}

TEST(Cli, BenchReport) {
  const Invocation r = run({"bench", "--suite", tiny_suite(), "--node-cap", "2000", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind(std::string("# evochess ") + Version + " bench\n# seed 3\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("id,solved,nodes,depth\n"), std::string::npos);
  EXPECT_NE(r.out.find("# total_nodes "), std::string::npos);

  const Invocation j = run({"bench", "--suite", tiny_suite(), "--node-cap", "2000", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  std::istringstream lines(j.out);
  std::string line;
  std::getline(lines, line);
  const auto header = nlohmann::json::parse(line);
  EXPECT_EQ(header.at("version"), Version);
  EXPECT_EQ(header.at("command"), "bench");
  int rows = 0;
  while (std::getline(lines, line)) {
    EXPECT_TRUE(nlohmann::json::parse(line).is_object());
    ++rows;
  }
  EXPECT_EQ(rows, 5);
}

TEST(Cli, EvolveIsByteReproducible) {
  const std::string suite = tiny_suite();
  const std::string a = temp_path("evolve_a.csv"), b = temp_path("evolve_b.csv");
  const std::vector<std::string> common = {"evolve", "--suite", suite, "--population", "4",
                                           "--generations", "3", "--node-cap", "2000", "--seed", "11"};
  auto with_log = [&](const std::string& log, const std::string& jobs) {
    auto args = common;
    args.insert(args.end(), {"--log", log, "--jobs", jobs});
    return run(args);
  };
  ASSERT_EQ(with_log(a, "1").code, 0);
  ASSERT_EQ(with_log(b, "2").code, 0);
  const std::string text = read_file(a);
  EXPECT_EQ(text, read_file(b));
  EXPECT_NE(text.find("# seed 11\n"), std::string::npos);
  EXPECT_NE(text.find(cli::CsvLogColumns), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 10 + 1 + 3);
}

TEST(Cli, EvolveResumeMatchesUninterruptedRun) {
  const std::string suite = tiny_suite();
  const std::string full = temp_path("full.json"), part = temp_path("part.json");
  auto evolve = [&](const std::string& log, const std::string& generations, bool resume) {
    return run({"evolve", "--suite", suite, "--population", "4", "--generations", generations,
                "--node-cap", "2000", "--format", "json", resume ? "--resume" : "--log", log});
  };
  ASSERT_EQ(evolve(full, "4", false).code, 0);
  ASSERT_EQ(evolve(part, "2", false).code, 0);
  ASSERT_EQ(evolve(part, "4", true).code, 0);
  // Headers record the requested generation count, so compare generation lines only.
  auto generations_of = [](const std::string& text) {
    return text.substr(text.find('\n') + 1);
  };
  EXPECT_EQ(generations_of(read_file(full)), generations_of(read_file(part)));
}

TEST(Cli, Match) {
  const std::string openings = temp_path("openings.fen");
  {
    std::ofstream out(openings);
    out << "# two openings\n" << StartFen << '\n'
        << "r1bqkbnr/pppp1ppp/2n5/4p3/4P3/5N2/PPPP1PPP/RNBQKB1R w KQkq - 2 3\n";
  }
  const std::string pgn = temp_path("match.pgn");
  const Invocation r = run({"match", "--openings", openings, "--nodes", "500", "--max-plies", "16", "--pgn", pgn});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("opening,a_color,result,termination,plies\n"), std::string::npos);
  EXPECT_NE(r.out.find("# W% "), std::string::npos);
  const std::string games = read_file(pgn);
  EXPECT_EQ(games.find("[Event "), 0u);
  std::size_t events = 0;
  for (std::size_t at = 0; (at = games.find("[Event ", at)) != std::string::npos; ++at) ++events;
  EXPECT_EQ(events, 4u);
}
