#pragma once

// EPD test-suite records: four FEN fields followed by semicolon-terminated
// opcodes. Only `bm` (required) and `id` are interpreted.

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "evochess/core/notation.hpp"

namespace evochess {

struct EpdRecord {
  Position position;
  std::vector<Move> best_moves;  // never empty
  std::string id;

  bool is_best(Move m) const {
    for (Move b : best_moves)
      if (b == m) return true;
    return false;
  }
};

namespace detail {

// Splits "bm Qd1+; id \"BK.01\";" into operations, honouring quotes.
inline std::vector<std::vector<std::string>> split_epd_ops(std::string_view text) {
  std::vector<std::vector<std::string>> ops;
  std::vector<std::string> current;
  std::string token;
  bool quoted = false;
  auto flush_token = [&] {
    if (!token.empty()) current.push_back(std::move(token));
    token.clear();
  };
  for (char c : text) {
    if (quoted) {
      if (c == '"') {
        quoted = false;
        current.push_back(std::move(token));
        token.clear();
      } else {
        token += c;
      }
    } else if (c == '"') {
      flush_token();
      quoted = true;
    } else if (c == ';') {
      flush_token();
      if (!current.empty()) ops.push_back(std::move(current));
      current.clear();
    } else if (c == ' ' || c == '\t') {
      flush_token();
    } else {
      token += c;
    }
  }
  if (quoted) throw ParseError("opcodes", "unterminated string");
  flush_token();
  if (!current.empty()) ops.push_back(std::move(current));
  return ops;
}

}  // namespace detail

inline EpdRecord parse_epd(std::string_view line) {
  std::size_t pos = 0;
  std::string fields;
  for (int f = 0; f < 4; ++f) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (start == pos) throw ParseError("fen", "EPD needs four position fields");
    if (f) fields += ' ';
    fields += line.substr(start, pos - start);
  }

  EpdRecord rec;
  rec.position = Position::from_fields(fields);
  bool have_bm = false;
  for (const auto& op : detail::split_epd_ops(line.substr(pos))) {
    if (op[0] == "bm") {
      have_bm = true;
      if (op.size() < 2) throw ParseError("bm", "no moves given");
      for (std::size_t i = 1; i < op.size(); ++i) {
        const Move m = parse_san(rec.position, op[i]);
        if (!rec.is_best(m)) rec.best_moves.push_back(m);
      }
    } else if (op[0] == "id" && op.size() >= 2) {
      rec.id = op[1];
    }
  }
  if (!have_bm) throw ParseError("bm", "missing bm opcode");
  return rec;
}

// Input file problems; the message names the path and line.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One record per line; blank lines and lines starting with '#' are skipped.
inline std::vector<EpdRecord> load_epd_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open suite file '" + path + "'");
  std::vector<EpdRecord> records;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      records.push_back(parse_epd(line));
    } catch (const ParseError& e) {
      throw InputError(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return records;
}

// One FEN per line (4 or 6 fields); blank and '#' lines skipped.
inline std::vector<Position> load_fen_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open position file '" + path + "'");
  std::vector<Position> positions;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      positions.push_back(Position::from_fields(line));
    } catch (const ParseError& e) {
      throw InputError(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return positions;
}

}  // namespace evochess
