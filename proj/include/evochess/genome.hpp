#pragma once

// 70-bit chromosome encoding one SearchParams. Each field is Gray coded on
// its own, most significant bit first, in parameter-layout order. Bit i of
// the chromosome is character i of its text form.

#include <algorithm>
#include <bitset>
#include <stdexcept>
#include <string>
#include <string_view>

#include "evochess/params.hpp"
#include "evochess/rng.hpp"

namespace evochess {

inline constexpr int ChromosomeBits = [] {
  int total = 0;
  for (const auto& f : ParamLayout) total += f.bits;
  return total;
}();
static_assert(ChromosomeBits == 70);

using Chromosome = std::bitset<ChromosomeBits>;

constexpr unsigned gray_encode(unsigned value) { return value ^ (value >> 1); }

constexpr unsigned gray_decode(unsigned gray) {
  unsigned value = gray;
  for (unsigned shift = 1; shift < 32; shift <<= 1) value ^= value >> shift;
  return value;
}

// Decoding is total: values beyond a field's range clamp to its maximum.
inline SearchParams decode(const Chromosome& c) {
  SearchParams p;
  int bit = 0;
  for (int i = 0; i < ParamCount; ++i) {
    unsigned gray = 0;
    for (int b = 0; b < ParamLayout[i].bits; ++b) gray = gray << 1 | unsigned(c[std::size_t(bit++)]);
    const int value = int(gray_decode(gray));
    set_field(p, i, std::min(value, ParamLayout[i].max));
  }
  return p;
}

inline Chromosome encode(const SearchParams& p) {
  if (!p.valid()) throw std::invalid_argument("search parameter out of range");
  Chromosome c;
  int bit = 0;
  for (int i = 0; i < ParamCount; ++i) {
    const int width = ParamLayout[i].bits;
    const unsigned gray = gray_encode(unsigned(get_field(p, i)));
    for (int b = width - 1; b >= 0; --b) c[std::size_t(bit++)] = (gray >> b) & 1;
  }
  return c;
}

inline Chromosome random_chromosome(std::uint64_t seed) {
  Rng rng(seed);
  Chromosome c;
  std::uint64_t word = 0;
  for (int i = 0; i < ChromosomeBits; ++i) {
    if (i % 64 == 0) word = rng.next_u64();
    c[std::size_t(i)] = (word >> (i % 64)) & 1;
  }
  return c;
}

inline std::string to_text(const Chromosome& c) {
  std::string s(ChromosomeBits, '0');
  for (int i = 0; i < ChromosomeBits; ++i)
    if (c[std::size_t(i)]) s[std::size_t(i)] = '1';
  return s;
}

inline Chromosome chromosome_from_text(std::string_view text) {
  if (text.size() != std::size_t(ChromosomeBits))
    throw std::invalid_argument("chromosome must be exactly 70 characters of 0/1, got " +
                                std::to_string(text.size()));
  Chromosome c;
  for (int i = 0; i < ChromosomeBits; ++i) {
    const char ch = text[std::size_t(i)];
    if (ch != '0' && ch != '1')
      throw std::invalid_argument(std::string("chromosome contains '") + ch + "'");
    c[std::size_t(i)] = ch == '1';
  }
  return c;
}

}  // namespace evochess
