#include <gtest/gtest.h>

#include "support.hpp"

using namespace evochess;

namespace {

SearchParams random_params(Rng& rng) {
  SearchParams p;
  for (int i = 0; i < ParamCount; ++i) set_field(p, i, int(rng.next_u64() % std::uint64_t(ParamLayout[i].max + 1)));
  return p;
}

int field_offset(int index) {
  int offset = 0;
  for (int i = 0; i < index; ++i) offset += ParamLayout[i].bits;
  return offset;
}

}  // namespace

TEST(Genome, LayoutIsSeventyBits) {
  EXPECT_EQ(ChromosomeBits, 70);
  EXPECT_EQ(ParamCount, 18);
  EXPECT_EQ(field_offset(ParamCount), 70);
}

TEST(Genome, GrayCodeTable) {
  // Reference 3-bit reflected Gray sequence.
  const unsigned gray3[8] = {0b000, 0b001, 0b011, 0b010, 0b110, 0b111, 0b101, 0b100};
  for (unsigned v = 0; v < 8; ++v) {
    EXPECT_EQ(gray_encode(v), gray3[v]);
    EXPECT_EQ(gray_decode(gray3[v]), v);
  }
}

TEST(Genome, GrayAdjacencyForEveryFieldWidth) {
  for (int width : {1, 2, 3, 5, 10}) {
    for (unsigned v = 0; v + 1 < (1u << width); ++v) {
      EXPECT_EQ(std::popcount(gray_encode(v) ^ gray_encode(v + 1)), 1) << width << " " << v;
      EXPECT_EQ(gray_decode(gray_encode(v)), v);
    }
  }
}

TEST(Genome, RoundTripRandomParams) {
  Rng rng(41);
  for (int i = 0; i < 10000; ++i) {
    const SearchParams p = random_params(rng);
    ASSERT_EQ(decode(encode(p)), p);
  }
}

TEST(Genome, DecodingIsTotalAndClampsToRange) {
  Rng rng(42);
  for (int i = 0; i < 2000; ++i) EXPECT_TRUE(decode(random_chromosome(rng.next_u64())).valid());
  Chromosome all_ones;
  all_ones.set();
  const SearchParams p = decode(all_ones);
  // 3-bit "111" decodes to 5: over the extension maximum, so clamped.
  EXPECT_EQ(p.ext_check, 4);
  EXPECT_EQ(p.null_move_reduction, 5);
}

TEST(Genome, ReductionFieldBitsOneZeroZeroDecodeToSeven) {
  Chromosome c;
  c[std::size_t(field_offset(1))] = true;  // most significant bit of the reduction field
  EXPECT_EQ(decode(c).null_move_reduction, 7);
}

TEST(Genome, ExtensionDecodingToSixClampsToFour) {
  Chromosome c;
  // Gray code of 6 is 101.
  const std::size_t at = std::size_t(field_offset(13));
  c[at] = true;
  c[at + 2] = true;
  EXPECT_EQ(gray_decode(0b101), 6u);
  EXPECT_EQ(decode(c).ext_check, 4);
}

TEST(Genome, EncodeRejectsOutOfRange) {
  SearchParams p;
  p.ext_check = 5;
  EXPECT_THROW(encode(p), std::invalid_argument);
  p = SearchParams{};
  p.futility_threshold[2] = 1024;
  EXPECT_THROW(encode(p), std::invalid_argument);
}

TEST(Genome, TextRoundTripAndErrors) {
  const Chromosome c = random_chromosome(43);
  const std::string text = to_text(c);
  ASSERT_EQ(text.size(), 70u);
  EXPECT_EQ(chromosome_from_text(text), c);
  EXPECT_THROW(chromosome_from_text(text.substr(1)), std::invalid_argument);
  EXPECT_THROW(chromosome_from_text(text.substr(1) + "2"), std::invalid_argument);
  // Character i is bit i; the first field's single bit is the null-move flag.
  EXPECT_EQ(decode(chromosome_from_text("1" + std::string(69, '0'))).null_move_use, true);
}

TEST(Genome, RandomChromosomeBitsAreUnbiased) {
  constexpr int count = 1000;
  std::array<int, ChromosomeBits> ones{};
  for (int i = 0; i < count; ++i) {
    const Chromosome c = random_chromosome(std::uint64_t(i));
    for (int b = 0; b < ChromosomeBits; ++b) ones[std::size_t(b)] += c[std::size_t(b)];
  }
  for (int b = 0; b < ChromosomeBits; ++b) {
    const double mean = double(ones[std::size_t(b)]) / count;
    EXPECT_GE(mean, 0.42) << "bit " << b;
    EXPECT_LE(mean, 0.58) << "bit " << b;
  }
  EXPECT_NE(random_chromosome(1), random_chromosome(2));
  EXPECT_EQ(random_chromosome(7), random_chromosome(7));
}

TEST(Genome, DefaultsAreInRange) {
  EXPECT_TRUE(SearchParams::defaults().valid());
  EXPECT_TRUE(SearchParams::disabled().valid());
  EXPECT_EQ(decode(encode(SearchParams::defaults())), SearchParams::defaults());
}
