#include <gtest/gtest.h>

#include <random>

#include "bpt/bitvec.hpp"

namespace {

using bpt::ChunkTable;
using bpt::ParenBitvector;

const char* const kT1 = "(()(()())())";

TEST(ChunkTable, AllOpens) {
  const auto s = ChunkTable::summarize(0xFF, 8);
  EXPECT_EQ(s.e, 8);
  EXPECT_EQ(s.m, 1);
  EXPECT_EQ(s.M, 8);
  EXPECT_EQ(s.n, 1);
  EXPECT_EQ(s.ones, 8);
}

TEST(ChunkTable, AllCloses) {
  const auto s = ChunkTable::summarize(0x00, 8);
  EXPECT_EQ(s.e, -8);
  EXPECT_EQ(s.m, -8);
  EXPECT_EQ(s.M, -1);
  EXPECT_EQ(s.n, 1);
  EXPECT_EQ(s.ones, 0);
}

TEST(ChunkTable, SinglePair) {
  const auto s = ChunkTable::summarize(0b10, 2);
  EXPECT_EQ(s.e, 0);
  EXPECT_EQ(s.m, 0);
  EXPECT_EQ(s.M, 1);
  EXPECT_EQ(s.n, 1);
  EXPECT_EQ(s.pairs10, 1);
}

TEST(ChunkTable, RejectsUnsupportedWidth) {
  EXPECT_THROW(ChunkTable::build(12), std::invalid_argument);
  EXPECT_EQ(ChunkTable::get(16).size(), 65536u);
  EXPECT_EQ(ChunkTable::get(8)[0xAA], ChunkTable::summarize(0xAA, 8));
}

TEST(ParenBitvector, ReadsFixture) {
  const auto b = ParenBitvector::from_string(kT1);
  EXPECT_EQ(b.size(), 12u);
  EXPECT_TRUE(b.get(1));
  EXPECT_FALSE(b.get(3));
  EXPECT_FALSE(b.get(12));
  EXPECT_THROW((void)b.get(13), std::out_of_range);
  EXPECT_TRUE(b.is_balanced());
  EXPECT_EQ(b.to_string(), kT1);
}

TEST(ParenBitvector, RejectsStrayCharacters) {
  EXPECT_THROW(ParenBitvector::from_string("(x)"), bpt::format_error);
  EXPECT_EQ(ParenBitvector::from_string("( ( ) )\n").size(), 4u);
  EXPECT_FALSE(ParenBitvector::from_string(")(").is_balanced());
  EXPECT_FALSE(ParenBitvector::from_string("((").is_balanced());
}

TEST(ParenBitvector, PackedRoundTrip) {
  std::mt19937_64 rng(1);
  std::string s;
  for (int i = 0; i < 1000; ++i) s += (rng() & 1) ? '(' : ')';
  const auto b = ParenBitvector::from_string(s);
  EXPECT_EQ(ParenBitvector::from_packed(b.to_packed()), b);
}

TEST(ParenBitvector, OnesAndSelect) {
  const auto b = ParenBitvector::from_string(kT1);
  EXPECT_EQ(b.ones(1, 7), 5u);
  EXPECT_EQ(b.ones(5, 4), 0u);
  EXPECT_EQ(b.select_from(1, 5, true), 7u);
  EXPECT_EQ(b.select_from(4, 1, false), 6u);
  EXPECT_EQ(b.select_from(1, 7, true), 0u);
}

TEST(Scan, FindsExcessAndExtremes) {
  const auto b = ParenBitvector::from_string(kT1);
  for (unsigned w : {8u, 16u}) {
    const auto& t = ChunkTable::get(w);
    const auto hit = bpt::scan::forward(b, t, 1, 1, 12, 0);
    EXPECT_TRUE(hit.found);
    EXPECT_EQ(hit.pos, 12u);
    EXPECT_FALSE(bpt::scan::forward(b, t, 1, 1, 12, 5).found);
    const auto mn = bpt::scan::min(b, t, 5, 8, 2);  // excess(4) = 2
    EXPECT_EQ(mn.value, 2);
    EXPECT_EQ(mn.pos, 6u);
    EXPECT_EQ(mn.count, 2u);
    const auto back = bpt::scan::backward(b, t, 8, 2, 1, 1);
    EXPECT_TRUE(back.found);
    EXPECT_EQ(back.pos, 3u);
  }
}

// Random sequences against bit-by-bit evaluation, exercising chunk skipping.
TEST(Scan, AgreesWithBitwiseEvaluation) {
  std::mt19937_64 rng(9);
  std::string s;
  for (int i = 0; i < 600; ++i) s += (rng() % 3) ? '(' : ')';
  const auto b = ParenBitvector::from_string(s);
  std::vector<long> e{0};
  for (char c : s) e.push_back(e.back() + (c == '(' ? 1 : -1));
  for (unsigned w : {8u, 16u}) {
    const auto& t = ChunkTable::get(w);
    for (int trial = 0; trial < 2000; ++trial) {
      std::uint64_t l = 1 + rng() % 600, r = 1 + rng() % 600;
      if (l > r) std::swap(l, r);
      auto mn = bpt::scan::min(b, t, l, r, e[l - 1]);
      auto mx = bpt::scan::max(b, t, l, r, e[l - 1]);
      long vmin = e[l], vmax = e[l];
      std::uint64_t pmin = l, pmax = l, cnt = 0;
      for (std::uint64_t x = l; x <= r; ++x) {
        if (e[x] < vmin) vmin = e[x], pmin = x;
        if (e[x] > vmax) vmax = e[x], pmax = x;
      }
      for (std::uint64_t x = l; x <= r; ++x) cnt += e[x] == vmin;
      ASSERT_EQ(mn.value, vmin);
      ASSERT_EQ(mn.pos, pmin);
      ASSERT_EQ(mn.count, cnt);
      ASSERT_EQ(mx.value, vmax);
      ASSERT_EQ(mx.pos, pmax);
      const long target = e[l - 1] + static_cast<long>(rng() % 9) - 4;
      const auto hit = bpt::scan::forward(b, t, l - 1, e[l - 1], r, target);
      std::uint64_t want = 0;
      for (std::uint64_t x = l; x <= r && !want; ++x) want = e[x] == target ? x : 0;
      ASSERT_EQ(hit.found, want != 0);
      if (want) ASSERT_EQ(hit.pos, want);
      std::uint64_t pairs = 0;
      for (std::uint64_t x = l; x <= r; ++x) pairs += (s[x - 1] == '(' && x < s.size() && s[x] == ')');
      ASSERT_EQ(bpt::scan::count_pairs10(b, t, l, r), pairs);
    }
  }
}

}  // namespace
