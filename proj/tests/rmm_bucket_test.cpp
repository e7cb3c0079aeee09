#include <gtest/gtest.h>

#include <random>

#include "bpt/rmm_bucket.hpp"

namespace {

using bpt::ParenBitvector;
using bpt::RmmBucket;

const char* const kT1 = "(()(()())())";

struct T1Bucket : ::testing::TestWithParam<unsigned> {
  ParenBitvector bits = ParenBitvector::from_string(kT1);
  RmmBucket b{bits, 0, 12, 4, GetParam(), true};
};

TEST_P(T1Bucket, LeafAndRootSummaries) {
  // three blocks padded to four leaves: heap nodes 4..7
  EXPECT_EQ(b.node_min(4), 1);
  EXPECT_EQ(b.node_max(4), 2);
  EXPECT_EQ(b.node_min(5), 2);
  EXPECT_EQ(b.node_max(5), 3);
  EXPECT_EQ(b.node_min(6), 0);
  EXPECT_EQ(b.node_max(6), 2);
  EXPECT_TRUE(b.node_empty(7));
  EXPECT_EQ(b.min_value(), 0);
  EXPECT_EQ(b.max_value(), 3);
  EXPECT_EQ(b.node_count(bits, 1), 1u);
  EXPECT_NO_THROW(b.verify(bits));
}

TEST_P(T1Bucket, Searches) {
  EXPECT_EQ(b.fwdsearch(bits, 1, -1), 12u);
  EXPECT_EQ(b.fwdsearch(bits, 2, -1), 3u);
  EXPECT_EQ(b.fwdsearch(bits, 8, 1), std::nullopt);
  EXPECT_EQ(b.bwdsearch(bits, 4, -2), 0u);
  EXPECT_EQ(b.bwdsearch(bits, 9, 0), 3u);
  EXPECT_EQ(b.bwdsearch(bits, 2, -5), std::nullopt);
}

TEST_P(T1Bucket, RangeExtremes) {
  auto mn = b.rmq(bits, 5, 10);
  EXPECT_EQ(mn.pos, 9u);
  EXPECT_EQ(mn.value, 1);
  auto mx = b.rMq(bits, 1, 12);
  EXPECT_EQ(mx.pos, 5u);
  EXPECT_EQ(mx.value, 3);
  mn = b.rmq(bits, 6, 6);
  EXPECT_EQ(mn.pos, 6u);
  EXPECT_EQ(mn.value, 2);
  EXPECT_EQ(b.mincount(bits, 2, 11), 3u);
  EXPECT_EQ(b.minselect(bits, 2, 11, 2), 9u);
  EXPECT_EQ(b.mincount(bits, 5, 8), 2u);
  EXPECT_EQ(b.minselect(bits, 5, 8, 2), 8u);
  EXPECT_THROW((void)b.minselect(bits, 5, 8, 3), std::out_of_range);
}

TEST_P(T1Bucket, RankSelect) {
  EXPECT_EQ(b.rank1(bits, 7), 5u);
  EXPECT_EQ(b.select1(bits, 5), 7u);
  EXPECT_EQ(b.rank10(bits, 7), 3u);
  EXPECT_EQ(b.select10(bits, 4), 10u);
  EXPECT_EQ(b.select0(bits, 1), 3u);
}

INSTANTIATE_TEST_SUITE_P(Chunks, T1Bucket, ::testing::Values(8u, 16u));

TEST(RmmBucket, SmallShapes) {
  const auto pair = ParenBitvector::from_string("()");
  const RmmBucket p(pair, 0, 2, 2, 8, true);
  EXPECT_EQ(p.min_value(), 0);
  EXPECT_EQ(p.max_value(), 1);
  EXPECT_EQ(p.node_count(pair, 1), 1u);
  const auto up = ParenBitvector::from_string("((((");
  const RmmBucket u(up, 0, 4, 2, 8, false);
  EXPECT_EQ(u.min_value(), 1);
  EXPECT_EQ(u.max_value(), 4);
  EXPECT_EQ(u.node_count(up, 1), 1u);
  EXPECT_FALSE(u.stores_counts());
}

TEST(RmmBucket, RejectsBadGeometry) {
  const auto bits = ParenBitvector::from_string(kT1);
  EXPECT_THROW(RmmBucket(bits, 0, 0, 4, 8, true), std::invalid_argument);
  EXPECT_THROW(RmmBucket(bits, 0, 12, 1, 8, true), std::invalid_argument);
  EXPECT_THROW(RmmBucket(bits, 4, 12, 4, 8, true), std::invalid_argument);
}

// The biased 16-bit max must hold a bucket that is entirely opens at the
// largest supported width.
TEST(RmmBucket, FullWidthMonotoneBucket) {
  const std::uint32_t w = 1u << 15;
  const auto bits = ParenBitvector::from_string(std::string(w, '(') + std::string(w, ')'));
  const RmmBucket up(bits, 0, w, 1024, 16, true);
  EXPECT_EQ(up.max_value(), 32768);
  EXPECT_EQ(up.min_value(), 1);
  EXPECT_EQ(up.end_excess(), 32768);
  const RmmBucket down(bits, w, w, 1024, 16, true);
  EXPECT_EQ(down.min_value(), -32768);
  EXPECT_EQ(down.max_value(), -1);
  EXPECT_EQ(down.fwdsearch_to(bits, 0, -32768), w);
  EXPECT_NO_THROW(up.verify(bits));
  EXPECT_NO_THROW(down.verify(bits));
}

// Random buckets (not balanced, arbitrary offset) against direct scans.
TEST(RmmBucket, RandomAgainstScan) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    std::string s;
    const std::uint32_t len = 50 + rng() % 700;
    for (std::uint32_t i = 0; i < len; ++i) s += (rng() % 2) ? '(' : ')';
    const auto bits = ParenBitvector::from_string(s);
    const std::uint32_t start = rng() % 20;
    const std::uint32_t width = len - start - rng() % 20;
    const std::uint32_t block = 2 + rng() % 40;
    const RmmBucket b(bits, start, width, block, trial % 2 ? 8 : 16, trial % 3 != 0);
    ASSERT_NO_THROW(b.verify(bits));
    std::vector<long> e{0};
    for (std::uint32_t r = 1; r <= width; ++r) e.push_back(e.back() + (s[start + r - 1] == '(' ? 1 : -1));
    for (int q = 0; q < 300; ++q) {
      std::uint32_t i = 1 + rng() % width, j = 1 + rng() % width;
      if (i > j) std::swap(i, j);
      long mn = e[i];
      std::uint32_t pos = i, cnt = 0;
      for (std::uint32_t x = i; x <= j; ++x) {
        if (e[x] < mn) mn = e[x], pos = x;
      }
      for (std::uint32_t x = i; x <= j; ++x) cnt += e[x] == mn;
      const auto got = b.rmq_counted(bits, i, j);
      ASSERT_EQ(got.value, mn);
      ASSERT_EQ(got.pos, pos);
      ASSERT_EQ(got.count, cnt);
      const std::uint64_t k = 1 + rng() % cnt;
      std::uint64_t seen = 0;
      std::uint32_t want = 0;
      for (std::uint32_t x = i; x <= j && !want; ++x) {
        if (e[x] == mn && ++seen == k) want = x;
      }
      ASSERT_EQ(b.minselect(bits, i, j, k), want);
      const long d = static_cast<long>(rng() % 11) - 5;
      std::optional<std::uint32_t> fw, bw;
      for (std::uint32_t x = i + 1; x <= width && !fw; ++x) {
        if (e[x] == e[i] + d) fw = x;
      }
      for (std::uint32_t x = i; x-- > 0 && !bw;) {
        if (e[x] == e[i] + d) bw = x;
      }
      ASSERT_EQ(b.fwdsearch(bits, i, d), fw);
      ASSERT_EQ(b.bwdsearch(bits, i, d), bw);
      ASSERT_EQ(b.excess(bits, j), e[j]);
    }
  }
}

}  // namespace
