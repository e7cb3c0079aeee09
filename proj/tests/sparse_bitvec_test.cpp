#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <set>
#include <vector>

#include "bpt/sparse_bitvec.hpp"

namespace {

using bpt::SparseBitvector;

TEST(SparseBitvector, Examples) {
  const std::vector<std::uint64_t> ones{3, 7, 9};
  const SparseBitvector s(ones, 16);
  EXPECT_EQ(s.select1(2), 7u);
  EXPECT_EQ(s.select1(3), 9u);
  EXPECT_EQ(s.rank1(8), 2u);
  EXPECT_EQ(s.rank1(0), 0u);
  EXPECT_EQ(s.rank1(16), 3u);
  EXPECT_EQ(s.select0(3), 4u);
}

TEST(SparseBitvector, DegenerateDensities) {
  const std::vector<std::uint64_t> one{1};
  EXPECT_EQ(SparseBitvector(one, 1).select1(1), 1u);
  const SparseBitvector none(std::vector<std::uint64_t>{}, 5);
  EXPECT_EQ(none.select0(4), 4u);
  EXPECT_EQ(none.rank1(5), 0u);
  const std::vector<std::uint64_t> two{1, 2};
  EXPECT_EQ(SparseBitvector(two, 4).select0(1), 3u);
  const std::vector<std::uint64_t> full{1, 2, 3, 4};
  const SparseBitvector f(full, 4);
  EXPECT_EQ(f.select1(3), 3u);
  EXPECT_EQ(f.rank1(2), 2u);
}

TEST(SparseBitvector, RejectsBadRanks) {
  const std::vector<std::uint64_t> ones{3, 7, 9};
  const SparseBitvector s(ones, 16);
  EXPECT_THROW((void)s.select1(0), std::out_of_range);
  EXPECT_THROW((void)s.select1(4), std::out_of_range);
  EXPECT_THROW((void)s.select0(14), std::out_of_range);
}

TEST(SparseBitvector, RandomAgainstEnumeration) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint64_t mu = 1 + rng() % 5000;
    const double density = (trial % 6) / 5.0;
    std::vector<std::uint64_t> ones;
    std::vector<std::uint64_t> zeros;
    for (std::uint64_t x = 1; x <= mu; ++x) {
      (std::uniform_real_distribution<double>(0, 1)(rng) < density ? ones : zeros).push_back(x);
    }
    const SparseBitvector s(ones, mu);
    ASSERT_EQ(s.count(), ones.size());
    for (std::size_t k = 0; k < ones.size(); ++k) ASSERT_EQ(s.select1(k + 1), ones[k]);
    for (std::size_t k = 0; k < zeros.size(); ++k) ASSERT_EQ(s.select0(k + 1), zeros[k]);
    std::uint64_t r = 0;
    std::size_t next = 0;
    for (std::uint64_t x = 0; x <= mu; ++x) {
      if (next < ones.size() && ones[next] == x) ++r, ++next;
      ASSERT_EQ(s.rank1(x), r);
    }
    if (!ones.empty()) {
      const std::uint64_t r2 = ones.size();
      const std::uint64_t lw = mu / r2 > 0 ? std::bit_width(mu / r2) : 1;
      EXPECT_LE(s.size_in_bits(), r2 * lw + 3 * r2 + 2048) << "mu " << mu << " r " << r2;
    }
  }
}

TEST(SparseBitvector, SaveLoad) {
  const std::vector<std::uint64_t> ones{2, 30, 31, 900};
  const SparseBitvector s(ones, 1000);
  bpt::io::Writer w;
  s.save(w);
  const auto bytes = w.bytes();
  bpt::io::Reader r(bytes);
  const auto t = SparseBitvector::load(r);
  for (std::uint64_t k = 1; k <= 4; ++k) EXPECT_EQ(t.select1(k), s.select1(k));
  EXPECT_EQ(t.rank1(500), 3u);
}

TEST(RankSelectBits, AgreesWithScan) {
  std::mt19937_64 rng(2);
  std::vector<std::uint64_t> words(300);
  for (auto& w : words) w = rng() & rng();
  const std::uint64_t size = 300 * 64 - 13;
  const bpt::RankSelectBits b(words, size);
  std::uint64_t r = 0, z = 0;
  for (std::uint64_t p = 0; p < size; ++p) {
    ASSERT_EQ(b.rank1(p), r);
    if (b[p]) {
      ASSERT_EQ(b.select1(++r), p);
    } else {
      ASSERT_EQ(b.select0(++z), p);
    }
  }
}

}  // namespace
