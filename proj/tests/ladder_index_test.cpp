#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "bpt/ladder_index.hpp"

namespace {

using bpt::Direction;
using bpt::excess_t;
using bpt::Extreme;
using bpt::LadderForest;

TEST(LadderForest, NextSmallerParents) {
  const std::vector<excess_t> m{3, 2, 4, 1};
  const LadderForest f(m, Direction::forward, Extreme::min);
  EXPECT_EQ(f.parent(0), 1u);
  EXPECT_EQ(f.parent(1), 3u);
  EXPECT_EQ(f.parent(2), 3u);
  EXPECT_EQ(f.parent(3), f.root());
  EXPECT_NO_THROW(f.verify(m));
}

TEST(LadderForest, IncreasingValuesHangFromRoot) {
  const std::vector<excess_t> m{1, 2, 3};
  const LadderForest f(m, Direction::forward, Extreme::min);
  for (std::uint32_t k = 0; k < 3; ++k) EXPECT_EQ(f.parent(k), f.root());
}

TEST(LadderForest, DecreasingValuesFormOneLadder) {
  const std::vector<excess_t> m{5, 4, 3, 2};
  const LadderForest f(m, Direction::forward, Extreme::min);
  EXPECT_EQ(f.num_ladders(), 1u);
  EXPECT_GE(f.ladder(0).size(), 4u);
  EXPECT_EQ(f.depth(0), 4u);
  EXPECT_EQ(f.jump(0, 1), 2u);
}

TEST(LadderForest, AncestorSearchOnChain) {
  const std::vector<excess_t> m{5, 4, 3, 2, 1};
  const LadderForest f(m, Direction::forward, Extreme::min);
  bpt::SearchTrace trace;
  EXPECT_EQ(f.ancestor_search(m, 0, 1, &trace), 4u);
  EXPECT_TRUE(trace.used_forest);
  EXPECT_GE(trace.jump_levels, 2u);
  bpt::SearchTrace one;
  EXPECT_EQ(f.ancestor_search(m, 0, 4, &one), 1u);
  EXPECT_EQ(one.jump_levels, 1u);
  EXPECT_EQ(f.ancestor_search(m, 0, 0), std::nullopt);
}

TEST(LadderForest, RandomAgainstLinearScan) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 400;
    std::vector<excess_t> v(n);
    for (auto& x : v) x = static_cast<excess_t>(rng() % (trial % 2 ? 8 : 200));
    for (auto dir : {Direction::forward, Direction::backward}) {
      for (auto ext : {Extreme::min, Extreme::max}) {
        const LadderForest f(v, dir, ext);
        ASSERT_NO_THROW(f.verify(v));
        ASSERT_LE(f.ladder_cells(), 2 * (n + 1));
        for (int q = 0; q < 200; ++q) {
          const std::uint32_t k = rng() % n;
          const excess_t target = static_cast<excess_t>(rng() % 210) - 5;
          const bool beyond = ext == Extreme::min ? target < v[k] : target > v[k];
          if (!beyond) continue;
          std::optional<std::uint32_t> want;
          const auto reach = [&](std::size_t u) { return ext == Extreme::min ? v[u] <= target : v[u] >= target; };
          if (dir == Direction::forward) {
            for (std::size_t u = k + 1; u < n && !want; ++u) {
              if (reach(u)) want = static_cast<std::uint32_t>(u);
            }
          } else {
            for (std::size_t u = k; u-- > 0 && !want;) {
              if (reach(u)) want = static_cast<std::uint32_t>(u);
            }
          }
          ASSERT_EQ(f.ancestor_search(v, k, target), want) << "k " << k << " target " << target;
        }
      }
    }
  }
}

TEST(BucketArrays, DetectsHoles) {
  bpt::BucketArrays a;
  a.e = {2, 0};
  a.m = {1, 0};
  a.M = {3, 2};
  EXPECT_NO_THROW(a.verify(4));
  a.M[1] = -1;
  EXPECT_THROW(a.verify(4), std::logic_error);
}

}  // namespace
