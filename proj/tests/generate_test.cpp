#include <gtest/gtest.h>

#include <map>
#include <random>

#include "bpt/generate.hpp"
#include "bpt/oracle.hpp"

namespace {

namespace gen = bpt::gen;

TEST(Generate, Shapes) {
  EXPECT_EQ(gen::path(4), "(((())))");
  EXPECT_EQ(gen::star(4), "(()()())");
  EXPECT_EQ(gen::caterpillar(5), "(()(()()))");
  EXPECT_EQ(gen::binary(3), "(()())");
  EXPECT_EQ(gen::binary(5), "((()())())");
  EXPECT_EQ(gen::make(gen::Kind::path, 1, 0), "()");
  EXPECT_THROW(gen::path(0), std::invalid_argument);
  EXPECT_THROW(gen::parse_kind("tree"), std::invalid_argument);
}

TEST(Generate, ShapesHaveRequestedSize) {
  for (auto kind : {gen::Kind::uniform, gen::Kind::path, gen::Kind::star, gen::Kind::caterpillar, gen::Kind::binary}) {
    for (std::uint64_t n : {1u, 2u, 7u, 100u, 1001u}) {
      const std::string s = gen::make(kind, n, n);
      ASSERT_EQ(s.size(), 2 * n);
      ASSERT_NO_THROW(bpt::oracle::PointerTree t(s));
      ASSERT_EQ(bpt::oracle::PointerTree(s).roots().size(), 1u);
    }
  }
}

TEST(Generate, UniformOverThreeNodeTrees) {
  std::mt19937_64 rng(99);
  std::map<std::string, int> freq;
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) ++freq[gen::uniform(3, rng)];
  ASSERT_EQ(freq.size(), 2u);
  for (const auto& [tree, count] : freq) EXPECT_NEAR(count / double(draws), 0.5, 0.02) << tree;
}

TEST(Generate, UniformOverFiveNodeTrees) {
  // 14 ordinal trees on five nodes
  std::mt19937_64 rng(100);
  std::map<std::string, int> freq;
  const int draws = 140000;
  for (int k = 0; k < draws; ++k) ++freq[gen::uniform(5, rng)];
  ASSERT_EQ(freq.size(), 14u);
  for (const auto& [tree, count] : freq) EXPECT_NEAR(count / double(draws), 1.0 / 14, 0.005) << tree;
}

TEST(Generate, Deterministic) { EXPECT_EQ(gen::make(gen::Kind::uniform, 500, 3), gen::make(gen::Kind::uniform, 500, 3)); }

}  // namespace
