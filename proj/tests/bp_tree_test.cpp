#include <gtest/gtest.h>

#include <string>

#include "bpt/bpt.hpp"

namespace {

using bpt::Config;
using bpt::Pattern;
using bpt::SuccinctTree;

const char* const kT1 = "(()(()())())";

std::string t100() {
  std::string s;
  for (int k = 0; k < 100; ++k) s += kT1;
  return s;
}

class T1 : public ::testing::TestWithParam<Config> {
 protected:
  SuccinctTree t = SuccinctTree::from_string(kT1, GetParam());
};

TEST_P(T1, Primitives) {
  EXPECT_EQ(t.fwdsearch(1, -1), 12u);
  EXPECT_EQ(t.bwdsearch(4, -2), 0u);
  EXPECT_EQ(t.fwdsearch(0, 2), 2u);
  EXPECT_EQ(t.rmq(5, 10), 9u);
  EXPECT_EQ(t.mincount(2, 11), 3u);
  EXPECT_EQ(t.minselect(2, 11, 2), 9u);
  EXPECT_EQ(t.rMq(1, 12), 5u);
  EXPECT_EQ(t.rank(Pattern::one, 7), 5u);
  EXPECT_EQ(t.select(Pattern::one, 5), 7u);
  EXPECT_EQ(t.rank(Pattern::pair10, 12), 4u);
  EXPECT_EQ(t.fwdsearch(1, 5), std::nullopt);
}

TEST_P(T1, Structure) {
  EXPECT_EQ(t.close(4), 9u);
  EXPECT_EQ(t.open(9), 4u);
  EXPECT_EQ(t.enclose(4), 1u);
  EXPECT_EQ(t.enclose(1), std::nullopt);
  EXPECT_EQ(t.root(), 1u);
  EXPECT_EQ(t.depth(5), 3);
  EXPECT_EQ(t.subtree(4), 3u);
  EXPECT_TRUE(t.isancestor(4, 7));
  EXPECT_FALSE(t.isancestor(4, 10));
  EXPECT_TRUE(t.isleaf(2));
  EXPECT_FALSE(t.isleaf(4));
}

TEST_P(T1, Family) {
  EXPECT_EQ(t.parent(5), 4u);
  EXPECT_EQ(t.parent(1), std::nullopt);
  EXPECT_EQ(t.first_child(1), 2u);
  EXPECT_EQ(t.last_child(1), 10u);
  EXPECT_EQ(t.next_sibling(4), 10u);
  EXPECT_EQ(t.next_sibling(10), std::nullopt);
  EXPECT_EQ(t.prev_sibling(4), 2u);
  EXPECT_EQ(t.prev_sibling(2), std::nullopt);
}

TEST_P(T1, Orders) {
  EXPECT_EQ(t.preorderselect(5), 7u);
  EXPECT_EQ(t.postorder(4), 4u);
  EXPECT_EQ(t.postorderselect(4), 4u);
  EXPECT_EQ(t.preorder(1), 1u);
}

TEST_P(T1, Levels) {
  EXPECT_EQ(t.levelancestor(5, 1), 4u);
  EXPECT_EQ(t.levelancestor(7, 2), 1u);
  EXPECT_EQ(t.levelancestor(7, 3), std::nullopt);
  EXPECT_EQ(t.levelnext(5), 7u);
  EXPECT_EQ(t.levelnext(7), std::nullopt);
  EXPECT_EQ(t.levelprev(7), 5u);
  EXPECT_EQ(t.levelleftmost(2), 2u);
  EXPECT_EQ(t.levelrightmost(2), 10u);
  EXPECT_EQ(t.levelrightmost(3), 7u);
  EXPECT_EQ(t.levelrightmost(4), std::nullopt);
}

TEST_P(T1, AncestorsAndHeights) {
  EXPECT_EQ(t.lca(5, 10), 1u);
  EXPECT_EQ(t.lca(5, 7), 4u);
  EXPECT_EQ(t.lca(4, 7), 4u);
  EXPECT_EQ(t.lca(7, 7), 7u);
  EXPECT_EQ(t.deepestnode(1), 5u);
  EXPECT_EQ(t.height(1), 2);
  EXPECT_EQ(t.deepestnode(2), 2u);
  EXPECT_EQ(t.height(2), 0);
  EXPECT_EQ(t.height(4), 1);
}

TEST_P(T1, Children) {
  EXPECT_EQ(t.degree(1), 3u);
  EXPECT_EQ(t.child(1, 2), 4u);
  EXPECT_EQ(t.child(1, 3), 10u);
  EXPECT_EQ(t.childrank(10), 3u);
  EXPECT_EQ(t.childrank(2), 1u);
  EXPECT_EQ(t.degree(5), 0u);
  EXPECT_THROW((void)t.child(1, 4), std::out_of_range);
}

TEST_P(T1, Leaves) {
  EXPECT_EQ(t.leafrank(7), 3u);
  EXPECT_EQ(t.leafselect(4), 10u);
  EXPECT_EQ(t.numleaves(4), 2u);
  EXPECT_EQ(t.leftmostleaf(4), 5u);
  EXPECT_EQ(t.rightmostleaf(4), 7u);
  EXPECT_EQ(t.numleaves(1), 4u);
}

TEST_P(T1, Errors) {
  EXPECT_THROW((void)t.close(3), std::invalid_argument);
  EXPECT_THROW((void)t.open(4), std::invalid_argument);
  EXPECT_THROW((void)t.depth(13), std::out_of_range);
  EXPECT_THROW((void)t.first_child(2), std::invalid_argument);
  EXPECT_THROW((void)t.last_child(5), std::invalid_argument);
  EXPECT_THROW((void)t.rmq(6, 5), std::out_of_range);
  EXPECT_THROW((void)t.rmq(0, 5), std::out_of_range);
  EXPECT_THROW((void)t.minselect(2, 11, 4), std::out_of_range);
  EXPECT_THROW((void)t.select(Pattern::one, 7), std::out_of_range);
  EXPECT_THROW((void)t.excess(13), std::out_of_range);
}

INSTANTIATE_TEST_SUITE_P(Configs, T1,
                         ::testing::Values(Config{}, Config{16, 4, 8, true}, Config{4, 2, 8, true},
                                           Config{6, 2, 16, false}, Config{12, 4, 16, true}));

TEST(T100, InterBucketAnswers) {
  const auto t = SuccinctTree::from_string(t100(), Config{12, 4, 8, true});
  EXPECT_EQ(t.num_buckets(), 100u);
  EXPECT_EQ(t.fwdsearch(2, -2), 12u);
  EXPECT_EQ(t.fwdsearch(14, -2), 24u);
  EXPECT_EQ(t.rmq(5, 1190), 12u);
  EXPECT_EQ(t.mincount(1, 1200), 100u);
  EXPECT_EQ(t.minselect(1, 1200, 50), 600u);
  EXPECT_EQ(t.rank(Pattern::pair10, 1200), 400u);
  EXPECT_EQ(t.select(Pattern::pair10, 5), 14u);
  EXPECT_EQ(t.bwdsearch(25, -2), std::nullopt);
  EXPECT_EQ(t.rMq(1, 1200), 5u);
  EXPECT_EQ(t.ranges().range_min(t.bucket_arrays().m, 1, 98).value, 0);
  EXPECT_EQ(t.bucket_min_pos(t.ranges().range_min(t.bucket_arrays().m, 1, 98).bucket), 24u);
  EXPECT_EQ(t.ranges().range_min(t.bucket_arrays().m, 0, 99).count, 100u);
  const auto at = t.ranges().range_minselect(t.bucket_arrays().m, 0, 99, 50);
  EXPECT_EQ(at.bucket, 49u);
  EXPECT_EQ(t.bucket_max_pos(t.ranges().range_max(t.bucket_arrays().M, 0, 99).bucket), 5u);
  EXPECT_NO_THROW(t.verify());
}

TEST(T100, WithinBucketAtLargerBeta) {
  const auto t = SuccinctTree::from_string(t100(), Config{24, 8, 8, true});
  bpt::SearchTrace trace;
  EXPECT_EQ(t.fwdsearch(13, -1, &trace), 24u);
  EXPECT_FALSE(trace.used_forest);
}

TEST(PathTree, CrossesAllBuckets) {
  const std::uint64_t n = 1 << 10;
  const auto t = SuccinctTree::from_string(bpt::gen::path(n), Config{16, 4, 8, true});
  EXPECT_EQ(t.fwdsearch(1, -1), 2 * n);
  EXPECT_EQ(t.bwdsearch(2 * n, 0), 0u);
  EXPECT_EQ(t.close(1), 2 * n);
  EXPECT_EQ(t.open(2 * n), 1u);
  EXPECT_EQ(t.height(1), static_cast<bpt::excess_t>(n - 1));
}

TEST(SmallTrees, SinglePair) {
  const auto t = SuccinctTree::from_string("()");
  EXPECT_EQ(t.close(1), 2u);
  EXPECT_EQ(t.height(1), 0);
  EXPECT_EQ(t.degree(1), 0u);
  EXPECT_THROW((void)t.first_child(1), std::invalid_argument);
  EXPECT_EQ(t.lca(1, 1), 1u);
}

TEST(Forest, OperationsAcrossRoots) {
  const auto t = SuccinctTree::from_string("(())()(()())", Config{4, 2, 8, true});
  EXPECT_EQ(t.lca(2, 5), std::nullopt);
  EXPECT_EQ(t.childrank(7), 3u);
  EXPECT_EQ(t.levelnext(1), 5u);
  EXPECT_EQ(t.levelnext(2), 8u);
  EXPECT_EQ(t.levelprev(8), 2u);
  EXPECT_EQ(t.next_sibling(1), 5u);
  EXPECT_EQ(t.parent(5), std::nullopt);
}

TEST(Construction, RejectsInvalidInput) {
  EXPECT_THROW(SuccinctTree::from_string("(()"), std::invalid_argument);
  EXPECT_THROW(SuccinctTree::from_string(""), std::invalid_argument);
  EXPECT_THROW(SuccinctTree::from_string("()", Config{100, 7, 8, true}), std::invalid_argument);
  EXPECT_THROW(SuccinctTree::from_string("()", Config{64, 8, 12, true}), std::invalid_argument);
  EXPECT_THROW(SuccinctTree::from_string("()", Config{1u << 16, 1024, 16, true}), std::invalid_argument);
}

TEST(Identities, HoldOnUniformTree) {
  std::mt19937_64 rng(21);
  const std::string s = bpt::gen::uniform(3000, rng);
  const auto t = SuccinctTree::from_string(s, Config{64, 16, 8, true});
  for (bpt::position_t i = 1; i <= t.length(); ++i) {
    if (!t.bits()[i]) continue;
    ASSERT_EQ(t.open(t.close(i)), i);
    std::uint64_t sum = 1;
    for (std::uint64_t q = 1; q <= t.degree(i); ++q) {
      const auto c = t.child(i, q);
      ASSERT_EQ(t.parent(c), i);
      ASSERT_EQ(t.childrank(c), q);
      sum += t.subtree(c);
    }
    ASSERT_EQ(sum, t.subtree(i));
    const auto d = static_cast<std::uint64_t>(t.depth(i)) - 1;
    ASSERT_EQ(t.depth(*t.levelancestor(i, d)), 1);
    const bpt::position_t j = 1 + rng() % t.length();
    if (t.bits()[j]) {
      const auto a = *t.lca(i, j);
      ASSERT_TRUE(t.isancestor(a, i) && t.isancestor(a, j));
    }
  }
}

}  // namespace
