#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "test_support.hpp"
#include "wavefg/voting.hpp"

using namespace wavefg;
using wavefg::testing::random_vote_instance;

TEST(Accumulate, AllZeroAndAllOneVotes) {
  std::mt19937_64 rng(1);
  auto inst = random_vote_instance(4, 4, 2, rng);
  for (auto& v : inst.votes) {
    for (auto& x : v.coefficient.values()) x = 0;
    for (auto& x : v.texture.values()) x = 0;
  }
  const VoteMap zero = accumulate(inst.votes, inst.weights);
  for (double v : zero.votes.values()) EXPECT_EQ(v, 0.0);
  for (auto& v : inst.votes) {
    for (auto& x : v.coefficient.values()) x = 1;
    for (auto& x : v.texture.values()) x = 1;
  }
  const VoteMap one = accumulate(inst.votes, inst.weights);
  EXPECT_EQ(one.votes, one.max_votes);
}

TEST(Accumulate, MatchesScalarLoop) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = random_vote_instance(4, 4, 2, rng);
    const VoteMap got = accumulate(inst.votes, inst.weights);
    CoefficientPlane v, vmax;
    oracle::accumulate(inst.votes, inst.weights, v, vmax);
    for (std::size_t p = 0; p < v.size(); ++p) {
      ASSERT_NEAR(got.votes[p], v[p], 1e-12);
      ASSERT_NEAR(got.max_votes[p], vmax[p], 1e-12);
    }
  }
}

TEST(Accumulate, BandCountMismatchThrows) {
  std::mt19937_64 rng(3);
  auto inst = random_vote_instance(3, 3, 2, rng);
  inst.votes.pop_back();
  EXPECT_THROW(accumulate(inst.votes, inst.weights), DimensionError);
  EXPECT_THROW(accumulate(std::vector<BandVotes>{}, inst.weights), DimensionError);
}

TEST(Threshold, BoundaryRule) {
  VoteMap m{CoefficientPlane(3, 1, std::vector<double>{2.0, 0.0, 1.0}), CoefficientPlane(3, 1, 2.0)};
  const BinaryMask mask = threshold(m, 0.5);
  EXPECT_TRUE(mask[0]);
  EXPECT_FALSE(mask[1]);
  EXPECT_FALSE(mask[2]);
  EXPECT_FALSE(threshold(m, 0.01)[1]);
  VoteMap none{CoefficientPlane(1, 1, 0.0), CoefficientPlane(1, 1, 0.0)};
  EXPECT_FALSE(threshold(none, 0.5)[0]);
  EXPECT_THROW(threshold(m, 0.0), std::invalid_argument);
}

TEST(Threshold, AddingAVoteNeverClearsAPixel) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> pick(0, 15);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = random_vote_instance(4, 4, 2, rng);
    const BinaryMask before = threshold(accumulate(inst.votes, inst.weights), 0.5);
    auto& band = inst.votes[static_cast<std::size_t>(pick(rng) % 8)];
    const auto p = static_cast<std::size_t>(pick(rng));
    (trial % 2 ? band.coefficient : band.texture)[p] = 1;
    const BinaryMask after = threshold(accumulate(inst.votes, inst.weights), 0.5);
    for (std::size_t i = 0; i < before.size(); ++i) ASSERT_GE(after[i], before[i]);
  }
}

TEST(Threshold, CommonScaleInvariance) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = random_vote_instance(4, 4, 2, rng);
    const BinaryMask before = threshold(accumulate(inst.votes, inst.weights), 0.5);
    const double c = trial % 2 ? 4.0 : scale(rng);
    for (auto& w : inst.weights.noise) w *= c;
    EXPECT_EQ(threshold(accumulate(inst.votes, inst.weights), 0.5), before);
  }
}

TEST(Postprocess, Examples) {
  BinaryMask lone(7, 7);
  lone.set(3, 3, true);
  EXPECT_EQ(postprocess(lone, false), lone);
  EXPECT_EQ(postprocess(lone, true).count(), 0u);
  BinaryMask block(9, 9);
  for (int y = 2; y < 7; ++y) {
    for (int x = 2; x < 7; ++x) block.set(x, y, true);
  }
  const BinaryMask out = postprocess(block, true);
  for (int y = 3; y < 6; ++y) {
    for (int x = 3; x < 6; ++x) EXPECT_TRUE(out(x, y));
  }
  EXPECT_FALSE(out(2, 2));  // corner has 4 of 9
  EXPECT_TRUE(out(2, 4));   // edge midpoint has 6 of 9
}
