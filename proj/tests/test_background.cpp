#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "test_support.hpp"
#include "wavefg/background.hpp"

using namespace wavefg;
using wavefg::testing::random_frame;

TEST(Gmm, StaticSequenceConverges) {
  std::mt19937_64 rng(1);
  const GrayFrame f = random_frame(12, 9, rng);
  GmmBackgroundModel model(12, 9);
  GrayFrame bg;
  for (int t = 0; t < 100; ++t) bg = model.update_and_extract(f);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_LT(std::abs(bg[i] - f[i]), 1e-3);
  EXPECT_EQ(model.frames_seen(), 100);
}

TEST(Gmm, ImpulseNeverBecomesBackground) {
  GmmBackgroundModel model(4, 4);
  const GrayFrame calm = GrayFrame::filled(4, 4, 0.3);
  std::vector<double> spike(16, 0.3);
  spike[5] = 0.95;
  const GrayFrame impulse(4, 4, spike);
  for (int t = 0; t < 200; ++t) {
    const GrayFrame bg = model.update_and_extract(t == 100 ? impulse : calm);
    if (t >= 100) EXPECT_NEAR(bg[5], 0.3, 1e-9) << "frame " << t;
  }
  // The transient component is still present but carries little weight.
  const auto comps = model.components(1, 1);
  ASSERT_GE(comps.size(), 1u);
  EXPECT_NEAR(comps[0].mean, 0.3, 1e-9);
  EXPECT_GT(comps[0].weight, 0.9);
}

TEST(Gmm, FullLearningRateCopiesFrame) {
  std::mt19937_64 rng(2);
  const GrayFrame f = random_frame(5, 5, rng);
  GmmBackgroundModel model(5, 5);
  EXPECT_EQ(model.update_and_extract(f, 1.0), f);
}

TEST(Gmm, WeightsStayNormalizedAndOrdered) {
  std::mt19937_64 rng(3);
  GmmBackgroundModel model(6, 6, GmmParams{0.05, 2.5, 3});
  for (int t = 0; t < 60; ++t) model.update(random_frame(6, 6, rng), 0.05);
  for (int y = 0; y < 6; ++y) {
    for (int x = 0; x < 6; ++x) {
      const auto comps = model.components(x, y);
      ASSERT_LE(comps.size(), 3u);
      double sum = 0.0;
      for (std::size_t k = 0; k < comps.size(); ++k) {
        sum += comps[k].weight;
        if (k > 0) EXPECT_GE(comps[k - 1].weight, comps[k].weight);
        EXPECT_GE(comps[k].variance, 1e-4);
        EXPECT_LE(comps[k].variance, 0.25);
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(Gmm, IntensityForegroundFlagsLargeChanges) {
  GmmBackgroundModel model(4, 4);
  const GrayFrame calm = GrayFrame::filled(4, 4, 0.3);
  for (int t = 0; t < 50; ++t) model.update(calm, 0.005);
  std::vector<double> v(16, 0.3);
  v[0] = 0.9;
  const GmmUpdate u = model.update(GrayFrame(4, 4, v), 0.005);
  EXPECT_TRUE(u.foreground[0]);
  EXPECT_EQ(u.foreground.count(), 1u);
}

TEST(Gmm, SizeAndRateErrors) {
  GmmBackgroundModel model(4, 4);
  EXPECT_THROW(model.update(GrayFrame::filled(5, 4, 0.0), 0.1), DimensionError);
  EXPECT_THROW(model.update(GrayFrame::filled(4, 4, 0.0), 0.0), std::invalid_argument);
  EXPECT_THROW(GmmBackgroundModel(0, 4), DimensionError);
}

TEST(Gmm, CheckpointRoundTripContinuesIdentically) {
  std::mt19937_64 rng(4);
  GmmBackgroundModel a(7, 5, GmmParams{0.02, 2.0, 4});
  for (int t = 0; t < 20; ++t) a.update(random_frame(7, 5, rng), 0.02);
  std::stringstream buf;
  a.save(buf);
  GmmBackgroundModel b = GmmBackgroundModel::load(buf);
  EXPECT_EQ(b.frames_seen(), a.frames_seen());
  EXPECT_EQ(b.params().max_gaussians, 4);
  for (int t = 0; t < 10; ++t) {
    const GrayFrame f = random_frame(7, 5, rng);
    const GmmUpdate ua = a.update(f, 0.02);
    const GmmUpdate ub = b.update(f, 0.02);
    ASSERT_EQ(ua.background, ub.background);
    ASSERT_EQ(ua.foreground, ub.foreground);
  }
}

TEST(Gmm, CheckpointRejectsGarbage) {
  std::stringstream junk("not a checkpoint at all");
  EXPECT_THROW(GmmBackgroundModel::load(junk), std::runtime_error);
  GmmBackgroundModel a(3, 3);
  std::stringstream buf;
  a.save(buf);
  std::string bytes = buf.str();
  bytes.resize(bytes.size() / 2);
  std::stringstream truncated(bytes);
  EXPECT_THROW(GmmBackgroundModel::load(truncated), std::runtime_error);
}

TEST(StaticBackground, MedianRule) {
  const GrayFrame a = GrayFrame::filled(1, 1, 0.1);
  const GrayFrame b = GrayFrame::filled(1, 1, 0.9);
  const GrayFrame c = GrayFrame::filled(1, 1, 0.2);
  EXPECT_EQ(static_background(std::vector<GrayFrame>{a})[0], 0.1);
  EXPECT_EQ(static_background(std::vector<GrayFrame>{a, b, c})[0], 0.2);
  const GrayFrame zero = GrayFrame::filled(1, 1, 0.0), one = GrayFrame::filled(1, 1, 1.0);
  EXPECT_EQ(static_background(std::vector<GrayFrame>{zero, one})[0], 0.5);
  EXPECT_THROW(static_background(std::vector<GrayFrame>{}), std::invalid_argument);
  EXPECT_THROW(static_background(std::vector<GrayFrame>{a, GrayFrame::filled(2, 1, 0.0)}), DimensionError);
}

TEST(Providers, StaticReturnsFixedImage) {
  const GrayFrame bg = GrayFrame::filled(3, 3, 0.4);
  StaticBackgroundProvider p(bg);
  EXPECT_EQ(p.next(GrayFrame::filled(3, 3, 0.9)), bg);
  EXPECT_THROW(p.next(GrayFrame::filled(4, 3, 0.9)), DimensionError);
}
