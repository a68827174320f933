#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "test_support.hpp"
#include "wavefg/swt.hpp"
#include "wavefg/weights.hpp"

using namespace wavefg;

TEST(NoiseWeight, Examples) {
  EXPECT_EQ(noise_weight(0.03, 0.03), 0.0);
  EXPECT_EQ(noise_weight(0.2, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(noise_weight(0.04, 0.01), 0.75);
  EXPECT_EQ(noise_weight(0.01, 0.04), 0.0);
  EXPECT_EQ(noise_weight(0.0, 0.0), 0.0);
}

TEST(NoiseWeight, StaysInUnitInterval) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double w = noise_weight(uni(rng), uni(rng));
    EXPECT_GE(w, 0.0);
    EXPECT_LE(w, 1.0);
  }
}

TEST(NoiseEstimate, ConstantImageIsZero) {
  EXPECT_EQ(estimate_noise_sigma(decompose(GrayFrame::filled(16, 16, 0.4), 1)), 0.0);
}

TEST(NoiseEstimate, GaussianNoiseThroughHhGain) {
  double gain2 = 0.0;
  for (double a : SwtFilters::highpass) {
    for (double b : SwtFilters::highpass) gain2 += (a * b) * (a * b);
  }
  const double gain = std::sqrt(gain2);
  std::mt19937_64 rng(123);
  for (double sigma : {0.01, 0.03, 0.1}) {
    std::normal_distribution<double> n(0.0, sigma);
    CoefficientPlane a(256, 256);
    for (auto& v : a.values()) v = 0.5 + n(rng);
    const double est = estimate_noise_sigma(decompose(a, 1));
    EXPECT_NEAR(est, sigma * gain, 0.1 * sigma * gain) << sigma;
  }
}

TEST(NoiseEstimate, AddingNoiseIncreasesEstimate) {
  CoefficientPlane clean(64, 64);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) clean(x, y) = 0.5 + 0.1 * std::sin(0.3 * x) * std::cos(0.2 * y);
  }
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 0.02);
  CoefficientPlane noisy = clean;
  for (auto& v : noisy.values()) v += n(rng);
  EXPECT_GT(estimate_noise_sigma(decompose(noisy, 1)), estimate_noise_sigma(decompose(clean, 1)));
}

TEST(TranslationWeight, WorkedExamples) {
  EXPECT_NEAR(translation_weight(1, 0.95), 0.9625, 1e-12);
  EXPECT_NEAR(translation_weight(2, 0.95), 0.93234375, 1e-12);
}

TEST(TranslationWeight, MatchesEnumeration) {
  for (int level = 1; level <= 7; ++level) {
    for (double alpha : {0.5, 0.9, 0.95, 0.99}) {
      EXPECT_NEAR(translation_weight(level, alpha), oracle::translation_weight(level, alpha), 1e-12)
          << level << " " << alpha;
    }
  }
}

TEST(TranslationWeight, DecreasesWithLevelAndApproachesOne) {
  for (int level = 2; level <= 7; ++level) EXPECT_LT(translation_weight(level, 0.95), translation_weight(level - 1, 0.95));
  for (int level = 1; level <= 7; ++level) EXPECT_NEAR(translation_weight(level, 1.0 - 1e-12), 1.0, 1e-9);
  EXPECT_THROW(translation_weight(0, 0.9), std::invalid_argument);
  EXPECT_THROW(translation_weight(2, 1.0), std::invalid_argument);
  const auto table = translation_table(3, 0.9);
  ASSERT_EQ(table.size(), 3u);
  EXPECT_EQ(table[2], translation_weight(3, 0.9));
}

TEST(TextureWeights, FlatAndTexturedExtremes) {
  std::array<FlatnessField, 4> flat, textured;
  for (int b = 0; b < 4; ++b) {
    flat[b] = FlatnessField(3, 2, 2.0);
    textured[b] = FlatnessField(3, 2, 0.0);
  }
  const LevelTextureWeights wf = texture_weights(flat);
  const LevelTextureWeights wt = texture_weights(textured);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(wf.coefficient[0][i], 8.0);
    EXPECT_EQ(wf.texture[0][i], 0.0);
    for (int b = 1; b < 4; ++b) {
      EXPECT_EQ(wf.coefficient[b][i], 0.0);
      EXPECT_EQ(wf.texture[b][i], 0.0);
    }
    for (int b = 0; b < 4; ++b) {
      EXPECT_EQ(wt.coefficient[b][i], 1.0);
      EXPECT_EQ(wt.texture[b][i], 1.0);
    }
  }
}

TEST(TextureWeights, TotalCoefficientWeightMovesToLl) {
  // Whatever detail weight is lost reappears, doubled, on LL.
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> uni(0.0, 2.0);
  std::array<FlatnessField, 4> f;
  for (auto& p : f) {
    p = FlatnessField(4, 4);
    for (auto& v : p.values()) v = uni(rng);
  }
  const LevelTextureWeights w = texture_weights(f);
  for (std::size_t i = 0; i < 16; ++i) {
    double lost = 0.0;
    for (int b = 1; b < 4; ++b) lost += 1.0 - w.coefficient[b][i];
    EXPECT_NEAR(w.coefficient[0][i], 1.0 + 2.0 * lost + flatness_map(f[0][i]), 1e-12);
    EXPECT_NEAR(w.texture[0][i], 1.0 - flatness_map(f[0][i]), 1e-15);
  }
}

TEST(TextureWeights, FlatnessMapClamps) {
  EXPECT_EQ(flatness_map(-1.0), 0.0);
  EXPECT_EQ(flatness_map(1.0), 0.5);
  EXPECT_EQ(flatness_map(3.0), 1.0);
}

TEST(WeightSetTest, CheckCatchesMismatch) {
  WeightSet w;
  w.translation = {0.9};
  w.noise = {1, 1, 1, 1};
  w.coefficient.assign(4, CoefficientPlane(2, 2, 1.0));
  w.texture.assign(4, CoefficientPlane(2, 2, 1.0));
  EXPECT_NO_THROW(w.check(2, 2));
  EXPECT_THROW(w.check(3, 2), DimensionError);
  w.noise.pop_back();
  EXPECT_THROW(w.check(2, 2), DimensionError);
}
