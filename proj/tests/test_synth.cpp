#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "wavefg/config.hpp"
#include "wavefg/image_io.hpp"
#include "wavefg/synth.hpp"

using namespace wavefg;

TEST(Synth, NoiselessEmptySceneIsStatic) {
  SynthScenario s;
  s.frames = 5;
  s.width = s.height = 32;
  s.has_object = false;
  s.noise_sigma = 0.0;
  const SynthSequence seq = generate(s);
  ASSERT_EQ(seq.frames.size(), 5u);
  for (std::size_t t = 0; t < 5; ++t) {
    EXPECT_EQ(seq.frames[t], seq.frames[0]);
    EXPECT_EQ(seq.truths[t].count(), 0u);
  }
}

TEST(Synth, SameSeedSameSequence) {
  SynthScenario s = camouflage_grating_scenario();
  s.frames = 70;
  const SynthSequence a = generate(s), b = generate(s);
  EXPECT_EQ(a.frames, b.frames);
  EXPECT_EQ(a.truths, b.truths);
  s.seed = 2;
  EXPECT_NE(generate(s).frames, a.frames);
}

TEST(Synth, TruthMatchesObjectPlacement) {
  const SynthScenario s = camouflage_grating_scenario();
  const SynthSequence seq = generate(s);
  EXPECT_EQ(seq.truths[static_cast<std::size_t>(s.enter_frame - 1)].count(), 0u);
  for (int t : {s.enter_frame, s.enter_frame + 20, s.frames - 1}) {
    const BinaryMask& m = seq.truths[static_cast<std::size_t>(t)];
    EXPECT_EQ(m.count(), static_cast<std::size_t>(s.object_width * s.object_height));
    const auto [ox, oy] = s.object_origin(t);
    EXPECT_TRUE(m(ox, oy));
    EXPECT_TRUE(m(ox + s.object_width - 1, oy + s.object_height - 1));
    EXPECT_FALSE(m(ox - 1, oy));
  }
}

TEST(Synth, ObjectMeanMatchesBackground) {
  SynthScenario s = camouflage_grating_scenario();
  s.noise_sigma = 0.0;
  s.frames = s.enter_frame + 1;
  const SynthSequence seq = generate(s);
  const GrayFrame& f = seq.frames.back();
  const BinaryMask& m = seq.truths.back();
  double in = 0.0, out = 0.0;
  std::size_t n_in = 0, n_out = 0;
  for (std::size_t p = 0; p < f.size(); ++p) {
    (m[p] ? in : out) += f[p];
    (m[p] ? n_in : n_out) += 1;
  }
  EXPECT_NEAR(in / static_cast<double>(n_in), out / static_cast<double>(n_out), 1.0 / 255.0);
}

TEST(Synth, FramesAreEightBitQuantized) {
  SynthScenario s = camouflage_grating_scenario();
  s.frames = 3;
  const SynthSequence seq = generate(s);
  for (double v : seq.frames[2].values()) EXPECT_EQ(v, std::round(v * 255.0) / 255.0);
}

TEST(Synth, ObjectLeavingFrameIsRejected) {
  SynthScenario s = camouflage_grating_scenario();
  s.velocity_x = 5.0;
  EXPECT_THROW(s.validate(), ConfigError);
  EXPECT_THROW(generate(s), ConfigError);
}

TEST(Synth, ExitFrameRemovesObject) {
  SynthScenario s = camouflage_grating_scenario();
  s.frames = 90;
  s.exit_frame = 80;
  const SynthSequence seq = generate(s);
  EXPECT_GT(seq.truths[79].count(), 0u);
  EXPECT_EQ(seq.truths[80].count(), 0u);
}

TEST(Scenario, FormatParsesBack) {
  SynthScenario s = camouflage_grating_scenario();
  s.shape = ShapeKind::Ellipse;
  s.background.kind = PatternKind::NoiseTexture;
  s.seed = 99;
  EXPECT_EQ(format_scenario(parse_scenario(format_scenario(s))), format_scenario(s));
  EXPECT_THROW(parse_scenario("object_shape = hexagon"), ConfigError);
  EXPECT_THROW(parse_scenario("widht = 10"), ConfigError);
}

TEST(Scenario, WriteSequenceLayout) {
  wavefg::testing::TempDir dir("synth");
  SynthScenario s = camouflage_grating_scenario();
  s.frames = 3;
  const SynthSequence seq = generate(s);
  write_sequence(seq, dir.path());
  EXPECT_EQ(load_frame(dir / "frames/frame_000003.pgm"), seq.frames[2]);
  EXPECT_EQ(load_mask(dir / "truth/truth_000001.pgm"), seq.truths[0]);
  EXPECT_EQ(list_frames(dir / "frames").size(), 3u);
}

TEST(Scenario, RenderBackgroundIsNoiseless) {
  SynthScenario s = camouflage_grating_scenario();
  const GrayFrame bg = render_background(s);
  s.noise_sigma = 0.0;
  s.has_object = false;
  s.frames = 1;
  const GrayFrame f = generate(s).frames[0];
  for (std::size_t p = 0; p < f.size(); ++p) EXPECT_NEAR(bg[p], f[p], 0.5 / 255.0 + 1e-12);
}
