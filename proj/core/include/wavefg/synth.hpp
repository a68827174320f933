#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wavefg/frame.hpp"

namespace wavefg {

enum class PatternKind { Constant, Grating, NoiseTexture };
/// Vertical stripes vary along x; horizontal stripes vary along y.
enum class StripeOrientation { Vertical, Horizontal };
enum class ShapeKind { Rectangle, Ellipse };

struct TextureSpec {
  PatternKind kind = PatternKind::Grating;
  double amplitude = 0.0;
  /// Grating period in pixels.
  double period = 8.0;
  StripeOrientation orientation = StripeOrientation::Vertical;
  /// Tile side for NoiseTexture.
  int tile = 16;
};

struct SynthScenario {
  int width = 192;
  int height = 192;
  int frames = 200;
  double background_level = 0.5;
  TextureSpec background{PatternKind::Grating, 0.03, 8.0, StripeOrientation::Vertical, 16};

  bool has_object = true;
  ShapeKind shape = ShapeKind::Rectangle;
  int object_width = 48;
  int object_height = 48;
  /// Top-left corner at enter_frame; moves by velocity pixels per frame.
  double start_x = 24.0;
  double start_y = 72.0;
  double velocity_x = 0.5;
  double velocity_y = 0.0;
  int enter_frame = 60;
  /// First frame without the object; -1 keeps it until the end.
  int exit_frame = -1;
  TextureSpec object{PatternKind::Grating, 0.03, 8.0, StripeOrientation::Horizontal, 16};

  double noise_sigma = 0.01;
  std::uint64_t seed = 1;

  /// Throws ConfigError for bad ranges or an object that leaves the frame.
  void validate() const;
  bool object_visible(int frame) const noexcept;
  /// Integer top-left corner of the object in `frame`.
  std::pair<int, int> object_origin(int frame) const noexcept;
};

/// Orthogonal gratings with matched mean: the canonical camouflage case.
SynthScenario camouflage_grating_scenario();

SynthScenario parse_scenario(std::string_view text, std::string_view origin = "<string>");
SynthScenario load_scenario(const std::filesystem::path& path);
std::string format_scenario(const SynthScenario& scenario);

struct SynthSequence {
  std::vector<GrayFrame> frames;
  std::vector<BinaryMask> truths;
};

/// Deterministic in the seed. Frames are quantized to 8 bits so that
/// written PGMs reload bit-identically. Object texture is shifted so its
/// noiseless mean equals the noiseless background mean.
SynthSequence generate(const SynthScenario& scenario);

/// Noiseless background image of the scenario.
GrayFrame render_background(const SynthScenario& scenario);

/// Writes frames/frame_NNNNNN.pgm and truth/truth_NNNNNN.pgm (1-based).
void write_sequence(const SynthSequence& sequence, const std::filesystem::path& out_dir);

}  // namespace wavefg
