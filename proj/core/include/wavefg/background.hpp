#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "wavefg/frame.hpp"

namespace wavefg {

struct GaussianComponent {
  double weight = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

struct GmmParams {
  double learning_rate = 0.005;
  /// Match radius in standard deviations.
  double decision_k = 2.5;
  int max_gaussians = 5;
  /// Initial variance of a freshly spawned component (15 gray levels^2).
  double variance_init = 15.0 / (255.0 * 255.0);
  double variance_floor = 1e-4;
  double variance_ceiling = 0.25;
  /// Components, taken in weight order, whose cumulative weight first
  /// reaches this fraction form the background set for foreground tests.
  double background_ratio = 0.9;
};

struct GmmUpdate {
  GrayFrame background;
  /// Intensity-only foreground: the pixel matched no background component.
  BinaryMask foreground;
};

/// Per-pixel adaptive Gaussian mixture (MOG2-style, no shadow detection).
/// Components are kept in descending weight order; weights sum to one.
class GmmBackgroundModel {
 public:
  GmmBackgroundModel(int width, int height, GmmParams params = {});

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  const GmmParams& params() const noexcept { return params_; }
  long frames_seen() const noexcept { return frames_; }

  /// Feeds one frame. The foreground test uses the model as it was before
  /// this frame; the background image is the dominant mean after it.
  GmmUpdate update(const GrayFrame& frame, double learning_rate);
  GrayFrame update_and_extract(const GrayFrame& frame, double learning_rate);
  GrayFrame update_and_extract(const GrayFrame& frame) {
    return update_and_extract(frame, params_.learning_rate);
  }

  /// Mean of the highest-weight component at every pixel.
  GrayFrame background() const;

  std::span<const GaussianComponent> components(int x, int y) const noexcept;

  /// Versioned binary checkpoint; see README for the layout.
  void save(std::ostream& out) const;
  static GmmBackgroundModel load(std::istream& in);

 private:
  std::size_t slot(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }
  bool update_pixel(std::size_t p, double value, double rate);

  int width_;
  int height_;
  GmmParams params_;
  long frames_ = 0;
  std::vector<GaussianComponent> components_;  // max_gaussians per pixel
  std::vector<std::uint8_t> used_;              // live components per pixel
};

/// Per-pixel median of the given frames; the mean of the two middle values
/// for even counts.
GrayFrame static_background(std::span<const GrayFrame> frames);

/// Source of the background image for each incoming frame.
class BackgroundProvider {
 public:
  virtual ~BackgroundProvider() = default;
  virtual GrayFrame next(const GrayFrame& frame) = 0;
};

class GmmBackgroundProvider final : public BackgroundProvider {
 public:
  GmmBackgroundProvider(int width, int height, GmmParams params);
  explicit GmmBackgroundProvider(GmmBackgroundModel model);

  GrayFrame next(const GrayFrame& frame) override;
  const GmmBackgroundModel& model() const noexcept { return model_; }

 private:
  GmmBackgroundModel model_;
};

/// Fixed background image, e.g. the median of a clean lead-in.
class StaticBackgroundProvider final : public BackgroundProvider {
 public:
  explicit StaticBackgroundProvider(GrayFrame background);

  GrayFrame next(const GrayFrame& frame) override;

 private:
  GrayFrame background_;
};

}  // namespace wavefg
