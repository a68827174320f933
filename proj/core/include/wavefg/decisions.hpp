#pragma once

#include <cstdint>

#include "wavefg/frame.hpp"
#include "wavefg/lbp.hpp"

namespace wavefg {

using VotePlane = Plane<std::uint8_t>;

/// Both votes of one band: V_W from coefficients, V_L from LBP texture.
struct BandVotes {
  VotePlane coefficient;
  VotePlane texture;
};

/// Per-pixel |cur - bg|.
CoefficientPlane coefficient_difference(const CoefficientPlane& cur_band, const CoefficientPlane& bg_band);

/// Per-pixel 1 - histogram intersection of the two windowed LBP histograms.
CoefficientPlane texture_difference(const LbpHistogramField& cur_field, const LbpHistogramField& bg_field);

enum class VoteMode {
  Normal,
  /// All votes background and every pixel updates.
  BurnIn,
};

/// Running Gaussian of one band's difference signal, per pixel.
///
/// A pixel votes foreground when diff > mean + k * stddev. Statistics are
/// updated only where the vote is background, with rate
/// max(learning_rate, 1 / (updates + 1)) so the first frames accumulate a
/// plain running mean and variance before the exponential rate takes over.
class BandDecisionState {
 public:
  static constexpr double kVarianceFloor = 1e-6;

  BandDecisionState() = default;
  BandDecisionState(int width, int height);

  int width() const noexcept { return mean_.width(); }
  int height() const noexcept { return mean_.height(); }

  const CoefficientPlane& mean() const noexcept { return mean_; }
  const CoefficientPlane& variance() const noexcept { return variance_; }
  long updates() const noexcept { return updates_; }

  /// Overrides the statistics of one pixel (tests and checkpoint restore).
  void set(int x, int y, double mean, double variance);

  VotePlane vote(const CoefficientPlane& diff, double k, double learning_rate, VoteMode mode = VoteMode::Normal);

 private:
  CoefficientPlane mean_;
  CoefficientPlane variance_;
  long updates_ = 0;
};

}  // namespace wavefg
