#include "wavefg/decisions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavefg {

CoefficientPlane coefficient_difference(const CoefficientPlane& cur_band, const CoefficientPlane& bg_band) {
  require_same_shape(cur_band, bg_band, "coefficient_difference");
  CoefficientPlane out(cur_band.width(), cur_band.height());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(cur_band[i] - bg_band[i]);
  return out;
}

CoefficientPlane texture_difference(const LbpHistogramField& cur_field, const LbpHistogramField& bg_field) {
  if (!cur_field.same_shape(bg_field)) throw DimensionError("texture_difference: field shape mismatch");
  const int w = cur_field.width();
  const int h = cur_field.height();
  const double k = cur_field.window_count();
  CoefficientPlane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto a = cur_field.counts(x, y);
      const auto b = bg_field.counts(x, y);
      int common = 0;
      for (int bin = 0; bin < kLbpBins; ++bin) common += std::min(a[bin], b[bin]);
      out(x, y) = 1.0 - common / k;
    }
  }
  return out;
}

BandDecisionState::BandDecisionState(int width, int height)
    : mean_(width, height, 0.0), variance_(width, height, kVarianceFloor) {}

void BandDecisionState::set(int x, int y, double mean, double variance) {
  mean_(x, y) = std::max(mean, 0.0);
  variance_(x, y) = std::max(variance, kVarianceFloor);
}

VotePlane BandDecisionState::vote(const CoefficientPlane& diff, double k, double learning_rate, VoteMode mode) {
  require_same_shape(diff, mean_, "BandDecisionState::vote");
  if (!(k > 0.0)) throw std::invalid_argument("BandDecisionState::vote: k must be > 0");
  const double rate = std::max(learning_rate, 1.0 / static_cast<double>(updates_ + 1));
  VotePlane votes(diff.width(), diff.height(), 0);
  for (std::size_t i = 0; i < diff.size(); ++i) {
    const double d = diff[i];
    const bool foreground = mode == VoteMode::Normal && d > mean_[i] + k * std::sqrt(variance_[i]);
    if (foreground) {
      votes[i] = 1;
      continue;
    }
    const double delta = d - mean_[i];
    mean_[i] = std::max(0.0, mean_[i] + rate * delta);
    variance_[i] = std::max(kVarianceFloor, (1.0 - rate) * (variance_[i] + rate * delta * delta));
  }
  ++updates_;
  return votes;
}

}  // namespace wavefg
