#pragma once

#include <array>
#include <vector>

#include "wavefg/frame.hpp"
#include "wavefg/lbp.hpp"

namespace wavefg {

/// Confidence of a band's decisions given band and noise standard
/// deviations: (sigma_band - sigma_noise) / sigma_band, or 0 when the band
/// carries no more energy than the noise.
double noise_weight(double sigma_band, double sigma_noise);

/// MAD estimator on the level-1 HH band: median(|HH_1|) / 0.6745.
double estimate_noise_sigma(const WaveletPyramid& pyramid);

/// Flatness mapping f(x) = clamp(x / 2, 0, 1) for x in [0, 2].
inline double flatness_map(double x) noexcept {
  const double v = 0.5 * x;
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

/// Texture-guided weights of one level, indexed by Band.
struct LevelTextureWeights {
  std::array<CoefficientPlane, kBandsPerLevel> coefficient;  // w_tW
  std::array<CoefficientPlane, kBandsPerLevel> texture;      // w_tL
};

/// With f = flatness_map:
///   w_tL(i) = 1 - f(x_i) for all four bands,
///   w_tW(i) = 1 - f(x_i) for LH, HL, HH,
///   w_tW(LL) = 1 + 2 * sum_{LH,HL,HH} f(x_k) + f(x_LL).
/// Flat regions move the level's coefficient weight onto LL.
LevelTextureWeights texture_weights(const std::array<FlatnessField, kBandsPerLevel>& flatness);

/// Mean AR(1) correlation over a level's 2^level x 2^level support, measured
/// from the anchor floor((S-1)/2) with Chebyshev distance: rho(d) = alpha^d.
double translation_weight(int level, double alpha);

/// translation_weight for levels 1..levels.
std::vector<double> translation_table(int levels, double alpha);

/// All weights of one frame. Per-band arrays use band_index().
struct WeightSet {
  std::vector<double> noise;                    // w_n, per band
  std::vector<double> translation;              // w_c, per level
  std::vector<CoefficientPlane> coefficient;    // w_tW, per band
  std::vector<CoefficientPlane> texture;        // w_tL, per band

  int levels() const noexcept { return static_cast<int>(translation.size()); }
  int band_count() const noexcept { return static_cast<int>(noise.size()); }
  /// Throws DimensionError unless every per-band array has 4 * levels entries
  /// and all planes are width x height.
  void check(int width, int height) const;
};

}  // namespace wavefg
