#include "wavefg/weights.hpp"

#include "wavefg/swt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wavefg {

double noise_weight(double sigma_band, double sigma_noise) {
  if (!(sigma_band > sigma_noise) || !(sigma_band > 0.0)) return 0.0;
  return (sigma_band - sigma_noise) / sigma_band;
}

double estimate_noise_sigma(const WaveletPyramid& pyramid) {
  if (pyramid.levels() < 1) throw std::invalid_argument("estimate_noise_sigma: empty pyramid");
  const auto hh = pyramid.band(1, Band::HH).values();
  std::vector<double> magnitudes(hh.size());
  std::transform(hh.begin(), hh.end(), magnitudes.begin(), [](double c) { return std::abs(c); });
  const std::size_t n = magnitudes.size();
  const auto mid = magnitudes.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(magnitudes.begin(), mid, magnitudes.end());
  double median = *mid;
  if (n % 2 == 0) median = 0.5 * (median + *std::max_element(magnitudes.begin(), mid));
  return median / 0.6745;
}

LevelTextureWeights texture_weights(const std::array<FlatnessField, kBandsPerLevel>& flatness) {
  const auto& ll = flatness[static_cast<int>(Band::LL)];
  for (const auto& f : flatness) require_same_shape(ll, f, "texture_weights");
  const int w = ll.width();
  const int h = ll.height();

  LevelTextureWeights out;
  for (int b = 0; b < kBandsPerLevel; ++b) {
    out.coefficient[b] = CoefficientPlane(w, h);
    out.texture[b] = CoefficientPlane(w, h);
  }
  for (std::size_t i = 0; i < ll.size(); ++i) {
    double detail_sum = 0.0;
    for (Band b : {Band::LH, Band::HL, Band::HH}) {
      const double f = flatness_map(flatness[static_cast<int>(b)][i]);
      detail_sum += f;
      out.coefficient[static_cast<int>(b)][i] = 1.0 - f;
      out.texture[static_cast<int>(b)][i] = 1.0 - f;
    }
    const double f_ll = flatness_map(ll[i]);
    out.texture[static_cast<int>(Band::LL)][i] = 1.0 - f_ll;
    out.coefficient[static_cast<int>(Band::LL)][i] = 1.0 + 2.0 * detail_sum + f_ll;
  }
  return out;
}

double translation_weight(int level, double alpha) {
  if (level < 1 || level > 15) throw std::invalid_argument("translation_weight: level must be in 1..15");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("translation_weight: alpha must be in (0,1)");
  const int side = 1 << level;
  const int anchor = (side - 1) / 2;
  // Chebyshev rings: count how many support pixels sit at each distance.
  std::vector<long long> at_distance(static_cast<std::size_t>(side), 0);
  for (int d = 0; d < side; ++d) {
    auto extent = [&](int r) -> long long {
      if (r < 0) return 0;
      const long long lo = std::max(0, anchor - r);
      const long long hi = std::min(side - 1, anchor + r);
      return (hi - lo + 1) * (hi - lo + 1);
    };
    at_distance[static_cast<std::size_t>(d)] = extent(d) - extent(d - 1);
  }
  double sum = 0.0;
  double rho = 1.0;
  for (int d = 0; d < side; ++d) {
    sum += static_cast<double>(at_distance[static_cast<std::size_t>(d)]) * rho;
    rho *= alpha;
  }
  return sum / static_cast<double>(support_size(level));
}

std::vector<double> translation_table(int levels, double alpha) {
  std::vector<double> table;
  table.reserve(static_cast<std::size_t>(std::max(levels, 0)));
  for (int level = 1; level <= levels; ++level) table.push_back(translation_weight(level, alpha));
  return table;
}

void WeightSet::check(int width, int height) const {
  const auto bands = static_cast<std::size_t>(kBandsPerLevel) * translation.size();
  if (noise.size() != bands || coefficient.size() != bands || texture.size() != bands) {
    throw DimensionError("WeightSet: expected " + std::to_string(bands) + " per-band entries");
  }
  for (std::size_t i = 0; i < bands; ++i) {
    if (coefficient[i].width() != width || coefficient[i].height() != height ||
        texture[i].width() != width || texture[i].height() != height) {
      throw DimensionError("WeightSet: texture weight plane size mismatch at band " + std::to_string(i));
    }
  }
}

}  // namespace wavefg
