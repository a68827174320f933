#include "wavefg/swt.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wavefg {
namespace {

// One separable pass. `along_x` selects row filtering; taps sit at 0 and +d
// with periodic wrap.
void filter_pair(const CoefficientPlane& in, int d, bool along_x, CoefficientPlane& low,
                 CoefficientPlane& high) {
  const int w = in.width();
  const int h = in.height();
  constexpr double l0 = SwtFilters::lowpass[0], l1 = SwtFilters::lowpass[1];
  constexpr double h0 = SwtFilters::highpass[0], h1 = SwtFilters::highpass[1];
  for (int y = 0; y < h; ++y) {
    const auto src = in.row(y);
    auto lo = low.row(y);
    auto hi = high.row(y);
    if (along_x) {
      for (int x = 0; x < w; ++x) {
        const double a = src[x];
        const double b = src[(x + d) % w];
        lo[x] = l0 * a + l1 * b;
        hi[x] = h0 * a + h1 * b;
      }
    } else {
      const auto nxt = in.row((y + d) % h);
      for (int x = 0; x < w; ++x) {
        const double a = src[x];
        const double b = nxt[x];
        lo[x] = l0 * a + l1 * b;
        hi[x] = h0 * a + h1 * b;
      }
    }
  }
}

}  // namespace

SwtFilters swt_filters(int level) {
  if (level < 1 || level > 30) throw std::invalid_argument("swt_filters: level must be in 1..30");
  return SwtFilters{level, 1 << (level - 1)};
}

int max_levels(int width, int height) noexcept {
  int levels = 0;
  while (levels < 30 && (1 << (levels + 1)) <= width && (1 << (levels + 1)) <= height) ++levels;
  return levels;
}

WaveletPyramid decompose(const GrayFrame& frame, int levels) { return decompose(frame.plane(), levels); }

WaveletPyramid decompose(const CoefficientPlane& plane, int levels) {
  if (levels < 1) throw DimensionError("decompose: levels must be >= 1");
  if (levels > max_levels(plane.width(), plane.height())) {
    throw DimensionError("decompose: " + std::to_string(plane.width()) + "x" +
                         std::to_string(plane.height()) + " frame is too small for " +
                         std::to_string(levels) + " levels (needs >= " + std::to_string(1LL << levels) +
                         " pixels per side)");
  }
  const int w = plane.width();
  const int h = plane.height();

  std::vector<LevelBands> out;
  out.reserve(static_cast<std::size_t>(levels));
  CoefficientPlane col_low(w, h), col_high(w, h);
  const CoefficientPlane* approx = &plane;
  for (int level = 1; level <= levels; ++level) {
    const int d = swt_filters(level).offset;
    LevelBands bands{CoefficientPlane(w, h), CoefficientPlane(w, h), CoefficientPlane(w, h),
                     CoefficientPlane(w, h)};
    filter_pair(*approx, d, /*along_x=*/false, col_low, col_high);
    filter_pair(col_low, d, /*along_x=*/true, bands.ll, bands.lh);
    filter_pair(col_high, d, /*along_x=*/true, bands.hl, bands.hh);
    out.push_back(std::move(bands));
    approx = &out.back().ll;
  }
  return WaveletPyramid(std::move(out));
}

long long support_size(int level) {
  if (level < 1 || level > 30) throw std::invalid_argument("support_size: level must be in 1..30");
  const long long side = 1LL << level;
  return side * side;
}

double band_sigma(const CoefficientPlane& band) {
  const auto v = band.values();
  if (v.empty()) throw DimensionError("band_sigma: empty plane");
  // Deviations from the first sample keep constant planes at exactly 0.
  const double ref = v.front();
  double mean = 0.0;
  for (double x : v) mean += x - ref;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - ref - mean) * (x - ref - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

}  // namespace wavefg
