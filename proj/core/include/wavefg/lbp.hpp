#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "wavefg/frame.hpp"

namespace wavefg {

/// Uniform LBP with P = 8, R = 1: 58 uniform patterns plus one shared bin.
inline constexpr int kLbpBins = 59;
inline constexpr std::uint8_t kAllZerosBin = 0;
inline constexpr std::uint8_t kAllOnesBin = 57;
inline constexpr std::uint8_t kNonUniformBin = 58;

/// Per-pixel uniform-LBP bin index (0..58).
using CodePlane = Plane<std::uint8_t>;
/// Per-pixel fraction (n(BG) + n(C)) / K in [0, 2].
using FlatnessField = Plane<double>;

/// Raw 8-bit pattern -> uniform bin. Patterns with at most two circular 0/1
/// transitions get bins 0..57 in increasing raw-code order; all others 58.
const std::array<std::uint8_t, 256>& uniform_lbp_table() noexcept;

/// Number of circular bit transitions in a raw 8-bit pattern.
int lbp_transitions(std::uint8_t raw) noexcept;

/// True for the zero-transition bins (all zeros, all ones) and the
/// non-uniform bin: the patterns that mark flat or noise-dominated regions.
constexpr bool is_flat_bin(std::uint8_t bin) noexcept {
  return bin == kAllZerosBin || bin == kAllOnesBin || bin == kNonUniformBin;
}

/// Neighbor p in circular order E, NE, N, NW, W, SW, S, SE (y grows down).
inline constexpr std::array<std::array<int, 2>, 8> kLbpNeighbors{{
    {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}, {0, 1}, {1, 1},
}};

/// Raw pattern at one pixel: bit p is set when neighbor p >= the center.
/// Neighbors wrap periodically.
std::uint8_t lbp_raw_code(const CoefficientPlane& plane, int x, int y) noexcept;

/// Uniform-LBP bin for every pixel. Requires a plane of at least 3x3.
CodePlane lbp_codes(const CoefficientPlane& plane);

/// Windowed uniform-LBP histograms, one per pixel, over a (2r+1)^2 periodic
/// window. Counts are stored; histogram() normalizes on demand.
class LbpHistogramField {
 public:
  LbpHistogramField() = default;
  LbpHistogramField(int width, int height, int radius);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int radius() const noexcept { return radius_; }
  /// Pixels per window, K = (2r+1)^2.
  int window_count() const noexcept { return (2 * radius_ + 1) * (2 * radius_ + 1); }

  std::span<const std::uint16_t, kLbpBins> counts(int x, int y) const noexcept {
    return std::span<const std::uint16_t, kLbpBins>(counts_.data() + offset(x, y), kLbpBins);
  }
  std::span<std::uint16_t, kLbpBins> counts(int x, int y) noexcept {
    return std::span<std::uint16_t, kLbpBins>(counts_.data() + offset(x, y), kLbpBins);
  }
  std::array<double, kLbpBins> histogram(int x, int y) const noexcept;

  bool same_shape(const LbpHistogramField& o) const noexcept {
    return width_ == o.width_ && height_ == o.height_ && radius_ == o.radius_;
  }

 private:
  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) *
           kLbpBins;
  }

  int width_ = 0;
  int height_ = 0;
  int radius_ = 0;
  std::vector<std::uint16_t> counts_;
};

/// Sliding column histograms: O(pixels * bins) regardless of the radius.
LbpHistogramField histogram_field(const CodePlane& codes, int radius);
/// Same, reusing the storage of `out` when its shape already matches.
void histogram_field(const CodePlane& codes, int radius, LbpHistogramField& out);

/// Sum over bins of min(h1[b], h2[b]); lengths must match.
double histogram_intersection(std::span<const double> h1, std::span<const double> h2);

/// Per-pixel (n(BG) + n(C)) / K where n counts window pixels in a flat bin
/// (see is_flat_bin) and K = (2r+1)^2 is the window size of one image.
FlatnessField flatness_fraction(const CodePlane& codes_bg, const CodePlane& codes_cur, int radius);

/// Periodic (2r+1)^2 box sum of a per-pixel count.
Plane<int> periodic_box_sum(const Plane<int>& values, int radius);

}  // namespace wavefg
