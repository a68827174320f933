#pragma once

#include <array>

#include "wavefg/frame.hpp"

namespace wavefg {

/// Dilated Haar analysis pair for one level of the a trous cascade. Each
/// filter has two taps, at offsets 0 and `offset` = 2^(level-1).
struct SwtFilters {
  int level = 1;
  int offset = 1;
  static constexpr std::array<double, 2> lowpass{0.5, 0.5};
  static constexpr std::array<double, 2> highpass{0.5, -0.5};
};

SwtFilters swt_filters(int level);

/// Stationary Haar decomposition with periodic boundaries.
///
/// Level l filters the previous LL plane (the input for l = 1) with the
/// level-l filters. "cols" filters run down each column (along y) and "rows"
/// filters run along each row (along x):
///   LL = L_rows(L_cols(A)),  LH = H_rows(L_cols(A)),
///   HL = L_rows(H_cols(A)),  HH = H_rows(H_cols(A)).
/// So LH responds to intensity changes along x (vertical structures) and HL
/// to changes along y. Every band keeps the full frame size.
///
/// Throws DimensionError unless levels >= 1 and both frame dimensions are
/// at least 2^levels.
WaveletPyramid decompose(const GrayFrame& frame, int levels);
WaveletPyramid decompose(const CoefficientPlane& plane, int levels);

/// Largest level count a width x height frame supports (0 if none).
int max_levels(int width, int height) noexcept;

/// Pixels contributing to one level-`level` coefficient: (2^level)^2.
long long support_size(int level);

/// Population standard deviation of all coefficients in the plane.
double band_sigma(const CoefficientPlane& band);

}  // namespace wavefg
