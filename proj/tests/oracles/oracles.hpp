// Brute-force reference implementations used only by the tests. Each one
// takes a different computational route from the library code it checks.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "wavefg/decisions.hpp"
#include "wavefg/frame.hpp"
#include "wavefg/weights.hpp"

namespace wavefg::oracle {

inline int wrap(int v, int n) { return ((v % n) + n) % n; }

/// Mean of a periodic box [x0, x0+bw) x [y0, y0+bh).
inline double box_mean(const CoefficientPlane& a, int x0, int y0, int bw, int bh) {
  double sum = 0.0;
  for (int dy = 0; dy < bh; ++dy) {
    for (int dx = 0; dx < bw; ++dx) sum += a(wrap(x0 + dx, a.width()), wrap(y0 + dy, a.height()));
  }
  return sum / (static_cast<double>(bw) * bh);
}

/// Level-`level` Haar SWT coefficient computed straight from the input as
/// differences of box means (s = 2^(level-1)), without the cascade.
inline double swt_coefficient(const CoefficientPlane& a, int level, Band band, int x, int y) {
  const int s = 1 << (level - 1);
  switch (band) {
    case Band::LL:
      return box_mean(a, x, y, 2 * s, 2 * s);
    case Band::LH:
      return 0.5 * (box_mean(a, x, y, s, 2 * s) - box_mean(a, x + s, y, s, 2 * s));
    case Band::HL:
      return 0.5 * (box_mean(a, x, y, 2 * s, s) - box_mean(a, x, y + s, 2 * s, s));
    case Band::HH:
      return 0.25 * (box_mean(a, x, y, s, s) - box_mean(a, x, y + s, s, s) - box_mean(a, x + s, y, s, s) +
                     box_mean(a, x + s, y + s, s, s));
  }
  return 0.0;
}

/// Direct 2x2 dilated convolution of the previous LL plane, one level.
inline LevelBands swt_direct_level(const CoefficientPlane& prev, int level) {
  const int d = 1 << (level - 1);
  const int w = prev.width(), h = prev.height();
  const double lo[2] = {0.5, 0.5};
  const double hi[2] = {0.5, -0.5};
  LevelBands out{CoefficientPlane(w, h), CoefficientPlane(w, h), CoefficientPlane(w, h), CoefficientPlane(w, h)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double ll = 0, lh = 0, hl = 0, hh = 0;
      for (int j = 0; j < 2; ++j) {      // along y (cols filter)
        for (int i = 0; i < 2; ++i) {    // along x (rows filter)
          const double v = prev(wrap(x + i * d, w), wrap(y + j * d, h));
          ll += lo[i] * lo[j] * v;
          lh += hi[i] * lo[j] * v;
          hl += lo[i] * hi[j] * v;
          hh += hi[i] * hi[j] * v;
        }
      }
      out.ll(x, y) = ll;
      out.lh(x, y) = lh;
      out.hl(x, y) = hl;
      out.hh(x, y) = hh;
    }
  }
  return out;
}

/// Uniform bin by enumeration: list every pattern with <= 2 transitions by
/// walking bit strings, not by the library's table construction.
inline int uniform_bin(unsigned raw) {
  std::vector<unsigned> uniform;
  for (unsigned c = 0; c < 256; ++c) {
    int transitions = 0;
    for (int p = 0; p < 8; ++p) {
      const unsigned a = (c >> p) & 1u;
      const unsigned b = (c >> ((p + 1) % 8)) & 1u;
      transitions += a != b;
    }
    if (transitions <= 2) uniform.push_back(c);
  }
  const auto it = std::find(uniform.begin(), uniform.end(), raw);
  return it == uniform.end() ? 58 : static_cast<int>(it - uniform.begin());
}

/// Eight-neighbor recount at one pixel.
inline int lbp_bin(const CoefficientPlane& a, int x, int y) {
  // Circular order: E, NE, N, NW, W, SW, S, SE with y pointing down.
  const int dx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
  const int dy[8] = {0, -1, -1, -1, 0, 1, 1, 1};
  unsigned raw = 0;
  for (int p = 0; p < 8; ++p) {
    if (a(wrap(x + dx[p], a.width()), wrap(y + dy[p], a.height())) >= a(x, y)) raw |= 1u << p;
  }
  return uniform_bin(raw);
}

/// Window recount of bin occurrences around (x, y).
inline std::array<int, 59> window_counts(const Plane<std::uint8_t>& codes, int x, int y, int r) {
  std::array<int, 59> h{};
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) ++h[codes(wrap(x + dx, codes.width()), wrap(y + dy, codes.height()))];
  }
  return h;
}

/// Average of alpha^chebyshev over every pixel of the 2^level support.
inline double translation_weight(int level, double alpha) {
  const int side = 1 << level;
  const int anchor = (side - 1) / 2;
  double sum = 0.0;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      const int d = std::max(std::abs(x - anchor), std::abs(y - anchor));
      sum += std::pow(alpha, d);
    }
  }
  return sum / (static_cast<double>(side) * side);
}

/// Pixel-outer, band-inner scalar summation of the weighted vote.
inline void accumulate(const std::vector<BandVotes>& votes, const WeightSet& w, CoefficientPlane& v,
                       CoefficientPlane& vmax) {
  const int width = votes.front().coefficient.width();
  const int height = votes.front().coefficient.height();
  v = CoefficientPlane(width, height, 0.0);
  vmax = CoefficientPlane(width, height, 0.0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double sum = 0.0, top = 0.0;
      for (std::size_t i = 0; i < votes.size(); ++i) {
        const int level = static_cast<int>(i) / 4 + 1;
        const double base = w.noise[i] * w.translation[static_cast<std::size_t>(level - 1)];
        const double vw = votes[i].coefficient(x, y) ? 1.0 : 0.0;
        const double vl = votes[i].texture(x, y) ? 1.0 : 0.0;
        sum += base * (w.coefficient[i](x, y) * vw + w.texture[i](x, y) * vl);
        top += base * (w.coefficient[i](x, y) + w.texture[i](x, y));
      }
      v(x, y) = sum;
      vmax(x, y) = top;
    }
  }
}

/// Two-pass population standard deviation.
inline double population_sigma(const std::vector<double>& values) {
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

}  // namespace wavefg::oracle
