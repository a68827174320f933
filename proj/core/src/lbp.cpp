#include "wavefg/lbp.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace wavefg {
namespace {

constexpr std::array<std::uint8_t, 256> make_uniform_table() {
  std::array<std::uint8_t, 256> table{};
  std::uint8_t next = 0;
  for (int raw = 0; raw < 256; ++raw) {
    const auto code = static_cast<std::uint8_t>(raw);
    const auto rotated = static_cast<std::uint8_t>((code << 1) | (code >> 7));
    const int transitions = std::popcount(static_cast<unsigned>(code ^ rotated));
    table[static_cast<std::size_t>(raw)] = transitions <= 2 ? next++ : kNonUniformBin;
  }
  return table;
}

constexpr std::array<std::uint8_t, 256> kUniformTable = make_uniform_table();
static_assert(kUniformTable[0] == kAllZerosBin);
static_assert(kUniformTable[255] == kAllOnesBin);

inline int wrap(int v, int n) noexcept {
  v %= n;
  return v < 0 ? v + n : v;
}

}  // namespace

const std::array<std::uint8_t, 256>& uniform_lbp_table() noexcept { return kUniformTable; }

int lbp_transitions(std::uint8_t raw) noexcept {
  const auto rotated = static_cast<std::uint8_t>((raw << 1) | (raw >> 7));
  return std::popcount(static_cast<unsigned>(raw ^ rotated));
}

std::uint8_t lbp_raw_code(const CoefficientPlane& plane, int x, int y) noexcept {
  const double center = plane(x, y);
  std::uint8_t raw = 0;
  for (std::size_t p = 0; p < kLbpNeighbors.size(); ++p) {
    const int nx = wrap(x + kLbpNeighbors[p][0], plane.width());
    const int ny = wrap(y + kLbpNeighbors[p][1], plane.height());
    if (plane(nx, ny) >= center) raw |= static_cast<std::uint8_t>(1u << p);
  }
  return raw;
}

CodePlane lbp_codes(const CoefficientPlane& plane) {
  const int w = plane.width();
  const int h = plane.height();
  if (w < 3 || h < 3) {
    throw DimensionError("lbp_codes: plane must be at least 3x3, got " + std::to_string(w) + "x" +
                         std::to_string(h));
  }
  CodePlane codes(w, h);
  for (int y = 0; y < h; ++y) {
    const auto up = plane.row(wrap(y - 1, h));
    const auto mid = plane.row(y);
    const auto down = plane.row(wrap(y + 1, h));
    for (int x = 0; x < w; ++x) {
      const int xl = x == 0 ? w - 1 : x - 1;
      const int xr = x == w - 1 ? 0 : x + 1;
      const double c = mid[x];
      const unsigned raw = (mid[xr] >= c ? 1u : 0u) | (up[xr] >= c ? 2u : 0u) | (up[x] >= c ? 4u : 0u) |
                           (up[xl] >= c ? 8u : 0u) | (mid[xl] >= c ? 16u : 0u) |
                           (down[xl] >= c ? 32u : 0u) | (down[x] >= c ? 64u : 0u) |
                           (down[xr] >= c ? 128u : 0u);
      codes(x, y) = kUniformTable[raw];
    }
  }
  return codes;
}

LbpHistogramField::LbpHistogramField(int width, int height, int radius)
    : width_(width), height_(height), radius_(radius),
      counts_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * kLbpBins, 0) {
  if (radius < 1) throw std::invalid_argument("LbpHistogramField: radius must be >= 1");
  if (window_count() > 65535) throw std::invalid_argument("LbpHistogramField: radius too large");
}

std::array<double, kLbpBins> LbpHistogramField::histogram(int x, int y) const noexcept {
  std::array<double, kLbpBins> h{};
  const auto c = counts(x, y);
  const double k = window_count();
  for (int b = 0; b < kLbpBins; ++b) h[b] = c[b] / k;
  return h;
}

LbpHistogramField histogram_field(const CodePlane& codes, int radius) {
  LbpHistogramField field;
  histogram_field(codes, radius, field);
  return field;
}

void histogram_field(const CodePlane& codes, int radius, LbpHistogramField& field) {
  const int w = codes.width();
  const int h = codes.height();
  if (field.width() != w || field.height() != h || field.radius() != radius) {
    field = LbpHistogramField(w, h, radius);
  }
  if (w == 0 || h == 0) return;

  // column[x] holds the histogram of codes(x, y-r .. y+r) for the current row.
  std::vector<std::uint16_t> column(static_cast<std::size_t>(w) * kLbpBins, 0);
  auto col = [&](int x) { return column.data() + static_cast<std::size_t>(x) * kLbpBins; };
  for (int x = 0; x < w; ++x) {
    for (int dy = -radius; dy <= radius; ++dy) ++col(x)[codes(x, wrap(dy, h))];
  }

  std::array<std::uint16_t, kLbpBins> window{};
  for (int y = 0; y < h; ++y) {
    if (y > 0) {
      for (int x = 0; x < w; ++x) {
        --col(x)[codes(x, wrap(y - 1 - radius, h))];
        ++col(x)[codes(x, wrap(y + radius, h))];
      }
    }
    window.fill(0);
    for (int dx = -radius; dx <= radius; ++dx) {
      const std::uint16_t* c = col(wrap(dx, w));
      for (int b = 0; b < kLbpBins; ++b) window[b] = static_cast<std::uint16_t>(window[b] + c[b]);
    }
    for (int x = 0; x < w; ++x) {
      if (x > 0) {
        const std::uint16_t* add = col(wrap(x + radius, w));
        const std::uint16_t* sub = col(wrap(x - 1 - radius, w));
        for (int b = 0; b < kLbpBins; ++b) {
          window[b] = static_cast<std::uint16_t>(window[b] + add[b] - sub[b]);
        }
      }
      std::copy(window.begin(), window.end(), field.counts(x, y).begin());
    }
  }
}

double histogram_intersection(std::span<const double> h1, std::span<const double> h2) {
  if (h1.size() != h2.size()) throw DimensionError("histogram_intersection: bin count mismatch");
  double sum = 0.0;
  for (std::size_t b = 0; b < h1.size(); ++b) sum += std::min(h1[b], h2[b]);
  return sum;
}

Plane<int> periodic_box_sum(const Plane<int>& values, int radius) {
  const int w = values.width();
  const int h = values.height();
  Plane<int> horizontal(w, h), out(w, h);
  for (int y = 0; y < h; ++y) {
    const auto src = values.row(y);
    auto dst = horizontal.row(y);
    int sum = 0;
    for (int dx = -radius; dx <= radius; ++dx) sum += src[wrap(dx, w)];
    for (int x = 0; x < w; ++x) {
      if (x > 0) sum += src[wrap(x + radius, w)] - src[wrap(x - 1 - radius, w)];
      dst[x] = sum;
    }
  }
  std::vector<int> sums(static_cast<std::size_t>(w), 0);
  for (int dy = -radius; dy <= radius; ++dy) {
    const auto src = horizontal.row(wrap(dy, h));
    for (int x = 0; x < w; ++x) sums[x] += src[x];
  }
  for (int y = 0; y < h; ++y) {
    if (y > 0) {
      const auto add = horizontal.row(wrap(y + radius, h));
      const auto sub = horizontal.row(wrap(y - 1 - radius, h));
      for (int x = 0; x < w; ++x) sums[x] += add[x] - sub[x];
    }
    std::copy(sums.begin(), sums.end(), out.row(y).begin());
  }
  return out;
}

FlatnessField flatness_fraction(const CodePlane& codes_bg, const CodePlane& codes_cur, int radius) {
  require_same_shape(codes_bg, codes_cur, "flatness_fraction");
  if (radius < 1) throw std::invalid_argument("flatness_fraction: radius must be >= 1");
  Plane<int> flat(codes_bg.width(), codes_bg.height());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    flat[i] = (is_flat_bin(codes_bg[i]) ? 1 : 0) + (is_flat_bin(codes_cur[i]) ? 1 : 0);
  }
  const Plane<int> counts = periodic_box_sum(flat, radius);
  const double k = static_cast<double>((2 * radius + 1) * (2 * radius + 1));
  FlatnessField out(flat.width(), flat.height());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = counts[i] / k;
  return out;
}

}  // namespace wavefg
