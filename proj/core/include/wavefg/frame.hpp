#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wavefg {

/// Raised when two images, planes or masks that must agree in size do not,
/// or when an image is too small for the requested operation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Row-major 2D array. The building block for coefficient planes, code
/// planes, vote planes and every other per-pixel quantity.
template <typename T>
class Plane {
 public:
  using value_type = T;

  Plane() = default;

  Plane(int width, int height, T fill = T{})
      : width_(checked_dim(width)), height_(checked_dim(height)),
        data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

  Plane(int width, int height, std::vector<T> data)
      : width_(checked_dim(width)), height_(checked_dim(height)), data_(std::move(data)) {
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw DimensionError("plane data length " + std::to_string(data_.size()) +
                           " does not match " + std::to_string(width) + "x" +
                           std::to_string(height));
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }
  T& operator[](std::size_t i) noexcept { return data_[i]; }
  const T& operator[](std::size_t i) const noexcept { return data_[i]; }

  std::span<T> row(int y) noexcept {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }
  std::span<const T> row(int y) const noexcept {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  template <typename U>
  bool same_shape(const Plane<U>& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  static int checked_dim(int d) {
    if (d < 0) throw DimensionError("negative plane dimension " + std::to_string(d));
    return d;
  }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using CoefficientPlane = Plane<double>;

template <typename A, typename B>
void require_same_shape(const Plane<A>& a, const Plane<B>& b, const char* what) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(what) + ": size mismatch " + std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                         std::to_string(b.height()));
  }
}

/// Single-channel intensity image with values in [0, 1]. Immutable once built.
class GrayFrame {
 public:
  GrayFrame() = default;
  /// Throws DimensionError on a length mismatch and std::domain_error when a
  /// value is non-finite or outside [0, 1].
  GrayFrame(int width, int height, std::vector<double> data);
  explicit GrayFrame(Plane<double> plane);

  /// Frame filled with one value.
  static GrayFrame filled(int width, int height, double value);

  int width() const noexcept { return plane_.width(); }
  int height() const noexcept { return plane_.height(); }
  std::size_t size() const noexcept { return plane_.size(); }

  double operator()(int x, int y) const noexcept { return plane_(x, y); }
  double operator[](std::size_t i) const noexcept { return plane_[i]; }
  std::span<const double> values() const noexcept { return plane_.values(); }
  const Plane<double>& plane() const noexcept { return plane_; }

  friend bool operator==(const GrayFrame&, const GrayFrame&) = default;

 private:
  void validate() const;
  Plane<double> plane_;
};

/// Per-pixel foreground decision. Stored as 0/1 bytes; true = foreground.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool fill = false);
  BinaryMask(int width, int height, std::vector<std::uint8_t> data);
  explicit BinaryMask(Plane<std::uint8_t> plane);

  int width() const noexcept { return plane_.width(); }
  int height() const noexcept { return plane_.height(); }
  std::size_t size() const noexcept { return plane_.size(); }

  bool operator()(int x, int y) const noexcept { return plane_(x, y) != 0; }
  bool operator[](std::size_t i) const noexcept { return plane_[i] != 0; }
  void set(int x, int y, bool value) noexcept { plane_(x, y) = value ? 1 : 0; }

  std::size_t count() const noexcept;
  const Plane<std::uint8_t>& plane() const noexcept { return plane_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  Plane<std::uint8_t> plane_;
};

enum class Band : int { LL = 0, LH = 1, HL = 2, HH = 3 };

inline constexpr int kBandsPerLevel = 4;
inline constexpr Band kAllBands[kBandsPerLevel] = {Band::LL, Band::LH, Band::HL, Band::HH};

const char* band_name(Band band) noexcept;

/// Flat band index used for per-band arrays: 4 * (level - 1) + band.
constexpr int band_index(int level, Band band) noexcept {
  return kBandsPerLevel * (level - 1) + static_cast<int>(band);
}

struct LevelBands {
  CoefficientPlane ll;
  CoefficientPlane lh;
  CoefficientPlane hl;
  CoefficientPlane hh;

  const CoefficientPlane& operator[](Band b) const noexcept;
  CoefficientPlane& operator[](Band b) noexcept;
};

/// Undecimated wavelet decomposition: `levels` levels of four full-size bands.
class WaveletPyramid {
 public:
  WaveletPyramid() = default;
  /// All bands must share the same size.
  explicit WaveletPyramid(std::vector<LevelBands> levels);

  int levels() const noexcept { return static_cast<int>(levels_.size()); }
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int band_count() const noexcept { return kBandsPerLevel * levels(); }

  /// `level` is 1-based.
  const CoefficientPlane& band(int level, Band b) const;
  const LevelBands& level(int level) const;

 private:
  std::vector<LevelBands> levels_;
  int width_ = 0;
  int height_ = 0;
};

}  // namespace wavefg
